"""Collect d^2-consistent strongly non-nilpotent members of the three SnN families.

Coefficients have real and imaginary parts in {-1, 0, 1} (s, t real).  The
d^2 = 0 locus is thin, so instead of plain sampling we walk it: start from
seed members and change one coefficient at a time, keeping a neighbour when
it satisfies the predicate, realifies (d^2 = 0) and has label SnN.

    python3 demos/snn_instances.py [--per-variant 25] [--out tests/data/snn_instances.json]
"""

import argparse
import json
import random
from collections import deque

from cslie.families import SNN_COEFFS, snn_family, snn_predicate
from cslie.notation import RealifyError
from cslie.scalar import GaussianRational, format_scalar

REAL = [GaussianRational(x) for x in (-1, 0, 1)]
GAUSS = [GaussianRational(a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)]
KNOWN_MEMBER = {"B": -1, "C": 1, "D": 1, "G": 1, "L": 1, "N": 1}


def values(name):
    return REAL if name in ("s", "t") else GAUSS


def is_snn(variant, kw):
    if not snn_predicate(variant, kw):
        return False
    try:
        return snn_family(variant, kw).label == "SnN"
    except RealifyError:
        return False


def full(variant, kw):
    return {k: GaussianRational.coerce(kw.get(k, 0)) for k in SNN_COEFFS[variant]}


def seeds(variant, rng, tries=5000):
    """(member, walk budget): the known member walks freely, sampled ones a little."""
    if variant == "i":
        yield full("i", KNOWN_MEMBER), None
    for _ in range(tries):
        kw = {k: rng.choice(values(k)) for k in SNN_COEFFS[variant]}
        if is_snn(variant, kw):
            yield kw, 10


def walk(variant, want, rng):
    found = {}
    key = lambda kw: tuple(format_scalar(kw[k]) for k in SNN_COEFFS[variant])
    for s, budget in seeds(variant, rng):
        if key(s) in found:
            continue
        found[key(s)] = s
        queue = deque([s])
        cap = want if budget is None else min(want, len(found) + budget - 1)
        while queue and len(found) < cap:
            cur = queue.popleft()
            for name in SNN_COEFFS[variant]:
                for v in values(name):
                    if v == cur[name]:
                        continue
                    nxt = dict(cur, **{name: v})
                    if key(nxt) not in found and is_snn(variant, nxt):
                        found[key(nxt)] = nxt
                        queue.append(nxt)
                        if len(found) >= cap:
                            break
                if len(found) >= cap:
                    break
        if len(found) >= want:
            break
    return list(found.values())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--per-variant", type=int, default=25)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="tests/data/snn_instances.json")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    out = []
    for variant in ("i", "ii", "iii"):
        members = walk(variant, args.per_variant, rng)
        print(f"{variant}: {len(members)} members")
        out += [{"variant": variant, "coeffs": {k: format_scalar(v) for k, v in m.items() if v}}
                for m in members]
    with open(args.out, "w") as fh:
        json.dump(out, fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()
