"""Grid sweep over the oxidation-data families on h3+R and R^4.

For a fixed assignment of a family's discrete parameters the data, and so
the oxidized structure constants, are affine in the continuous parameters
p.  Every validity condition is a polynomial of degree <= 2 in p:

* the data conditions are quadratic in (f, S), so they hold identically
  once they hold on the unisolvent set {0, +-e_i, e_i + e_j};
* Jacobi is a quadratic form in the constants, Nijenhuis, d omega and the
  centrality of V^* are linear; these are checked coefficient by
  coefficient on the integer affine model.

So validity is proved for the whole affine slice, grid included.  What
varies point by point is the ascending central series, which is computed
by a compiled fraction-free integer elimination.  A deterministic sample
of points is redone with the exact rational code path and compared.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
from numba import njit

from .families import FAMILIES, FamilyError, build_family, kernel_L
from .lie import LieAlgebra, central_series
from .redox import assemble, validate_oxidation_data
from .structures import validate_complex_symplectic

__all__ = ["DEFAULT_GRID", "SweepReport", "SweepRow", "classify8_sweep", "slice_points", "sweep_slice"]

DEFAULT_GRID = (-1, 0, 1)

_NON_NILPOTENT = 1 << 58
_VSTAR = 1 << 59
_OVERFLOW = 1 << 60


# ---------------------------------------------------------------------------
# compiled kernel
# ---------------------------------------------------------------------------


@njit(cache=True)
def _gcd(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _rank_rows(M, nrows, n):
    """Row-echelon M in place; returns rank, or -1 on overflow."""
    r = 0
    for col in range(n):
        piv = -1
        for i in range(r, nrows):
            if M[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(n):
                t = M[r, k]
                M[r, k] = M[piv, k]
                M[piv, k] = t
        a = M[r, col]
        for i in range(r + 1, nrows):
            b = M[i, col]
            if b == 0:
                continue
            g = 0
            for k in range(n):
                v = a * M[i, k] - b * M[r, k]
                M[i, k] = v
                g = _gcd(g, v)
            if g > 1:
                for k in range(n):
                    M[i, k] //= g
            for k in range(n):
                if M[i, k] >= 2147483648 or M[i, k] <= -2147483648:
                    return -1
        r += 1
    return r


@njit(cache=True)
def _series_code(c, n, A, M):
    """Encoded ascending type of the algebra with constants c[(i*n+j)*n+m]."""
    for i in range(n):
        for k in range(n):
            A[i, k] = 1 if i == k else 0
    ra = n
    prev = n
    code = 0
    length = 0
    for _ in range(n + 1):
        nrows = 0
        for e in range(ra):
            for j in range(n):
                nz = False
                for i in range(n):
                    s = 0
                    base = (i * n + j) * n
                    for m in range(n):
                        s += A[e, m] * c[base + m]
                    M[nrows, i] = s
                    if s != 0:
                        nz = True
                if nz:
                    for i in range(n):
                        if M[nrows, i] >= 2147483648 or M[nrows, i] <= -2147483648:
                            return _OVERFLOW
                    nrows += 1
        r = _rank_rows(M, nrows, n)
        if r < 0:
            return _OVERFLOW
        if r == prev:
            return code | length | _NON_NILPOTENT
        code |= (n - r) << (4 * (length + 1))
        length += 1
        prev = r
        for e in range(r):
            for k in range(n):
                A[e, k] = M[e, k]
        ra = r
        if r == 0:
            return code | length
    return code | length | _NON_NILPOTENT


@njit(cache=True)
def _sweep_kernel(n, c0, ent_idx, ent_val, ent_ptr, gvals, glen, total, vstar_lo, out):
    m = glen.shape[0]
    c = c0.copy()
    digits = np.zeros(m, dtype=np.int64)
    for i in range(m):
        g = gvals[i, 0]
        for e in range(ent_ptr[i], ent_ptr[i + 1]):
            c[ent_idx[e]] += g * ent_val[e]
    A = np.zeros((n, n), dtype=np.int64)
    M = np.zeros((n * n, n), dtype=np.int64)
    for pt in range(total):
        code = 0
        for p in range(vstar_lo, n):
            for q in range(n * n):
                if c[p * n * n + q] != 0:
                    code = _VSTAR
        out[pt] = code | _series_code(c, n, A, M)
        # odometer, last parameter fastest
        i = m - 1
        while i >= 0:
            d = digits[i]
            if d + 1 < glen[i]:
                step = gvals[i, d + 1] - gvals[i, d]
                digits[i] = d + 1
                for e in range(ent_ptr[i], ent_ptr[i + 1]):
                    c[ent_idx[e]] += step * ent_val[e]
                break
            step = gvals[i, 0] - gvals[i, d]
            digits[i] = 0
            for e in range(ent_ptr[i], ent_ptr[i + 1]):
                c[ent_idx[e]] += step * ent_val[e]
            i -= 1


def decode(code: int) -> tuple[tuple, bool]:
    """(ascending type, nilpotent) from a kernel code."""
    length = code & 15
    typ = tuple((code >> (4 * (k + 1))) & 15 for k in range(length))
    return typ, not (code & _NON_NILPOTENT)


# ---------------------------------------------------------------------------
# slices
# ---------------------------------------------------------------------------


def _frac(x) -> Fraction:
    return Fraction(x) if not isinstance(x, str) else Fraction(x)


def _grid_for(grid, name) -> list[Fraction]:
    if grid is None:
        vals = DEFAULT_GRID
    elif isinstance(grid, Mapping):
        vals = grid.get(name, grid.get("*", DEFAULT_GRID))
    else:
        vals = grid
    return [_frac(v) for v in vals]


@dataclass
class Slice:
    fid: str
    fixed: dict                  # discrete parameter values
    names: tuple                 # continuous parameters, odometer order
    values: list                 # grid values per continuous parameter

    @property
    def size(self) -> int:
        return math.prod(len(v) for v in self.values)

    def params(self, digits: Sequence[int]) -> dict:
        p = dict(self.fixed)
        p.update({n: self.values[k][d] for k, (n, d) in enumerate(zip(self.names, digits))})
        return p

    def point(self, index: int) -> dict:
        digits = []
        for vals in reversed(self.values):
            index, d = divmod(index, len(vals))
            digits.append(d)
        return self.params(list(reversed(digits)))


def slice_points(fid: str, grid=None) -> list[Slice]:
    """The discrete assignments of a family meeting its predicates, in order."""
    spec = FAMILIES[fid]
    out = []
    dvals = [_grid_for(grid, n) for n in spec.discrete]
    for combo in itertools.product(*dvals):
        fixed = dict(zip(spec.discrete, combo))
        try:
            spec.check(fixed)
        except FamilyError:
            continue
        names = list(spec.continuous)
        if fid == "R4-i":
            r = len(kernel_L(fixed["a"], fixed["b"], fixed["c"]))
            names = names[:-2] + [f"k{j}" for j in range(1, r + 1)] + names[-2:]
        out.append(Slice(fid, fixed, tuple(names), [_grid_for(grid, n) for n in names]))
    return out


def _constants(g: LieAlgebra) -> list[Fraction]:
    n = g.dim
    flat = []
    for i in range(n):
        for j in range(n):
            v = g.bracket_basis(i, j)
            for m in range(n):
                z = v[m]
                assert not z.im
                flat.append(z.re)
    return flat


def _lcm(xs) -> int:
    out = 1
    for x in xs:
        out = out * x // math.gcd(out, x)
    return out


@dataclass
class AffineModel:
    """Integer model D*c(p) = C0 + sum_i (Dg p_i) C_i of the structure constants."""
    n: int
    scale: int
    grid_scale: int
    C0: np.ndarray
    C: list                       # per-parameter int64 arrays
    J: object
    omega: object
    vstar_lo: int

    def constants(self, ints: Sequence[int]) -> np.ndarray:
        out = self.C0.copy()
        for k, v in zip(ints, self.C):
            out = out + k * v
        return out


def _affine_model(sl: Slice) -> AffineModel:
    names = sl.names
    zero = {n: Fraction(0) for n in names}
    p0 = assemble(build_family(sl.fid, {**sl.fixed, **zero}))
    c0 = _constants(p0.g)
    lin = []
    for n in names:
        pe = assemble(build_family(sl.fid, {**sl.fixed, **zero, n: Fraction(1)}))
        assert pe.J == p0.J and pe.omega == p0.omega
        lin.append([a - b for a, b in zip(_constants(pe.g), c0)])
    dc = _lcm(x.denominator for row in [c0] + lin for x in row)
    dg = _lcm(v.denominator for vals in sl.values for v in vals)
    C0 = np.array([int(x * dc * dg) for x in c0], dtype=np.int64)
    C = [np.array([int(x * dc) for x in row], dtype=np.int64) for row in lin]
    return AffineModel(p0.g.dim, dc * dg, dg, C0, C, p0.J, p0.omega, p0.g.dim - 2)


def _unisolvent(m: int):
    yield ()
    for i in range(m):
        yield ((i, 1),)
        yield ((i, -1),)
    for i, j in itertools.combinations(range(m), 2):
        yield ((i, 1), (j, 1))


def _prove_data(sl: Slice) -> list[str]:
    """Data conditions at the unisolvent set; they are quadratic in p."""
    bad = []
    for pts in _unisolvent(len(sl.names)):
        p = {**sl.fixed, **{n: Fraction(0) for n in sl.names}}
        for i, v in pts:
            p[sl.names[i]] = Fraction(v)
        try:
            build_family(sl.fid, p)      # runs validate_oxidation_data on the member
        except AssertionError as exc:
            bad.append(f"{p}: {exc}")
    return bad


def _tensor(v: np.ndarray, n: int) -> np.ndarray:
    return v.reshape(n, n, n)


def _jacobi_bilinear(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Cyclic sum of [[x,y]_a, z]_b over (x, y, z), as an (n,n,n,n) tensor."""
    t = np.einsum("ijm,mkl->ijkl", a, b)
    return t + np.einsum("ijkl->jkil", t) + np.einsum("ijkl->kijl", t)


def _nijenhuis(c: np.ndarray, J: np.ndarray) -> np.ndarray:
    """N(x, y) for basis vectors, linear in the constants c[i,j,:] = [e_i, e_j]."""
    br = lambda X, Y: np.einsum("ia,jb,abm->ijm", X, Y, c)
    I = np.eye(J.shape[0], dtype=np.int64)
    JX = J.T                                  # row i = J e_i
    out = br(JX, JX) - np.einsum("ijm,km->ijk", br(JX, I), J) - np.einsum("ijm,km->ijk", br(I, JX), J) - br(I, I)
    return out


def _domega(c: np.ndarray, W: np.ndarray) -> np.ndarray:
    """d omega (x,y,z) = -omega([x,y],z) + omega([x,z],y) - omega([y,z],x)."""
    t = np.einsum("ijm,mk->ijk", c, W)
    return -t + np.einsum("ikj->ijk", t) - np.einsum("jki->ijk", t)


def _int_matrix(M, scale=1) -> np.ndarray:
    rows = M.rows if hasattr(M, "rows") else M
    out = []
    for r in rows:
        line = []
        for z in r:
            assert not z.im
            q = z.re * scale
            assert q.denominator == 1
            line.append(int(q))
        out.append(line)
    return np.array(out, dtype=np.int64)


def _prove_output(model: AffineModel) -> list[str]:
    """Jacobi, Nijenhuis, d omega = 0 and V^* central across the affine slice."""
    n = model.n
    bound = max([int(np.abs(model.C0).max(initial=0))] + [int(np.abs(c).max(initial=0)) for c in model.C])
    if bound * bound * n * 6 >= 1 << 62:
        raise OverflowError("affine model too large for the integer identity check")
    terms = [_tensor(model.C0, n)] + [_tensor(c, n) for c in model.C]
    bad = []
    for a in range(len(terms)):
        for b in range(a, len(terms)):
            q = _jacobi_bilinear(terms[a], terms[b])
            if a != b:
                q = q + _jacobi_bilinear(terms[b], terms[a])
            if q.any():
                bad.append(f"jacobi coefficient ({a},{b})")
    J = _int_matrix(model.J.J)
    om = model.omega.matrix()
    dw = _lcm(z.re.denominator for r in om for z in r)
    W = _int_matrix(om, dw)
    for k, t in enumerate(terms):
        if _nijenhuis(t, J).any():
            bad.append(f"nijenhuis coefficient {k}")
        if _domega(t, W).any():
            bad.append(f"d omega coefficient {k}")
        if t[model.vstar_lo:].any():
            bad.append(f"V^* not central, coefficient {k}")
    pair = validate_complex_symplectic(LieAlgebra(n), model.J, model.omega)
    if not (pair.report.nondegenerate and pair.report.j_symmetric):
        bad.append("omega degenerate or not J-symmetric")
    return bad


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


@dataclass
class SweepRow:
    family: str
    params: dict
    step: int | None
    ascending_type: tuple
    ok: bool

    def text(self) -> str:
        ps = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.family}\t{ps}\t{self.step}\t{self.ascending_type}\t{'pass' if self.ok else 'FAIL'}"


@dataclass
class SweepReport:
    counts: Counter = field(default_factory=Counter)    # (base, case, step, type) -> points
    slices: int = 0
    points: int = 0
    failures: list = field(default_factory=list)
    sampled: int = 0
    sample_mismatches: list = field(default_factory=list)
    overflow_fallbacks: int = 0
    rows: list | None = None
    seconds: float = 0.0

    @property
    def steps(self) -> set:
        return {k[2] for k in self.counts}

    @property
    def ok(self) -> bool:
        return not self.failures and not self.sample_mismatches and None not in self.steps

    def merge(self, other: "SweepReport") -> "SweepReport":
        out = SweepReport(self.counts + other.counts, self.slices + other.slices, self.points + other.points,
                          self.failures + other.failures, self.sampled + other.sampled,
                          self.sample_mismatches + other.sample_mismatches,
                          self.overflow_fallbacks + other.overflow_fallbacks,
                          None if self.rows is None and other.rows is None else (self.rows or []) + (other.rows or []),
                          self.seconds + other.seconds)
        return out

    def summary(self) -> list[str]:
        lines = [f"slices: {self.slices}", f"points: {self.points}", f"failures: {len(self.failures)}",
                 f"exact re-checks: {self.sampled}, mismatches: {len(self.sample_mismatches)}",
                 f"overflow fallbacks: {self.overflow_fallbacks}",
                 f"steps realized: {sorted(s for s in self.steps if s is not None)}"]
        lines.append("base\tcase\tstep\ttype\tpoints")
        for (base, case, step, typ), k in sorted(self.counts.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2] or 0, kv[0][3])):
            lines.append(f"{base}\t{case}\t{step}\t{','.join(map(str, typ))}\t{k}")
        for f in self.failures:
            lines.append(f"FAIL {f}")
        for f in self.sample_mismatches:
            lines.append(f"MISMATCH {f}")
        return lines

    def to_dict(self) -> dict:
        return {
            "slices": self.slices,
            "points": self.points,
            "failures": list(self.failures),
            "sampled": self.sampled,
            "sample_mismatches": list(self.sample_mismatches),
            "overflow_fallbacks": self.overflow_fallbacks,
            "steps": sorted(s for s in self.steps if s is not None),
            "counts": [{"base": b, "case": c, "step": s, "type": list(t), "points": k}
                       for (b, c, s, t), k in sorted(self.counts.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2] or 0, kv[0][3]))],
            "rows": None if self.rows is None else [
                {"family": r.family, "params": {k: str(v) for k, v in r.params.items()}, "step": r.step,
                 "type": list(r.ascending_type), "ok": r.ok} for r in self.rows],
        }


def _exact_point(sl: Slice, params: dict) -> tuple:
    data = build_family(sl.fid, params)
    pair = assemble(data)
    ser = central_series(pair.g)
    return pair, ser


def sweep_slice(sl: Slice, rows: bool = False, samples: int = 4, seed: int = 0) -> SweepReport:
    base, case = sl.fid.split("-")
    rep = SweepReport(slices=1, points=sl.size, rows=[] if rows else None)
    label = f"{sl.fid} {sl.fixed}"
    for msg in _prove_data(sl):
        rep.failures.append(f"{label}: data condition fails at {msg}")
    model = _affine_model(sl)
    for msg in _prove_output(model):
        rep.failures.append(f"{label}: {msg}")
    ok = not rep.failures

    m = len(sl.names)
    G = max(len(v) for v in sl.values) if m else 1
    gvals = np.zeros((m, G), dtype=np.int64)
    for i, vals in enumerate(sl.values):
        for d, v in enumerate(vals):
            q = v * model.grid_scale
            assert q.denominator == 1
            gvals[i, d] = int(q)
    glen = np.array([len(v) for v in sl.values], dtype=np.int64)
    idx, val, ptr = [], [], [0]
    for c in model.C:
        nz = np.nonzero(c)[0]
        idx.extend(nz.tolist())
        val.extend(c[nz].tolist())
        ptr.append(len(idx))
    out = np.zeros(sl.size, dtype=np.int64)
    _sweep_kernel(model.n, model.C0, np.array(idx, dtype=np.int64), np.array(val, dtype=np.int64),
                  np.array(ptr, dtype=np.int64), gvals, glen, sl.size, model.vstar_lo, out)

    codes, counts = np.unique(out, return_counts=True)
    lookup = {}
    for code, k in zip(codes.tolist(), counts.tolist()):
        if code & _OVERFLOW:
            rep.overflow_fallbacks += k
            continue
        typ, nil = decode(code)
        step = len(typ) if nil else None
        lookup[code] = (typ, step)
        if code & _VSTAR:
            rep.failures.append(f"{label}: V^* not central at {k} points")
        if step is None or step > 4:
            rep.failures.append(f"{label}: step {step} at {k} points")
        rep.counts[(base, case, step, typ)] += k
    if rep.overflow_fallbacks:
        for pt in np.nonzero(out & _OVERFLOW)[0].tolist():
            _, ser = _exact_point(sl, sl.point(pt))
            rep.counts[(base, case, ser.nilpotency_step, ser.ascending_type)] += 1
            if ser.nilpotency_step is None or ser.nilpotency_step > 4:
                rep.failures.append(f"{label}: step {ser.nilpotency_step} at {sl.point(pt)}")

    rng = random.Random(f"{seed}:{sl.fid}:{sorted(sl.fixed.items())}")
    picks = sorted({0, sl.size - 1} | {rng.randrange(sl.size) for _ in range(samples)})
    for pt in picks:
        params = sl.point(pt)
        pair, ser = _exact_point(sl, params)
        rep.sampled += 1
        got = lookup.get(int(out[pt]))
        if got is not None and got != (ser.ascending_type, ser.nilpotency_step):
            rep.sample_mismatches.append(f"{label} {params}: kernel {got}, exact {ser.ascending_type}")
        ints = [int(v * model.grid_scale) for v in (params[n] for n in sl.names)]
        scaled = [Fraction(int(x), model.scale) for x in model.constants(ints)]
        if scaled != _constants(pair.g):
            rep.sample_mismatches.append(f"{label} {params}: affine model disagrees with assembly")
        if pt in (0, sl.size - 1):
            vd = validate_oxidation_data(build_family(sl.fid, params))
            full = validate_complex_symplectic(pair.g, pair.J, pair.omega)
            if not (vd.ok and vd.routes_agree and full.ok):
                rep.sample_mismatches.append(f"{label} {params}: exact validation disagrees")

    if rows:
        for pt in range(sl.size):
            code = int(out[pt])
            if code in lookup:
                typ, step = lookup[code]
            else:
                _, ser = _exact_point(sl, sl.point(pt))
                typ, step = ser.ascending_type, ser.nilpotency_step
            good = ok and not (code & _VSTAR) and step is not None and step <= 4
            rep.rows.append(SweepRow(sl.fid, _plain(sl.point(pt)), step, typ, good))
    return rep


def _plain(p: dict) -> dict:
    return {k: (int(v) if isinstance(v, Fraction) and v.denominator == 1 else v) for k, v in p.items()}


def _run(args):
    sl, rows, samples, seed = args
    return sweep_slice(sl, rows=rows, samples=samples, seed=seed)


def classify8_sweep(grid=None, families: Sequence[str] | None = None, rows: bool = False,
                    samples: int = 4, workers: int = 1, seed: int = 0) -> SweepReport:
    """Sweep every case of both bases over a rational grid (default {-1, 0, 1}).

    ``grid`` is a list of values for every parameter, or a mapping from
    parameter names (``"*"`` for the rest) to value lists.
    """
    t0 = time.perf_counter()
    fids = list(families or FAMILIES)
    for f in fids:
        if f not in FAMILIES:
            raise FamilyError(f"unknown family {f!r}")
    slices = [sl for f in fids for sl in slice_points(f, grid)]
    jobs = [(sl, rows, samples, seed) for sl in slices]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_run, jobs))
    else:
        parts = [_run(j) for j in jobs]
    rep = SweepReport(rows=[] if rows else None)
    for p in parts:
        rep = rep.merge(p)
    rep.seconds = time.perf_counter() - t0
    return rep
