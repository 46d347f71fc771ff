"""Salamon notation and complex structure equations.

A Salamon string "(0,0,12,13+3·14)" lists de^k term by term.  Under the
strict reading d alpha(X,Y) = -alpha([X,Y]), the term a·e^{ij} in de^k
means [e_i, e_j] has e_k-coefficient -a.  The "bracket" reading takes the
string as the structure constants themselves (no sign flip).

Complex structure equations give d phi^k in a (1,0)-coframe.  Realifying
with phi^k = e^a - i e^b produces a real Lie algebra of dimension 2n and
the complex structure J for which every phi^k is of type (1,0).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg as la
from .forms import AltForm, Endo, wedge
from .lie import LieAlgebra, validate_jacobi
from .scalar import GaussianRational, I, ONE, ZERO, format_scalar, parse_scalar

__all__ = [
    "SalamonError",
    "parse_salamon",
    "print_salamon",
    "salamon_terms",
    "ComplexEqnSet",
    "realify",
    "complex_eqns_from_json",
    "complex_eqns_to_json",
    "coframe_forms",
    "realify_coframe",
    "RealifyError",
]


class SalamonError(ValueError):
    """Malformed Salamon string, or constants violating Jacobi."""

    def __init__(self, message: str, position: int | None = None, triple=None):
        super().__init__(message)
        self.position = position
        self.triple = triple


_CONVENTIONS = ("strict", "bracket")

_SAL_TERM = re.compile(
    r"""(?P<sign>[+-])?
        (?:(?P<coef>\d+(?:/\d+)?)\s*[·*]\s*)?
        (?P<idx>\{\s*\d+\s*,\s*\d+\s*\}|\d\d)""",
    re.VERBOSE,
)


def _split_top(body: str, offset: int) -> list[tuple[str, int]]:
    parts = []
    depth = 0
    start = 0
    for k, ch in enumerate(body):
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((body[start:k], offset + start))
            start = k + 1
    parts.append((body[start:], offset + start))
    return parts


def salamon_terms(s: str) -> list[list[tuple[Fraction, int, int]]]:
    """Parse a Salamon string into per-generator lists of (coef, i, j), i<j."""
    text = s.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise SalamonError(f"Salamon string must be parenthesized: {s!r}", 0)
    body = text[1:-1]
    gens = []
    for chunk, pos in _split_top(body, 1):
        t = chunk.replace(" ", "")
        if t in ("0", "+0", "-0"):
            gens.append([])
            continue
        if not t:
            raise SalamonError(f"empty entry at position {pos}", pos)
        terms: dict = {}
        k = 0
        while k < len(t):
            m = _SAL_TERM.match(t, k)
            if not m or m.end() == k:
                raise SalamonError(f"malformed token at position {pos + k} in {s!r}", pos + k)
            if k and not m.group("sign"):
                raise SalamonError(f"missing sign at position {pos + k} in {s!r}", pos + k)
            coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
            if m.group("sign") == "-":
                coef = -coef
            raw = m.group("idx")
            if raw.startswith("{"):
                i, j = (int(x) for x in raw.strip("{}").split(","))
            else:
                i, j = int(raw[0]), int(raw[1])
            if i == j:
                raise SalamonError(f"repeated index e{i}{j} at position {pos + k}", pos + k)
            if i > j:
                i, j, coef = j, i, -coef
            terms[(i, j)] = terms.get((i, j), Fraction(0)) + coef
            k = m.end()
        gens.append([(c, i, j) for (i, j), c in sorted(terms.items()) if c])
    return gens


def parse_salamon(s: str, convention: str = "strict", check: bool = True,
                  name: str | None = None) -> LieAlgebra:
    """Lie algebra from a Salamon string.

    With ``check`` the Jacobi identity is enforced and the first violating
    triple is reported in the raised :class:`SalamonError`.
    """
    if convention not in _CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    gens = salamon_terms(s)
    n = len(gens)
    br: dict = {}
    sign = -1 if convention == "strict" else 1
    for k, terms in enumerate(gens):
        for c, i, j in terms:
            if j > n:
                raise SalamonError(f"index {j} exceeds dimension {n}")
            v = br.setdefault((i, j), [ZERO] * n)
            v[k] = v[k] + GaussianRational(sign * c)
    g = LieAlgebra(n, {k: tuple(v) for k, v in br.items()}, name=name)
    if check:
        rep = validate_jacobi(g)
        if not rep.ok:
            i, j, k, r = rep.violations[0]
            raise SalamonError(
                f"Jacobi identity fails on (e{i},e{j},e{k})", triple=(i, j, k)
            )
    return g


def _fmt_coef(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def print_salamon(g: LieAlgebra, convention: str = "strict") -> str:
    """Canonical Salamon string; terms in lexicographic order."""
    if convention not in _CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    if not g.is_real():
        raise ValueError("Salamon notation needs real structure constants")
    n = g.dim
    sign = -1 if convention == "strict" else 1
    wide = n > 9
    entries = []
    for k in range(n):
        pieces = []
        for (i, j), v in g.brackets.items():
            c = v[k].re * sign
            if not c:
                continue
            idx = f"{{{i},{j}}}" if wide else f"{i}{j}"
            mag = abs(c)
            s = "-" if c < 0 else "+"
            body = idx if mag == 1 else f"{_fmt_coef(mag)}·{idx}"
            pieces.append(s + body)
        if not pieces:
            entries.append("0")
        else:
            out = "".join(pieces)
            entries.append(out[1:] if out.startswith("+") else out)
    return "(" + ",".join(entries) + ")"


# ---------------------------------------------------------------------------
# complex structure equations
# ---------------------------------------------------------------------------


@dataclass
class ComplexEqnSet:
    """d phi^k = sum hol c·phi^{jl} + sum mixed c·phi^j ∧ conj(phi^l).

    ``hol`` and ``mixed`` map k (1-based) to lists of (coef, j, l).
    ``anti`` holds conj(phi^j) ∧ conj(phi^l) terms; any such term means the
    set does not describe an integrable complex structure and realify
    rejects it.
    """

    n: int
    hol: dict = field(default_factory=dict)
    mixed: dict = field(default_factory=dict)
    anti: dict = field(default_factory=dict)

    def __post_init__(self):
        for table in (self.hol, self.mixed, self.anti):
            for k in list(table):
                terms = []
                for c, j, l in table[k]:
                    j, l = int(j), int(l)
                    if not (1 <= j <= self.n and 1 <= l <= self.n and 1 <= int(k) <= self.n):
                        raise ValueError(f"index out of range in d phi^{k}")
                    terms.append((GaussianRational.coerce(c), j, l))
                table[k] = terms
            for k in list(table):
                if int(k) != k:
                    table[int(k)] = table.pop(k)
        for k, terms in self.hol.items():
            norm = []
            for c, j, l in terms:
                if j == l:
                    continue
                if j > l:
                    c, j, l = -c, l, j
                norm.append((c, j, l))
            self.hol[k] = norm

    def add(self, k: int, kind: str, coef, j: int, l: int) -> None:
        table = {"hol": self.hol, "mixed": self.mixed, "anti": self.anti}[kind]
        table.setdefault(k, []).append((GaussianRational.coerce(coef), j, l))
        self.__post_init__()


def coframe_forms(n: int, index_map: Mapping[int, tuple[int, int]] | None = None):
    """The complex 1-forms phi^k = e^a - i e^b on R^{2n}."""
    dim = 2 * n
    pairs = _pairs(n, index_map)
    phis = []
    for k in range(1, n + 1):
        a, b = pairs[k]
        phis.append(AltForm(dim, 1, {(a,): ONE, (b,): -I}))
    return phis, pairs


def _pairs(n, index_map):
    if index_map is None:
        return {k: (2 * k - 1, 2 * k) for k in range(1, n + 1)}
    pairs = {int(k): (int(a), int(b)) for k, (a, b) in index_map.items()}
    used = sorted(x for ab in pairs.values() for x in ab)
    if sorted(pairs) != list(range(1, n + 1)) or used != list(range(1, 2 * n + 1)):
        raise ValueError("index map must pair every real index exactly once")
    return pairs


class RealifyError(ValueError):
    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


def realify(eqs: ComplexEqnSet, index_map: Mapping[int, tuple[int, int]] | None = None,
            name: str | None = None):
    """Real Lie algebra of dimension 2n with its complex structure J.

    Real coframe phi^k = e^a - i e^b with (a, b) = (2k-1, 2k) unless
    ``index_map`` says otherwise; then J^* e^a = e^b, so J e_b = e_a and
    J e_a = -e_b.  The result is checked for d^2 = 0.
    """
    phis, _ = coframe_forms(eqs.n, index_map)
    g, J = realify_coframe(eqs, phis, name=name)
    return g, J


def realify_coframe(eqs: ComplexEqnSet, phis: Sequence[AltForm], name: str | None = None):
    """Like :func:`realify`, for an arbitrary (1,0)-coframe phi^1..phi^n.

    The real and imaginary parts of the phi^k must form a basis of the
    real dual; de^m follows by writing e^m in that basis.
    """
    from .structures import complex_structure_from_forms

    if any(eqs.anti.values()):
        raise RealifyError("(0,2) terms present: not a complex structure equation set")
    n = eqs.n
    dim = 2 * n
    if len(phis) != n or any(p.dim != dim or p.degree != 1 for p in phis):
        raise ValueError("need n complex 1-forms on R^{2n}")
    bars = [p.conjugate() for p in phis]
    parts, dparts = [], []
    for k in range(1, n + 1):
        dphi = AltForm.zero(dim, 2)
        for c, j, l in eqs.hol.get(k, []):
            dphi = dphi + wedge(phis[j - 1], phis[l - 1]).scale(c)
        for c, j, l in eqs.mixed.get(k, []):
            dphi = dphi + wedge(phis[j - 1], bars[l - 1]).scale(c)
        phi = phis[k - 1]
        parts += [phi.real_part().as_covector(), phi.imag_part().as_covector()]
        dparts += [dphi.real_part(), dphi.imag_part()]
    try:
        M = la.inverse(parts)          # e^m = sum_r M[m][r] parts[r]
    except ZeroDivisionError:
        raise ValueError("real and imaginary parts of the coframe are dependent") from None
    br: dict = {}
    for m in range(dim):
        de = AltForm.zero(dim, 2)
        for r in range(dim):
            if M[m][r]:
                de = de + dparts[r].scale(M[m][r])
        for (i, j), c in de.coeffs.items():
            v = br.setdefault((i, j), [ZERO] * dim)
            v[m] = -c
    g = LieAlgebra(dim, {k: tuple(v) for k, v in br.items()}, name=name)
    rep = validate_jacobi(g)
    if not rep.ok:
        raise RealifyError("d^2 != 0 for these equations", rep.violations)
    return g, complex_structure_from_forms(phis).J


def complex_eqns_from_json(data) -> ComplexEqnSet:
    """{"n": 4, "d": {"3": {"hol": [["-1", 1, 2]], "mixed": []}}}."""
    if isinstance(data, str):
        data = json.loads(data)
    n = int(data["n"])
    hol, mixed, anti = {}, {}, {}
    for k, spec in data.get("d", {}).items():
        k = int(k)
        for key, table in (("hol", hol), ("mixed", mixed), ("anti", anti)):
            for c, j, l in spec.get(key, []):
                table.setdefault(k, []).append((parse_scalar(str(c)), int(j), int(l)))
    return ComplexEqnSet(n, hol, mixed, anti)


def complex_eqns_to_json(eqs: ComplexEqnSet) -> dict:
    d: dict = {}
    for key, table in (("hol", eqs.hol), ("mixed", eqs.mixed), ("anti", eqs.anti)):
        for k, terms in sorted(table.items()):
            if terms:
                d.setdefault(str(k), {"hol": [], "mixed": []})
                d[str(k)].setdefault(key, [])
                d[str(k)][key].extend([format_scalar(c), j, l] for c, j, l in terms)
    return {"n": eqs.n, "d": d}
