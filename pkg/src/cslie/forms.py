"""Alternating forms, endomorphisms and the tensor operations built on them.

Conventions:

* ``AltForm`` coefficients are keyed by strictly increasing 1-based index
  tuples; ``e^{ij}(e_i, e_j) = 1`` (determinant convention).
* An ``Endo`` stores its matrix by rows with the column convention: column
  ``j`` holds the image of ``e_j``.
* ``sharp`` is normalized by ``omega(alpha_sharp, .) = alpha``.
"""

from __future__ import annotations

import re
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import linalg as la
from .poly import MultiPoly
from .scalar import GaussianRational, ONE, ZERO, format_scalar, parse_scalar

__all__ = [
    "AltForm",
    "Endo",
    "wedge",
    "contract",
    "endo_dot_form",
    "endo_bracket_map",
    "pfaffian",
    "pfaffian_of_matrix",
    "sharp",
    "pfaffian_poly",
    "pullback",
    "parse_form",
    "format_form",
    "covector",
    "vector",
]


def _sort_with_sign(idx: Sequence[int]):
    """Sort an index tuple, returning (sorted, sign) or (None, 0) on repeats."""
    lst = list(idx)
    sign = 1
    n = len(lst)
    for i in range(n):
        for j in range(n - 1 - i):
            if lst[j] > lst[j + 1]:
                lst[j], lst[j + 1] = lst[j + 1], lst[j]
                sign = -sign
            elif lst[j] == lst[j + 1]:
                return None, 0
    if any(lst[k] == lst[k + 1] for k in range(n - 1)):
        return None, 0
    return tuple(lst), sign


def covector(values: Iterable) -> tuple:
    return la.vec(values)


vector = covector


# ---------------------------------------------------------------------------
# endomorphisms
# ---------------------------------------------------------------------------


class Endo:
    """A square matrix acting on column coordinate vectors."""

    __slots__ = ("dim", "rows")

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = tuple(tuple(GaussianRational.coerce(x) for x in r) for r in rows)
        self.dim = len(self.rows)
        if any(len(r) != self.dim for r in self.rows):
            raise ValueError("endomorphism matrix must be square")

    @classmethod
    def coerce(cls, m) -> "Endo":
        return m if isinstance(m, Endo) else cls(m)

    @classmethod
    def identity(cls, n: int) -> "Endo":
        return cls(la.identity(n))

    @classmethod
    def zero(cls, n: int) -> "Endo":
        return cls(la.zeros(n, n))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "Endo":
        return cls(la.transpose(cols))

    @classmethod
    def from_images(cls, n: int, images: Mapping[int, Sequence]) -> "Endo":
        """Build from {j: image of e_j} with 1-based j; missing images are 0."""
        cols = [tuple(images.get(j + 1, la.zero_vec(n))) for j in range(n)]
        return cls.from_columns(cols)

    def column(self, j: int) -> tuple:
        """Image of e_{j+1} (0-based j)."""
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.dim)]

    def apply(self, v: Sequence) -> tuple:
        return la.matvec(self.rows, v)

    __call__ = apply

    def __matmul__(self, other: "Endo") -> "Endo":
        return Endo(la.matmul(self.rows, other.rows))

    def __add__(self, other: "Endo") -> "Endo":
        return Endo(la.mat_add(self.rows, other.rows))

    def __sub__(self, other: "Endo") -> "Endo":
        return Endo(la.mat_sub(self.rows, other.rows))

    def __neg__(self) -> "Endo":
        return Endo(la.mat_scale(-ONE, self.rows))

    def scale(self, c) -> "Endo":
        return Endo(la.mat_scale(c, self.rows))

    def __rmul__(self, c) -> "Endo":
        return self.scale(c)

    def transpose(self) -> "Endo":
        return Endo(la.transpose(self.rows))

    def power(self, k: int) -> "Endo":
        return Endo(la.mat_power(self.rows, k))

    def inverse(self) -> "Endo":
        return Endo(la.inverse(self.rows))

    def det(self) -> GaussianRational:
        return la.det(self.rows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def commutator(self, other: "Endo") -> "Endo":
        return self @ other - other @ self

    def __eq__(self, other):
        if not isinstance(other, Endo):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def tolist(self) -> list[list[str]]:
        return [[format_scalar(x) for x in r] for r in self.rows]

    def __repr__(self):
        return f"Endo({self.tolist()})"

    def direct_sum(self, other: "Endo") -> "Endo":
        n, m = self.dim, other.dim
        rows = [list(r) + [ZERO] * m for r in self.rows]
        rows += [[ZERO] * n + list(r) for r in other.rows]
        return Endo(rows)


# ---------------------------------------------------------------------------
# alternating forms
# ---------------------------------------------------------------------------


class AltForm:
    """An alternating k-form on a dim-dimensional space."""

    __slots__ = ("dim", "degree", "coeffs")

    def __init__(self, dim: int, degree: int, coeffs: Mapping | None = None):
        if degree > dim or degree < 0:
            raise ValueError(f"degree {degree} impossible in dimension {dim}")
        self.dim = dim
        self.degree = degree
        clean: dict = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise ValueError(f"index tuple {idx} does not have length {degree}")
            if any(i < 1 or i > dim for i in idx):
                raise ValueError(f"index tuple {idx} out of range for dim {dim}")
            key, sign = _sort_with_sign(idx)
            if key is None:
                continue
            c = GaussianRational.coerce(c)
            if not c:
                continue
            s = clean.get(key, ZERO) + (c if sign > 0 else -c)
            if s:
                clean[key] = s
            else:
                clean.pop(key, None)
        self.coeffs = clean

    @classmethod
    def _raw(cls, dim, degree, coeffs) -> "AltForm":
        a = cls.__new__(cls)
        a.dim = dim
        a.degree = degree
        a.coeffs = coeffs
        return a

    # constructors -----------------------------------------------------

    @classmethod
    def zero(cls, dim: int, degree: int) -> "AltForm":
        return cls._raw(dim, degree, {})

    @classmethod
    def basis(cls, dim: int, *indices: int) -> "AltForm":
        return cls(dim, len(indices), {tuple(indices): ONE})

    @classmethod
    def constant(cls, dim: int, c) -> "AltForm":
        return cls(dim, 0, {(): c})

    @classmethod
    def from_covector(cls, alpha: Sequence) -> "AltForm":
        n = len(alpha)
        return cls(n, 1, {(k + 1,): c for k, c in enumerate(alpha) if c})

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence]) -> "AltForm":
        """2-form with omega(e_i, e_j) = m[i][j]; m must be skew."""
        n = len(m)
        coeffs = {}
        for i in range(n):
            for j in range(i + 1, n):
                if m[i][j] != -m[j][i]:
                    raise ValueError("matrix is not skew-symmetric")
                if m[i][j]:
                    coeffs[(i + 1, j + 1)] = m[i][j]
            if m[i][i]:
                raise ValueError("matrix is not skew-symmetric")
        return cls(n, 2, coeffs)

    @classmethod
    def parse(cls, text: str, dim: int | None = None) -> "AltForm":
        return parse_form(text, dim)

    # arithmetic -------------------------------------------------------

    def _check(self, other: "AltForm"):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch {self.dim} vs {other.dim}")

    def __add__(self, other: "AltForm") -> "AltForm":
        self._check(other)
        if self.degree != other.degree:
            if not other.coeffs:
                return self
            if not self.coeffs:
                return other
            raise ValueError("cannot add forms of different degree")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return AltForm._raw(self.dim, self.degree, out)

    def __neg__(self) -> "AltForm":
        return AltForm._raw(self.dim, self.degree, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "AltForm") -> "AltForm":
        return self + (-other)

    def scale(self, c) -> "AltForm":
        c = GaussianRational.coerce(c)
        if not c:
            return AltForm.zero(self.dim, self.degree)
        return AltForm._raw(self.dim, self.degree, {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, c) -> "AltForm":
        if isinstance(c, AltForm):
            return wedge(self, c)
        return self.scale(c)

    def __rmul__(self, c) -> "AltForm":
        return self.scale(c)

    def __xor__(self, other: "AltForm") -> "AltForm":
        return wedge(self, other)

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, AltForm):
            return NotImplemented
        if self.dim != other.dim:
            return False
        if not self.coeffs and not other.coeffs:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.dim, self.degree, frozenset(self.coeffs.items())))

    def coefficient(self, *idx: int) -> GaussianRational:
        key, sign = _sort_with_sign(idx)
        if key is None:
            return ZERO
        c = self.coeffs.get(key, ZERO)
        return c if sign > 0 else -c

    # complex parts ----------------------------------------------------

    def real_part(self) -> "AltForm":
        return AltForm(self.dim, self.degree, {k: GaussianRational(c.re) for k, c in self.coeffs.items()})

    def imag_part(self) -> "AltForm":
        return AltForm(self.dim, self.degree, {k: GaussianRational(c.im) for k, c in self.coeffs.items()})

    def conjugate(self) -> "AltForm":
        return AltForm._raw(self.dim, self.degree, {k: c.conjugate() for k, c in self.coeffs.items()})

    def is_real(self) -> bool:
        return all(not c.im for c in self.coeffs.values())

    # evaluation -------------------------------------------------------

    def evaluate(self, *vectors: Sequence) -> GaussianRational:
        """a(X_1, ..., X_k) for coordinate vectors X_i."""
        if len(vectors) != self.degree:
            raise ValueError("wrong number of arguments")
        if self.degree == 0:
            return self.coeffs.get((), ZERO)
        total = ZERO
        for idx, c in self.coeffs.items():
            sub = [[v[i - 1] for i in idx] for v in vectors]
            d = la.det(sub) if self.degree > 1 else sub[0][0]
            if d:
                total = total + c * d
        return total

    def matrix(self) -> list[list[GaussianRational]]:
        """Gram matrix m[i][j] = omega(e_i, e_j) of a 2-form."""
        if self.degree != 2:
            raise ValueError("matrix() needs a 2-form")
        n = self.dim
        m = [[ZERO] * n for _ in range(n)]
        for (i, j), c in self.coeffs.items():
            m[i - 1][j - 1] = c
            m[j - 1][i - 1] = -c
        return m

    def as_covector(self) -> tuple:
        if self.degree != 1:
            raise ValueError("as_covector() needs a 1-form")
        return tuple(self.coeffs.get((k + 1,), ZERO) for k in range(self.dim))

    def pairing(self, X: Sequence, Y: Sequence) -> GaussianRational:
        """omega(X, Y) for a 2-form, without building determinants."""
        total = ZERO
        for (i, j), c in self.coeffs.items():
            a = X[i - 1] * Y[j - 1] - X[j - 1] * Y[i - 1]
            if a:
                total = total + c * a
        return total

    def __str__(self):
        return format_form(self)

    def __repr__(self):
        return f"AltForm({self.dim}, {format_form(self)!r})"


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def _merge_sign(a: tuple, b: tuple) -> int:
    inv = 0
    for x in a:
        for y in b:
            if x > y:
                inv += 1
            elif x == y:
                return 0
    return -1 if inv & 1 else 1


def wedge(a: AltForm, b: AltForm) -> AltForm:
    """Exterior product; signs from shuffle parity."""
    a._check(b)
    deg = a.degree + b.degree
    if deg > a.dim:
        return AltForm.zero(a.dim, a.dim)
    out: dict = {}
    for ia, ca in a.coeffs.items():
        for ib, cb in b.coeffs.items():
            s = _merge_sign(ia, ib)
            if not s:
                continue
            key = tuple(sorted(ia + ib))
            prod = ca * cb
            val = out.get(key, ZERO) + (prod if s > 0 else -prod)
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return AltForm._raw(a.dim, deg, out)


def contract(X: Sequence, a: AltForm) -> AltForm:
    """Interior product: (iota_X a)(Y_1, ...) = a(X, Y_1, ...)."""
    if len(X) != a.dim:
        raise ValueError("dimension mismatch")
    if a.degree == 0:
        raise ValueError("cannot contract a 0-form")
    out: dict = {}
    for idx, c in a.coeffs.items():
        for p, i in enumerate(idx):
            x = X[i - 1]
            if not x:
                continue
            key = idx[:p] + idx[p + 1:]
            term = c * x
            if p & 1:
                term = -term
            val = out.get(key, ZERO) + term
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return AltForm._raw(a.dim, a.degree - 1, out)


def endo_dot_form(D: Endo, rho: AltForm) -> AltForm:
    """(D.rho)(X, Y) = rho(DX, Y) + rho(X, DY) for a 2-form rho."""
    D = Endo.coerce(D)
    if D.dim != rho.dim:
        raise ValueError("dimension mismatch")
    if rho.degree != 2:
        raise ValueError("endo_dot_form needs a 2-form")
    m = rho.matrix()
    dt_m = la.matmul(la.transpose(D.rows), m)
    m_d = la.matmul(m, D.rows)
    return AltForm.from_matrix(la.mat_add(dt_m, m_d))


def endo_bracket_map(xi1: Endo, xi2: Endo, eta1: Endo, eta2: Endo) -> Endo:
    """{xi, eta}(v_1, v_2) = xi(v_1) eta(v_2) - xi(v_2) eta(v_1)."""
    xi1, xi2, eta1, eta2 = (Endo.coerce(m) for m in (xi1, xi2, eta1, eta2))
    if len({xi1.dim, xi2.dim, eta1.dim, eta2.dim}) != 1:
        raise ValueError("dimension mismatch")
    return xi1 @ eta2 - xi2 @ eta1


def pullback(P, a: AltForm) -> AltForm:
    """(P^* a)(X_1, ...) = a(P X_1, ...), with P an Endo or square matrix."""
    P = Endo.coerce(P)
    n = a.dim
    if P.dim != n:
        raise ValueError("dimension mismatch")
    if a.degree == 2:
        m = a.matrix()
        return AltForm.from_matrix(la.matmul(la.matmul(la.transpose(P.rows), m), P.rows))
    # P^* e^k = sum_j P[k][j] e^j
    ones = [AltForm(n, 1, {(j + 1,): P.rows[k][j] for j in range(n)}) for k in range(n)]
    out = AltForm.zero(n, a.degree)
    for idx, c in a.coeffs.items():
        term = AltForm.constant(n, c)
        for i in idx:
            term = wedge(term, ones[i - 1])
        out = out + term
    return out


# Pfaffians -------------------------------------------------------------


def pfaffian_of_matrix(m: Sequence[Sequence], zero=ZERO, one=ONE):
    """Pfaffian of a skew matrix with entries from any commutative ring.

    Expansion along the sparsest remaining row, memoized on the surviving
    index set.
    """
    n = len(m)
    if n % 2:
        raise ValueError("Pfaffian needs even dimension")
    memo: dict = {}

    def nz(x):
        return not x.is_zero() if isinstance(x, MultiPoly) else bool(x)

    def rec(idx: tuple):
        if not idx:
            return one
        if idx in memo:
            return memo[idx]
        # sparsest row first
        best_p = 0
        best_cnt = None
        for p, i in enumerate(idx):
            cnt = sum(1 for j in idx if j != i and nz(m[i][j]))
            if best_cnt is None or cnt < best_cnt:
                best_p, best_cnt = p, cnt
                if cnt == 0:
                    break
        if best_cnt == 0:
            memo[idx] = zero
            return zero
        i = idx[best_p]
        rest = idx[:best_p] + idx[best_p + 1:]
        lead_sign = -1 if best_p & 1 else 1
        total = zero
        for q, j in enumerate(rest):
            a = m[i][j]
            if not nz(a):
                continue
            sub = rest[:q] + rest[q + 1:]
            pf = rec(sub)
            if not nz(pf):
                continue
            sign = lead_sign * (1 if q % 2 == 0 else -1)
            term = a * pf
            total = total + term if sign > 0 else total - term
        memo[idx] = total
        return total

    return rec(tuple(range(n)))


def pfaffian(omega: AltForm) -> GaussianRational:
    """Pf with omega^n = n! Pf e^{1...2n}."""
    if omega.degree != 2:
        raise ValueError("pfaffian needs a 2-form")
    if omega.dim % 2:
        raise ValueError("pfaffian needs even dimension")
    return pfaffian_of_matrix(omega.matrix())


def pfaffian_poly(basis: Sequence[AltForm], variables: Sequence[str] | None = None) -> MultiPoly:
    """Pf(sum x_k omega_k) expanded exactly as a polynomial in the x_k."""
    if not basis:
        raise ValueError("empty basis")
    n = basis[0].dim
    if n % 2:
        raise ValueError("pfaffian needs even dimension")
    if variables is None:
        variables = [f"x{k + 1}" for k in range(len(basis))]
    variables = tuple(variables)
    if len(variables) != len(basis):
        raise ValueError("one variable per basis form is required")
    mats = [b.matrix() for b in basis]
    m = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            m[i][j] = MultiPoly.linear(variables, [mt[i][j] for mt in mats])
    return pfaffian_of_matrix(
        m, zero=MultiPoly(variables, {}), one=MultiPoly.const(variables, ONE)
    )


def sharp(omega: AltForm, alpha: Sequence) -> tuple:
    """The unique X with omega(X, .) = alpha."""
    if omega.degree != 2:
        raise ValueError("sharp needs a 2-form")
    if isinstance(alpha, AltForm):
        alpha = alpha.as_covector()
    m = omega.matrix()
    # omega(X, e_j) = sum_i X_i m[i][j]
    x = la.solve(la.transpose(m), list(alpha))
    if x is None or la.rank(m) < omega.dim:
        raise ValueError("omega is degenerate")
    return x


# text format ------------------------------------------------------------

_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\([^()]*\)|\d+(?:/\d+)?|i)\s*[·*]?\s*)?
        e(?P<idx>\{[\d,\s]+\}|\d+)\s*""",
    re.VERBOSE,
)


def parse_form(text: str, dim: int | None = None) -> AltForm:
    """Parse "e14+e23", "1/2·e18+e27", "(1+i)*e12", "e{1,10}" or "0"."""
    s = text.strip()
    if s in ("0", "+0", "-0"):
        if dim is None:
            raise ValueError("dimension needed to parse the zero form")
        return AltForm.zero(dim, 0)
    pos = 0
    terms = []
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"malformed form {text!r} at position {pos}")
        if terms and not m.group("sign"):
            raise ValueError(f"missing sign in {text!r} at position {pos}")
        coef = m.group("coef")
        if coef is None:
            c = ONE
        elif coef.startswith("("):
            c = parse_scalar(coef[1:-1])
        else:
            c = parse_scalar(coef)
        if m.group("sign") == "-":
            c = -c
        raw = m.group("idx")
        if raw.startswith("{"):
            idx = tuple(int(t) for t in raw[1:-1].split(",") if t.strip())
        else:
            idx = tuple(int(ch) for ch in raw)
        terms.append((idx, c))
        pos = m.end()
    degrees = {len(idx) for idx, _ in terms}
    if len(degrees) != 1:
        raise ValueError("mixed degrees in form text")
    deg = degrees.pop()
    top = max((max(idx) for idx, _ in terms if idx), default=0)
    if dim is None:
        dim = top
    elif top > dim:
        raise ValueError(f"index {top} exceeds dimension {dim}")
    out = AltForm.zero(dim, deg)
    for idx, c in terms:
        out = out + AltForm(dim, deg, {idx: c})
    return out


def format_form(a: AltForm) -> str:
    if not a.coeffs:
        return "0"
    wide = a.dim > 9
    parts = []
    for idx in sorted(a.coeffs):
        c = a.coeffs[idx]
        name = ("e{" + ",".join(map(str, idx)) + "}") if wide else "e" + "".join(map(str, idx))
        if c == ONE:
            piece = "+" + name
        elif c == -ONE:
            piece = "-" + name
        elif c.im:
            piece = f"+({format_scalar(c)})·{name}"
        else:
            cs = format_scalar(c)
            piece = (cs if cs.startswith("-") else "+" + cs) + "·" + name
        parts.append(piece)
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


def basis_forms(dim: int, degree: int) -> list[tuple]:
    """All strictly increasing 1-based index tuples of the given degree."""
    return list(combinations(range(1, dim + 1), degree))
