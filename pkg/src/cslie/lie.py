"""Lie algebras given by structure constants, and what can be computed
from them exactly: Jacobi residuals, the Chevalley-Eilenberg differential
with trivial coefficients, Betti numbers, the ascending central series and
derivation tests for endomorphisms.

Indices in the public API are 1-based (``e_1, ..., e_n``); coordinate
vectors are plain tuples indexed from 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from . import linalg as la
from .forms import AltForm, Endo, pullback, wedge
from .scalar import GaussianRational, ONE, ZERO

__all__ = [
    "LieAlgebra",
    "Subspace",
    "SeriesReport",
    "JacobiReport",
    "CohomologyReport",
    "EndoFlags",
    "bracket_eval",
    "validate_jacobi",
    "ce_diff",
    "d_matrix",
    "cohomology_dims",
    "central_series",
    "center",
    "derived_algebra",
    "endo_classify",
    "is_ideal",
    "is_isomorphism",
]


def _vector(dim: int, target) -> tuple:
    if isinstance(target, Mapping):
        v = [ZERO] * dim
        for k, c in target.items():
            k = int(k)
            if not 1 <= k <= dim:
                raise ValueError(f"target index {k} out of range")
            v[k - 1] = v[k - 1] + GaussianRational.coerce(c)
        return tuple(v)
    v = la.vec(target)
    if len(v) != dim:
        raise ValueError("bracket vector has wrong length")
    return v


class LieAlgebra:
    """A skew bracket on R^n (or Q(i)^n) given by structure constants.

    ``brackets`` maps 1-based pairs ``(i, j)`` to the coordinates of
    ``[e_i, e_j]``, either as a length-n sequence or a sparse {k: c} map.
    Pairs with ``i > j`` are folded in by antisymmetry.  The Jacobi
    identity is not enforced here; see :func:`validate_jacobi`.
    """

    __slots__ = ("dim", "brackets", "name", "_c", "_d1", "_dcache")

    def __init__(self, dim: int, brackets: Mapping | None = None, name: str | None = None):
        self.dim = dim
        self.name = name
        clean: dict = {}
        for (i, j), target in (brackets or {}).items():
            i, j = int(i), int(j)
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise ValueError(f"bracket index ({i},{j}) out of range")
            v = _vector(dim, target)
            if i == j:
                if any(v):
                    raise ValueError(f"[e{i},e{i}] must vanish")
                continue
            if i > j:
                i, j = j, i
                v = tuple(-x for x in v)
            old = clean.get((i, j))
            if old is not None:
                v = la.add_vec(old, v)
            clean[(i, j)] = v
        self.brackets = {k: v for k, v in sorted(clean.items()) if any(v)}
        z = (ZERO,) * dim
        c = [[z] * dim for _ in range(dim)]
        for (i, j), v in self.brackets.items():
            c[i - 1][j - 1] = v
            c[j - 1][i - 1] = tuple(-x for x in v)
        self._c = c
        self._d1 = None
        self._dcache = {}

    # construction helpers ---------------------------------------------

    @classmethod
    def abelian(cls, dim: int, name: str | None = None) -> "LieAlgebra":
        return cls(dim, {}, name=name)

    @classmethod
    def from_constants(cls, c: Sequence, name: str | None = None) -> "LieAlgebra":
        """From a dense table c[i][j] = [e_{i+1}, e_{j+1}]."""
        n = len(c)
        br = {}
        for i in range(n):
            for j in range(i + 1, n):
                if any(c[i][j]):
                    br[(i + 1, j + 1)] = tuple(c[i][j])
        return cls(n, br, name=name)

    def with_name(self, name: str) -> "LieAlgebra":
        return LieAlgebra(self.dim, self.brackets, name=name)

    # evaluation -------------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> tuple:
        """[e_{i+1}, e_{j+1}] with 0-based i, j."""
        return self._c[i][j]

    def bracket(self, X: Sequence, Y: Sequence) -> tuple:
        n = self.dim
        out = [ZERO] * n
        c = self._c
        for i in range(n):
            xi = X[i]
            if not xi:
                continue
            row = c[i]
            for j in range(n):
                yj = Y[j]
                if not yj or i == j:
                    continue
                v = row[j]
                coeff = xi * yj
                for k in range(n):
                    if v[k]:
                        out[k] = out[k] + coeff * v[k]
        return tuple(out)

    def ad(self, X: Sequence) -> Endo:
        """ad_X as an endomorphism: column j is [X, e_j]."""
        cols = [self.bracket(X, la.unit_vec(self.dim, j)) for j in range(self.dim)]
        return Endo.from_columns(cols) if cols else Endo([])

    def is_abelian(self) -> bool:
        return not self.brackets

    def structure_equal(self, other: "LieAlgebra") -> bool:
        return self.dim == other.dim and self.brackets == other.brackets

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.structure_equal(other)

    def __hash__(self):
        return hash((self.dim, tuple(self.brackets.items())))

    def is_real(self) -> bool:
        return all(not x.im for v in self.brackets.values() for x in v)

    def change_basis(self, P) -> "LieAlgebra":
        """Structure constants with respect to the basis b_k = P e_k."""
        P = Endo.coerce(P)
        Pinv = P.inverse()
        cols = P.columns()
        br = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                v = self.bracket(cols[i], cols[j])
                if any(v):
                    br[(i + 1, j + 1)] = Pinv.apply(v)
        return LieAlgebra(self.dim, br, name=self.name)

    def direct_sum(self, other: "LieAlgebra", name: str | None = None) -> "LieAlgebra":
        n = self.dim
        br = {}
        for (i, j), v in self.brackets.items():
            br[(i, j)] = tuple(v) + (ZERO,) * other.dim
        for (i, j), v in other.brackets.items():
            br[(i + n, j + n)] = (ZERO,) * n + tuple(v)
        return LieAlgebra(n + other.dim, br, name=name)

    def d1(self) -> list[AltForm]:
        """de^k for k = 1..n: de^k = -sum_{i<j} c_ij^k e^{ij}."""
        if self._d1 is None:
            n = self.dim
            coeffs = [dict() for _ in range(n)]
            for (i, j), v in self.brackets.items():
                for k in range(n):
                    if v[k]:
                        coeffs[k][(i, j)] = -v[k]
            self._d1 = [AltForm._raw(n, 2, coeffs[k]) for k in range(n)]
        return self._d1

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"LieAlgebra({self.dim}{label}, {len(self.brackets)} brackets)"


def bracket_eval(g: LieAlgebra, X: Sequence, Y: Sequence) -> tuple:
    if len(X) != g.dim or len(Y) != g.dim:
        raise ValueError("dimension mismatch")
    return g.bracket(X, Y)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


class Subspace:
    """A linear subspace stored by its reduced row echelon basis."""

    __slots__ = ("ambient", "basis")

    def __init__(self, ambient: int, vectors: Sequence[Sequence] = ()):
        self.ambient = ambient
        vs = [la.vec(v) for v in vectors]
        for v in vs:
            if len(v) != ambient:
                raise ValueError("vector length does not match ambient dimension")
        self.basis = la.row_basis(vs, ambient)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, [])

    @classmethod
    def whole(cls, n: int) -> "Subspace":
        return cls(n, la.identity(n))

    @classmethod
    def span_of(cls, n: int, indices: Sequence[int]) -> "Subspace":
        """Span of e_k for 1-based k."""
        return cls(n, [la.unit_vec(n, k - 1) for k in indices])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        if not any(v):
            return True
        if not self.basis:
            return False
        return la.rank(list(self.basis) + [list(v)]) == self.dim

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, tuple(self.basis)))

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient, la.intersect_spans(self.basis, other.basis, self.ambient))

    def image(self, D) -> "Subspace":
        D = Endo.coerce(D)
        return Subspace(self.ambient, [D.apply(b) for b in self.basis])

    def is_invariant(self, D) -> bool:
        D = Endo.coerce(D)
        return all(self.contains(D.apply(b)) for b in self.basis)

    def annihilator(self) -> list[tuple]:
        """Basis of the covectors vanishing on this subspace."""
        if not self.basis:
            return [la.unit_vec(self.ambient, k) for k in range(self.ambient)]
        return la.kernel(self.basis, self.ambient)

    def __repr__(self):
        return f"Subspace(dim {self.dim} in {self.ambient})"


# ---------------------------------------------------------------------------
# Jacobi and the Chevalley-Eilenberg complex
# ---------------------------------------------------------------------------


@dataclass
class JacobiReport:
    ok: bool
    violations: list = field(default_factory=list)  # (i, j, k, residual), 1-based

    def __bool__(self):
        return self.ok


def jacobiator(g: LieAlgebra, i: int, j: int, k: int) -> tuple:
    """[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j], 0-based."""
    c = g._c
    n = g.dim
    ek = la.unit_vec(n, k)
    ei = la.unit_vec(n, i)
    ej = la.unit_vec(n, j)
    r1 = g.bracket(c[i][j], ek)
    r2 = g.bracket(c[j][k], ei)
    r3 = g.bracket(c[k][i], ej)
    return tuple(a + b + d for a, b, d in zip(r1, r2, r3))


def validate_jacobi(g: LieAlgebra) -> JacobiReport:
    """Exhaustive Jacobi check over all basis triples i<j<k."""
    bad = []
    for i, j, k in combinations(range(g.dim), 3):
        r = jacobiator(g, i, j, k)
        if any(r):
            bad.append((i + 1, j + 1, k + 1, r))
    return JacobiReport(not bad, bad)


def _d_monomial(g: LieAlgebra, idx: tuple) -> AltForm:
    cache = g._dcache
    hit = cache.get(idx)
    if hit is not None:
        return hit
    n = g.dim
    d1 = g.d1()
    out = AltForm.zero(n, len(idx) + 1)
    for p, i in enumerate(idx):
        term = d1[i - 1]
        if not term:
            continue
        left = AltForm._raw(n, p, {idx[:p]: ONE})
        right = AltForm._raw(n, len(idx) - p - 1, {idx[p + 1:]: ONE})
        piece = wedge(wedge(left, term), right)
        out = out - piece if p & 1 else out + piece
    cache[idx] = out
    return out


def ce_diff(g: LieAlgebra, a: AltForm) -> AltForm:
    """Chevalley-Eilenberg differential with trivial coefficients."""
    if a.dim != g.dim:
        raise ValueError("dimension mismatch")
    if a.degree >= g.dim:
        return AltForm.zero(g.dim, g.dim)
    out = AltForm.zero(g.dim, a.degree + 1)
    for idx, c in a.coeffs.items():
        out = out + _d_monomial(g, idx).scale(c)
    return out


def d_matrix(g: LieAlgebra, k: int) -> tuple[list[list], list[tuple], list[tuple]]:
    """Matrix of d: Lambda^k -> Lambda^{k+1} plus the two monomial bases."""
    n = g.dim
    src = list(combinations(range(1, n + 1), k))
    dst = list(combinations(range(1, n + 1), k + 1))
    pos = {t: r for r, t in enumerate(dst)}
    m = [[ZERO] * len(src) for _ in dst]
    if k + 1 <= n:
        for col, idx in enumerate(src):
            for t, c in _d_monomial(g, idx).coeffs.items():
                m[pos[t]][col] = c
    return m, src, dst


@dataclass
class CohomologyReport:
    betti: list
    z_plus: int | None = None
    z_minus: int | None = None
    h_plus: int | None = None
    h_minus: int | None = None


def _forms_from_vectors(n: int, basis: list[tuple], vectors) -> list[AltForm]:
    out = []
    for v in vectors:
        out.append(AltForm(n, len(basis[0]) if basis else 0,
                           {t: c for t, c in zip(basis, v) if c}))
    return out


def closed_forms(g: LieAlgebra, k: int) -> list[AltForm]:
    """Basis of the closed k-forms."""
    m, src, _ = d_matrix(g, k)
    if not m:
        vecs = [la.unit_vec(len(src), r) for r in range(len(src))]
    else:
        vecs = la.kernel(m, len(src))
    return _forms_from_vectors(g.dim, src, vecs)


def exact_forms(g: LieAlgebra, k: int) -> list[AltForm]:
    """Basis of d(Lambda^{k-1})."""
    if k == 0:
        return []
    m, _, dst = d_matrix(g, k - 1)
    cols = la.transpose(m) if m else []
    vecs = la.row_basis(cols, len(dst))
    return _forms_from_vectors(g.dim, dst, vecs)


def cohomology_dims(g: LieAlgebra, J=None) -> CohomologyReport:
    """Betti numbers b_0..b_n, plus dims of Z_J^+-, H_J^+- when J is given."""
    n = g.dim
    ranks = []
    for k in range(n + 1):
        if k == n:
            ranks.append(0)
            continue
        m, _, _ = d_matrix(g, k)
        ranks.append(la.rank(m) if m else 0)
    betti = []
    from math import comb

    for k in range(n + 1):
        prev = ranks[k - 1] if k > 0 else 0
        betti.append(comb(n, k) - ranks[k] - prev)
    rep = CohomologyReport(betti)
    if J is not None and n >= 2:
        Jm = J.J if hasattr(J, "J") else Endo.coerce(J)
        src = list(combinations(range(1, n + 1), 2))
        dmat, _, _ = d_matrix(g, 2)
        # J^* on 2-forms in the monomial basis
        jstar = [[ZERO] * len(src) for _ in src]
        pos = {t: r for r, t in enumerate(src)}
        for col, t in enumerate(src):
            img = pullback(Jm, AltForm(n, 2, {t: ONE}))
            for key, c in img.coeffs.items():
                jstar[pos[key]][col] = c
        exact = exact_forms(g, 2)
        exact_vecs = [tuple(e.coeffs.get(t, ZERO) for t in src) for e in exact]
        for sign, attr_z, attr_h in ((1, "z_plus", "h_plus"), (-1, "z_minus", "h_minus")):
            eye = la.identity(len(src))
            shifted = [[jstar[r][c] - (eye[r][c] if sign > 0 else -eye[r][c])
                        for c in range(len(src))] for r in range(len(src))]
            system = (dmat if dmat else []) + shifted
            z = la.kernel(system, len(src))
            setattr(rep, attr_z, len(z))
            both = la.row_basis(list(z) + exact_vecs, len(src))
            setattr(rep, attr_h, len(both) - len(la.row_basis(exact_vecs, len(src))))
    return rep


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------


@dataclass
class SeriesReport:
    terms: list
    ascending_type: tuple
    nilpotency_step: int | None  # None marks a non-nilpotent algebra

    @property
    def nilpotent(self) -> bool:
        return self.nilpotency_step is not None


def _preimage_mod(g: LieAlgebra, W: Subspace) -> Subspace:
    """{X : [X, g] subset W}."""
    n = g.dim
    ann = W.annihilator()
    if not ann:
        return Subspace.whole(n)
    rows = []
    c = g._c
    for j in range(n):
        for eta in ann:
            row = [la.dot(eta, c[i][j]) for i in range(n)]
            if any(row):
                rows.append(row)
    if not rows:
        return Subspace.whole(n)
    return Subspace(n, la.kernel(rows, n))


def center(g: LieAlgebra) -> Subspace:
    return _preimage_mod(g, Subspace.zero(g.dim))


def central_series(g: LieAlgebra) -> SeriesReport:
    """Ascending central series g_1 = center, g_k = {X : [X,g] in g_{k-1}}."""
    n = g.dim
    if n == 0:
        return SeriesReport([], (), 0)
    terms = []
    prev = Subspace.zero(n)
    while True:
        nxt = _preimage_mod(g, prev)
        if nxt == prev:
            break
        terms.append(nxt)
        prev = nxt
        if nxt.dim == n:
            break
    typ = tuple(t.dim for t in terms)
    step = len(terms) if terms and terms[-1].dim == n else None
    return SeriesReport(terms, typ, step)


def derived_algebra(g: LieAlgebra) -> Subspace:
    return Subspace(g.dim, list(g.brackets.values()))


def is_ideal(g: LieAlgebra, a: Subspace) -> bool:
    n = g.dim
    for b in a.basis:
        for j in range(n):
            if not a.contains(g.bracket(b, la.unit_vec(n, j))):
                return False
    return True


# ---------------------------------------------------------------------------
# endomorphisms
# ---------------------------------------------------------------------------


@dataclass
class EndoFlags:
    is_derivation: bool
    is_nilpotent: bool
    is_automorphism: bool


def derivation_defect(g: LieAlgebra, D) -> list:
    """Pairs (i, j) (1-based) where D[e_i,e_j] != [De_i,e_j] + [e_i,De_j]."""
    D = Endo.coerce(D)
    n = g.dim
    cols = D.columns()
    bad = []
    for i, j in combinations(range(n), 2):
        lhs = D.apply(g._c[i][j])
        rhs = la.add_vec(g.bracket(cols[i], la.unit_vec(n, j)),
                         g.bracket(la.unit_vec(n, i), cols[j]))
        r = la.sub_vec(lhs, rhs)
        if any(r):
            bad.append((i + 1, j + 1, r))
    return bad


def is_derivation(g: LieAlgebra, D) -> bool:
    return not derivation_defect(g, D)


def is_nilpotent_endo(D) -> bool:
    D = Endo.coerce(D)
    return D.dim == 0 or D.power(D.dim).is_zero()


def is_isomorphism(g: LieAlgebra, h: LieAlgebra, P) -> bool:
    """P (columns = images of e_k of g in h) is invertible and bracket preserving."""
    P = Endo.coerce(P)
    if g.dim != h.dim or P.dim != g.dim:
        return False
    if not P.det():
        return False
    cols = P.columns()
    for i, j in combinations(range(g.dim), 2):
        if P.apply(g._c[i][j]) != h.bracket(cols[i], cols[j]):
            return False
    return True


def endo_classify(g: LieAlgebra, D) -> EndoFlags:
    D = Endo.coerce(D)
    if D.dim != g.dim:
        raise ValueError("dimension mismatch")
    return EndoFlags(
        is_derivation=is_derivation(g, D),
        is_nilpotent=is_nilpotent_endo(D),
        is_automorphism=is_isomorphism(g, g, D),
    )
