"""Complex structures, symplectic forms and complex symplectic pairs.

Conventions: J acts on coordinate column vectors, J^* alpha = alpha o J
on covectors, and the (1,0)-forms are alpha - i J^* alpha.  A real
2-form omega is J-symmetric when omega(JX, Y) = omega(X, JY); such a pair
(J, omega) with J integrable and omega closed and non-degenerate is a
complex symplectic structure, with holomorphic form omega - i omega(J., .).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from . import linalg as la
from .forms import (
    AltForm,
    Endo,
    pfaffian,
    pfaffian_of_matrix,
    pullback,
    wedge,
)
from .lie import (
    LieAlgebra,
    Subspace,
    _preimage_mod,
    center,
    central_series,
    ce_diff,
    closed_forms,
    validate_jacobi,
)
from .poly import MultiPoly
from .scalar import GaussianRational, I, ONE, ZERO

__all__ = [
    "ComplexStructure",
    "CSPair",
    "CSReport",
    "NijenhuisReport",
    "JSeriesReport",
    "HypercomplexReport",
    "Certificate",
    "standard_J",
    "standard_omega",
    "J0",
    "OMEGA0",
    "as_J",
    "complex_structure_from_forms",
    "one_zero_forms",
    "nijenhuis",
    "nijenhuis_pairs",
    "zero_two_defects",
    "nijenhuis_check",
    "is_j_symmetric",
    "validate_complex_symplectic",
    "form_bijection",
    "form_bijection_inverse",
    "adapted_basis",
    "ascending_J_series",
    "check_hypercomplex",
    "symplectic_existence",
    "complex_symplectic_existence",
    "find_nonzero_point",
]


# ---------------------------------------------------------------------------
# complex structures
# ---------------------------------------------------------------------------


class ComplexStructure:
    """An endomorphism J with J^2 = -id, checked exactly on construction."""

    __slots__ = ("J",)

    def __init__(self, J):
        J = Endo.coerce(J)
        if J.dim % 2 or J @ J != -Endo.identity(J.dim):
            raise ValueError("J^2 != -id")
        self.J = J

    @property
    def dim(self) -> int:
        return self.J.dim

    def apply(self, v):
        return self.J.apply(v)

    def dual(self, alpha: Sequence) -> tuple:
        """J^* alpha = alpha o J."""
        return la.matvec(la.transpose(self.J.rows), alpha)

    def __eq__(self, other):
        if isinstance(other, ComplexStructure):
            return self.J == other.J
        if isinstance(other, Endo):
            return self.J == other
        return NotImplemented

    def __hash__(self):
        return hash(self.J)

    def __repr__(self):
        return f"ComplexStructure({self.J.tolist()})"


def as_J(J) -> ComplexStructure:
    return J if isinstance(J, ComplexStructure) else ComplexStructure(J)


def standard_J(dim: int) -> ComplexStructure:
    """J_p = sum e^{2i} (x) e_{2i-1} - e^{2i-1} (x) e_{2i}: J e_{2i} = e_{2i-1}."""
    if dim % 2:
        raise ValueError("odd dimension")
    rows = la.zeros(dim, dim)
    for i in range(0, dim, 2):
        rows[i][i + 1] = ONE
        rows[i + 1][i] = -ONE
    return ComplexStructure(rows)


def standard_omega(dim: int) -> AltForm:
    """omega_p = sum e^{4j-3,4j} + e^{4j-2,4j-1}."""
    if dim % 4:
        raise ValueError("dimension must be divisible by 4")
    coeffs = {}
    for b in range(0, dim, 4):
        coeffs[(b + 1, b + 4)] = ONE
        coeffs[(b + 2, b + 3)] = ONE
    return AltForm(dim, 2, coeffs)


J0 = standard_J(4)
OMEGA0 = standard_omega(4)


def complex_structure_from_forms(forms: Sequence) -> ComplexStructure:
    """The J whose (1,0)-forms are spanned by the given complex covectors.

    Writing phi = a + i b with a, b real, phi is of type (1,0) iff
    J^* a = -b and J^* b = a.
    """
    vecs = [f.as_covector() if isinstance(f, AltForm) else la.vec(f) for f in forms]
    if not vecs:
        raise ValueError("no forms given")
    n = len(vecs[0])
    if 2 * len(vecs) != n:
        raise ValueError("need exactly dim/2 forms")
    src, img = [], []
    for v in vecs:
        a = tuple(GaussianRational(x.re) for x in v)
        b = tuple(GaussianRational(x.im) for x in v)
        src += [a, b]
        img += [tuple(-x for x in b), a]
    # J^T src_k = img_k, i.e. J^T S = T with S, T having these columns.
    S = la.transpose(src)
    T = la.transpose(img)
    try:
        Jt = la.matmul(T, la.inverse(S))
    except ZeroDivisionError:
        raise ValueError("real and imaginary parts do not form a basis") from None
    return ComplexStructure(la.transpose(Jt))


def one_zero_forms(J) -> list[tuple]:
    """An echelon basis of the (1,0)-covectors alpha - i J^* alpha."""
    J = as_J(J)
    n = J.dim
    vecs = []
    for k in range(n):
        e = la.unit_vec(n, k)
        je = J.dual(e)
        vecs.append(tuple(a - I * b for a, b in zip(e, je)))
    return la.row_basis(vecs, n)


# ---------------------------------------------------------------------------
# integrability
# ---------------------------------------------------------------------------


def nijenhuis(g: LieAlgebra, J, X, Y) -> tuple:
    """N_J(X,Y) = [X,Y] + J([JX,Y] + [X,JY]) - [JX,JY]."""
    J = as_J(J).J
    JX, JY = J.apply(X), J.apply(Y)
    inner = la.add_vec(g.bracket(JX, Y), g.bracket(X, JY))
    out = la.add_vec(g.bracket(X, Y), J.apply(inner))
    return la.sub_vec(out, g.bracket(JX, JY))


def nijenhuis_pairs(g: LieAlgebra, J) -> list:
    """(i, j, N_J(e_i, e_j)) for every basis pair, 1-based, where nonzero."""
    J = as_J(J)
    n = g.dim
    bad = []
    for i, j in combinations(range(n), 2):
        r = nijenhuis(g, J, la.unit_vec(n, i), la.unit_vec(n, j))
        if any(r):
            bad.append((i + 1, j + 1, r))
    return bad


def zero_two_defects(g: LieAlgebra, J) -> list:
    """Failures of the second integrability criterion.

    d of a (1,0)-form has no (0,2)-part iff it kills every pair of
    (0,1)-vectors e_a + iJe_a, e_b + iJe_b.  Entries are (k, a, b, value)
    with k indexing the (1,0)-basis.
    """
    J = as_J(J)
    n = g.dim
    zero_one = []
    for a in range(n):
        e = la.unit_vec(n, a)
        je = J.apply(e)
        zero_one.append(tuple(x + I * y for x, y in zip(e, je)))
    bad = []
    for k, phi in enumerate(one_zero_forms(J)):
        dphi = ce_diff(g, AltForm(n, 1, {(m + 1,): c for m, c in enumerate(phi) if c}))
        if not dphi:
            continue
        for a, b in combinations(range(n), 2):
            val = dphi.pairing(zero_one[a], zero_one[b])
            if val:
                bad.append((k + 1, a + 1, b + 1, val))
    return bad


@dataclass
class NijenhuisReport:
    integrable: bool
    violations: list = field(default_factory=list)   # (i, j, N_J(e_i,e_j))
    zero_two: list = field(default_factory=list)     # (k, a, b, value)
    routes_agree: bool = True

    def __bool__(self):
        return self.integrable


def nijenhuis_check(g: LieAlgebra, J) -> NijenhuisReport:
    """Integrability by the Nijenhuis tensor, cross-checked by (0,2)-parts."""
    J = as_J(J)
    if J.dim != g.dim:
        raise ValueError("dimension mismatch")
    pairs = nijenhuis_pairs(g, J)
    defects = zero_two_defects(g, J)
    agree = (not pairs) == (not defects)
    return NijenhuisReport(not pairs and not defects, pairs, defects, agree)


# ---------------------------------------------------------------------------
# complex symplectic pairs
# ---------------------------------------------------------------------------


def is_j_symmetric(J, omega: AltForm) -> bool:
    """omega(JX, Y) = omega(X, JY) on all basis pairs."""
    Jr = as_J(J).J.rows
    m = omega.matrix()
    return la.mat_eq(la.matmul(la.transpose(Jr), m), la.matmul(m, Jr))


@dataclass
class CSReport:
    jacobi: bool
    integrable: bool
    closed: bool
    nondegenerate: bool
    j_symmetric: bool
    real: bool = True
    nijenhuis: NijenhuisReport | None = None
    d_omega: AltForm | None = None
    pfaffian: GaussianRational | None = None

    @property
    def ok(self) -> bool:
        return (self.jacobi and self.integrable and self.closed
                and self.nondegenerate and self.j_symmetric and self.real)

    def failures(self) -> list[str]:
        names = ("jacobi", "integrable", "closed", "nondegenerate", "j_symmetric", "real")
        return [n for n in names if not getattr(self, n)]


@dataclass
class CSPair:
    g: LieAlgebra
    J: ComplexStructure
    omega: AltForm
    report: CSReport | None = None

    @property
    def dim(self) -> int:
        return self.g.dim

    @property
    def ok(self) -> bool:
        return self.report is not None and self.report.ok


def validate_complex_symplectic(g: LieAlgebra, J, omega: AltForm) -> CSPair:
    """Check integrability, closedness, non-degeneracy and J-symmetry."""
    J = as_J(J)
    if J.dim != g.dim or omega.dim != g.dim or omega.degree != 2:
        raise ValueError("dimension mismatch")
    jac = validate_jacobi(g).ok
    nij = nijenhuis_check(g, J)
    dom = ce_diff(g, omega)
    pf = pfaffian(omega) if g.dim % 2 == 0 else ZERO
    rep = CSReport(
        jacobi=jac,
        integrable=nij.integrable,
        closed=not dom,
        nondegenerate=bool(pf),
        j_symmetric=is_j_symmetric(J, omega),
        real=omega.is_real() and g.is_real(),
        nijenhuis=nij,
        d_omega=dom,
        pfaffian=pf,
    )
    return CSPair(g, J, omega, rep)


def form_bijection(J, omega: AltForm) -> AltForm:
    """omega_C = omega - i omega(J., .), a (2,0)-form."""
    J = as_J(J)
    if not is_j_symmetric(J, omega):
        raise ValueError("omega is not J-symmetric")
    m = omega.matrix()
    jm = la.matmul(la.transpose(J.J.rows), m)   # omega(Je_i, e_j)
    return omega - AltForm.from_matrix(jm).scale(I)


def form_bijection_inverse(omega_c: AltForm) -> AltForm:
    return omega_c.real_part()


# ---------------------------------------------------------------------------
# adapted bases
# ---------------------------------------------------------------------------


def _solve_in(U: Subspace, rows: list, rhs: list) -> tuple | None:
    """A solution w of rows·w = rhs with w in U."""
    cons = list(rows) + [list(a) for a in U.annihilator()]
    vals = list(rhs) + [ZERO] * (len(cons) - len(rows))
    return la.solve(cons, vals)


def adapted_basis(g: LieAlgebra | None, J, omega: AltForm, through: Subspace | None = None) -> Endo:
    """A basis P (columns) with P^{-1} J P = J_p and P^* omega = omega_p.

    Blocks (X1, X2, X3, X4) = (J u, u, J w, w) with omega(u, w) = 0 and
    omega(Ju, w) = 1; the omega-orthogonal complement of a block is again
    J-invariant and the construction recurses on it.  With ``through`` the
    last block's X3, X4 span the given J-invariant plane.
    """
    J = as_J(J)
    n = omega.dim
    if n % 4:
        raise ValueError("dimension must be divisible by 4")
    if not pfaffian(omega):
        raise ValueError("omega is degenerate")
    if not is_j_symmetric(J, omega):
        raise ValueError("omega is not J-symmetric")
    Jm = J.J
    m = omega.matrix()

    def om_row(x):           # covector omega(x, .)
        return la.matvec(la.transpose(m), x)

    U = Subspace.whole(n)
    blocks = []
    last = None
    if through is not None:
        if through.dim != 2 or not through.is_invariant(Jm):
            raise ValueError("through must be a J-invariant plane")
        w = through.basis[-1]
        jw = Jm.apply(w)
        u = la.solve([list(om_row(w)), list(om_row(jw))], [ZERO, -ONE])
        # omega(u, w) = 0 and omega(Ju, w) = omega(u, Jw) = 1 -> omega(Jw, u) = -1
        if u is None:
            raise ValueError("no adapted block through the given plane")
        last = (Jm.apply(u), u, jw, w)
        block_span = Subspace(n, last)
        U = _omega_complement(m, block_span)
    while U.dim:
        u = U.basis[1] if U.dim > 1 else U.basis[0]
        ju = Jm.apply(u)
        w = _solve_in(U, [list(om_row(u)), list(om_row(ju))], [ZERO, ONE])
        if w is None:
            raise ValueError("omega restricted to the complement is degenerate")
        blk = (ju, u, Jm.apply(w), w)
        blocks.append(blk)
        U = U.intersect(_omega_complement(m, Subspace(n, blk)))
    if last is not None:
        blocks.append(last)
    cols = [v for blk in blocks for v in blk]
    P = Endo.from_columns(cols)
    Jp = standard_J(n).J
    if P.inverse() @ Jm @ P != Jp or pullback(P, omega) != standard_omega(n):
        raise AssertionError("adapted basis failed its own check")
    return P


def _omega_complement(m, S: Subspace) -> Subspace:
    n = len(m)
    rows = [list(la.matvec(la.transpose(m), b)) for b in S.basis]
    if not rows:
        return Subspace.whole(n)
    return Subspace(n, la.kernel(rows, n))


# ---------------------------------------------------------------------------
# ascending J-compatible series
# ---------------------------------------------------------------------------


@dataclass
class JSeriesReport:
    terms: list
    dims: tuple
    label: str                 # SnN | nilpotent | weakly-non-nilpotent | n/a
    quasi_nilpotent: bool
    a1_matches_center: bool


def ascending_J_series(g: LieAlgebra, J) -> JSeriesReport:
    """a_k(J) = {X : [X,g] and [JX,g] lie in a_{k-1}(J)}."""
    J = as_J(J)
    Jm = J.J
    n = g.dim
    terms = []
    prev = Subspace.zero(n)
    while True:
        Y = _preimage_mod(g, prev)
        nxt = Y.intersect(Y.image(Jm))
        if nxt == prev:
            break
        terms.append(nxt)
        prev = nxt
        if nxt.dim == n:
            break
    z = center(g)
    a1 = terms[0] if terms else Subspace.zero(n)
    matches = a1 == z.intersect(z.image(Jm))
    if not central_series(g).nilpotent:
        label = "n/a"
    elif a1.dim == 0:
        label = "SnN"
    elif terms[-1].dim == n:
        label = "nilpotent"
    else:
        label = "weakly-non-nilpotent"
    return JSeriesReport(terms, tuple(t.dim for t in terms), label, a1.dim > 0, matches)


# ---------------------------------------------------------------------------
# hypercomplex triples
# ---------------------------------------------------------------------------


@dataclass
class HypercomplexReport:
    squares: bool
    integrable: tuple
    ij_equals_k: bool
    anticommute: bool

    @property
    def ok(self) -> bool:
        return self.squares and all(self.integrable) and self.ij_equals_k and self.anticommute


def check_hypercomplex(g: LieAlgebra, I_, J_, K_) -> HypercomplexReport:
    mats = [Endo.coerce(x.J if isinstance(x, ComplexStructure) else x) for x in (I_, J_, K_)]
    minus = -Endo.identity(g.dim)
    squares = all(m @ m == minus for m in mats)
    integ = tuple(squares and not nijenhuis_pairs(g, m) for m in mats) if squares else (False,) * 3
    Im, Jm, Km = mats
    anti = all(a @ b == -(b @ a) for a, b in ((Im, Jm), (Jm, Km), (Km, Im)))
    return HypercomplexReport(squares, integ, Im @ Jm == Km, anti)


# ---------------------------------------------------------------------------
# existence certificates
# ---------------------------------------------------------------------------


@dataclass
class Certificate:
    """WITNESS with a form, or IMPOSSIBLE with an identically zero polynomial.

    ``basis`` spans the constrained form space and ``polynomial`` is the
    Pfaffian (or top-power coefficient) of sum x_k basis_k.
    """

    kind: str                           # "witness" | "impossibility"
    problem: str                        # "symplectic" | "complex_symplectic"
    basis: list
    polynomial: MultiPoly
    witness: AltForm | None = None      # real symplectic form
    witness_complex: AltForm | None = None
    point: tuple | None = None

    @property
    def impossible(self) -> bool:
        return self.kind == "impossibility"

    @property
    def label(self) -> str:
        return "IMPOSSIBLE" if self.impossible else "WITNESS"


def _order():
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def find_nonzero_point(p: MultiPoly) -> tuple | None:
    """A small integer point with p != 0, chosen one variable at a time.

    Each variable is fixed to the first of 0, 1, -1, 2, ... that keeps the
    partially evaluated polynomial nonzero, which always exists.
    """
    if p.is_zero():
        return None
    point = []
    cur = p
    for name in p.variables:
        for v in _order():
            nxt = cur.substitute(name, v)
            if not nxt.is_zero():
                point.append(v)
                cur = nxt
                break
    return tuple(point)


def _combine(basis: Sequence[AltForm], point: Sequence) -> AltForm:
    out = AltForm.zero(basis[0].dim, 2)
    for c, b in zip(point, basis):
        if c:
            out = out + b.scale(c)
    return out


def symplectic_existence(g: LieAlgebra) -> Certificate:
    """Exact decision of whether g carries a symplectic form."""
    if g.dim % 2:
        raise ValueError("odd dimension")
    basis = closed_forms(g, 2)
    names = [f"x{k + 1}" for k in range(len(basis))]
    if not basis:
        return Certificate("impossibility", "symplectic", [], MultiPoly(names, {}))
    mats = [b.matrix() for b in basis]
    m = [[MultiPoly.linear(names, [mt[i][j] for mt in mats]) for j in range(g.dim)]
         for i in range(g.dim)]
    poly = pfaffian_of_matrix(m, zero=MultiPoly(names, {}), one=MultiPoly.const(names, ONE))
    point = find_nonzero_point(poly)
    if point is None:
        return Certificate("impossibility", "symplectic", basis, poly)
    w = _combine(basis, point)
    if ce_diff(g, w) or not pfaffian(w):
        raise AssertionError("witness failed to validate")
    return Certificate("witness", "symplectic", basis, poly, witness=w, point=point)


def complex_symplectic_existence(g: LieAlgebra, J) -> Certificate:
    """Exact decision of whether (g, J) carries a closed non-degenerate (2,0)-form.

    The closed (2,0)-forms are computed over Q(i) in the basis phi^j ^ phi^k
    of an echelon (1,0)-coframe; the polynomial is the Pfaffian of the
    coefficient matrix, so omega_C^m = m! Pf phi^{1..2m}.
    """
    J = as_J(J)
    n = g.dim
    if n % 4:
        raise ValueError("dimension must be divisible by 4")
    if nijenhuis_pairs(g, J):
        raise ValueError("J is not integrable")
    phis = [AltForm(n, 1, {(k + 1,): c for k, c in enumerate(v) if c}) for v in one_zero_forms(J)]
    m = len(phis)
    pairs = list(combinations(range(m), 2))
    psis = [wedge(phis[j], phis[k]) for j, k in pairs]
    # closed combinations: kernel of the matrix of d on these 2-forms
    dpsis = [ce_diff(g, p) for p in psis]
    keys = sorted({t for d in dpsis for t in d.coeffs})
    if keys:
        dm = [[d.coeffs.get(t, ZERO) for d in dpsis] for t in keys]
        kern = la.kernel(dm, len(psis))
    else:
        kern = [la.unit_vec(len(psis), r) for r in range(len(psis))]
    names = [f"x{k + 1}" for k in range(len(kern))]
    basis = []
    for v in kern:
        f = AltForm.zero(n, 2)
        for c, p in zip(v, psis):
            if c:
                f = f + p.scale(c)
        basis.append(f)
    if not kern:
        return Certificate("impossibility", "complex_symplectic", [], MultiPoly(names, {}))
    mat = [[MultiPoly(names, {}) for _ in range(m)] for _ in range(m)]
    for col, (j, k) in enumerate(pairs):
        entry = MultiPoly.linear(names, [v[col] for v in kern])
        mat[j][k] = entry
        mat[k][j] = -entry
    poly = pfaffian_of_matrix(mat, zero=MultiPoly(names, {}), one=MultiPoly.const(names, ONE))
    point = find_nonzero_point(poly)
    if point is None:
        return Certificate("impossibility", "complex_symplectic", basis, poly)
    wc = _combine(basis, point)
    w = wc.real_part()
    pair = validate_complex_symplectic(g, J, w)
    if not pair.ok:
        raise AssertionError(f"witness failed to validate: {pair.report.failures()}")
    return Certificate("witness", "complex_symplectic", basis, poly,
                       witness=w, witness_complex=wc, point=point)
