"""Complex symplectic reduction and oxidation.

Oxidation builds g = V + gbar + V^* from a complex symplectic algebra
(gbar, Jbar, omegabar) of dimension 4n and data (f, S, tau) on a real plane
V with basis v_1, v_2 = I v_1.  The basis of g is ordered

    (v_1, v_2, e_1, ..., e_4n, v^1, v^2)

with I v_1 = v_2, I^* v^1 = -v^2, I^* v^2 = v^1 and
omega((v, X, a), (w, Y, c)) = omegabar(X, Y) + a(w) - c(v).

Reduction goes the other way: it divides a^perp by an isotropic J-invariant
ideal a, realising the quotient on a fixed J-invariant complement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from . import linalg as la
from .forms import AltForm, Endo, endo_dot_form, sharp
from .lie import (
    LieAlgebra,
    Subspace,
    center,
    central_series,
    ce_diff,
    derivation_defect,
    is_ideal,
    is_nilpotent_endo,
    validate_jacobi,
)
from .scalar import GaussianRational, ONE, ZERO
from .structures import (
    ComplexStructure,
    CSPair,
    as_J,
    validate_complex_symplectic,
)

__all__ = [
    "OxidationData",
    "InducedTensors",
    "OxidationReport",
    "GeneralReport",
    "OxidationError",
    "ReductionError",
    "trivial_base",
    "orth_complement",
    "reduce",
    "reduce_with_basis",
    "induced_tensors",
    "validate_oxidation_data",
    "general_conditions",
    "assemble",
    "oxidize",
    "oxidizable",
    "oxidation_labels",
    "bracket_table",
    "format_bracket_table",
    "CONDITION_NAMES",
]

HALF = GaussianRational(Fraction(1, 2))


class OxidationError(ValueError):
    def __init__(self, message: str, failed=()):
        super().__init__(message)
        self.failed = tuple(failed)


class ReductionError(ValueError):
    def __init__(self, message: str, reason: str):
        super().__init__(message)
        self.reason = reason


def trivial_base() -> CSPair:
    """The zero-dimensional complex symplectic algebra."""
    g = LieAlgebra(0, {}, name="0")
    J = ComplexStructure(Endo([]))
    return CSPair(g, J, AltForm.zero(0, 0), None)


# ---------------------------------------------------------------------------
# data and induced tensors
# ---------------------------------------------------------------------------


def _cov(n, x) -> tuple:
    if x is None:
        return (ZERO,) * n
    if isinstance(x, AltForm):
        return x.as_covector()
    v = la.vec(x)
    if len(v) != n:
        raise ValueError("covector has wrong length")
    return v


@dataclass
class OxidationData:
    """(f, S, tau) on a base pair; V has the fixed basis v_1, v_2 = I v_1."""

    base: CSPair
    f1: Endo = None
    f2: Endo = None
    S11: tuple = None
    S12: tuple = None
    S22: tuple = None
    tau: tuple = (ZERO, ZERO)
    label: str | None = None

    def __post_init__(self):
        n = self.base.g.dim
        self.f1 = Endo.zero(n) if self.f1 is None else Endo.coerce(self.f1)
        self.f2 = Endo.zero(n) if self.f2 is None else Endo.coerce(self.f2)
        if self.f1.dim != n or self.f2.dim != n:
            raise ValueError("f has wrong dimension")
        self.S11 = _cov(n, self.S11)
        self.S12 = _cov(n, self.S12)
        self.S22 = _cov(n, self.S22)
        t = la.vec(self.tau)
        if len(t) != 2 or any(x.im for x in t):
            raise ValueError("tau must be two real scalars")
        self.tau = t

    @property
    def n(self) -> int:
        return self.base.g.dim

    def f(self, i: int) -> Endo:
        return self.f1 if i == 0 else self.f2

    def S(self, i: int, j: int) -> tuple:
        if i == j:
            return self.S11 if i == 0 else self.S22
        return self.S12


@dataclass
class InducedTensors:
    beta1: AltForm | None
    beta2: AltForm | None
    nu: tuple
    Aform: tuple


def induced_tensors(data: OxidationData) -> InducedTensors:
    """beta_i = -f_i.omegabar, nu = Jbar(S11 + S22)^sharp, A = 1/2 (S11 + S22) o Jbar."""
    n = data.n
    if n == 0:
        return InducedTensors(None, None, (), ())
    om = data.base.omega
    Jb = data.base.J.J
    b1 = -endo_dot_form(data.f1, om)
    b2 = -endo_dot_form(data.f2, om)
    s = la.add_vec(data.S11, data.S22)
    nu = Jb.apply(sharp(om, s))
    A = la.scale_vec(HALF, la.matvec(la.transpose(Jb.rows), s))
    return InducedTensors(b1, b2, nu, A)


# ---------------------------------------------------------------------------
# assembly
# ---------------------------------------------------------------------------


def oxidation_labels(n: int) -> list[str]:
    return ["v1", "v2"] + [f"e{k}" for k in range(1, n + 1)] + ["v^1", "v^2"]


def _g_component(data: OxidationData, A: tuple, i: int, X: tuple) -> tuple:
    """g(v_i, X) in V^* coordinates: sum_j (S_ij(X) + A(v_i,v_j)(X)) v^j."""
    out = []
    for j in range(2):
        val = la.dot(data.S(i, j), X)
        if i != j:
            a = la.dot(A, X)
            val = val + (a if i == 0 else -a)
        out.append(val)
    return tuple(out)


def assemble(data: OxidationData, name: str | None = None) -> CSPair:
    """The bracket, J and omega on V + gbar + V^*, with no validation."""
    n = data.n
    N = n + 4
    t = induced_tensors(data)
    gb = data.base.g
    br: dict = {}

    def put(i, j, vec):
        if any(vec):
            br[(i, j)] = tuple(vec)

    # [v1, v2] = nu + tau
    put(1, 2, [ZERO, ZERO] + list(t.nu) + list(data.tau))
    for i in range(2):
        f = data.f(i)
        for k in range(n):
            X = la.unit_vec(n, k)
            ga = _g_component(data, t.Aform, i, X)
            put(i + 1, k + 3, [ZERO, ZERO] + list(f.column(k)) + list(ga))
    for k, l in combinations(range(n), 2):
        gpart = gb.bracket_basis(k, l)
        b = (t.beta1.coefficient(k + 1, l + 1), t.beta2.coefficient(k + 1, l + 1))
        put(k + 3, l + 3, [ZERO, ZERO] + list(gpart) + list(b))
    g = LieAlgebra(N, br, name=name)

    Jrows = la.zeros(N, N)
    # J v1 = v2, J v2 = -v1, J v^1 = -v^2, J v^2 = v^1
    Jrows[1][0] = ONE
    Jrows[0][1] = -ONE
    Jrows[N - 1][N - 2] = -ONE
    Jrows[N - 2][N - 1] = ONE
    Jb = data.base.J.J
    for r in range(n):
        for c in range(n):
            Jrows[r + 2][c + 2] = Jb.rows[r][c]
    J = ComplexStructure(Jrows)

    coeffs = {}
    if n:
        for (a, b), c in data.base.omega.coeffs.items():
            coeffs[(a + 2, b + 2)] = c
    # omega(v_i, v^i) = -1
    coeffs[(1, N - 1)] = -ONE
    coeffs[(2, N)] = -ONE
    omega = AltForm(N, 2, coeffs)
    return CSPair(g, J, omega, None)


# ---------------------------------------------------------------------------
# validation: basis form
# ---------------------------------------------------------------------------

CONDITION_NAMES = {
    "derivation": "condition: f ∈ V*⊗Der",
    "i": "condition (i): f2 - Jbar f1 ∈ sp(gbar, Jbar, omegabar)",
    "ii": "condition (ii): {f1,f2} = ad_nu",
    "iii": "condition (iii): dS = f.(f.omegabar) - 1/2 d(Jbar^*(S11+S22))",
    "iv": "condition (iv): S_i2 o f1 - S_i1 o f2 = omegabar(f_i nu, .) + 3/2 (S11+S22) o Jbar o f_i",
}


@dataclass
class OxidationReport:
    conditions: dict            # name -> bool
    residuals: dict             # name -> list of nonzero residuals
    general: "GeneralReport | None" = None

    @property
    def ok(self) -> bool:
        return all(self.conditions.values())

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.conditions.items() if not v]

    @property
    def routes_agree(self) -> bool:
        return self.general is None or self.general.ok == self.ok

    def messages(self) -> list[str]:
        return [CONDITION_NAMES[k] for k in self.failed]


def _form_dot(D: Endo, rho: AltForm) -> AltForm:
    return endo_dot_form(D, rho)


def validate_oxidation_data(data: OxidationData, cross_check: bool = True) -> OxidationReport:
    """Basis-form conditions (i)-(iv), plus the derivation condition.

    With ``cross_check`` the seven general conditions are recomputed from
    the assembled bracket (see :func:`general_conditions`) and attached.
    """
    n = data.n
    conds: dict = {}
    res: dict = {}
    if n == 0:
        for k in ("derivation", "i", "ii", "iii", "iv"):
            conds[k] = True
            res[k] = []
        rep = OxidationReport(conds, res)
        if cross_check:
            rep.general = general_conditions(data)
        return rep
    gb = data.base.g
    Jb = data.base.J.J
    om = data.base.omega
    t = induced_tensors(data)
    f1, f2 = data.f1, data.f2

    bad = [(1,) + d for d in derivation_defect(gb, f1)] + [(2,) + d for d in derivation_defect(gb, f2)]
    conds["derivation"], res["derivation"] = not bad, bad

    h = f2 - Jb @ f1
    bad = []
    if h @ Jb != Jb @ h:
        bad.append(("commute", (h @ Jb - Jb @ h).tolist()))
    hw = _form_dot(h, om)
    if hw:
        bad.append(("h.omega", hw))
    conds["i"], res["i"] = not bad, bad

    lhs = f1 @ f2 - f2 @ f1
    ad = gb.ad(t.nu)
    conds["ii"] = lhs == ad
    res["ii"] = [] if conds["ii"] else [(lhs - ad).tolist()]

    s = la.add_vec(data.S11, data.S22)
    js = AltForm.from_covector(la.matvec(la.transpose(Jb.rows), s))
    djs = ce_diff(gb, js).scale(HALF)
    bad = []
    f1w, f2w = _form_dot(f1, om), _form_dot(f2, om)
    targets = {
        "S11": _form_dot(f1, f1w),
        "S22": _form_dot(f2, f2w),
        "S12": _form_dot(f1, f2w) - djs,
    }
    for key, cov in (("S11", data.S11), ("S22", data.S22), ("S12", data.S12)):
        r = ce_diff(gb, AltForm.from_covector(cov)) - targets[key]
        if r:
            bad.append((key, r))
    conds["iii"], res["iii"] = not bad, bad

    bad = []
    sJ = la.matvec(la.transpose(Jb.rows), s)       # (S11+S22) o Jbar
    three_half = GaussianRational(Fraction(3, 2))
    for i in range(2):
        fi = data.f(i)
        left = la.sub_vec(la.matvec(la.transpose(f1.rows), data.S(i, 1)),
                          la.matvec(la.transpose(f2.rows), data.S(i, 0)))
        w_fnu = contract_first(om, fi.apply(t.nu))
        right = la.add_vec(w_fnu, la.scale_vec(three_half, la.matvec(la.transpose(fi.rows), sJ)))
        r = la.sub_vec(left, right)
        if any(r):
            bad.append((i + 1, r))
    conds["iv"], res["iv"] = not bad, bad

    rep = OxidationReport(conds, res)
    if cross_check:
        rep.general = general_conditions(data)
    return rep


def contract_first(om: AltForm, X: Sequence) -> tuple:
    """The covector omega(X, .)."""
    m = om.matrix()
    return la.matvec(la.transpose(m), X)


# ---------------------------------------------------------------------------
# validation: the seven general conditions, read off an assembled bracket
# ---------------------------------------------------------------------------


@dataclass
class GeneralReport:
    conditions: dict            # "1".."7" -> bool

    @property
    def ok(self) -> bool:
        return all(self.conditions.values())


def general_conditions(data: OxidationData) -> GeneralReport:
    """The seven conditions in coordinate-free form.

    The tensors nu, f, g, beta are extracted from the assembled bracket
    table (not from the data), split g = S + A there, and every condition
    is evaluated over all v, w, u in {v_1, v_2}.
    """
    n = data.n
    if n == 0:
        return GeneralReport({str(k): True for k in range(1, 8)})
    pair = assemble(data)
    g = pair.g
    N = g.dim
    gb = data.base.g
    Jb = data.base.J.J
    om = data.base.omega

    def part(vec):                   # (gbar part, V^* part)
        return tuple(vec[2:2 + n]), tuple(vec[N - 2:])

    V = [la.unit_vec(N, 0), la.unit_vec(N, 1)]
    E = [la.unit_vec(N, 2 + k) for k in range(n)]
    Iv = [V[1], tuple(-x for x in V[0])]        # I v_1 = v_2, I v_2 = -v_1
    I_coords = [(ZERO, ONE), (-ONE, ZERO)]        # coordinates of I v_a in (v_1, v_2)

    nu = {}
    for a, b in product(range(2), repeat=2):
        nu[(a, b)] = part(g.bracket(V[a], V[b]))[0]
    f = []
    gt = []                      # gt[a][k] = g(v_a, e_k) in V^* coordinates
    for a in range(2):
        cols, gs = [], []
        for k in range(n):
            x, y = part(g.bracket(V[a], E[k]))
            cols.append(x)
            gs.append(y)
        f.append(Endo.from_columns(cols))
        gt.append(gs)
    beta = [AltForm.zero(n, 2), AltForm.zero(n, 2)]
    for k, l in combinations(range(n), 2):
        _, y = part(g.bracket(E[k], E[l]))
        for c in range(2):
            if y[c]:
                beta[c] = beta[c] + AltForm(n, 2, {(k + 1, l + 1): y[c]})

    def gten(a, b):              # g(v_a, ., v_b) as a covector on gbar
        return tuple(gt[a][k][b] for k in range(n))

    S = {(a, b): la.scale_vec(HALF, la.add_vec(gten(a, b), gten(b, a)))
         for a, b in product(range(2), repeat=2)}
    A = {(a, b): la.scale_vec(HALF, la.sub_vec(gten(a, b), gten(b, a)))
         for a, b in product(range(2), repeat=2)}

    # S_I(v_a, v_b) = S(I v_a, v_b); tr(T)(v, w) = T(v, w) - T(w, v)
    def S_I(a, b):
        c0, c1 = I_coords[a]
        return la.add_vec(la.scale_vec(c0, S[(0, b)]), la.scale_vec(c1, S[(1, b)]))

    def trS_I(a, b):
        return la.sub_vec(S_I(a, b), S_I(b, a))

    JbT = la.transpose(Jb.rows)
    conds = {}

    # 1. f in V^* (x) Der, I^*f - Jbar o f in V^* (x) sp
    ok = all(not derivation_defect(gb, f[a]) for a in range(2))
    for a in range(2):
        c0, c1 = I_coords[a]
        h = f[0].scale(c0) + f[1].scale(c1) - Jb @ f[a]
        if h @ Jb != Jb @ h or endo_dot_form(h, om):
            ok = False
    conds["1"] = ok

    # 2. beta = -f.omegabar
    conds["2"] = all(beta[a] == -endo_dot_form(f[a], om) for a in range(2))

    # 3. nu = Jbar tr(S_I)^sharp
    ok = True
    for a, b in product(range(2), repeat=2):
        want = Jb.apply(sharp(om, trS_I(a, b)))
        if tuple(nu[(a, b)]) != tuple(want):
            ok = False
    conds["3"] = ok

    # 4. A = 1/2 nu -| omegabar = 1/2 Jbar^* tr(S_I)
    ok = True
    for a, b in product(range(2), repeat=2):
        x = la.scale_vec(HALF, contract_first(om, nu[(a, b)]))
        y = la.scale_vec(HALF, la.matvec(JbT, trS_I(a, b)))
        if tuple(A[(a, b)]) != tuple(x) or x != y:
            ok = False
    conds["4"] = ok

    # 5. Alt(S o f)(v,w,X,u) = -1/2 om(f(u, nu(v,w)), X) - 3/4 om(nu(v,w), f(u,X))
    ok = True
    q = GaussianRational(Fraction(3, 4))
    for a, b, u in product(range(2), repeat=3):
        for k in range(n):
            X = la.unit_vec(n, k)
            lhs = HALF * (la.dot(S[(a, u)], f[b].apply(X)) - la.dot(S[(b, u)], f[a].apply(X)))
            nvw = nu[(a, b)]
            rhs = (-HALF) * om.pairing(f[u].apply(nvw), X) - q * om.pairing(nvw, f[u].apply(X))
            if lhs != rhs:
                ok = False
                break
        if not ok:
            break
    conds["5"] = ok

    # 6. {f, f}(v, w) = ad_nu(v,w)
    conds["6"] = all(f[a] @ f[b] - f[b] @ f[a] == gb.ad(nu[(a, b)])
                     for a, b in product(range(2), repeat=2))

    # 7. dS(v,w) = f(v).(f(w).omegabar) - 1/2 d(Jbar^* tr(S_I))(v,w)
    ok = True
    for a, b in product(range(2), repeat=2):
        lhs = ce_diff(gb, AltForm.from_covector(S[(a, b)]))
        js = AltForm.from_covector(la.matvec(JbT, trS_I(a, b)))
        rhs = endo_dot_form(f[a], endo_dot_form(f[b], om)) - ce_diff(gb, js).scale(HALF)
        if lhs != rhs:
            ok = False
    conds["7"] = ok
    return GeneralReport(conds)


# ---------------------------------------------------------------------------
# oxidation
# ---------------------------------------------------------------------------


def oxidize(data: OxidationData, strict: bool = True, name: str | None = None) -> CSPair:
    """The oxidation of the base by (f, S, tau), validated.

    With ``strict`` invalid data is refused with the failing conditions;
    otherwise the table is assembled regardless and the attached report
    tells what holds.
    """
    rep = validate_oxidation_data(data, cross_check=False)
    if strict and not rep.ok:
        raise OxidationError("invalid oxidation data: " + "; ".join(rep.messages()), rep.failed)
    pair = assemble(data, name=name)
    out = validate_complex_symplectic(pair.g, pair.J, pair.omega)
    if rep.ok and not out.report.ok:
        raise AssertionError(f"valid data produced an invalid pair: {out.report.failures()}")
    if (rep.ok and data.n and central_series(data.base.g).nilpotent
            and is_nilpotent_endo(data.f1) and is_nilpotent_endo(data.f2)
            and not central_series(out.g).nilpotent):
        raise AssertionError("nilpotent base and f gave a non-nilpotent oxidation")
    return out


def oxidizable(pair: CSPair) -> Subspace | None:
    """A J-invariant plane in z(g) ∩ J z(g), or None when that is zero."""
    g = pair.g
    Jm = as_J(pair.J).J
    z = center(g)
    zz = z.intersect(z.image(Jm))
    if not zz.dim:
        return None
    x = zz.basis[0]
    return Subspace(g.dim, [x, Jm.apply(x)])


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------


def orth_complement(g: LieAlgebra | None, omega: AltForm, a: Subspace) -> Subspace:
    """{X : omega(X, a) = 0}."""
    from .forms import pfaffian

    if omega.dim % 2 or not pfaffian(omega):
        raise ValueError("omega is degenerate")
    n = omega.dim
    m = omega.matrix()
    rows = [list(la.matvec(m, b)) for b in a.basis]   # omega(X, b) = sum X_i m[i][b]
    if not rows:
        return Subspace.whole(n)
    return Subspace(n, la.kernel(rows, n))


def _complement_basis(pair: CSPair, a: Subspace, a_perp: Subspace) -> list[tuple]:
    n = pair.g.dim
    Jm = as_J(pair.J).J
    span = a_perp
    V = []
    for k in range(n):
        e = la.unit_vec(n, k)
        if span.contains(e):
            continue
        V += [e, Jm.apply(e)]
        span = span + Subspace(n, [e, Jm.apply(e)])
        if span.dim == n:
            break
    C = orth_complement(pair.g, pair.omega, a + Subspace(n, V))
    return list(C.basis)


def reduce_with_basis(pair: CSPair, a: Subspace, complement: Sequence | None = None):
    """(reduced pair, basis of the complement used to realise a^perp / a)."""
    g = pair.g
    n = g.dim
    Jm = as_J(pair.J).J
    if not is_ideal(g, a):
        raise ReductionError("a is not an ideal", "not an ideal")
    if not a.is_invariant(Jm):
        raise ReductionError("a is not J-invariant", "not J-invariant")
    if any(pair.omega.pairing(x, y) for x in a.basis for y in a.basis):
        raise ReductionError("a is not omega-isotropic", "not isotropic")
    a_perp = orth_complement(g, pair.omega, a)
    if all(center(g).contains(b) for b in a.basis):
        for v in g.brackets.values():
            if not a_perp.contains(v):
                raise AssertionError("central a but [g,g] not inside a^perp")
    C = list(complement) if complement is not None else _complement_basis(pair, a, a_perp)
    m = len(C)
    if m + a.dim != a_perp.dim or any(not a_perp.contains(c) for c in C):
        raise ReductionError("complement does not fit a^perp / a", "bad complement")
    if m == 0:
        return trivial_base(), C
    # coordinates with respect to C + a
    frame = [list(c) for c in C] + [list(b) for b in a.basis]
    cols = la.transpose(frame)

    def coords(x):
        sol = la.solve(cols, list(x))
        if sol is None:
            raise AssertionError("vector outside a^perp")
        return tuple(sol[:m])

    br = {}
    for i, j in combinations(range(m), 2):
        v = coords(g.bracket(C[i], C[j]))
        if any(v):
            br[(i + 1, j + 1)] = v
    gbar = LieAlgebra(m, br)
    Jbar = Endo.from_columns([coords(Jm.apply(c)) for c in C])
    obar = AltForm(m, 2, {(i + 1, j + 1): pair.omega.pairing(C[i], C[j])
                          for i, j in combinations(range(m), 2)})
    out = validate_complex_symplectic(gbar, Jbar, obar)
    if pair.report is None or pair.report.ok:
        if not out.report.ok and validate_complex_symplectic(g, pair.J, pair.omega).report.ok:
            raise AssertionError(f"reduction of a valid pair failed: {out.report.failures()}")
    return out, C


def reduce(pair: CSPair, a: Subspace, complement: Sequence | None = None) -> CSPair:
    """(a^perp / a, Jbar, omegabar) on the canonical J-invariant complement."""
    return reduce_with_basis(pair, a, complement)[0]


# ---------------------------------------------------------------------------
# bracket tables
# ---------------------------------------------------------------------------


def bracket_table(g: LieAlgebra, labels: Sequence[str]) -> dict:
    """{(label_i, label_j): {label_k: coefficient}} for nonzero brackets."""
    out = {}
    for (i, j), v in g.brackets.items():
        out[(labels[i - 1], labels[j - 1])] = {labels[k]: c for k, c in enumerate(v) if c}
    return out


def _fmt_vec(terms: dict) -> str:
    from .scalar import format_scalar

    parts = []
    for lab, c in terms.items():
        if c == ONE:
            parts.append("+" + lab)
        elif c == -ONE:
            parts.append("-" + lab)
        else:
            cs = format_scalar(c)
            if c.im and c.re:
                cs = f"({cs})"
            parts.append((cs if cs.startswith("-") else "+" + cs) + "·" + lab)
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


def format_bracket_table(g: LieAlgebra, labels: Sequence[str] | None = None) -> list[str]:
    labels = labels or [f"e{k}" for k in range(1, g.dim + 1)]
    return [f"[{a},{b}]={_fmt_vec(t)}" for (a, b), t in bracket_table(g, labels).items()]
