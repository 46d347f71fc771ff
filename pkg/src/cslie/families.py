"""Parametrized families and the worked-example catalog.

* the two 4-dimensional nilpotent complex symplectic normal forms and the
  rescaling maps F(w) acting on omega(z);
* oxidation data on (h3+R, J0, omega0) and (R^4, J0, omega0), cases (i)-(v);
* the three complex-equation families of strongly non-nilpotent structures
  in dimension 8;
* the named examples (quaternionic Heisenberg, Iwasawa, Nakamura, ...).

Real parameters are rationals.  The rotation angle of h3+R case (iv) is a
rational point (cos, sin) on the unit circle, parametrized by t = tan(phi/2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from . import linalg as la
from .forms import AltForm, Endo, parse_form, pullback, wedge
from .lie import LieAlgebra, Subspace, central_series, is_isomorphism
from .notation import ComplexEqnSet, parse_salamon, realify, realify_coframe
from .redox import OxidationData, assemble, validate_oxidation_data
from .scalar import GaussianRational, I, ONE, ZERO
from .structures import (
    CSPair,
    J0,
    OMEGA0,
    ascending_J_series,
    complex_structure_from_forms,
    validate_complex_symplectic,
)

__all__ = [
    "FamilyError",
    "FamilySpec",
    "FAMILIES",
    "family_spec",
    "h3R_base",
    "R4_base",
    "four_dim_normal_forms",
    "omega_z",
    "F_matrix",
    "FWReport",
    "fw_transform",
    "normalizing_w",
    "h3R_family",
    "R4_family",
    "matrix_L",
    "kernel_L",
    "build_family",
    "SNN_COEFFS",
    "snn_equations",
    "snn_family",
    "snn_predicate",
    "SnNMember",
    "CatalogEntry",
    "example_catalog",
    "g_ABC",
    "iwasawa_omega",
    "nakamura_omega",
    "step3_data",
    "step4_uncorrected_data",
    "step4_data",
    "qh7_reoxidation_data",
    "qh7_identification",
    "classify8_sweep",
]

HALF = GaussianRational(Fraction(1, 2))


class FamilyError(ValueError):
    """A parameter assignment violating the family's predicates."""


def _q(x) -> GaussianRational:
    return GaussianRational.coerce(x)


def _real(name, x) -> GaussianRational:
    v = _q(x)
    if v.im:
        raise FamilyError(f"parameter {name} must be real")
    return v


def _cov(entries: Mapping[int, object], n: int = 4) -> tuple:
    v = [ZERO] * n
    for k, c in entries.items():
        v[k - 1] = _q(c)
    return tuple(v)


def _block(M) -> Endo:
    """The endomorphism (0 0; M 0) of R^4: e1, e2 -> <e3, e4> through M."""
    rows = la.zeros(4, 4)
    for r in range(2):
        for c in range(2):
            rows[r + 2][c] = _q(M[r][c])
    return Endo(rows)


# ---------------------------------------------------------------------------
# dimension four
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def h3R_base() -> CSPair:
    """h3 + R with [e1, e2] = e3, J0 and omega0 (shared, treat as read-only)."""
    g = LieAlgebra(4, {(1, 2): {3: 1}}, name="h3+R")
    return validate_complex_symplectic(g, J0, OMEGA0)


@lru_cache(maxsize=None)
def R4_base() -> CSPair:
    return validate_complex_symplectic(LieAlgebra.abelian(4, name="R4"), J0, OMEGA0)


def four_dim_normal_forms() -> list[CSPair]:
    out = [h3R_base(), R4_base()]
    assert all(p.ok for p in out)
    return out


def omega_z(z) -> AltForm:
    """Re(z)(e14 + e23) + Im(z)(e13 - e24)."""
    z = _q(z)
    re, im = GaussianRational(z.re), GaussianRational(z.im)
    return AltForm(4, 2, {(1, 4): re, (2, 3): re, (1, 3): im, (2, 4): -im})


def F_matrix(w) -> Endo:
    w = _q(w)
    n2 = GaussianRational(w.norm())
    re, im = GaussianRational(w.re), GaussianRational(w.im)
    return Endo([[re, -im, 0, 0], [im, re, 0, 0], [0, 0, n2, 0], [0, 0, 0, n2]])


@dataclass
class FWReport:
    w: GaussianRational
    z: GaussianRational
    image: GaussianRational          # w z |w|^2
    automorphism: dict               # base name -> bool
    preserves_J: bool
    law: bool

    @property
    def ok(self) -> bool:
        return self.preserves_J and self.law and all(self.automorphism.values())


def fw_transform(w, z) -> FWReport:
    """Check that F(w) is a J0-preserving automorphism and F(w)^*omega(z) = omega(w z |w|^2)."""
    w, z = _q(w), _q(z)
    if not w or not z:
        raise ValueError("w and z must be nonzero")
    F = F_matrix(w)
    auto = {}
    for p in four_dim_normal_forms():
        auto[p.g.name] = is_isomorphism(p.g, p.g, F)
    image = w * z * GaussianRational(w.norm())
    law = pullback(F, omega_z(z)) == omega_z(image)
    return FWReport(w, z, image, auto, F @ J0.J == J0.J @ F, law)


def _cube_root(q: Fraction) -> Fraction | None:
    if q < 0:
        r = _cube_root(-q)
        return None if r is None else -r

    def icbrt(n: int) -> int | None:
        r = round(n ** (1 / 3)) if n < 2**50 else int(n ** (1 / 3))
        for c in (r - 1, r, r + 1):
            if c >= 0 and c**3 == n:
                return c
        lo, hi = 0, n + 1
        while lo < hi:
            mid = (lo + hi) // 2
            if mid**3 < n:
                lo = mid + 1
            else:
                hi = mid
        return lo if lo**3 == n else None

    a, b = icbrt(q.numerator), icbrt(q.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def normalizing_w(z) -> GaussianRational | None:
    """w in Q(i) with w z |w|^2 = 1, when one exists.

    With q = 1/z one needs |w|^2 w = q, so |w|^2 = N(q)^(1/3); a solution
    in Q(i) exists iff N(q) is a rational cube.
    """
    z = _q(z)
    if not z:
        raise ValueError("z must be nonzero")
    q = ONE / z
    r = _cube_root(q.norm())
    if r is None:
        return None
    w = q / GaussianRational(r)
    assert w * z * GaussianRational(w.norm()) == ONE
    return w


# ---------------------------------------------------------------------------
# family specifications
# ---------------------------------------------------------------------------


@dataclass
class FamilySpec:
    """A case of one of the classification results.

    ``discrete`` parameters enter the data non-linearly or carry a
    predicate; for a fixed assignment of them the data (and the oxidized
    structure constants) are affine in the ``continuous`` ones.
    """

    id: str
    base: str
    discrete: tuple
    continuous: tuple
    predicates: tuple = ()           # (text, fn(params) -> bool)
    discrete_domain: Callable | None = None   # values -> bool, on grid points

    @property
    def params(self) -> tuple:
        return self.discrete + self.continuous

    def check(self, params: Mapping) -> None:
        for text, fn in self.predicates:
            if not fn(params):
                raise FamilyError(f"{self.id}: predicate violated: {text}")


_HEAD_H3R = ("alpha1", "alpha2", "beta1", "beta2", "gamma1", "gamma2")
_TAU = ("tau1", "tau2")


def _nz(*names):
    return lambda p: any(p.get(n, 0) for n in names)


FAMILIES: dict[str, FamilySpec] = {
    "h3R-i": FamilySpec("h3R-i", "h3R", ("alpha4", "gamma4"), _HEAD_H3R + _TAU,
                        (("alpha4 != 0 or gamma4 != 0", _nz("alpha4", "gamma4")),)),
    "h3R-ii": FamilySpec("h3R-ii", "h3R", (), ("a", "b", "c", "d") + _HEAD_H3R + _TAU),
    "h3R-iii": FamilySpec("h3R-iii", "h3R", ("a", "b"), _HEAD_H3R + _TAU,
                          (("b != 0", _nz("b")),)),
    "h3R-iv": FamilySpec("h3R-iv", "h3R", ("t",), _HEAD_H3R + _TAU),
    "h3R-v": FamilySpec("h3R-v", "h3R", (), ("alpha4", "gamma4") + _HEAD_H3R + _TAU),
    "R4-i": FamilySpec("R4-i", "R4", ("a", "b", "c"), _HEAD_H3R + _TAU,
                       (("a >= 0", lambda p: _q(p.get("a", 0)).re >= 0),)),
    "R4-ii": FamilySpec("R4-ii", "R4", ("a", "b"),
                        ("alpha1", "alpha2", "alpha3", "alpha4", "beta1", "beta2", "gamma1", "gamma2") + _TAU,
                        (("b != 0", _nz("b")),
                         ("(a, b) != (0, 1)", lambda p: (_q(p.get("a", 0)), _q(p.get("b", 0))) != (ZERO, ONE)))),
    "R4-iii": FamilySpec("R4-iii", "R4", (),
                         ("alpha1", "alpha2", "alpha3", "alpha4", "beta1", "beta2", "beta3", "beta4",
                          "gamma1", "gamma2") + _TAU),
    "R4-iv": FamilySpec("R4-iv", "R4", (),
                        ("alpha1", "alpha2", "alpha3", "alpha4", "beta1", "beta2", "gamma1", "gamma2") + _TAU),
    "R4-v": FamilySpec("R4-v", "R4", (),
                       tuple(f"{s}{k}" for s in ("alpha", "beta", "gamma") for k in range(1, 5)) + _TAU),
}


def family_spec(fid: str) -> FamilySpec:
    try:
        return FAMILIES[fid]
    except KeyError:
        raise FamilyError(f"unknown family {fid!r}; known: {', '.join(FAMILIES)}") from None


def _get(params: Mapping, name: str) -> GaussianRational:
    return _real(name, params.get(name, 0))


def _check_names(spec: FamilySpec, params: Mapping):
    allowed = set(spec.params)
    if spec.id == "R4-i":
        allowed |= {f"k{j}" for j in range(1, 7)}
        allowed |= {"alpha3", "alpha4", "beta3", "beta4", "gamma3", "gamma4"}
    if spec.id == "h3R-iv":
        allowed.add("cs")
    unknown = set(params) - allowed
    if unknown:
        raise FamilyError(f"{spec.id}: unknown parameters {sorted(unknown)}")


def _finish(base: CSPair, f1, f2, S11, S12, S22, params, label) -> OxidationData:
    data = OxidationData(base, f1, f2, S11, S12, S22,
                         (_get(params, "tau1"), _get(params, "tau2")), label=label)
    rep = validate_oxidation_data(data, cross_check=False)
    if not rep.ok:
        raise AssertionError(f"{label}: emitted data fails {rep.failed}")
    return data


# h3 + R ------------------------------------------------------------------


def _rotation(t) -> tuple:
    t = _get({"t": t}, "t")
    den = ONE + t * t
    return ((ONE - t * t) / den, (t + t) / den)


def h3R_family(case: str, params: Mapping | None = None, base: CSPair | None = None) -> OxidationData:
    """Oxidation data on (h3+R, J0, omega0) for case i..v.

    S11 = a1 e1 + a2 e2 + a4 e4, S22 = b1 e1 + b2 e2 - a4 e4,
    S12 = g1 e1 + g2 e2 + g4 e4; f_1, f_2 are (0 0; A 0), (0 0; B 0).
    """
    params = dict(params or {})
    spec = family_spec(f"h3R-{case}")
    _check_names(spec, params)
    spec.check(params)
    g = {n: _get(params, n) for n in ("alpha1", "alpha2", "alpha4", "beta1", "beta2", "gamma1", "gamma2", "gamma4")}
    if case in ("ii", "iii", "iv") and (g["alpha4"] or g["gamma4"]):
        raise FamilyError(f"h3R-{case}: alpha4 = gamma4 = 0 is required")
    if case == "i":
        A, B = [[2, 0], [0, 0]], [[0, -2], [0, 0]]
    elif case == "ii":
        a, b, c, d = (_get(params, n) for n in "abcd")
        A = [[a + 1, -b], [b, a - 1]]
        B = [[c, -d - 1], [d - 1, c]]
    elif case == "iii":
        a, b = _get(params, "a"), _get(params, "b")
        A, B = [[1, 0], [0, 1]], [[a, -b], [b, a]]
    elif case == "iv":
        if "cs" in params:
            co, si = (_q(x) for x in params["cs"])
            if co * co + si * si != ONE:
                raise FamilyError("h3R-iv: (cos, sin) must lie on the unit circle")
        else:
            co, si = _rotation(params.get("t", 0))
        A, B = [[co, -si], [si, co]], [[0, 0], [0, 0]]
    elif case == "v":
        A = B = [[0, 0], [0, 0]]
    else:
        raise FamilyError(f"unknown h3R case {case!r}")
    S11 = _cov({1: g["alpha1"], 2: g["alpha2"], 4: g["alpha4"]})
    S22 = _cov({1: g["beta1"], 2: g["beta2"], 4: -g["alpha4"]})
    S12 = _cov({1: g["gamma1"], 2: g["gamma2"], 4: g["gamma4"]})
    return _finish(base or h3R_base(), _block(A), _block(B), S11, S12, S22, params, f"h3R-{case}")


# R^4 --------------------------------------------------------------------


def matrix_L(a, b, c) -> list[list[GaussianRational]]:
    """The 4x6 matrix cutting out (alpha3, alpha4, beta3, beta4, gamma3, gamma4) in case (i)."""
    a, b, c = _q(a), _q(b), _q(c)
    h = HALF
    return [
        [-b, (a - 2 * c + 7) * h, ZERO, (a + 5) * h, a + 1, ZERO],
        [(2 * c - a + 7) * h, -b, (5 - a) * h, ZERO, ZERO, a - 1],
        [(1 - c) * h, b * h, (2 * a - c + 3) * h, b * h, -b, 1 - c],
        [-b * h, -(c + 1) * h, -b * h, (2 * a - c - 3) * h, c + 1, -b],
    ]


def kernel_L(a, b, c) -> list[tuple]:
    """Echelon basis of ker L(a, b, c) by exact elimination."""
    return la.kernel(matrix_L(a, b, c), 6)


def R4_family(case: str, params: Mapping | None = None, base: CSPair | None = None) -> OxidationData:
    """Oxidation data on (R^4, J0, omega0) for case i..v.

    For case (i) the tail (alpha3, alpha4, beta3, beta4, gamma3, gamma4) is
    sum_j k_j K_j over the echelon kernel basis K_j of L(a, b, c); it may
    instead be given explicitly, and must then lie in ker L.
    """
    params = dict(params or {})
    spec = family_spec(f"R4-{case}")
    _check_names(spec, params)
    spec.check(params)
    al = [_get(params, f"alpha{k}") for k in range(1, 5)]
    be = [_get(params, f"beta{k}") for k in range(1, 5)]
    ga = [_get(params, f"gamma{k}") for k in range(1, 5)]
    if case == "i":
        a, b, c = (_get(params, n) for n in "abc")
        A = [[a + 1, 0], [0, a - 1]]
        B = [[b, -c - 1], [c - 1, b]]
        L = matrix_L(a, b, c)
        K = la.kernel(L, 6)
        explicit = [n for n in ("alpha3", "alpha4", "beta3", "beta4", "gamma3", "gamma4") if n in params]
        ks = [n for n in params if n.startswith("k")]
        if explicit and ks:
            raise FamilyError("R4-i: give the tail either explicitly or by kernel coordinates")
        if explicit:
            tail = (al[2], al[3], be[2], be[3], ga[2], ga[3])
            if any(la.matvec(L, tail)):
                raise FamilyError("R4-i: tail not in ker L")
        else:
            for n in ks:
                if int(n[1:]) > len(K):
                    raise FamilyError(f"R4-i: ker L has dimension {len(K)}; no coordinate {n}")
            tail = (ZERO,) * 6
            for j, v in enumerate(K, start=1):
                tail = la.add_vec(tail, la.scale_vec(_get(params, f"k{j}"), v))
            assert not any(la.matvec(L, tail))
        al[2], al[3], be[2], be[3], ga[2], ga[3] = tail
    elif case == "ii":
        a, b = _get(params, "a"), _get(params, "b")
        A, B = [[1, 0], [0, 1]], [[a, -b], [b, a]]
        be[2] = b * al[2] - a * al[3]
        be[3] = a * al[2] + b * al[3]
        ga[2] = a * HALF * al[2] + (b - 1) * HALF * al[3]
        ga[3] = (1 - b) * HALF * al[2] + a * HALF * al[3]
    elif case == "iii":
        A, B = [[1, 0], [0, 1]], [[0, -1], [1, 0]]
        ga[2] = HALF * (al[3] - be[3])
        ga[3] = -HALF * (al[2] - be[2])
    elif case == "iv":
        A, B = [[1, 0], [0, 1]], [[0, 0], [0, 0]]
        be[2] = be[3] = ZERO
        ga[2] = -HALF * al[3]
        ga[3] = HALF * al[2]
    elif case == "v":
        A = B = [[0, 0], [0, 0]]
    else:
        raise FamilyError(f"unknown R4 case {case!r}")
    S11, S22, S12 = tuple(al), tuple(be), tuple(ga)
    return _finish(base or R4_base(), _block(A), _block(B), S11, S12, S22, params, f"R4-{case}")


def build_family(fid: str, params: Mapping | None = None) -> OxidationData:
    base, case = fid.split("-")
    if base == "h3R":
        return h3R_family(case, params)
    if base == "R4":
        return R4_family(case, params)
    raise FamilyError(f"unknown family {fid!r}")


# ---------------------------------------------------------------------------
# strongly non-nilpotent complex structures in dimension 8
# ---------------------------------------------------------------------------

SNN_COEFFS = {
    "i": ("A", "B", "C", "D", "E", "F", "G", "H", "K", "L", "M", "N", "P", "s"),
    "ii": ("A", "D", "E", "F", "L", "M", "N", "s"),
    "iii": ("A", "B", "E", "F", "L", "M", "N", "P", "s", "t"),
}


def snn_equations(variant: str, coeffs: Mapping | None = None) -> ComplexEqnSet:
    """The complex structure equations of the given variant (no d^2 check)."""
    if variant not in SNN_COEFFS:
        raise FamilyError(f"unknown SnN variant {variant!r}")
    coeffs = dict(coeffs or {})
    unknown = set(coeffs) - set(SNN_COEFFS[variant])
    if unknown:
        raise FamilyError(f"snn-{variant}: unknown coefficients {sorted(unknown)}")
    c = {k: _q(coeffs.get(k, 0)) for k in SNN_COEFFS[variant]}
    for r in ("s", "t"):
        if r in c and c[r].im:
            raise FamilyError(f"snn-{variant}: {r} must be real")
    hol: dict = {}
    mixed: dict = {}

    def h(k, coef, j, l):
        if coef:
            hol.setdefault(k, []).append((coef, j, l))

    def m(k, coef, j, l):
        if coef:
            mixed.setdefault(k, []).append((coef, j, l))

    def pair(k, coef, j, l):    # -coef (phi^{jl} - phi^{j lbar})
        h(k, -coef, j, l)
        m(k, coef, j, l)

    A, F, L, M, N = c["A"], c["F"], c["L"], c["M"], c["N"]
    E, s = c["E"], c["s"]
    is_ = I * s
    if variant == "i":
        B, C, D, G, H, K, P = (c[x] for x in "BCDGHKP")
        m(2, A, 1, 1); pair(2, B, 1, 4)
        h(3, C, 1, 2); pair(3, E, 1, 4); m(3, F, 1, 1); m(3, D, 1, 2)
        pair(3, H, 2, 4); m(3, G, 2, 1); m(3, K, 2, 2)
        m(4, L, 1, 1); m(4, M, 1, 2); m(4, N, 1, 3); m(4, -M.conjugate(), 2, 1)
        m(4, is_, 2, 2); m(4, P, 2, 3); m(4, -N.conjugate(), 3, 1); m(4, -P.conjugate(), 3, 2)
    elif variant == "ii":
        D = c["D"]
        m(2, A, 1, 1)
        pair(3, D, 1, 2); pair(3, E, 1, 4); m(3, F, 1, 1)
        m(4, L, 1, 1); m(4, M, 1, 2); m(4, N, 1, 3); m(4, -M.conjugate(), 2, 1)
        m(4, is_, 2, 2); m(4, -N.conjugate(), 3, 1)
    else:
        B, P, t = c["B"], c["P"], c["t"]
        m(2, A, 1, 1); pair(2, B, 1, 4)
        m(3, F, 1, 1); pair(3, E, 1, 4)
        m(4, L, 1, 1); m(4, M, 1, 2); m(4, N, 1, 3); m(4, -M.conjugate(), 2, 1)
        m(4, is_, 2, 2); m(4, P, 2, 3); m(4, -N.conjugate(), 3, 1); m(4, -P.conjugate(), 3, 2)
        m(4, I * t, 3, 3)
    return ComplexEqnSet(4, hol, mixed)


def snn_predicate(variant: str, coeffs: Mapping | None = None) -> bool:
    """(B,E,H) != 0 for (i); E != 0 for (ii); (B,E) != 0 for (iii)."""
    coeffs = coeffs or {}
    names = {"i": "BEH", "ii": "E", "iii": "BE"}[variant]
    return any(_q(coeffs.get(x, 0)) for x in names)


@dataclass
class SnNMember:
    variant: str
    coeffs: dict
    eqs: ComplexEqnSet
    g: LieAlgebra
    J: Endo
    ascending_type: tuple
    step: int | None
    label: str                 # ascending J-series label, recomputed
    center_dim: int


def snn_family(variant: str, coeffs: Mapping | None = None) -> SnNMember:
    """Equations, realified algebra (d^2 = 0 enforced) and recomputed invariants."""
    from .lie import center

    eqs = snn_equations(variant, coeffs)
    g, J = realify(eqs, name=f"snn-{variant}")
    ser = central_series(g)
    js = ascending_J_series(g, J)
    return SnNMember(variant, dict(coeffs or {}), eqs, g, J, ser.ascending_type,
                     ser.nilpotency_step, js.label, center(g).dim)


# ---------------------------------------------------------------------------
# worked examples
# ---------------------------------------------------------------------------


@dataclass
class CatalogEntry:
    name: str
    g: LieAlgebra
    J: Endo | None = None
    omega: AltForm | None = None
    expect: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    @property
    def pair(self) -> CSPair | None:
        if self.J is None or self.omega is None:
            return None
        return validate_complex_symplectic(self.g, self.J, self.omega)


def _forms(dim, texts):
    return [parse_form(t, dim) for t in texts]


def _qh7_structures():
    I_ = complex_structure_from_forms(_forms(8, ["e1+(i)e2", "e3+(i)e4", "e5+(i)e6", "e7+(i)e8"]))
    J_ = complex_structure_from_forms(_forms(8, ["e1+(i)e3", "e2-(i)e4", "e5+(i)e7", "e6-(i)e8"]))
    K_ = complex_structure_from_forms(_forms(8, ["e1+(i)e4", "e2+(i)e3", "e5+(i)e8", "e6+(i)e7"]))
    return I_.J, J_.J, K_.J


def _abc_coframe():
    return _forms(8, ["e1+(i)e3", "e2+(i)e4", "e5-(i)e6", "e7+(i)e8"])


def g_ABC(A=1, B=0, C=1, alpha=0, beta=0, gamma=1) -> CatalogEntry:
    """g(A,B,C) with omega = Re(alpha phi12 + beta phi13 + gamma phi14 + C gamma phi23)."""
    A, B, C = _q(A), _q(B), _q(C)
    alpha, beta, gamma = _q(alpha), _q(beta), _q(gamma)
    if not (A and C):
        raise FamilyError("g(A,B,C) needs AC != 0")
    eqs = ComplexEqnSet(4, {3: [], 4: [(A, 1, 3)]}, {3: [(1, 1, 2)], 4: [(B, 1, 1), (C, 2, 2)]})
    phis = _abc_coframe()
    g, J = realify_coframe(eqs, phis, name="g(A,B,C)")
    wc = (wedge(phis[0], phis[1]).scale(alpha) + wedge(phis[0], phis[2]).scale(beta)
          + wedge(phis[0], phis[3]).scale(gamma) + wedge(phis[1], phis[2]).scale(C * gamma))
    return CatalogEntry("g(A,B,C)", g, J, wc.real_part(),
                        expect={"complex_symplectic": bool(gamma), "step": 3, "center": Subspace.span_of(8, [7, 8])},
                        extra={"omega_c": wc, "coframe": phis, "eqs": eqs})


def _real_de_ABC(A, B, C) -> LieAlgebra:
    """g(A,B,C) from its real structure equations, written out by hand."""
    A, B, C = _q(A), _q(B), _q(C)
    rA, iA = GaussianRational(A.re), GaussianRational(A.im)
    rB, iB = GaussianRational(B.re), GaussianRational(B.im)
    rC, iC = GaussianRational(C.re), GaussianRational(C.im)
    de = {
        5: {(1, 2): ONE, (3, 4): ONE},
        6: {(1, 4): ONE, (2, 3): ONE},
        7: {(1, 3): 2 * iB, (1, 5): rA, (1, 6): iA, (2, 4): 2 * iC, (3, 5): -iA, (3, 6): rA},
        8: {(1, 3): -2 * rB, (1, 5): iA, (1, 6): -rA, (2, 4): -2 * rC, (3, 5): rA, (3, 6): iA},
    }
    br: dict = {}
    for k, terms in de.items():
        for ij, c in terms.items():
            if c:
                br.setdefault(ij, {})[k] = -c
    return LieAlgebra(8, br, name="g(A,B,C) real")


def iwasawa_omega(alpha=0, beta=0, gamma=1, delta=1, eps=0):
    """Re of alpha phi12 + beta phi13 + gamma phi14 + delta phi23 + eps phi24 in the Iwasawa coframe."""
    phis = [AltForm(8, 1, {(a,): ONE, (b,): -I}) for a, b in ((1, 2), (3, 4), (7, 8), (5, 6))]
    terms = ((alpha, 0, 1), (beta, 0, 2), (gamma, 0, 3), (delta, 1, 2), (eps, 1, 3))
    wc = AltForm.zero(8, 2)
    for c, j, l in terms:
        wc = wc + wedge(phis[j], phis[l]).scale(_q(c))
    return wc.real_part(), wc


def nakamura_omega(alpha=1, beta=1):
    phis = [AltForm(8, 1, {(2 * k - 1,): ONE, (2 * k,): -I}) for k in range(1, 5)]
    wc = wedge(phis[0], phis[3]).scale(_q(alpha)) + wedge(phis[1], phis[2]).scale(_q(beta))
    return wc.real_part(), wc


def step3_data() -> OxidationData:
    return R4_family("v", {"alpha3": 1, "gamma1": 1})


def step4_uncorrected_data() -> OxidationData:
    """Case (iv) with S11 = e3, S12 = e1, S22 = 1/2 e4; violates condition (iv)."""
    return OxidationData(R4_base(), _block([[1, 0], [0, 1]]), None,
                         _cov({3: 1}), _cov({1: 1}), _cov({4: Fraction(1, 2)}), label="R4-iv uncorrected")


def step4_data() -> OxidationData:
    """A valid case-(iv) member with step 4: S11 = e3, S12 = e1 + 1/2 e4, S22 = 0."""
    return R4_family("iv", {"alpha3": 1, "gamma1": 1})


def qh7_reoxidation_data(tau1=8) -> OxidationData:
    """R^4 case (i), a = b = c = 0, S = 0, tau = (tau1, 0)."""
    return R4_family("i", {"a": 0, "b": 0, "c": 0, "tau1": tau1})


def qh7_identification() -> Endo:
    """Rational isomorphism from the oxidation of :func:`qh7_reoxidation_data` onto (qh7+R, I, omega).

    v1 -> -2 e3, v2 -> -2 e4, e1 -> e2, e2 -> e1, e3 -> 2 e8, e4 -> 2 e7,
    v^1 -> e6/2, v^2 -> e5/2.  With tau = (1, 0) the same shape works with
    factors 1, 1, sqrt 2 instead.
    """
    h = Fraction(1, 2)
    images = {1: {3: -2}, 2: {4: -2}, 3: {2: 1}, 4: {1: 1}, 5: {8: 2}, 6: {7: 2}, 7: {6: h}, 8: {5: h}}
    cols = []
    for k in range(1, 9):
        cols.append(_cov(images[k], 8))
    return Endo.from_columns(cols)


def example_catalog() -> dict[str, CatalogEntry]:
    """The named examples, each validated on construction."""
    out: dict[str, CatalogEntry] = {}

    qh7 = parse_salamon("(0,0,0,0,0,12-34,13+24,14-23)", name="qh7+R")
    I_, J_, K_ = _qh7_structures()
    om = parse_form("1/2·e18+1/2·e27+e36+e45", 8)
    out["qh7+R"] = CatalogEntry("qh7+R", qh7, I_, om,
                                expect={"complex_symplectic": True, "hypercomplex": True, "b1": 5,
                                        "reduce_by": Subspace.span_of(8, [5, 6]), "reduced_abelian": True},
                                extra={"I": I_, "J": J_, "K": K_})

    h5 = parse_salamon("(0,0,0,0,0,0,0,12-34)", name="h5+R3")
    out["h5+R3"] = CatalogEntry("h5+R3", h5, I_, None,
                                expect={"hypercomplex": True, "symplectic": False},
                                extra={"I": I_, "J": J_, "K": K_})

    out["g(A,B,C)"] = g_ABC()

    iw_eqs = ComplexEqnSet(4, {3: [(-1, 1, 2)]})
    iw, iwJ = realify(iw_eqs, {1: (1, 2), 2: (3, 4), 3: (7, 8), 4: (5, 6)}, name="Iwasawa x C")
    out["iwasawa x C"] = CatalogEntry("iwasawa x C", iw, iwJ, parse_form("e15-e26+e37-e48", 8),
                                      expect={"complex_symplectic": True, "reduce_by": Subspace.span_of(8, [7, 8]),
                                              "reduced_abelian": True},
                                      extra={"eqs": iw_eqs, "omega_alt": parse_form("e17-e28-e35+e46", 8)})

    nk_eqs = ComplexEqnSet(4, {2: [(-1, 1, 2)], 3: [(1, 1, 3)]})
    nk, nkJ = realify(nk_eqs, name="Nakamura x C")
    out["nakamura x C"] = CatalogEntry("nakamura x C", nk, nkJ, parse_form("e17-e28+e35-e46", 8),
                                       expect={"complex_symplectic": True, "nilpotent": False,
                                               "reduce_by": Subspace.span_of(8, [7, 8]), "reduced_abelian": True},
                                       extra={"eqs": nk_eqs})

    for name, data, step in (("step 3", step3_data(), 3), ("step 4", step4_data(), 4)):
        p = assemble(data, name=name)
        out[name] = CatalogEntry(name, p.g, p.J.J, p.omega, expect={"complex_symplectic": True, "step": step},
                                 extra={"data": data})

    for e in out.values():
        if e.expect.get("complex_symplectic"):
            pr = e.pair
            if not pr.ok:
                raise AssertionError(f"catalog entry {e.name} fails: {pr.report.failures()}")
    return out


def classify8_sweep(grid=None, families=None, **kw):
    """See :func:`cslie.sweep.classify8_sweep` (compiled kernel, imported lazily)."""
    from .sweep import classify8_sweep as run

    return run(grid, families, **kw)
