import itertools
import random

import pytest
from hypothesis import given, strategies as st

from cslie import linalg as la
from cslie.forms import AltForm, Endo, parse_form, pfaffian, wedge
from cslie.lie import LieAlgebra, Subspace, center
from cslie.notation import parse_salamon, realify, ComplexEqnSet
from cslie.scalar import ONE, GaussianRational
from cslie.structures import (
    J0,
    OMEGA0,
    ComplexStructure,
    adapted_basis,
    ascending_J_series,
    check_hypercomplex,
    complex_symplectic_existence,
    form_bijection,
    form_bijection_inverse,
    is_j_symmetric,
    nijenhuis_check,
    standard_J,
    standard_omega,
    symplectic_existence,
    validate_complex_symplectic,
)
from cslie.families import example_catalog

H3R = LieAlgebra(4, {(1, 2): {3: 1}})
N4 = LieAlgebra(4, {(1, 4): {2: 1}, (2, 4): {3: 1}})
R4 = LieAlgebra.abelian(4)


def test_J_squared_checked():
    with pytest.raises(ValueError):
        ComplexStructure(Endo.identity(4))
    J = standard_J(4)
    assert J.apply(la.unit_vec(4, 1)) == la.unit_vec(4, 0)


def test_reference_pair():
    p = validate_complex_symplectic(H3R, J0, OMEGA0)
    assert p.ok
    assert OMEGA0 == parse_form("e14+e23", 4) == standard_omega(4)


def test_n4_not_integrable():
    rep = nijenhuis_check(N4, J0)
    assert not rep.integrable and rep.violations and rep.zero_two and rep.routes_agree


def test_not_j_symmetric():
    p = validate_complex_symplectic(R4, J0, parse_form("e12+e34", 4))
    assert not p.report.j_symmetric
    assert p.report.failures() == ["j_symmetric"]


def test_not_closed():
    p = validate_complex_symplectic(N4, standard_J(4), OMEGA0)
    assert not p.report.closed


def test_form_bijection_round_trip():
    wc = form_bijection(J0, OMEGA0)
    assert wc.real_part() == OMEGA0
    assert form_bijection_inverse(wc) == OMEGA0


def _random_J(rng, n):
    while True:
        P = Endo([[rng.randint(-2, 2) + (2 if i == j else 0) for j in range(n)] for i in range(n)])
        if P.det():
            return P @ standard_J(n).J @ P.inverse(), P


def test_nijenhuis_routes_agree_random():
    # two routes to integrability: N_J = 0 vs d(Lambda^{1,0}) has no (0,2)-part
    rng = random.Random(7)
    algebras = [R4, H3R, N4, parse_salamon("(0,0,12,13)")]
    seen = set()
    for _ in range(200):
        J, _ = _random_J(rng, 4)
        g = rng.choice(algebras)
        rep = nijenhuis_check(g, J)
        assert rep.routes_agree
        assert (not rep.violations) == (not rep.zero_two)
        seen.add(rep.integrable)
    assert seen == {True, False}


def test_adapted_basis():
    P = adapted_basis(H3R, J0, OMEGA0)
    assert P.det()
    for g, J, om in [(H3R, J0, OMEGA0)]:
        P = adapted_basis(g, J, om)
        # in the new basis J and omega take the standard forms
        Pinv = P.inverse()
        assert Pinv @ J0.J @ P == standard_J(4).J


def test_J_series_labels():
    for name, e in example_catalog().items():
        if e.J is None:
            continue
        rep = ascending_J_series(e.g, e.J)
        assert rep.a1_matches_center
        z = center(e.g)
        assert rep.quasi_nilpotent == bool(z.intersect(z.image(e.J)).dim)
    rep = ascending_J_series(H3R, J0)
    assert rep.label == "nilpotent"


def test_hypercomplex_qh7():
    e = example_catalog()["qh7+R"]
    rep = check_hypercomplex(e.g, e.extra["I"], e.extra["J"], e.extra["K"])
    assert rep.ok
    rep = check_hypercomplex(e.g, e.extra["I"], e.extra["I"], e.extra["K"])
    assert not rep.ok


def test_symplectic_certificates():
    c = symplectic_existence(H3R)
    assert c.label == "WITNESS" and pfaffian(c.witness)
    c = symplectic_existence(parse_salamon("(0,0,0,0,12+34,0)"))
    assert c.label == "IMPOSSIBLE" and c.polynomial.is_zero()


def test_complex_symplectic_certificates():
    c = complex_symplectic_existence(H3R, J0)
    assert c.label == "WITNESS"
    assert form_bijection(J0, c.witness).is_zero() is False
    e = example_catalog()["h5+R3"]
    c = complex_symplectic_existence(e.g, e.J)
    assert c.label == "IMPOSSIBLE"
    assert c.polynomial.is_zero()


def test_certificate_witness_validates():
    for name, e in example_catalog().items():
        if not e.expect.get("complex_symplectic"):
            continue
        c = complex_symplectic_existence(e.g, e.J)
        assert c.label == "WITNESS", name
        assert validate_complex_symplectic(e.g, e.J, c.witness).ok
