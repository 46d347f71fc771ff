import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from cslie import linalg as la
from cslie.forms import (
    AltForm,
    Endo,
    contract,
    endo_bracket_map,
    endo_dot_form,
    format_form,
    parse_form,
    pfaffian,
    pfaffian_poly,
    pullback,
    sharp,
    wedge,
)
from cslie.scalar import ONE, ZERO, GaussianRational

from helpers import endos, forms, q

E = lambda *idx: AltForm.basis(4, *idx)
W0 = parse_form("e14+e23", 4)


def test_wedge_examples():
    assert wedge(E(1), E(2)) == E(1, 2)
    assert wedge(E(1, 2), E(1, 2)).is_zero()
    assert wedge(W0, W0) == E(1, 2, 3, 4).scale(2)


def test_wedge_sign_oracle():
    # permutation-sign oracle on all pairs of basis 2-forms in dim 4
    for a, b in itertools.combinations(itertools.combinations(range(1, 5), 2), 2):
        perm = a + b
        if len(set(perm)) < 4:
            continue
        inv = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
        assert wedge(E(*a), E(*b)) == E(1, 2, 3, 4).scale(-1 if inv % 2 else 1)


def test_dim_mismatch():
    with pytest.raises(ValueError):
        wedge(AltForm.basis(4, 1), AltForm.basis(5, 1))


def test_contract_examples():
    e1 = la.unit_vec(4, 0)
    assert contract(e1, E(1, 2)) == E(2)
    assert contract(la.unit_vec(4, 2), E(1, 2)).is_zero()
    assert contract(e1, W0) == E(4)
    with pytest.raises(ValueError):
        contract(e1, AltForm.constant(4, 1))


def test_endo_dot_form_examples():
    rho = parse_form("e12+3·e34", 4)
    assert endo_dot_form(Endo.identity(4), rho) == rho.scale(2)
    assert endo_dot_form(Endo.zero(4), rho).is_zero()
    D = Endo.from_images(4, {1: la.unit_vec(4, 1)})       # e1 -> e2
    assert endo_dot_form(D, W0) == E(1, 3)


def test_endo_dot_form_pair_oracle():
    D = Endo([[1, 2, 0, 0], [0, 1, 0, 3], [1, 0, 0, 0], [0, 0, 2, 1]])
    out = endo_dot_form(D, W0)
    for i, j in itertools.combinations(range(4), 2):
        X, Y = la.unit_vec(4, i), la.unit_vec(4, j)
        want = W0.evaluate(D.apply(X), Y) + W0.evaluate(X, D.apply(Y))
        assert out.evaluate(X, Y) == want


def test_endo_bracket_map():
    D = Endo([[0, 1, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0]])
    I4 = Endo.identity(4)
    Z = Endo.zero(4)
    assert endo_bracket_map(D, D, D, D).is_zero()
    assert endo_bracket_map(I4, Z, Z, D) == D
    f1 = Endo([[0, 0, 0, 0], [0, 0, 0, 0], [2, 0, 0, 0], [0, 0, 0, 0]])
    f2 = Endo([[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0]])
    got = endo_bracket_map(f1, f2, f1, f2)
    want = Endo(la.mat_sub(la.matmul(f1.rows, f2.rows), la.matmul(f2.rows, f1.rows)))
    assert got == want                       # f1 f2 - f2 f1, no factor 2
    assert not got.is_zero()


def test_pfaffian_examples():
    assert pfaffian(W0) == ONE
    assert pfaffian(E(1, 2)) == ZERO
    assert pfaffian(parse_form("e12+e34", 4)) == ONE
    with pytest.raises(ValueError):
        pfaffian(AltForm.basis(3, 1, 2))


def test_pfaffian_normalization():
    # omega^n = n! Pf e^{1..2n}
    w = parse_form("2·e12-e35+e46+3·e14", 6)
    top = wedge(wedge(w, w), w)
    assert top.coefficient(1, 2, 3, 4, 5, 6) == 6 * pfaffian(w)


def test_sharp_examples():
    assert sharp(W0, E(4)) == la.unit_vec(4, 0)
    assert sharp(W0, E(3)) == la.unit_vec(4, 1)
    assert not any(sharp(W0, (0, 0, 0, 0)))
    with pytest.raises(ValueError):
        sharp(E(1, 2), E(3))


def test_pfaffian_poly_examples():
    p = pfaffian_poly([W0])
    assert p.terms == {(2,): ONE}
    assert pfaffian_poly([E(1, 2)]).is_zero()
    p = pfaffian_poly([E(1, 4), E(2, 3)])
    assert p.terms == {(1, 1): ONE}


@given(forms(5, 2), forms(5, 1), forms(5, 3))
def test_graded_commutative(a, b, c):
    assert wedge(a, b) == wedge(b, a).scale((-1) ** (a.degree * b.degree))
    assert wedge(b, c) == wedge(c, b).scale((-1) ** (b.degree * c.degree))


@given(forms(6, 2))
def test_pfaffian_squared_is_det(w):
    assert pfaffian(w) * pfaffian(w) == la.det(w.matrix())


def test_pfaffian_squared_is_det_dim8():
    rng = random.Random(3)
    for _ in range(10):
        w = AltForm(8, 2, {k: rng.randint(-2, 2) for k in itertools.combinations(range(1, 9), 2)
                         if rng.random() < 0.4})
        assert pfaffian(w) ** 2 == la.det(w.matrix())


@given(forms(4, 2), endos(4))
def test_pfaffian_pullback(w, P):
    assert pfaffian(pullback(P, w)) == P.det() * pfaffian(w)


@given(forms(4, 2), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_sharp_then_contract(w, alpha):
    assume(pfaffian(w))
    alpha = tuple(GaussianRational(a) for a in alpha)
    X = sharp(w, alpha)
    assert contract(X, w).as_covector() == alpha


def test_pfaffian_poly_matches_evaluation():
    rng = random.Random(11)
    basis = [parse_form(t, 6) for t in ("e12+e34", "e14-e25", "e36+e12", "e56")]
    p = pfaffian_poly(basis)
    for _ in range(1000):
        pt = [rng.randint(-3, 3) for _ in basis]
        w = AltForm.zero(6, 2)
        for c, b in zip(pt, basis):
            w = w + b.scale(c)
        assert p.eval(dict(zip(p.variables, pt))) == pfaffian(w)


@pytest.mark.parametrize("text", ["e14+e23", "1/2·e18+e27", "-e12+3*e34", "(1+i)·e12", "e{1,10}"])
def test_form_text_round_trip(text):
    w = parse_form(text)
    assert parse_form(format_form(w), w.dim) == w
