from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cslie.poly import MultiPoly, poly_ops
from cslie.scalar import GaussianRational, I, ONE, ZERO, format_scalar, gq, gq_ops, parse_scalar

from helpers import gaussians, q


def test_spec_examples():
    assert gq_ops(q(Fraction(1, 2), 1), q(Fraction(1, 2), -1), "mul") == q(Fraction(5, 4))
    assert gq_ops(1, I, "div") == -I
    assert gq_ops(q(Fraction(2, 3)), q(Fraction(1, 3)), "add") == ONE


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        gq_ops(1, 0, "div")


def test_reduced_form():
    z = GaussianRational(Fraction(4, -6), Fraction(10, 5))
    assert (z.re.numerator, z.re.denominator) == (-2, 3)
    assert z.im == 2


@pytest.mark.parametrize("text,value", [
    ("1", q(1)), ("i", I), ("-i", -I), ("1/2", q(Fraction(1, 2))),
    ("1/2+3/4 i", q(Fraction(1, 2), Fraction(3, 4))), ("-5/3 i", q(0, Fraction(-5, 3))),
    (" 2 - i ", q(2, -1)),
])
def test_scalar_text(text, value):
    assert parse_scalar(text) == value
    assert parse_scalar(format_scalar(value)) == value


@pytest.mark.parametrize("bad", ["", "1/", "i i", "1..2", "abc", "3+"])
def test_scalar_text_rejects(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


@given(gaussians(), gaussians(), gaussians())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a and a * ONE == a
    if b:
        assert (a / b) * b == a
    assert parse_scalar(format_scalar(a)) == a


def test_field_axioms_bulk():
    import random

    rng = random.Random(7)

    def rnd():
        return GaussianRational(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                                Fraction(rng.randint(-9, 9), rng.randint(1, 9)))

    for _ in range(10_000):
        a, b, c = rnd(), rnd(), rnd()
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)


V = ["x", "y"]
x = MultiPoly.var(V, "x")
y = MultiPoly.var(V, "y")


def test_poly_examples():
    assert poly_ops(x + y, x + y, "mul") == x * x + 2 * x * y + y * y
    assert (x * x - 1).eval({"x": 2, "y": 0}) == 3
    p = x * y + 3 * x
    assert poly_ops(p - p, None, "is_zero")
    assert str(x * x + 2 * x * y + y * y) == "x^2+2*x*y+y^2"


def test_eval_missing_assignment():
    with pytest.raises((KeyError, ValueError)):
        (x + y).eval({"x": 1})


def test_no_zero_terms():
    p = MultiPoly(V, {(1, 0): 1, (0, 1): 0})
    assert list(p.terms) == [(1, 0)]
    assert (p - p).terms == {}


def test_union_of_variables():
    z = MultiPoly.var(["z"], "z")
    s = x + z
    assert set(s.variables) == {"x", "y", "z"}
    assert s.eval({"x": 1, "y": 5, "z": 2}) == 3


polys = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), gaussians(), max_size=5).map(
    lambda d: MultiPoly(V, d))


@given(polys, polys, gaussians(), gaussians())
def test_eval_is_ring_homomorphism(p, r, a, b):
    pt = {"x": a, "y": b}
    assert (p * r).eval(pt) == p.eval(pt) * r.eval(pt)
    assert (p + r).eval(pt) == p.eval(pt) + r.eval(pt)


def test_gq_builder():
    assert gq("1/2+i") == q(Fraction(1, 2), 1)
    assert gq(3, 1) == q(3, 1)
