import pytest
from hypothesis import given, strategies as st

from cslie import linalg as la
from cslie.forms import AltForm
from cslie.lie import LieAlgebra, validate_jacobi
from cslie.notation import (
    ComplexEqnSet,
    RealifyError,
    SalamonError,
    coframe_forms,
    complex_eqns_from_json,
    complex_eqns_to_json,
    parse_salamon,
    print_salamon,
    realify,
    realify_coframe,
)
from cslie.scalar import GaussianRational, I, ONE
from cslie.structures import nijenhuis_check

from helpers import q


def test_strict_convention():
    g = parse_salamon("(0,0,12)")
    assert g.bracket_basis(0, 1) == (0, 0, -1)
    g = parse_salamon("(0,0,12)", convention="bracket")
    assert g.bracket_basis(0, 1) == (0, 0, 1)


def test_coefficients_and_wide_indices():
    g = parse_salamon("(0,0,0,0,12,13+3·14)")
    assert g.bracket_basis(0, 3) == (0,) * 5 + (-3,)
    s = "(" + ",".join(["0"] * 9) + ",{1,2})"
    g = parse_salamon(s)
    assert g.dim == 10 and g.bracket_basis(0, 1)[9] == -1
    assert parse_salamon(print_salamon(g)) == g


def test_salamon_errors():
    with pytest.raises(SalamonError) as exc:
        parse_salamon("(0,0,12,34)")
    assert exc.value.triple == (1, 2, 4)
    with pytest.raises(SalamonError):
        parse_salamon("(0,0,15)")
    with pytest.raises(SalamonError):
        parse_salamon("(0,0,1x2)")
    g = parse_salamon("(0,0,12,34)", check=False)
    assert not validate_jacobi(g).ok


@pytest.mark.parametrize("s", [
    "(0,0,0,0,0,0)", "(0,0,12)", "(0,0,12,13)", "(0,0,0,12,13,23)", "(0,0,12,13,14+23,15+24)",
    "(0,0,-12,0)", "(0,0,1/2·12,0)", "(0,0,0,0,12,13+3·14)",
])
def test_round_trip(s):
    g = parse_salamon(s)
    assert print_salamon(parse_salamon(print_salamon(g))) == print_salamon(g)
    assert parse_salamon(print_salamon(g)) == g


@given(st.lists(st.lists(st.tuples(st.integers(-3, 3), st.integers(0, 20)), max_size=3), min_size=6, max_size=6))
def test_round_trip_random_upper(table):
    # random strictly-upper tables; keep only those satisfying Jacobi
    n = 6
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    br = {}
    for k, terms in enumerate(table, start=1):
        for c, p in terms:
            i, j = pairs[p % len(pairs)]
            if c and j < k:
                br.setdefault((i, j), {})[k] = c
    g = LieAlgebra(n, br)
    if not validate_jacobi(g).ok:
        return
    assert parse_salamon(print_salamon(g)) == g


def test_realify_h3_with_conventions():
    # d phi^2 = phi^1 ∧ conj(phi^1) in C^2
    eqs = ComplexEqnSet(2, mixed={2: [(ONE, 1, 1)]})
    g, J = realify(eqs)
    assert validate_jacobi(g).ok
    # J e_a = -e_b, J e_b = e_a on each pair
    assert J.apply(la.unit_vec(4, 0)) == la.scale_vec(-1, la.unit_vec(4, 1))
    assert J.apply(la.unit_vec(4, 1)) == la.unit_vec(4, 0)
    assert nijenhuis_check(g, J).integrable


def test_realify_matches_coframe_route():
    eqs = ComplexEqnSet(3, hol={3: [(ONE, 1, 2)]}, mixed={3: [(q(0, 1), 1, 1)]})
    g1, J1 = realify(eqs)
    phis, _ = coframe_forms(3)
    g2, J2 = realify_coframe(eqs, phis)
    assert g1 == g2 and J1 == J2


def test_realify_rejects_anti_terms():
    eqs = ComplexEqnSet(2, anti={2: [(ONE, 1, 1)]})
    with pytest.raises(RealifyError):
        realify(eqs)


def test_realify_rejects_d_squared():
    # d phi^3 = phi^12, d phi^2 = phi^1 conj(phi^1): d^2 phi^3 != 0
    eqs = ComplexEqnSet(3, hol={3: [(ONE, 1, 2)]}, mixed={2: [(ONE, 1, 1)], 1: [(ONE, 2, 2)]})
    with pytest.raises(RealifyError):
        realify(eqs)


def test_complex_json_round_trip():
    eqs = ComplexEqnSet(3, hol={3: [(ONE, 1, 2)]}, mixed={3: [(q(1, -1), 2, 2)]})
    back = complex_eqns_from_json(complex_eqns_to_json(eqs))
    assert realify(back)[0] == realify(eqs)[0]
