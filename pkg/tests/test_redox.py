import random

import pytest

from cslie import linalg as la
from cslie.forms import AltForm, Endo, parse_form
from cslie.lie import LieAlgebra, Subspace, central_series, validate_jacobi
from cslie.redox import (
    CONDITION_NAMES,
    OxidationData,
    OxidationError,
    ReductionError,
    assemble,
    format_bracket_table,
    induced_tensors,
    orth_complement,
    oxidation_labels,
    oxidizable,
    oxidize,
    reduce,
    reduce_with_basis,
    trivial_base,
    validate_oxidation_data,
)
from cslie.families import R4_base, R4_family, h3R_base, h3R_family
from cslie.scalar import GaussianRational, ONE, ZERO
from cslie.structures import J0, OMEGA0, validate_complex_symplectic

from helpers import q


def cov(d, n=4):
    return tuple(GaussianRational(d.get(k, 0)) for k in range(1, n + 1))


def test_induced_nu():
    data = OxidationData(R4_base(), S11=cov({3: 1}))
    assert induced_tensors(data).nu == la.unit_vec(4, 0)


def test_trivial_oxidation():
    data = OxidationData(trivial_base(), tau=(1, 0))
    pair = oxidize(data)
    assert pair.ok
    assert pair.g.bracket_basis(0, 1) == (0, 0, 1, 0)
    from cslie.notation import print_salamon
    assert print_salamon(pair.g) == "(0,0,-12,0)"
    assert central_series(pair.g).ascending_type == (2, 4)


def test_trivial_tau_zero_is_abelian():
    assert oxidize(OxidationData(trivial_base())).g.is_abelian()


def _valid_samples():
    yield R4_family("ii", {"a": 1, "b": 2, "alpha3": 1, "alpha4": -1, "gamma1": 1, "tau1": 1})
    yield R4_family("iv", {"alpha3": 1, "gamma1": 1})
    yield h3R_family("ii", {"a": 1, "d": 2, "alpha1": 1, "beta2": 1, "tau2": 3})
    yield h3R_family("i", {"alpha4": 1, "gamma1": 1})


@pytest.mark.parametrize("data", list(_valid_samples()), ids=lambda d: d.label)
def test_valid_data_oxidizes(data):
    rep = validate_oxidation_data(data)
    assert rep.ok and rep.routes_agree
    pair = oxidize(data)
    assert pair.ok
    n = pair.dim
    a = Subspace(n, [la.unit_vec(n, n - 2), la.unit_vec(n, n - 1)])
    back, _ = reduce_with_basis(pair, a)
    assert back.ok and back.dim == data.n


def _mutate(data, **kw):
    fields = dict(base=data.base, f1=data.f1, f2=data.f2, S11=data.S11, S12=data.S12,
                  S22=data.S22, tau=data.tau)
    fields.update(kw)
    return OxidationData(**fields)


def test_mutation_derivation():
    data = h3R_family("v", {})
    bad = _mutate(data, f1=Endo.from_images(4, {1: la.unit_vec(4, 0)}))
    rep = validate_oxidation_data(bad)
    assert "derivation" in rep.failed and rep.routes_agree
    with pytest.raises(OxidationError) as exc:
        oxidize(bad)
    assert CONDITION_NAMES["derivation"] in str(exc.value)


def test_mutation_condition_i():
    data = R4_family("v", {})
    bad = _mutate(data, f1=Endo([[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]))
    rep = validate_oxidation_data(bad)
    assert "i" in rep.failed and rep.routes_agree


def test_mutation_condition_ii():
    # X, Y in sp(R^4, J0, omega0); f1 = X, f2 = J0 X + Y keeps (i) but {f1,f2} != 0 = ad_nu
    X = Endo([[0, 0, 0, -1], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    Y = Endo([[0, 0, 0, 0], [0, 0, 0, 0], [0, -1, 0, 0], [1, 0, 0, 0]])
    rep = validate_oxidation_data(OxidationData(R4_base(), X, J0.J @ X + Y))
    assert rep.failed == ["ii"] and rep.routes_agree
    assert validate_oxidation_data(OxidationData(R4_base(), X, J0.J @ X + X)).ok


def test_mutation_condition_iii():
    data = h3R_family("v", {})
    bad = _mutate(data, S11=cov({3: 1}))       # d e^3 != 0, S no longer closed
    rep = validate_oxidation_data(bad)
    assert "iii" in rep.failed and rep.routes_agree


def test_mutation_condition_iv():
    from cslie.families import step4_uncorrected_data
    rep = validate_oxidation_data(step4_uncorrected_data())
    assert rep.failed == ["iv"] and rep.routes_agree
    assert not rep.general.ok


def test_random_mutations_routes_agree():
    # basis-form conditions vs the general conditions recomputed from the bracket
    rng = random.Random(2)
    seen = {True: 0, False: 0}
    samples = list(_valid_samples())
    for _ in range(80):
        d = rng.choice(samples)
        kw = {}
        k = rng.choice(["S11", "S12", "S22", "f1", "f2", "tau", None])
        if k in ("S11", "S12", "S22"):
            kw[k] = la.add_vec(getattr(d, k), cov({rng.randint(1, 4): rng.choice([-1, 1])}))
        elif k in ("f1", "f2"):
            i, j = rng.randrange(4), rng.randrange(4)
            rows = [list(r) for r in getattr(d, k).rows]
            rows[i][j] = rows[i][j] + rng.choice([-1, 1])
            kw[k] = Endo(rows)
        elif k == "tau":
            kw[k] = (rng.randint(-2, 2), rng.randint(-2, 2))
        rep = validate_oxidation_data(_mutate(d, **kw))
        assert rep.routes_agree
        if rep.ok:
            assert oxidize(_mutate(d, **kw)).ok
        seen[rep.ok] += 1
    assert seen[True] and seen[False]


def test_non_strict_oxidize_reports():
    from cslie.families import step4_uncorrected_data
    pair = oxidize(step4_uncorrected_data(), strict=False)
    assert not pair.ok


def test_orth_complement_example():
    a = Subspace.span_of(4, [3, 4])
    assert orth_complement(None, OMEGA0, a) == a


def test_reduce_errors():
    pair = validate_complex_symplectic(LieAlgebra.abelian(4), J0, OMEGA0)
    with pytest.raises(ReductionError) as exc:
        reduce(pair, Subspace.span_of(4, [1, 3]))
    assert exc.value.reason == "not J-invariant"
    with pytest.raises(ReductionError) as exc:
        reduce(pair, Subspace.whole(4))
    assert exc.value.reason == "not isotropic"
    h = validate_complex_symplectic(LieAlgebra(4, {(1, 2): {3: 1}}), J0, OMEGA0)
    # <e1,e2> is J-invariant and isotropic for omega0 but not an ideal of h3+R
    with pytest.raises(ReductionError):
        reduce(h, Subspace.span_of(4, [1, 2]))


def test_oxidizable_and_reduce_h3R():
    pair = h3R_base()
    a = oxidizable(pair)
    assert a == Subspace.span_of(4, [3, 4])
    red = reduce(pair, a)
    assert red.dim == 0


def test_bracket_table_labels():
    pair = oxidize(OxidationData(trivial_base(), tau=(1, 0)))
    lines = format_bracket_table(pair.g, oxidation_labels(0))
    assert any("v1" in l and "v2" in l and "v^1" in l for l in lines)
