"""Shared strategies and small builders for the tests."""

from fractions import Fraction

from hypothesis import strategies as st

from cslie.forms import AltForm, Endo
from cslie.scalar import GaussianRational

small_fracs = st.fractions(min_value=-4, max_value=4, max_denominator=4)
small_ints = st.integers(min_value=-3, max_value=3)


@st.composite
def gaussians(draw, real=False):
    re = draw(small_fracs)
    im = Fraction(0) if real else draw(small_fracs)
    return GaussianRational(re, im)


@st.composite
def forms(draw, dim, degree, real=True):
    from itertools import combinations

    keys = list(combinations(range(1, dim + 1), degree))
    chosen = draw(st.lists(st.sampled_from(keys), max_size=min(6, len(keys)), unique=True))
    return AltForm(dim, degree, {k: draw(gaussians(real=real)) for k in chosen})


@st.composite
def endos(draw, dim, real=True, lo=-2, hi=2):
    return Endo([[GaussianRational(draw(st.integers(lo, hi))) for _ in range(dim)] for _ in range(dim)])


def q(x, y=0):
    return GaussianRational(Fraction(x), Fraction(y))
