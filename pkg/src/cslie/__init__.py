"""Exact computations with complex symplectic structures on nilpotent Lie algebras.

Arithmetic is over Q(i); nothing here uses floating point.
"""

from .scalar import GaussianRational, format_scalar, parse_scalar
from .forms import AltForm, Endo, parse_form, format_form
from .lie import LieAlgebra, Subspace, central_series, validate_jacobi
from .notation import ComplexEqnSet, parse_salamon, print_salamon, realify
from .structures import (
    CSPair,
    ComplexStructure,
    J0,
    OMEGA0,
    complex_symplectic_existence,
    symplectic_existence,
    validate_complex_symplectic,
)
from .redox import OxidationData, oxidize, reduce, validate_oxidation_data
from .families import h3R_family, R4_family, example_catalog, snn_family

__version__ = "0.1.0"
