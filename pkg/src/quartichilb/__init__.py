"""Exact computations for degree four space curves and their Hilbert schemes."""

from .ring import DEFAULT_CHAR, ParseError, Poly, Ring, RingError, parse_poly, poly_product, substitute
from .ideal import (
    Ideal,
    eliminate,
    family_ring,
    intersect,
    line_ring,
    parse_ideal_text,
    quotient,
    read_ideal,
    saturate,
    saturate_irrelevant,
    standard_ring,
)
from .groebner import GroebnerBasis, groebner_basis, normal_form
from .graded import graded_slice_dim

__version__ = "0.1.0"
