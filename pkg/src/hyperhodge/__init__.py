"""Exact Hodge theory of smooth projective hypersurfaces.

The Jacobian ring of f computes the Hodge filtration of the complement of
Y = {f = 0} through pole order, and residues carry it to primitive middle
cohomology of Y.  A small filtered-complex engine computes spectral
sequences of finite models.
"""

from .errors import DomainError, HyperhodgeError, InputError
from .griffiths import FormSum, NormalForm, RationalTopForm, is_exact, is_second_kind, make_form, normal_form
from .hodge import (
    betti_table,
    complement_cohomology,
    consistency_report,
    euler_characteristic,
    hodge_filtration_dims,
    primitive_hodge_numbers,
)
from .jacobian import HypersurfaceContext, build_context, canonical_rep, fermat, hilbert_function, membership_lift
from .polyring import GradedPoly, format_poly, parse_poly
from .residue import ResidueClass, residue, theorem41_report

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "FormSum",
    "GradedPoly",
    "HyperhodgeError",
    "HypersurfaceContext",
    "InputError",
    "NormalForm",
    "RationalTopForm",
    "ResidueClass",
    "betti_table",
    "build_context",
    "canonical_rep",
    "complement_cohomology",
    "consistency_report",
    "euler_characteristic",
    "fermat",
    "format_poly",
    "hilbert_function",
    "hodge_filtration_dims",
    "is_exact",
    "is_second_kind",
    "make_form",
    "membership_lift",
    "normal_form",
    "parse_poly",
    "primitive_hodge_numbers",
    "residue",
    "theorem41_report",
]
