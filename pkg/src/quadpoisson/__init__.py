"""Exact formal Poisson cohomology of admissible quadratic Poisson tensors on R^3."""

from .complexes import (coboundary_matrix, cohomology_dims, les_check, phi_matrix,
                        slice_basis, slice_cohomology, SliceSpec)
from .grammar import parse_multivector, parse_poly
from .multivector import MultiVector, curl, is_poisson, jacobian_structure, lp_coboundary, schouten
from .poly import D, DPRIME, Bigrade, Poly, QElem
from .structures import (Regime, StructureParams, build_structure, classify_regime,
                         expected_dim)
from .yframe import from_y_frame, to_y_frame, x_apply, x_matrix, y_fields

__all__ = [
    "coboundary_matrix", "cohomology_dims", "les_check", "phi_matrix", "slice_basis",
    "slice_cohomology", "SliceSpec", "parse_multivector", "parse_poly", "MultiVector", "curl",
    "is_poisson", "jacobian_structure", "lp_coboundary", "schouten", "D", "DPRIME", "Bigrade",
    "Poly", "QElem", "Regime", "StructureParams", "build_structure", "classify_regime",
    "expected_dim", "from_y_frame", "to_y_frame", "x_apply", "x_matrix", "y_fields",
]

__version__ = "0.1.0"
