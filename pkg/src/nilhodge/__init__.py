"""Exact Dolbeault cohomology of nilpotent Lie algebras with complex structures."""

__version__ = "0.1.0"

from .scalars import Field, Scalar
from .linalg import ExactMatrix, Subspace, kernel, quotient_coordinates, rref, subspace_ops
from .lie import LieAlgebra, bracket, center, jacobi_check, lower_central_series, quotient_algebra
from .complex_structure import (
    ComplexStructure,
    adapted_basis,
    annihilator_series,
    is_abelian,
    is_integrable,
    is_rational,
    j_series,
    nijenhuis,
)
from .dolbeault import build_complex, chevalley_eilenberg_betti, full_diamond, hodge_number
from .spectral import build_filtration, compute_pages, fibration_data, tower_report
from .deformation import general_deformation, instantiate, scan
