"""obstruction_lab: exact computation of the algebraic obstructions that
govern stable diffeomorphism of spin 4-manifolds with supported
fundamental groups.

The package computes group homology from standard free resolutions,
the homology Steenrod square and the second-page bordism differentials,
hermitian forms on presented modules over integral group rings together
with an exact evenness decision, the rank-one form map A on mod-2 third
homology, and Whitehead's quadratic functor with its coinvariant torsion
test.
"""

from .amap import a_of_class, certify_odd_via_quotients, check_condition, kernel_of_A
from .chains import (
    IntegerComplex,
    Resolution,
    apply_coefficients,
    dualize_degree2,
    standard_resolution,
)
from .cli import ahss_report, run_cli
from .forms import (
    FormMatrix,
    FPModule,
    TateVerdict,
    decide_even,
    is_hermitian,
    is_weakly_even,
    tate_equal,
)
from .gamma import (
    ZGLattice,
    gamma_coinvariants,
    kernel_d2_lattice,
    verify_tertiary,
)
from .groupring import RingElement, RingMatrix, augment, involute, multiply, pushforward
from .groups import (
    GroupHom,
    GroupSpec,
    parse_group_spec,
    quotient_surjection,
    strip_odd_part,
)
from .homology import HomologyResult, SNFResult, homology_at, reduction_map, smith_normal_form
from .steenrod import cohomology_basis, d2_differential, sq2_matrix

__version__ = "0.1.0"

__all__ = [
    "GroupSpec", "GroupHom", "parse_group_spec", "strip_odd_part",
    "quotient_surjection",
    "RingElement", "RingMatrix", "multiply", "involute", "augment",
    "pushforward",
    "Resolution", "IntegerComplex", "standard_resolution",
    "apply_coefficients", "dualize_degree2",
    "SNFResult", "HomologyResult", "smith_normal_form", "homology_at",
    "reduction_map",
    "cohomology_basis", "sq2_matrix", "d2_differential",
    "FPModule", "FormMatrix", "TateVerdict", "is_hermitian",
    "is_weakly_even", "decide_even", "tate_equal",
    "a_of_class", "kernel_of_A", "certify_odd_via_quotients",
    "check_condition",
    "ZGLattice", "kernel_d2_lattice", "gamma_coinvariants", "verify_tertiary",
    "run_cli", "ahss_report",
    "__version__",
]
