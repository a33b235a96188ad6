"""recollab: exact recollement and Hochschild theory for finite-dimensional algebras.

The package builds recollements of derived categories from stratifying
idempotents and triangular matrix algebras, computes Hochschild homology and
cohomology (with an independent bar-complex oracle), Hochschild and global
dimensions, and machine-verifies instance-level consequences of the transfer
theorems: tensor and opposite transfers, smoothness equivalences, the Keller
homology triangle, and the three cohomology long exact sequences.

Everything is computed in exact arithmetic over Q or F_p and is deterministic
bit for bit.
"""

from .exactfield import GF, QQ, Field, Matrix, kernel_basis, rank, solve, subspace_equal
from .algebra import (
    Algebra,
    BasicStructure,
    Idempotent,
    QuiverPresentation,
    center,
    corner,
    discover_basic,
    enveloping,
    from_quiver,
    ideal_and_quotient,
    opposite,
    radical,
    tensor,
    triangular,
)
from .modules import (
    Bimodule,
    ModuleMap,
    RightModule,
    canonical_bimodules,
    free_cover,
    hom_space,
    is_projective,
    iso_test,
    kernel_cokernel,
    regular_bimodule,
    regular_module,
    simple_modules,
    tensor_over,
)
from .complexes import (
    BoundedComplex,
    ProjectiveResolution,
    ShortExactSequence,
    dualize_perfect,
    hom_complex,
    horseshoe,
    is_exceptional,
    lift_map,
    projective_resolution,
)
from .homology import (
    ExtClass,
    GradedDims,
    LesReport,
    PdVerdict,
    bar_oracle,
    ext,
    global_dimension,
    hochschild_cohomology,
    hochschild_dimension,
    hochschild_homology,
    les_from_ses,
    tor,
    yoneda_product,
)
from .recollement import (
    RecollementData,
    StratifyingReport,
    check_stratifying,
    eval_functor,
    from_idempotent,
    from_triangular,
    opposite_transfer,
    tensor_transfer,
)
from .verify import (
    cohomology_les,
    duality_roundtrip,
    gldim_equivalence,
    keller_homology,
    smoothness_equivalence,
)

__version__ = "0.1.0"
