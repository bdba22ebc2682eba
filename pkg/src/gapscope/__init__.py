"""Gap structures of circle-rotation and interval-exchange orbits.

Computes and verifies: exact three-gap predictions with the sorting
permutation recursion, zippered-rectangle width/height data of sheared
tori, finite-N and limiting gap-distribution statistics, and the gap
digraph / slot forest underlying the distinct-gap-length bounds.
"""

__version__ = "0.1.0"

from .distribution import (
    DistributionCurve,
    arc_cutoff_kernel,
    avg_gap_iet,
    avg_gap_rotation_exact,
    farey_arc_sum,
    gap_counting,
    iet_curve,
    limit_curve,
    limit_gap_distribution,
    omega_integral,
    rotation_curve,
    verify_distribution_convergence,
)
from .errors import (
    AmbiguousValueError,
    ConsistencyError,
    DegenerateOrbitError,
    DomainError,
    GapscopeError,
    NoInverseError,
    ParseError,
    ValidationError,
)
from .gaps import (
    GapCluster,
    GapReport,
    ThreeGapPrediction,
    dplus2_bound,
    gap_report,
    orbit,
    rotation_orbit,
    sigma_recursion,
    three_gap_predict,
    verify_dplus2,
    verify_three_gap,
)
from .graphs import (
    GapForest,
    GapGraph,
    boshernitzan_bound_check,
    case_table_bound,
    classify_ghost_case,
    fgaps_build,
    gap_lengths_from_forest,
    ggaps_build,
    glue_forest,
    outdegree_identity_check,
    verify_forest_lengths,
)
from .iet import (
    Iet,
    KeaneResult,
    SurfaceInvariants,
    is_arc_exchange,
    is_irreducible,
    parse_permutation,
    perm_inverse,
    random_iet,
    singularity_at_origin,
    surface_invariants,
)
from .numerics import (
    FareyBracket,
    FareyFraction,
    RealValue,
    SurdExpr,
    dilog,
    farey_fractions,
    farey_neighbors,
    farey_pairs,
    farey_pairs_covering,
    farey_successor,
    mod_inverse,
    parse_surd,
)
from .outcomes import VerificationOutcome
from .zipper import (
    ZipperedRectangles,
    arc_parameter,
    check_gap_zipper_correspondence,
    cutoff_d,
    cutoff_f,
    zipper_arc_param,
    zipper_torus,
)
