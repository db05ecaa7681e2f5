"""Curvature invariants of Hermitian holomorphic bundles on the unit disc.

The package computes, for reproducing-kernel bundles over the disc:
coefficient-level curvature invariants via truncated series and kernel
normalization, an independent finite-difference oracle for the same
quantities, structured deciders for (simultaneous) unitary equivalence of
the invariants, and the inverse problem of realizing a prescribed
curvature diagonal inside the homogeneous kernel family.
"""

from .equivalence import (
    EquivalenceReport,
    Verdict,
    eig_multiset_equal,
    full_report,
    simultaneous_pair_equiv,
    zzbar_distinguishes,
)
from .errors import (
    DegenerateInputError,
    DimensionMismatchError,
    DiscDomainError,
    MetricDegeneracyError,
    SingularLeadingTermError,
    TruncationOrderError,
    UnsupportedShapeError,
)
from .feasibility import (
    FeasibilityResult,
    PermutationAnalysis,
    abc_to_params,
    check_region,
    permutation_analysis,
    rank2_feasibility,
    roundtrip_check,
    solve_triple,
    triple_to_abc,
)
from .invariants import (
    PointInvariants,
    covd_zbar_n_at_zero,
    homogeneous_invariants_closed,
    invariants_at_zero,
    normalize,
    tilde_a_closed,
    tilde_a_general,
    transport_eigenvalues,
)
from .kernels import (
    BergmanPower,
    DirectSum,
    Homogeneous,
    Jet,
    KernelSpec,
    Permuted,
    TriangularData,
    jet_taylor_generic,
    kernel_evaluate,
    kernel_rank,
    kernel_taylor,
    spec_from_dict,
    spec_to_dict,
)
from .mobius import MobiusMap, cocycle_c, mobius_apply, mobius_compose, mobius_inverse
from .oracle import (
    FDConfig,
    covd_zbar_fd,
    covd_zzbar_fd,
    curvature_eigenvalues_fd,
    curvature_fd,
    metric_at,
    oracle_invariants_at_zero,
    to_orthonormal_frame,
)
from .series import (
    DEFAULT_ORDER,
    MatrixPowerSeries2,
    hermitian_symmetry_defect,
    series_evaluate,
    series_invert,
    series_multiply,
)

__version__ = "0.1.0"
