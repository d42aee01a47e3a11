"""Constructive correspondence between five real tensor quantities and
bispinor matrices in 4-dimensional Minkowski-signature space."""

from .clifford import (
    DIRAC_COMPLEX,
    ETA,
    MAJORANA_REAL,
    PAIRS,
    SIGMA_FACTOR,
    DiracRep,
    HermitianBasis16,
    boost_spin,
    build_basis16,
    build_rep,
    expand_on_basis,
    lorentz_spin,
    rotation_spin,
)
from .errors import (
    BadSignature,
    BispinorError,
    DegenerateNormalization,
    GenerationExhausted,
    Infeasible,
    InputError,
    NoConvergence,
    NoIntertwiner,
    NotLorentz,
    NotNonnegative,
    NotUnitary,
    ProjectorConstructionFailed,
    SpacelikeCurrent,
)
from .factorization import (
    BispinorMatrix,
    BispinorSplit,
    HermitianFactorSet,
    PolarFactors,
    bilinears,
    enumerate_hermitian_factors,
    hermitian_sqrt,
    polar_decompose,
    rotation_covariance_check,
    roundtrip_residual,
    solve_Z,
    split_bispinors,
)
from .frames import (
    LOCAL,
    WORLD,
    LorentzTransform,
    Tetrad,
    TensorQuintuple,
    WorldMetric,
    apply_lorentz,
    boost,
    local_to_world,
    quintuple_difference,
    random_lorentz,
    rotation,
    tetrad_from_metric,
    world_to_local,
)
from .real_reduction import (
    NormalizedSystem,
    RealExpansion,
    build_Y,
    compose_ZZplus,
    expand_Z,
    normalize_system,
    reconstruct_Z,
    solve_normalized,
    solve_normalized_newton,
    system_residual,
)
from .spectrum import (
    CurrentInvariants,
    MMatrix,
    SpectrumReport,
    build_M,
    closed_form_lambdas,
    current_invariants,
    feasibility,
    kappa,
    numeric_spectrum,
    spectrum_report,
)

__version__ = "1.0.0"
