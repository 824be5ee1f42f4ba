"""Exact lifted linear representations of modular multiplication dynamics.

The library turns the nonlinear orbit x_{k+1} = m x_k (mod p) into an exact
finite-dimensional linear system by stacking future states as observables,
locates the minimal dimension at which that lifting closes over the integers,
recovers secret exponents from the spectrum of the companion representation,
fits the operator from snapshot data with exact rational least squares, and
compares the lifted dimension against classical linear complexity.
"""

__version__ = "0.1.0"

from .complexity import (
    KoopmanLfsrComparison,
    LinearComplexityResult,
    SequenceSample,
    berlekamp_massey,
    bruteforce_min_lfsr,
    compare_koopman_vs_lfsr,
    lfsr_generate,
)
from .cyclotomic import RootSum, turn_to_complex
from .dynamics import (
    DhParams,
    DhTranscript,
    IntersectionResult,
    ModTrajectory,
    dh_exchange,
    discrete_log_bruteforce,
    euler_criterion,
    find_primitive_root,
    full_period_trajectory,
    is_primitive_root,
    mod_pow,
    shared_secret_intersection,
    simulate,
)
from .edmd import (
    EdmdDataset,
    FittedOperator,
    build_dataset,
    check_assumption,
    compare_operators,
    dataset_from_values,
    edmd_fit,
    edmd_underparameterized,
)
from .lifting import (
    CompanionSystem,
    HankelSystem,
    ObservableDictionary,
    additive_complex_lift,
    affine_augment_system,
    canonical_alpha,
    full_period_system,
    hankel_system,
    index_lookup_attack,
    lift_ciphertext,
    lift_complex,
    lift_shift,
    minimal_lifting_dimension,
    solve_alpha_exact,
    verify_closing,
)
from .spectral import (
    ExponentEstimate,
    RecoveryError,
    SpectralDecomposition,
    eigen_canonical,
    parity,
    recover_exponent,
    transform,
)

__all__ = [
    "__version__",
    "DhParams",
    "DhTranscript",
    "ModTrajectory",
    "IntersectionResult",
    "mod_pow",
    "is_primitive_root",
    "find_primitive_root",
    "simulate",
    "full_period_trajectory",
    "euler_criterion",
    "dh_exchange",
    "discrete_log_bruteforce",
    "shared_secret_intersection",
    "CompanionSystem",
    "HankelSystem",
    "ObservableDictionary",
    "lift_shift",
    "lift_ciphertext",
    "lift_complex",
    "canonical_alpha",
    "verify_closing",
    "hankel_system",
    "solve_alpha_exact",
    "minimal_lifting_dimension",
    "full_period_system",
    "index_lookup_attack",
    "affine_augment_system",
    "additive_complex_lift",
    "SpectralDecomposition",
    "ExponentEstimate",
    "RecoveryError",
    "eigen_canonical",
    "transform",
    "recover_exponent",
    "parity",
    "EdmdDataset",
    "FittedOperator",
    "build_dataset",
    "dataset_from_values",
    "check_assumption",
    "edmd_fit",
    "compare_operators",
    "edmd_underparameterized",
    "SequenceSample",
    "LinearComplexityResult",
    "KoopmanLfsrComparison",
    "berlekamp_massey",
    "lfsr_generate",
    "bruteforce_min_lfsr",
    "compare_koopman_vs_lfsr",
    "RootSum",
    "turn_to_complex",
]
