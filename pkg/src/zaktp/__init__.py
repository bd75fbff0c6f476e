"""Zak transforms of totally positive windows of finite type.

Closed-form evaluation of the windows and their exponential-B-spline
factorization, complexified Zak transforms with certified series tails,
zero location and zero-free certification, truncation convergence
diagnostics, and Gabor frame bounds (continuous estimates and discrete
brute-force tests).
"""

from .analysis import (
    Region,
    ZeroCertificate,
    certify_zero_free,
    fully_reduced_sign_changes,
    locate_zero_half,
    reduced_slice_monotonicity,
    strong_sign_changes,
    unit_monotone_offset,
)
from .convergence import (
    WeightGenerator,
    convergence_sweep,
    eval_reciprocal_laplace,
    psi_decay_diagnostic,
    truncate,
    weighted_sup_distance,
    zak_strip_distance,
)
from .ebspline import (
    PiecewiseExpPoly,
    WeightVector,
    build_ebspline,
    eval_ebspline,
    fourier_ebspline,
    make_weight_vector,
    reduce_ebspline,
)
from .errors import (
    DerivativeUnavailable,
    EmptyInput,
    IllConditioned,
    Indivisible,
    MultipleZeros,
    NotUnitMonotone,
    NoZero,
    PoleHit,
    SigmaTooLarge,
    SlowDecay,
    StripViolation,
    ToleranceUnreachable,
    ZakTPError,
    ZeroWeight,
)
from .frames import (
    DiscreteWindow,
    FrameBoundsReport,
    discrete_frame_test,
    frame_bounds,
    periodize_sample,
)
from .report_io import write_report
from .weights import (
    ExpSumRep,
    WeightMultiset,
    divided_difference,
    eval_tp,
    exp_sum_rep,
    fourier_tp,
    make_weights,
)
from .zak import (
    ComplexFrequency,
    ZakGrid,
    compute_zak_grid,
    extend_quasiperiodic,
    zak_dilation_check,
    zak_ebspline,
    zak_factorized,
    zak_inversion_check,
    zak_prefactor,
    zak_tp,
    zak_tp_with_tail,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
