"""Certified density criteria for Gabor frames, and the odd-window barrier.

The package computes rigorous enclosures of the frame criterion
delta_g(omega) = (1/2)*sqrt(S_0/S_1) built from weighted lattice sums
of |ghat|^2, certifies rectangular-lattice frames from it, exhibits the
structural ceiling at 1/2 for windows whose Fourier transform vanishes
at the origin, and reduces arbitrary planar lattices to the square case
through Iwasawa-factored metaplectic operators.  A finite-dimensional
frame-operator oracle supplies independent desk-scale evidence.
"""

from .barrier import (
    BarrierReport,
    BarrierScan,
    BarrierScanRow,
    delta_at_zero,
    h1_barrier_scan,
    odd_barrier_suite,
    termwise_gap,
)
from .certify_gaussian import GaussianCertificate, gaussian_certificate, geometric_tail
from .criterion import (
    CriterionVerdict,
    DeltaEnclosure,
    DensityProfile,
    LatticeSumResult,
    certify,
    certify_rect,
    delta_g,
    geometric_power_sum,
    lattice_partial_sum,
    lattice_sum,
    min_delta,
    wirtinger_residual,
)
from .errors import (
    DegenerateAngleError,
    DegenerateError,
    DivergentSeriesError,
    GaborcertError,
    NumericalError,
    ParameterNotRepresentable,
    PreconditionError,
    TruncationRiskWarning,
    ZeroSumError,
)
from .lattice import (
    IwasawaFactors,
    Lattice2D,
    ReductionResult,
    dilation_matrix,
    iwasawa,
    rect,
    reduce_general,
    rotation_matrix,
    shear_matrix,
)
from .metaplectic import (
    SampledFunction,
    chirp,
    dilate_sampled,
    frac_fourier,
    intertwining_residual,
    parity_residual,
    sample_window,
    time_frequency_shift,
    to_window,
)
from .oracle import (
    EquivalenceReport,
    FiniteGaborModel,
    FrameBounds,
    build_model,
    equivalence_check,
    finite_frame_bounds,
    frame_operator,
    model_for,
    snap_lattice,
)
from .window import (
    Envelope,
    Parity,
    Window,
    chirp_window,
    classify_parity,
    combine,
    dilate,
    envelope_violation,
    gaussian,
    hermite,
    read_sampled_csv,
    sample_grid,
    sampled_window,
    window_from_csv,
    write_sampled_csv,
)

__version__ = "0.1.0"

__all__ = [
    "BarrierReport",
    "BarrierScan",
    "BarrierScanRow",
    "CriterionVerdict",
    "DegenerateAngleError",
    "DegenerateError",
    "DeltaEnclosure",
    "DensityProfile",
    "DivergentSeriesError",
    "Envelope",
    "EquivalenceReport",
    "FiniteGaborModel",
    "FrameBounds",
    "GaborcertError",
    "GaussianCertificate",
    "IwasawaFactors",
    "Lattice2D",
    "LatticeSumResult",
    "NumericalError",
    "ParameterNotRepresentable",
    "Parity",
    "PreconditionError",
    "ReductionResult",
    "SampledFunction",
    "TruncationRiskWarning",
    "Window",
    "ZeroSumError",
    "build_model",
    "certify",
    "certify_rect",
    "chirp",
    "chirp_window",
    "classify_parity",
    "combine",
    "delta_at_zero",
    "delta_g",
    "dilate",
    "dilate_sampled",
    "dilation_matrix",
    "envelope_violation",
    "equivalence_check",
    "finite_frame_bounds",
    "frac_fourier",
    "frame_operator",
    "gaussian",
    "gaussian_certificate",
    "geometric_power_sum",
    "geometric_tail",
    "h1_barrier_scan",
    "hermite",
    "intertwining_residual",
    "iwasawa",
    "lattice_partial_sum",
    "lattice_sum",
    "min_delta",
    "model_for",
    "odd_barrier_suite",
    "parity_residual",
    "read_sampled_csv",
    "rect",
    "reduce_general",
    "rotation_matrix",
    "sample_grid",
    "sample_window",
    "sampled_window",
    "shear_matrix",
    "snap_lattice",
    "termwise_gap",
    "time_frequency_shift",
    "to_window",
    "window_from_csv",
    "wirtinger_residual",
    "write_sampled_csv",
]
