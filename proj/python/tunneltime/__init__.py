"""Transmission and stationary-phase tunneling times for one-dimensional
piecewise-constant potentials and their periodic repetitions.

Units: 2m = hbar = c = 1, so E = k**2 and lengths are in units of 1/k.
"""

from tunneltime._core import (
    ChebyshevRatios,
    DegenerateMatrixError,
    OutOfRegimeError,
    PeriodicSpec,
    PeriodicTransmission,
    PiecewiseConstantPotential,
    ResonanceProximityError,
    SaturationScan,
    ScaledMatrix2,
    Segment,
    TimeMethod,
    TransmissionCoefficient,
    TunnelingTimeResult,
    __version__,
    bloch_parameter,
    cell_matrix,
    chebyshev_ratios,
    direct_array,
    hartman_limit_rect,
    make_cantor,
    make_rectangular,
    make_segments,
    phase_derivative,
    reflection,
    reflection_at,
    saturation_scan,
    segment_matrix,
    t_periodic,
    transmission,
    transmission_at,
    tunneling_time_periodic,
    tunneling_time_rect_analytic,
    tunneling_time_single,
    unwrap_phase,
    wrap_phase,
)

__all__ = [
    "ChebyshevRatios",
    "DegenerateMatrixError",
    "OutOfRegimeError",
    "PeriodicSpec",
    "PeriodicTransmission",
    "PiecewiseConstantPotential",
    "ResonanceProximityError",
    "SaturationScan",
    "ScaledMatrix2",
    "Segment",
    "TimeMethod",
    "TransmissionCoefficient",
    "TunnelingTimeResult",
    "__version__",
    "bloch_parameter",
    "cell_matrix",
    "chebyshev_ratios",
    "direct_array",
    "hartman_limit_rect",
    "make_cantor",
    "make_rectangular",
    "make_segments",
    "phase_derivative",
    "reflection",
    "reflection_at",
    "saturation_scan",
    "segment_matrix",
    "t_periodic",
    "transmission",
    "transmission_at",
    "tunneling_time_periodic",
    "tunneling_time_rect_analytic",
    "tunneling_time_single",
    "unwrap_phase",
    "wrap_phase",
]
