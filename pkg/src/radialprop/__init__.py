"""Radial Green's functions of the free Schrodinger equation in one, two,
and three dimensions, the anti-centrifugal spreading of ring-shaped wave
packets, and the retarded kernels of the classical wave equation.

The 2D free kernel is not a bare mirror construction: each 1D kernel in it
is dressed by a correction function whose short-time limit is the phase of
an attractive 1/r^2 potential. A ring packet therefore spreads faster
toward the origin in two dimensions, while in three dimensions (and for
the retarded wave kernels, only in three dimensions) no such preference
exists. The package computes the kernels, evolves packets against
independent oracles, and quantifies both effects.
"""

from ._backend import backend_name, thread_count
from .dalembert import (RetardedEvaluation2D, g2_ret, g2_ret_spectral,
                        g3_ret_smeared, wake_tail_metric)
from .errors import (ConfigError, DomainError, GridTooSmallError,
                     InsufficientSamplesError, NoSignChangeError,
                     OnLightConeError, OscillationBudgetError,
                     ShortTimeWindowWarning, SubdivisionLimitError,
                     TooCloseToFrontError)
from .evolution import (RingPacket, SpreadingDiagnostics, default_grid,
                        diagnostics, envelope_moments, make_ring_packet,
                        propagate_cartesian_2d, propagate_radial)
from .numerics import (ExtrapolationSpec, QuadratureSpec, find_root_bisect,
                       integrate_adaptive, integrate_gaussian_envelope,
                       richardson_extrapolate)
from .propagators import (EffectivePotential, PhysicalParams,
                          PropagatorContext, RadialWavefunction,
                          effective_potential_2d, g1, g2_bessel, g2_hankel,
                          g2_short_time, g3, g3_bessel, make_context,
                          make_effective_potential, quantum_potential,
                          radial_ode_residual)
from .special import (bessel_j0, find_j0_zeros, hankel_h0, script_h,
                      spherical_j0)
from .verify import run_checks

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ConfigError",
    "DomainError",
    "EffectivePotential",
    "ExtrapolationSpec",
    "GridTooSmallError",
    "InsufficientSamplesError",
    "NoSignChangeError",
    "OnLightConeError",
    "OscillationBudgetError",
    "PhysicalParams",
    "PropagatorContext",
    "QuadratureSpec",
    "RadialWavefunction",
    "RetardedEvaluation2D",
    "RingPacket",
    "ShortTimeWindowWarning",
    "SpreadingDiagnostics",
    "SubdivisionLimitError",
    "TooCloseToFrontError",
    "backend_name",
    "bessel_j0",
    "default_grid",
    "diagnostics",
    "effective_potential_2d",
    "envelope_moments",
    "find_j0_zeros",
    "find_root_bisect",
    "g1",
    "g2_bessel",
    "g2_hankel",
    "g2_ret",
    "g2_ret_spectral",
    "g2_short_time",
    "g3",
    "g3_bessel",
    "g3_ret_smeared",
    "hankel_h0",
    "integrate_adaptive",
    "integrate_gaussian_envelope",
    "make_context",
    "make_effective_potential",
    "make_ring_packet",
    "propagate_cartesian_2d",
    "propagate_radial",
    "quantum_potential",
    "radial_ode_residual",
    "richardson_extrapolate",
    "run_checks",
    "script_h",
    "spherical_j0",
    "thread_count",
    "wake_tail_metric",
]

BACKEND = backend_name()
