"""Interference functions of radial free motion: the Bessel function J0,
the spherical Bessel function j0, the Hankel functions H0(1) and H0(2), the
complex correction function H(xi) that distinguishes two-dimensional radial
propagation from free one-dimensional motion, and the zeros of J0.

Each closed-form evaluation here has an independent integral-representation
oracle so the two can be cross-checked in tests."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .numerics import QuadratureSpec, find_root_bisect, integrate_adaptive, \
    integrate_gaussian_envelope

METHOD_SERIES = "series"
METHOD_INTEGRAL = "integral_representation"
METHOD_ASYMPTOTIC = "asymptotic"
_METHODS = frozenset((METHOD_SERIES, METHOD_INTEGRAL, METHOD_ASYMPTOTIC))

# Ascending series sum_m (-x^2/4)^m / (m!)^2, truncated where the x = 12
# terms fall below double rounding. 31 terms keep the worst-case error
# near 6e-13 at the branch switch.
_SERIES_TERMS = 31
_SERIES_COEF = np.empty(_SERIES_TERMS)
_SERIES_COEF[0] = 1.0
for _m in range(1, _SERIES_TERMS):
    _SERIES_COEF[_m] = -_SERIES_COEF[_m - 1] / (4.0 * _m * _m)

# Large-argument path: J0(x) = sqrt(2/(pi x)) (cos(x - pi/4) Re H(x)
#                                            + sin(x - pi/4) Im H(x))
# with H expanded asymptotically, H(xi) ~ sum_m c_m (i/xi)^m,
# c_m = ((2m-1)!!)^2 / (m! 8^m). Truncation at 26 terms sits close to the
# optimal point for xi = 12, error ~ 1e-11 there and far below at larger xi.
_ASYM_TERMS = 26
_ASYM_C = np.empty(_ASYM_TERMS)
_ASYM_C[0] = 1.0
for _m in range(1, _ASYM_TERMS):
    _ASYM_C[_m] = _ASYM_C[_m - 1] * (2.0 * _m - 1.0) ** 2 / (8.0 * _m)
_ASYM_RE = np.array([(-1.0) ** k * _ASYM_C[2 * k] for k in range(13)])
_ASYM_IM = np.array([(-1.0) ** k * _ASYM_C[2 * k + 1] for k in range(13)])

_SERIES_CUTOFF = 12.0
_SCRIPT_H_WIDTH = 2.0 ** -0.5  # envelope width of exp(-tau**2)


@dataclass(frozen=True)
class BesselEvaluation:
    """A tagged function value recording how it was obtained."""

    argument: float
    value: complex
    method: str

    def __post_init__(self):
        if self.method not in _METHODS:
            raise ValueError(f"unknown evaluation method {self.method!r}")
        if self.method != METHOD_ASYMPTOTIC and self.value.imag != 0.0:
            raise ValueError("series and integral evaluations must be real")


def _j0_series_array(x):
    z = x * x
    acc = np.full_like(z, _SERIES_COEF[-1])
    for c in _SERIES_COEF[-2::-1]:
        acc = acc * z + c
    return acc


def _hankel_modulus_asymptotic(x):
    """Re and Im of the correction function H from its asymptotic series."""
    u = 1.0 / (x * x)
    hr = np.full_like(u, _ASYM_RE[-1])
    for c in _ASYM_RE[-2::-1]:
        hr = hr * u + c
    hi = np.full_like(u, _ASYM_IM[-1])
    for c in _ASYM_IM[-2::-1]:
        hi = hi * u + c
    return hr, hi / x


def _j0_asymptotic_array(x):
    hr, hi = _hankel_modulus_asymptotic(x)
    theta = x - 0.25 * np.pi
    return np.sqrt(2.0 / (np.pi * x)) * (np.cos(theta) * hr + np.sin(theta) * hi)


def bessel_j0(x):
    """Bessel function J0 for non-negative real arguments.

    Uses the ascending power series below x = 12 and the Hankel-asymptotic
    recombination above. Accepts scalars or NumPy arrays.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise DomainError("bessel_j0 requires x >= 0")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.empty_like(arr)
    small = arr < _SERIES_CUTOFF
    if np.any(small):
        out[small] = _j0_series_array(arr[small])
    if np.any(~small):
        out[~small] = _j0_asymptotic_array(arr[~small])
    return float(out[0]) if scalar else out


def spherical_j0(x):
    """Spherical Bessel function j0(x) = sin(x)/x with a series fill-in
    for the removable singularity. Accepts scalars or NumPy arrays."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise DomainError("spherical_j0 requires x >= 0")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    small = arr < 1e-4
    z = arr * arr
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(small, 1.0 - z / 6.0 + z * z / 120.0,
                       np.sin(arr) / np.where(small, 1.0, arr))
    return float(out[0]) if scalar else out


def script_h(xi: float, spec: QuadratureSpec | None = None) -> complex:
    """The correction function H(xi) of two-dimensional radial propagation.

    H(xi) = (2/sqrt(pi)) Integral_0^inf dtau exp(-tau^2)
            / sqrt(1 - i tau^2 / (2 xi))

    evaluated with the principal branch of the complex square root. For
    xi > 0 the radicand stays in the right half plane, so the branch is
    continuous; Im H > 0 and H -> 1 as xi -> inf.
    """
    if xi <= 0:
        raise DomainError("script_h requires xi > 0")
    if spec is None:
        spec = QuadratureSpec()
    pref = 2.0 / math.sqrt(math.pi)

    def integrand(tau):
        return pref * np.exp(-tau * tau) / np.sqrt(1.0 - 0.5j * tau * tau / xi)

    return integrate_gaussian_envelope(integrand, 0.0, _SCRIPT_H_WIDTH, spec)


def script_h_gamma_form(xi: float, spec: QuadratureSpec | None = None) -> complex:
    """Independent evaluation of H through the substituted integral

    H(xi) = (1/sqrt(pi)) Integral_0^inf dz exp(-z) z^(-1/2)
            / sqrt(1 - i z / (2 xi)).

    The integrable endpoint singularity exercises the adaptive bisection
    cascade; used as a cross-check oracle for script_h.
    """
    if xi <= 0:
        raise DomainError("script_h_gamma_form requires xi > 0")
    if spec is None:
        spec = QuadratureSpec()
    pref = 1.0 / math.sqrt(math.pi)
    upper = max(40.0, -math.log(min(spec.abs_tol, 1e-10)) + 10.0)

    def integrand(z):
        return pref * np.exp(-z) / (np.sqrt(z) * np.sqrt(1.0 - 0.5j * z / xi))

    return integrate_adaptive(integrand, 0.0, upper, spec)


def hankel_h0(kind: int, xi: float, spec: QuadratureSpec | None = None) -> complex:
    """Hankel functions H0(1) and H0(2) assembled from the correction
    function: outgoing and incoming cylindrical waves with the slowly
    varying complex modulus H(xi)."""
    if xi <= 0:
        raise DomainError("hankel_h0 requires xi > 0")
    if kind not in (1, 2):
        raise DomainError("kind must be 1 or 2")
    h = script_h(xi, spec)
    amp = math.sqrt(2.0 / (math.pi * xi))
    if kind == 1:
        return amp * np.exp(1j * (xi - 0.25 * math.pi)) * np.conj(h)
    return amp * np.exp(-1j * (xi - 0.25 * math.pi)) * h


def j0_asymptotic(x: float) -> float:
    """Leading asymptotic form sqrt(2/(pi x)) cos(x - pi/4)."""
    if x <= 0:
        raise DomainError("j0_asymptotic requires x > 0")
    return math.sqrt(2.0 / (math.pi * x)) * math.cos(x - 0.25 * math.pi)


def j0_oracle(x: float, spec: QuadratureSpec | None = None) -> BesselEvaluation:
    """J0 via the angular interference integral
    (1/2pi) Integral_{-pi}^{pi} dphi exp(-i x cos phi)."""
    if x < 0:
        raise DomainError("j0_oracle requires x >= 0")
    if spec is None:
        spec = QuadratureSpec()

    def integrand(phi):
        return np.exp(-1j * x * np.cos(phi)) / (2.0 * np.pi)

    val = integrate_adaptive(integrand, -math.pi, math.pi, spec)
    return BesselEvaluation(x, complex(val.real, 0.0), METHOD_INTEGRAL)


def spherical_j0_oracle(x: float, spec: QuadratureSpec | None = None) -> BesselEvaluation:
    """j0 via the polar interference integral
    (1/2) Integral_0^pi dtheta sin(theta) exp(-i x cos theta)."""
    if x < 0:
        raise DomainError("spherical_j0_oracle requires x >= 0")
    if spec is None:
        spec = QuadratureSpec()

    def integrand(theta):
        return 0.5 * np.sin(theta) * np.exp(-1j * x * np.cos(theta))

    val = integrate_adaptive(integrand, 0.0, math.pi, spec)
    return BesselEvaluation(x, complex(val.real, 0.0), METHOD_INTEGRAL)


def j0_evaluation(x: float) -> BesselEvaluation:
    """bessel_j0 value tagged with the branch that produced it."""
    method = METHOD_SERIES if x < _SERIES_CUTOFF else METHOD_ASYMPTOTIC
    value = bessel_j0(x)
    if method == METHOD_SERIES:
        return BesselEvaluation(x, complex(value, 0.0), method)
    return BesselEvaluation(x, complex(value, 0.0), METHOD_ASYMPTOTIC)


def find_j0_zeros(n: int) -> list:
    """First n positive zeros of J0, each to 1e-9 or better.

    Brackets come from the asymptotic zero locations (k - 1/4) pi, which
    are accurate to a few hundredths already at the first zero."""
    if n < 1:
        raise ValueError("n must be at least 1")
    zeros = []
    for k in range(1, n + 1):
        guess = (k - 0.25) * math.pi
        zeros.append(find_root_bisect(bessel_j0, guess - 0.35, guess + 0.35, 1e-12))
    return zeros
