"""Retarded Green's functions of the d'Alembert wave equation in two and
three dimensions.

In k space the volume element splits into k^(N-1) dk times a solid-angle
factor, and the angular average of a plane wave is J0(kr) in two dimensions
but sin(kr)/(kr) in three. That single difference decides the physics: the
3D kernel collapses to a sharp delta front with silence behind it, while
the 2D kernel keeps a wake, 1/sqrt((ct)^2 - r^2), filling the whole
interior of the light cone. Huygens' principle holds in 3D and fails in 2D.

The 2D kernel is exposed both in closed form and through the regulated
spectral integral (exponential damping, Richardson extrapolated to zero
regulator), which serves as an independent oracle for the closed form.
The 3D kernel is exposed only smeared against a test function; a delta has
no faithful pointwise numeric value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, OnLightConeError, TooCloseToFrontError
from .numerics import ExtrapolationSpec, QuadratureSpec, integrate_adaptive, richardson_extrapolate
from .special import bessel_j0

REGION_BEFORE_FRONT = "before_front"
REGION_ON_FRONT = "on_front"
REGION_INSIDE = "inside"

FRONT_EXCLUSION = 0.05
_CONE_TOL = 1e-12
_TAIL_DAMPING = 1e-12

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class RetardedEvaluation2D:
    """One evaluation of the 2D retarded kernel with its light-cone region."""

    t: float
    r: float
    c: float
    value: float
    region: str

    def __post_init__(self):
        if self.r < 0 or self.c <= 0:
            raise DomainError("need r >= 0 and c > 0")
        if self.region not in (REGION_BEFORE_FRONT, REGION_ON_FRONT, REGION_INSIDE):
            raise ValueError(f"unknown region {self.region!r}")
        if self.value < 0:
            raise ValueError("retarded amplitude is non-negative")
        if self.region == REGION_BEFORE_FRONT and self.value != 0.0:
            raise ValueError("amplitude ahead of the front must vanish")


def classify_region(t: float, r: float, c: float) -> str:
    if t <= 0:
        return REGION_BEFORE_FRONT
    if abs(r - c * t) < _CONE_TOL * c * t:
        # symmetric band: a hair outside the cone is still "on front"
        return REGION_ON_FRONT
    if r > c * t:
        return REGION_BEFORE_FRONT
    return REGION_INSIDE


def g2_ret(t: float, r: float, c: float) -> RetardedEvaluation2D:
    """Closed-form 2D retarded kernel 1/(2 pi sqrt((ct)^2 - r^2)) inside
    the light cone, zero ahead of it.

    The amplitude grows toward the front and diverges on it; exactly on
    the cone this raises OnLightConeError instead of returning a number.
    """
    if r < 0 or c <= 0:
        raise DomainError("need r >= 0 and c > 0")
    region = classify_region(t, r, c)
    if region == REGION_ON_FRONT:
        raise OnLightConeError(f"divergent on the front r = ct = {c * t}")
    if region == REGION_BEFORE_FRONT:
        value = 0.0
    else:
        ct = c * t
        value = 1.0 / (_TWO_PI * math.sqrt(ct * ct - r * r))
    return RetardedEvaluation2D(t=t, r=r, c=c, value=value, region=region)


def default_regulators() -> ExtrapolationSpec:
    """Regulator ladder for the spectral route, as fractions of ct."""
    return ExtrapolationSpec(regulator_sequence=(0.05, 0.025, 0.0125, 0.00625), order=3)


def g2_ret_spectral(t: float, r: float, c: float,
                    eps_spec: ExtrapolationSpec | None = None,
                    spec: QuadratureSpec | None = None) -> float:
    """2D retarded kernel from the damped spectral integral
    (1/2 pi) int_0^inf e^(-eps k) sin(k c t) J0(k r) dk,
    Richardson-extrapolated to zero damping.

    Regulator entries are relative to ct. Each integral is truncated where
    the damping envelope reaches 1e-12 and done with adaptive quadrature.
    Points within 5% of the front are refused (TooCloseToFrontError): the
    limit is divergent there and the extrapolation loses its footing.
    """
    if t <= 0:
        raise DomainError("the spectral route needs t > 0")
    if r < 0 or c <= 0:
        raise DomainError("need r >= 0 and c > 0")
    ct = c * t
    if abs(r - ct) < FRONT_EXCLUSION * ct:
        raise TooCloseToFrontError(
            f"r = {r} is within {FRONT_EXCLUSION:.0%} of the front ct = {ct}"
        )
    if eps_spec is None:
        eps_spec = default_regulators()
    if spec is None:
        spec = QuadratureSpec()

    samples = []
    for rel in eps_spec.regulator_sequence:
        eps = rel * ct
        k_max = math.log(1.0 / _TAIL_DAMPING) / eps

        def integrand(k, eps=eps):
            return np.exp(-eps * k) * np.sin(k * ct) * bessel_j0(k * r)

        value = integrate_adaptive(integrand, 0.0, k_max, spec) / _TWO_PI
        samples.append((rel, value))
    return float(richardson_extrapolate(samples, eps_spec).real)


def g3_ret_smeared(t: float, f, c: float) -> float:
    """3D retarded kernel paired with a radial test function.

    The kernel is a pure spherical delta front, so the volume integral
    collapses to ct * f(ct); for t <= 0 the retarded kernel vanishes.
    There is no interior contribution at all: everything behind the front
    is exactly silent.
    """
    if c <= 0:
        raise DomainError("need c > 0")
    if t <= 0:
        return 0.0
    ct = c * t
    return ct * float(f(ct))


def wake_tail_metric(t: float, c: float, r_samples, dimension: int = 2) -> float:
    """Integrated interior amplitude behind the front, up to 0.95 ct.

    Trapezoid of the closed-form 2D kernel over the given radii; the exact
    value for dense samples on [0, 0.95 ct] is arcsin(0.95)/(2 pi),
    independent of t. In three dimensions the kernel has no interior
    support, so the metric is exactly 0.0.
    """
    if t <= 0 or c <= 0:
        raise DomainError("need t > 0 and c > 0")
    if dimension not in (2, 3):
        raise DomainError("dimension must be 2 or 3")
    r = np.asarray(r_samples, dtype=float)
    if r.ndim != 1 or r.size < 2:
        raise DomainError("need a 1D array of at least two radii")
    if np.any(r < 0) or np.any(np.diff(r) <= 0):
        raise DomainError("radii must be non-negative and strictly increasing")
    bound = 0.95 * c * t
    if r[-1] > bound * (1.0 + 1e-12):
        raise TooCloseToFrontError(
            f"samples must stay inside r <= 0.95 ct = {bound}"
        )
    if dimension == 3:
        return 0.0
    ct = c * t
    values = 1.0 / (_TWO_PI * np.sqrt(ct * ct - r * r))
    return float(np.trapezoid(values, r))
