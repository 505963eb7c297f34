"""Closed-form Green's functions of a free quantum particle: the 1D kernel,
the 2D radial kernel in both its Bessel and its Hankel/correction-function
forms, the short-time phase form, the 3D radial kernel, plus the effective
radial potential family and a discretized residual check of the radial
equation.

Conventions: alpha(t) = M / (2 hbar t) and the normalization
N(t) = sqrt(alpha / pi) exp(-i pi / 4), i.e. the branch fixed by
1/sqrt(i) = exp(-i pi / 4). Radial arguments are non-negative; the only
negative coordinate ever used is the mirror source point of the 1D kernel."""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ShortTimeWindowWarning
from .numerics import QuadratureSpec
from .special import bessel_j0, script_h, spherical_j0

_QUARTER_TURN = cmath.exp(-0.25j * math.pi)  # 1/sqrt(i)


@dataclass(frozen=True)
class PhysicalParams:
    """Mass, reduced Planck constant, and wave speed, all strictly positive.
    The wave speed is used only by the retarded-kernel module."""

    mass: float = 1.0
    hbar: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        if self.mass <= 0 or self.hbar <= 0 or self.c <= 0:
            raise ValueError("physical parameters must be strictly positive")


@dataclass(frozen=True)
class PropagatorContext:
    """Derived quantities for one evolution time: alpha = M/(2 hbar t) and
    the normalization constant norm = sqrt(alpha/pi) exp(-i pi/4)."""

    t: float
    alpha: float
    norm: complex


def make_context(params: PhysicalParams, t: float) -> PropagatorContext:
    """Build the propagator context for a strictly positive time.

    The t -> 0 kernel is a delta function with no finite representation,
    so t <= 0 is rejected rather than special-cased.
    """
    if t <= 0:
        raise DomainError("evolution time must be strictly positive")
    alpha = params.mass / (2.0 * params.hbar * t)
    norm = math.sqrt(alpha / math.pi) * _QUARTER_TURN
    return PropagatorContext(t=t, alpha=alpha, norm=norm)


def g1(x: float, ctx: PropagatorContext, x_src: float) -> complex:
    """Free 1D kernel N exp(i alpha (x - x_src)^2). Both coordinates are
    ordinary line coordinates and may be negative."""
    d = x - x_src
    return ctx.norm * cmath.exp(1j * ctx.alpha * d * d)


def g2_bessel(r, ctx: PropagatorContext, rho) -> complex:
    """2D radial kernel in Bessel form:

    N exp(i alpha (r^2 + rho^2)) exp(-i pi/4) 2 sqrt(pi alpha r rho)
      J0(2 alpha r rho)

    Vanishes identically at r = 0 or rho = 0. Accepts scalars or arrays.
    """
    r_arr = np.asarray(r, dtype=float)
    rho_arr = np.asarray(rho, dtype=float)
    if np.any(r_arr < 0) or np.any(rho_arr < 0):
        raise DomainError("radial coordinates must be non-negative")
    a = ctx.alpha
    amp = 2.0 * np.sqrt(np.pi * a * r_arr * rho_arr)
    phase = np.exp(1j * a * (r_arr * r_arr + rho_arr * rho_arr))
    val = ctx.norm * _QUARTER_TURN * amp * phase * bessel_j0(2.0 * a * r_arr * rho_arr)
    if val.ndim == 0:
        return complex(val)
    return val


def g2_hankel(r: float, ctx: PropagatorContext, rho: float,
              spec: QuadratureSpec | None = None) -> complex:
    """2D radial kernel decomposed into direct and mirror 1D kernels, each
    dressed by the correction function:

    g1(r | rho) H(2 alpha r rho) - i g1(r | -rho) conj(H(2 alpha r rho))

    The -i between the two terms is a quarter-turn phase against the plain
    mirror difference that appears in three dimensions.
    """
    if r <= 0 or rho <= 0:
        raise DomainError("g2_hankel requires r > 0 and rho > 0")
    h = script_h(2.0 * ctx.alpha * r * rho, spec)
    return g1(r, ctx, rho) * h - 1j * g1(r, ctx, -rho) * np.conj(h)


def quantum_potential(r, params: PhysicalParams):
    """The attractive radial potential -hbar^2 / (8 M r^2) felt by the
    zero-angular-momentum reduced wave in two dimensions."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise DomainError("quantum_potential requires r > 0")
    out = -(params.hbar**2) / (8.0 * params.mass * r_arr * r_arr)
    return float(out) if out.ndim == 0 else out


def g2_short_time(r: float, ctx: PropagatorContext, rho: float) -> complex:
    """Short-time form of the 2D kernel: each correction factor is replaced
    by the pure phase exp(-i V_Q(sqrt(r rho)) t / hbar) accumulated in the
    attractive quantum potential. In terms of the context this phase is
    exactly 1/(16 alpha r rho).

    Valid while the phase stays well below one; a warning is emitted beyond
    0.1.
    """
    if r <= 0 or rho <= 0:
        raise DomainError("g2_short_time requires r > 0 and rho > 0")
    exponent = 1j / (16.0 * ctx.alpha * r * rho)
    if abs(exponent) >= 0.1:
        warnings.warn(
            f"short-time phase {abs(exponent):.3f} exceeds the 0.1 window",
            ShortTimeWindowWarning,
            stacklevel=2,
        )
    h = cmath.exp(exponent)
    return g1(r, ctx, rho) * h - 1j * g1(r, ctx, -rho) * h.conjugate()


def g3(r, ctx: PropagatorContext, rho) -> complex:
    """3D radial kernel: the plain mirror difference of free 1D kernels,

    N (exp(i alpha (r - rho)^2) - exp(i alpha (r + rho)^2)),

    with no correction factor. Vanishes at r = 0 or rho = 0.
    Accepts scalars or arrays.
    """
    r_arr = np.asarray(r, dtype=float)
    rho_arr = np.asarray(rho, dtype=float)
    if np.any(r_arr < 0) or np.any(rho_arr < 0):
        raise DomainError("radial coordinates must be non-negative")
    d = r_arr - rho_arr
    s = r_arr + rho_arr
    val = ctx.norm * (np.exp(1j * ctx.alpha * d * d) - np.exp(1j * ctx.alpha * s * s))
    if val.ndim == 0:
        return complex(val)
    return val


def g3_bessel(r, ctx: PropagatorContext, rho) -> complex:
    """Equivalent spherical-Bessel form of the 3D radial kernel:

    N exp(i alpha (r^2 + rho^2)) (-2i) (2 alpha r rho) j0(2 alpha r rho).
    """
    r_arr = np.asarray(r, dtype=float)
    rho_arr = np.asarray(rho, dtype=float)
    if np.any(r_arr < 0) or np.any(rho_arr < 0):
        raise DomainError("radial coordinates must be non-negative")
    a = ctx.alpha
    xi = 2.0 * a * r_arr * rho_arr
    phase = np.exp(1j * a * (r_arr * r_arr + rho_arr * rho_arr))
    val = ctx.norm * phase * (-2.0j) * xi * spherical_j0(xi)
    if val.ndim == 0:
        return complex(val)
    return val


@dataclass(frozen=True)
class EffectivePotential:
    """Coefficient view of the centrifugal family in two dimensions:
    V(r) = prefactor / r^2 with prefactor = (hbar^2 / 2M)(m^2 - 1/4),
    attractive exactly for the symmetric wave m = 0."""

    dimension: int
    m: int
    prefactor: float

    def __post_init__(self):
        if self.dimension != 2:
            raise ValueError("only the two-dimensional family is defined")
        if (self.prefactor < 0) != (self.m == 0):
            raise ValueError("prefactor sign inconsistent with m")

    def value_at(self, r: float) -> float:
        if r <= 0:
            raise DomainError("potential is singular at r = 0")
        return self.prefactor / (r * r)


def make_effective_potential(m: int, params: PhysicalParams) -> EffectivePotential:
    pref = (params.hbar**2 / (2.0 * params.mass)) * (m * m - 0.25)
    return EffectivePotential(dimension=2, m=m, prefactor=pref)


def effective_potential_2d(m: int, r: float, params: PhysicalParams) -> float:
    """Value of the 2D effective radial potential
    (hbar^2 / 2M)(m^2 - 1/4) / r^2; negative exactly when m = 0."""
    return make_effective_potential(m, params).value_at(r)


def radial_ode_residual(k: float, grid, params: PhysicalParams,
                        with_quantum_potential: bool = True) -> float:
    """Max-norm residual of u(r) = sqrt(r) J0(k r) in the discretized
    reduced radial equation at zero angular momentum,

    u'' + (2M / hbar^2)(E - V_Q(r)) u = 0,  E = hbar^2 k^2 / (2M),

    using second-order central differences on a uniform grid. The residual
    falls off as the square of the spacing. With the quantum potential
    removed the residual stalls at the size of u / (4 r^2), which is the
    numerical signature that the attractive term is a real part of the
    dynamics and not an artifact.
    """
    if k <= 0:
        raise DomainError("k must be positive")
    r = np.asarray(grid, dtype=float)
    if r.ndim != 1 or len(r) < 100:
        raise DomainError("grid must be one-dimensional with at least 100 points")
    if r[0] <= 0:
        raise DomainError("grid must start at r > 0")
    h = r[1] - r[0]
    if not np.allclose(np.diff(r), h, rtol=1e-9, atol=0.0):
        raise DomainError("grid must be uniform")
    u = np.sqrt(r) * bessel_j0(k * r)
    d2 = (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (h * h)
    energy = params.hbar**2 * k * k / (2.0 * params.mass)
    pot = quantum_potential(r[1:-1], params) if with_quantum_potential else 0.0
    residual = d2 + (2.0 * params.mass / params.hbar**2) * (energy - pot) * u[1:-1]
    return float(np.max(np.abs(residual)))


@dataclass(frozen=True, eq=False)
class RadialWavefunction:
    """Samples of a reduced radial wave function u on a radial grid.

    u means sqrt(r) times the full wave function in two dimensions and
    r times it in three; either way u must vanish at r = 0 and carry a
    finite trapezoid norm.
    """

    dimension: int
    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if self.dimension not in (2, 3):
            raise ValueError("dimension must be 2 or 3")
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        if grid.ndim != 1 or grid.shape != values.shape:
            raise ValueError("grid and values must be matching 1D arrays")
        if grid[0] < 0 or np.any(np.diff(grid) <= 0):
            raise ValueError("grid must be non-negative and strictly increasing")
        if grid[0] == 0.0 and values[0] != 0.0:
            raise ValueError("reduced wave function must vanish at r = 0")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def norm_squared(self) -> float:
        return float(np.trapezoid(np.abs(self.values) ** 2, self.grid))

    def norm(self) -> float:
        return math.sqrt(self.norm_squared())
