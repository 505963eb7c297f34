"""Self-verification: every cross-form identity, oracle agreement, and
structural invariant in the package, runnable as one registry.

Each check returns its worst observed error; a check passes when that
error is within its tolerance. Exceptions inside a check are reported as
failures with a sentinel error value, never propagated."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dalembert, evolution, propagators, special
from .errors import ConfigError
from .numerics import (ExtrapolationSpec, QuadratureSpec, integrate_adaptive,
                       integrate_gaussian_envelope, richardson_extrapolate)
from .propagators import PhysicalParams, make_context

FAILURE_SENTINEL = 1e308


@dataclass(frozen=True)
class CheckResult:
    check_name: str
    status: str
    max_error: float
    tolerance: float


def _check_quadrature_polynomial():
    # GK15 is exact far beyond degree 5; the adaptive wrapper must not spoil it
    spec = QuadratureSpec()
    f = lambda x: x ** 5 - 3.0 * x ** 3 + 2.0 * x + 1.0
    exact = (2.0 ** 6 - 1.0) / 6.0 - 3.0 * (2.0 ** 4 - 1.0) / 4.0 + (2.0 ** 2 - 1.0) + 3.0
    err = abs(integrate_adaptive(f, -1.0, 2.0, spec) - exact)
    g = lambda x: np.cos(3.0 * x)
    err = max(err, abs(integrate_adaptive(g, 0.0, 10.0, spec) - math.sin(30.0) / 3.0))
    return err


def _check_gaussian_envelope_window():
    spec = QuadratureSpec()
    c, w = 5.0, 0.5
    f = lambda x: np.exp(-((x - c) ** 2) / (2.0 * w * w))
    val = integrate_gaussian_envelope(f, c, w, spec)
    return abs(val - w * math.sqrt(2.0 * math.pi))


def _check_richardson_polynomial():
    eps_spec = ExtrapolationSpec(regulator_sequence=(0.1, 0.05, 0.025, 0.0125), order=2)
    samples = [(e, 3.0 - 2.0 * e + 0.5 * e * e) for e in eps_spec.regulator_sequence]
    return abs(richardson_extrapolate(samples, eps_spec) - 3.0)


def _check_bessel_integral_oracle():
    xs = [0.0, 0.05, 0.5, 1.0, 2.0, 5.0, 8.0, 11.9, 12.1, 20.0, 47.3, 123.4]
    spec = QuadratureSpec()
    return max(abs(special.bessel_j0(x) - special.j0_oracle(x, spec).value)
               for x in xs)


def _check_spherical_integral_oracle():
    xs = [1e-5, 0.01, 0.5, 2.0, 9.0, 31.0]
    spec = QuadratureSpec()
    return max(abs(special.spherical_j0(x) - special.spherical_j0_oracle(x, spec).value)
               for x in xs)


def _check_bessel_zero_residual():
    zeros = special.find_j0_zeros(30)
    return max(abs(special.bessel_j0(z)) for z in zeros)


def _check_hankel_recombination():
    # the two outgoing/incoming pieces must recombine into the standing J0
    errs = []
    for xi in (0.6, 2.5, 7.0, 15.0, 40.0):
        pair = 0.5 * (special.hankel_h0(1, xi) + special.hankel_h0(2, xi))
        errs.append(abs(pair - special.bessel_j0(xi)))
    return max(errs)


def _check_short_time_window(params):
    ctx = make_context(params, 0.05)
    errs = []
    for r, rho in ((3.0, 4.0), (5.0, 5.0), (2.0, 8.0)):
        full = propagators.g2_hankel(r, ctx, rho)
        approx = propagators.g2_short_time(r, ctx, rho)
        errs.append(abs(approx - full) / abs(full))
    return max(errs)


def _check_g2_forms(params):
    rng = np.random.default_rng(7)
    errs, scale = [], 0.0
    for _ in range(20):
        t = rng.uniform(0.4, 4.0)
        ctx = make_context(params, t)
        r, rho = rng.uniform(0.3, 6.0, size=2)
        a = propagators.g2_bessel(r, ctx, rho)
        b = propagators.g2_hankel(r, ctx, rho)
        errs.append(abs(a - b))
        scale = max(scale, abs(a))
    return max(errs) / scale


def _check_g3_forms(params):
    rng = np.random.default_rng(11)
    errs = []
    for _ in range(20):
        ctx = make_context(params, rng.uniform(0.4, 4.0))
        r, rho = rng.uniform(0.1, 8.0, size=2)
        errs.append(abs(propagators.g3(r, ctx, rho) - propagators.g3_bessel(r, ctx, rho)))
    return max(errs)


def _check_boundary_zeros(params):
    ctx = make_context(params, 0.7)
    vals = [
        propagators.g2_bessel(0.0, ctx, 3.0),
        propagators.g2_bessel(3.0, ctx, 0.0),
        propagators.g3(0.0, ctx, 3.0),
        propagators.g3(3.0, ctx, 0.0),
        propagators.g3(2.0, ctx, 5.0) - propagators.g3(5.0, ctx, 2.0),
    ]
    return max(abs(v) for v in vals)


def _check_free_modulus(params):
    ctx = make_context(params, 1.3)
    want = math.sqrt(ctx.alpha / math.pi)
    xs = np.linspace(-6.0, 6.0, 25)
    return max(abs(abs(propagators.g1(x, ctx, 0.7)) - want) for x in xs)


def _check_quantum_potential_attractive(params):
    rs = np.geomspace(0.05, 50.0, 40)
    vq = propagators.quantum_potential(rs, params)
    if np.any(vq >= 0.0):
        return FAILURE_SENTINEL
    pot = propagators.make_effective_potential(0, params)
    err = max(abs(pot.value_at(r) - propagators.quantum_potential(r, params)) for r in rs)
    for m in (1, 2, 5):
        if propagators.effective_potential_2d(m, 1.0, params) <= 0.0:
            return FAILURE_SENTINEL
    return err


def _check_radial_identity(params):
    grid = np.linspace(0.5, 30.0, 2000)
    with_vq = propagators.radial_ode_residual(1.0, grid, params, True)
    without = propagators.radial_ode_residual(1.0, grid, params, False)
    if without < 0.1:
        return FAILURE_SENTINEL
    return with_vq


def _check_unitarity(params):
    grid = evolution.default_grid()
    v0 = evolution.make_ring_packet(10.0, 1.0, 2, grid)
    out = evolution.propagate_radial(v0, make_context(params, 0.25))
    diag = evolution.diagnostics(out, 10.0)
    err = abs(out.norm_squared() - 1.0)
    return max(err, abs(diag.p_inner + diag.p_outer - 1.0))


def _check_dalembert_spectral(params):
    c, t = params.c, 2.0
    errs = []
    for frac in (0.0, 0.5):
        r = frac * c * t
        closed = dalembert.g2_ret(t, r, c).value
        spectral = dalembert.g2_ret_spectral(t, r, c)
        errs.append(abs(spectral - closed) / closed)
    return max(errs)


def _check_huygens_wake(params):
    c, t = params.c, 2.0
    samples = np.linspace(0.0, 0.95 * c * t, 4001)
    metric = dalembert.wake_tail_metric(t, c, samples, dimension=2)
    err = abs(metric - math.asin(0.95) / (2.0 * math.pi))
    if metric <= 0.0:
        return FAILURE_SENTINEL
    three_d = dalembert.wake_tail_metric(t, c, samples, dimension=3)
    if three_d != 0.0:
        return FAILURE_SENTINEL
    return err


def _check_causality(params):
    c = params.c
    vals = [
        dalembert.g2_ret(-1.0, 0.5, c).value,
        dalembert.g2_ret(2.0, 3.0 * c, c).value,
        dalembert.g3_ret_smeared(-2.0, lambda r: 1.0, c),
        dalembert.g3_ret_smeared(0.0, lambda r: 1.0, c),
    ]
    return max(abs(v) for v in vals)


def _check_retarded_scaling(params):
    c = params.c
    errs = []
    for lam in (2.0, 5.0):
        for r_frac in (0.0, 0.3, 0.8):
            t = 1.7
            r = r_frac * c * t
            base = dalembert.g2_ret(t, r, c).value
            scaled = dalembert.g2_ret(lam * t, lam * r, c).value * lam
            errs.append(abs(scaled - base) / base)
    return max(errs)


_CHECKS = (
    ("quadrature_polynomial", 1e-12, lambda p: _check_quadrature_polynomial()),
    ("gaussian_envelope_window", 1e-10, lambda p: _check_gaussian_envelope_window()),
    ("richardson_polynomial", 1e-10, lambda p: _check_richardson_polynomial()),
    ("bessel_integral_oracle", 1e-9, lambda p: _check_bessel_integral_oracle()),
    ("spherical_integral_oracle", 1e-9, lambda p: _check_spherical_integral_oracle()),
    ("bessel_zero_residual", 1e-10, lambda p: _check_bessel_zero_residual()),
    ("hankel_recombination", 1e-8, lambda p: _check_hankel_recombination()),
    ("short_time_window", 1e-2, _check_short_time_window),
    ("g2_forms_agree", 1e-8, _check_g2_forms),
    ("g3_forms_agree", 1e-12, _check_g3_forms),
    ("boundary_zeros", 1e-13, _check_boundary_zeros),
    ("free_modulus_1d", 1e-13, _check_free_modulus),
    ("quantum_potential_attractive", 1e-15, _check_quantum_potential_attractive),
    ("radial_identity_residual", 5e-3, _check_radial_identity),
    ("unitarity_2d", 1e-9, _check_unitarity),
    ("dalembert_spectral_oracle", 1e-4, _check_dalembert_spectral),
    ("huygens_wake", 1e-6, _check_huygens_wake),
    ("retarded_causality", 0.0, _check_causality),
    ("retarded_scaling", 1e-12, _check_retarded_scaling),
)


def check_names():
    return tuple(name for name, _, _ in _CHECKS)


def run_checks(only: str = "", tolerance_override: float = 0.0,
               params: PhysicalParams | None = None):
    """Run the registry (or one named check) and return CheckResult rows."""
    if params is None:
        params = PhysicalParams()
    selected = [c for c in _CHECKS if not only or c[0] == only]
    if only and not selected:
        raise ConfigError(f"unknown check {only!r}; known: {', '.join(check_names())}")
    results = []
    for name, tol, func in selected:
        if tolerance_override > 0.0:
            tol = tolerance_override
        try:
            err = float(func(params))
        except Exception:
            err = FAILURE_SENTINEL
        status = "pass" if err <= tol else "fail"
        results.append(CheckResult(check_name=name, status=status,
                                   max_error=err, tolerance=tol))
    return results
