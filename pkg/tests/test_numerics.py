import math

import numpy as np
import pytest

from radialprop.errors import (InsufficientSamplesError, NoSignChangeError,
                               SubdivisionLimitError)
from radialprop.numerics import (ExtrapolationSpec, QuadratureSpec,
                                 find_root_bisect, integrate_adaptive,
                                 integrate_gaussian_envelope,
                                 richardson_extrapolate)

SPEC = QuadratureSpec()


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(abs_tol=0.0)
    with pytest.raises(ValueError):
        QuadratureSpec(rel_tol=-1e-10)
    with pytest.raises(ValueError):
        QuadratureSpec(max_subdivisions=0)
    with pytest.raises(ValueError):
        QuadratureSpec(truncation_sigmas=2.0)


def test_extrapolation_spec_validation():
    with pytest.raises(ValueError):
        ExtrapolationSpec(regulator_sequence=(0.1, 0.2))
    with pytest.raises(ValueError):
        ExtrapolationSpec(regulator_sequence=(0.1, -0.05))
    with pytest.raises(ValueError):
        ExtrapolationSpec(order=0)


def test_polynomial_exact():
    f = lambda x: 4.0 * x ** 3 - x + 2.0
    got = integrate_adaptive(f, -1.0, 3.0, SPEC)
    exact = (3.0 ** 4 - 1.0) - (9.0 / 2.0 - 1.0 / 2.0) + 2.0 * 4.0
    assert abs(got - exact) < 1e-12


def test_oscillatory_vs_closed_form():
    got = integrate_adaptive(lambda x: np.cos(40.0 * x), 0.0, 3.0, SPEC)
    assert abs(got - math.sin(120.0) / 40.0) < 1e-12


def test_complex_integrand():
    got = integrate_adaptive(lambda x: np.exp(1j * x), 0.0, math.pi, SPEC)
    assert abs(got - 2j) < 1e-12


def test_linearity():
    f = lambda x: np.exp(-x * x)
    g = lambda x: np.sin(3.0 * x)
    lhs = integrate_adaptive(lambda x: 2.0 * f(x) + 5.0 * g(x), 0.0, 2.0, SPEC)
    rhs = (2.0 * integrate_adaptive(f, 0.0, 2.0, SPEC)
           + 5.0 * integrate_adaptive(g, 0.0, 2.0, SPEC))
    assert abs(lhs - rhs) < 1e-11


def test_interval_additivity():
    f = lambda x: np.exp(-0.3 * x) * np.cos(7.0 * x)
    whole = integrate_adaptive(f, 0.0, 5.0, SPEC)
    parts = (integrate_adaptive(f, 0.0, 1.7, SPEC)
             + integrate_adaptive(f, 1.7, 5.0, SPEC))
    assert abs(whole - parts) < 1e-11


def test_subdivision_limit_carries_estimate():
    spec = QuadratureSpec(max_subdivisions=4)
    with pytest.raises(SubdivisionLimitError) as info:
        integrate_adaptive(lambda x: np.sin(1000.0 * x * x), 0.0, 10.0, spec)
    err = info.value
    assert isinstance(err.estimate, complex)
    assert err.error > 0.0


def test_gaussian_envelope_full_mass():
    c, w = 6.0, 0.4
    f = lambda x: np.exp(-((x - c) ** 2) / (2.0 * w * w))
    got = integrate_gaussian_envelope(f, c, w, SPEC)
    assert abs(got - w * math.sqrt(2.0 * math.pi)) < 1e-12


def test_gaussian_envelope_clamps_at_zero():
    # window would extend to negative x; integrand is only sampled at x >= 0
    seen = []

    def f(x):
        seen.append(np.min(x))
        return np.exp(-x * x)

    integrate_gaussian_envelope(f, 0.5, 1.0, SPEC)
    assert min(seen) >= 0.0


def test_bisect_root():
    root = find_root_bisect(lambda x: x * x - 2.0, 0.0, 2.0, 1e-12)
    assert abs(root - math.sqrt(2.0)) < 1e-11


def test_bisect_requires_sign_change():
    with pytest.raises(NoSignChangeError):
        find_root_bisect(lambda x: x * x + 1.0, 0.0, 1.0, 1e-8)


def test_richardson_recovers_polynomial_limit():
    spec = ExtrapolationSpec(regulator_sequence=(0.2, 0.1, 0.05, 0.025), order=3)
    samples = [(e, 7.0 + 3.0 * e - 2.0 * e ** 2 + e ** 3)
               for e in spec.regulator_sequence]
    assert abs(richardson_extrapolate(samples, spec) - 7.0) < 1e-10


def test_richardson_uses_smallest_regulators():
    # a polynomial law that only holds for the tail of the ladder
    spec = ExtrapolationSpec(regulator_sequence=(0.4, 0.1, 0.05, 0.025), order=2)
    samples = [(0.4, 99.0)] + [(e, 5.0 + e * e) for e in (0.1, 0.05, 0.025)]
    assert abs(richardson_extrapolate(samples, spec) - 5.0) < 1e-10


def test_richardson_insufficient_samples():
    spec = ExtrapolationSpec(regulator_sequence=(0.1, 0.05, 0.025), order=2)
    with pytest.raises(InsufficientSamplesError):
        richardson_extrapolate([(0.1, 1.0), (0.05, 1.0)], spec)
