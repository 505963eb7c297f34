import math

import numpy as np
import pytest

from radialprop.errors import DomainError, ShortTimeWindowWarning
from radialprop.propagators import (EffectivePotential, PhysicalParams,
                                    RadialWavefunction, effective_potential_2d,
                                    g1, g2_bessel, g2_hankel, g2_short_time,
                                    g3, g3_bessel, make_context,
                                    make_effective_potential,
                                    quantum_potential, radial_ode_residual)

PARAMS = PhysicalParams()


def test_params_validation():
    with pytest.raises(ValueError):
        PhysicalParams(mass=0.0)
    with pytest.raises(ValueError):
        PhysicalParams(hbar=-1.0)


def test_context():
    ctx = make_context(PhysicalParams(mass=3.0, hbar=0.5), 2.0)
    assert abs(ctx.alpha - 3.0 / (2.0 * 0.5 * 2.0)) < 1e-15
    want = math.sqrt(ctx.alpha / math.pi) * complex(math.cos(-math.pi / 4),
                                                    math.sin(-math.pi / 4))
    assert abs(ctx.norm - want) < 1e-15
    with pytest.raises(DomainError):
        make_context(PARAMS, 0.0)
    with pytest.raises(DomainError):
        make_context(PARAMS, -1.0)


def test_g1_modulus_and_symmetry():
    ctx = make_context(PARAMS, 0.8)
    mod = math.sqrt(ctx.alpha / math.pi)
    for x, s in ((0.0, 1.0), (-2.0, 3.0), (5.0, 5.0)):
        assert abs(abs(g1(x, ctx, s)) - mod) < 1e-14
        assert g1(x, ctx, s) == g1(s, ctx, x)


def test_g2_bessel_boundary_zeros_and_domain():
    ctx = make_context(PARAMS, 0.6)
    assert g2_bessel(0.0, ctx, 4.0) == 0.0
    assert g2_bessel(4.0, ctx, 0.0) == 0.0
    with pytest.raises(DomainError):
        g2_bessel(-1.0, ctx, 2.0)


def test_g2_bessel_array():
    ctx = make_context(PARAMS, 0.6)
    rs = np.array([0.5, 1.5, 3.0])
    arr = g2_bessel(rs, ctx, 2.0)
    for r, v in zip(rs, arr):
        assert v == g2_bessel(float(r), ctx, 2.0)


def test_g2_forms_agree():
    rng = np.random.default_rng(3)
    for _ in range(25):
        ctx = make_context(PARAMS, float(rng.uniform(0.3, 3.0)))
        r, rho = rng.uniform(0.3, 6.0, size=2)
        a = g2_bessel(r, ctx, rho)
        b = g2_hankel(r, ctx, rho)
        assert abs(a - b) < 1e-9 * max(1.0, abs(a))


def test_g2_symmetric_in_arguments():
    ctx = make_context(PARAMS, 0.9)
    assert abs(g2_bessel(1.3, ctx, 4.1) - g2_bessel(4.1, ctx, 1.3)) < 1e-15


def test_short_time_form_tracks_full_kernel():
    ctx = make_context(PARAMS, 0.04)  # alpha = 12.5
    for r, rho in ((2.0, 3.0), (4.0, 4.0)):
        full = g2_hankel(r, ctx, rho)
        approx = g2_short_time(r, ctx, rho)
        assert abs(approx - full) / abs(full) < 1e-4


def test_short_time_window_warning():
    ctx = make_context(PARAMS, 10.0)  # alpha = 0.05, phase 1.25
    with pytest.warns(ShortTimeWindowWarning):
        g2_short_time(1.0, ctx, 1.0)


def test_quantum_potential_attractive_everywhere():
    rs = np.geomspace(0.01, 100.0, 50)
    vals = quantum_potential(rs, PARAMS)
    assert np.all(vals < 0.0)
    assert abs(quantum_potential(2.0, PARAMS) + 1.0 / 32.0) < 1e-15
    with pytest.raises(DomainError):
        quantum_potential(0.0, PARAMS)


def test_effective_potential_family():
    pot0 = make_effective_potential(0, PARAMS)
    assert pot0.value_at(1.7) == quantum_potential(1.7, PARAMS)
    assert effective_potential_2d(0, 3.0, PARAMS) < 0.0
    for m in (1, 2, 7, -1):
        assert effective_potential_2d(m, 3.0, PARAMS) > 0.0
    want = (1.0 / 2.0) * (4.0 - 0.25) / 9.0
    assert abs(effective_potential_2d(2, 3.0, PARAMS) - want) < 1e-15


def test_effective_potential_invariant():
    with pytest.raises(ValueError):
        EffectivePotential(dimension=2, m=0, prefactor=0.5)
    with pytest.raises(ValueError):
        EffectivePotential(dimension=3, m=1, prefactor=0.5)
    with pytest.raises(DomainError):
        make_effective_potential(1, PARAMS).value_at(0.0)


def test_g3_difference_equals_bessel_form():
    rng = np.random.default_rng(5)
    for _ in range(50):
        ctx = make_context(PARAMS, float(rng.uniform(0.3, 3.0)))
        r, rho = rng.uniform(0.1, 8.0, size=2)
        assert abs(g3(r, ctx, rho) - g3_bessel(r, ctx, rho)) < 1e-12


def test_g3_boundary_and_symmetry():
    ctx = make_context(PARAMS, 0.5)
    assert g3(0.0, ctx, 2.0) == 0.0
    assert g3(2.0, ctx, 0.0) == 0.0
    assert g3(1.0, ctx, 4.0) == g3(4.0, ctx, 1.0)


def test_radial_residual_needs_quantum_potential():
    grid = np.linspace(0.5, 20.0, 2000)
    small = radial_ode_residual(1.0, grid, PARAMS, True)
    stalled = radial_ode_residual(1.0, grid, PARAMS, False)
    assert small < 1e-3
    assert stalled > 1e-1


def test_radial_residual_second_order():
    coarse = radial_ode_residual(1.0, np.linspace(0.5, 20.0, 1000), PARAMS)
    fine = radial_ode_residual(1.0, np.linspace(0.5, 20.0, 2000), PARAMS)
    assert 3.5 < coarse / fine < 4.5


def test_radial_residual_grid_validation():
    with pytest.raises(DomainError):
        radial_ode_residual(1.0, np.linspace(0.0, 20.0, 500), PARAMS)
    with pytest.raises(DomainError):
        radial_ode_residual(1.0, np.linspace(0.5, 20.0, 50), PARAMS)
    with pytest.raises(DomainError):
        radial_ode_residual(1.0, np.geomspace(0.5, 20.0, 500), PARAMS)
    with pytest.raises(DomainError):
        radial_ode_residual(0.0, np.linspace(0.5, 20.0, 500), PARAMS)


def test_wavefunction_validation():
    grid = np.linspace(0.0, 5.0, 50)
    vals = np.zeros(50, dtype=complex)
    vals[10] = 1.0
    RadialWavefunction(dimension=2, grid=grid, values=vals)
    bad = vals.copy()
    bad[0] = 0.5
    with pytest.raises(ValueError):
        RadialWavefunction(dimension=2, grid=grid, values=bad)
    with pytest.raises(ValueError):
        RadialWavefunction(dimension=4, grid=grid, values=vals)
    with pytest.raises(ValueError):
        RadialWavefunction(dimension=2, grid=grid[::-1].copy(), values=vals)
    with pytest.raises(ValueError):
        RadialWavefunction(dimension=2, grid=grid, values=vals[:-1])


def test_wavefunction_norm():
    grid = np.linspace(0.0, 1.0, 100001)
    vals = np.sqrt(2.0) * np.sin(math.pi * grid).astype(complex)
    vals[0] = 0.0
    u = RadialWavefunction(dimension=3, grid=grid, values=vals)
    assert abs(u.norm_squared() - 1.0) < 1e-9
    assert abs(u.norm() - 1.0) < 1e-9
