"""Time the compiled propagation backend against the pure NumPy fallback.

Evaluates the three propagation kernels at a batch of output radii for the
default ring packet and reports points/s for each backend plus the largest
value disagreement. Run from the repository root:

    python3 benchmarks/bench_backends.py
"""

import time

import numpy as np
from scipy.interpolate import CubicSpline

from radialprop import _backend, _pure
from radialprop.evolution import default_grid, make_ring_packet
from radialprop.numerics import QuadratureSpec
from radialprop.propagators import PhysicalParams, make_context

KERNELS = (
    ("2d_bessel", _backend.KERNEL_2D_BESSEL),
    ("3d_difference", _backend.KERNEL_3D_DIFFERENCE),
    ("3d_bessel", _backend.KERNEL_3D_BESSEL),
)


def payload():
    grid = default_grid()
    packet = make_ring_packet(10.0, 1.0, 2, grid)
    cs = CubicSpline(grid, packet.values)
    return (np.ascontiguousarray(cs.x),
            np.ascontiguousarray(cs.c.real),
            np.ascontiguousarray(cs.c.imag))


def run_pure(kid, r_eval, ctx, breaks, coef_re, coef_im, spec):
    out = np.empty(len(r_eval), dtype=complex)
    _pure.propagate_points(kid, r_eval, ctx.alpha, ctx.norm, breaks,
                           coef_re, coef_im, 0.0, 20.0, spec.abs_tol,
                           spec.rel_tol, spec.max_subdivisions, out,
                           0, len(r_eval))
    return out


def main():
    breaks, coef_re, coef_im = payload()
    ctx = make_context(PhysicalParams(), 0.5)
    spec = QuadratureSpec()
    r_eval = np.ascontiguousarray(np.linspace(0.05, 19.5, 400))
    print(f"selected backend: {_backend.backend_name()}, "
          f"threads: {_backend.thread_count()}, points: {len(r_eval)}")

    for name, kid in KERNELS:
        t0 = time.perf_counter()
        selected = _backend.propagate_points(kid, r_eval, ctx.alpha, ctx.norm,
                                             breaks, coef_re, coef_im,
                                             0.0, 20.0, spec)
        t_sel = time.perf_counter() - t0

        t0 = time.perf_counter()
        pure = run_pure(kid, r_eval, ctx, breaks, coef_re, coef_im, spec)
        t_pure = time.perf_counter() - t0

        diff = float(np.max(np.abs(selected - pure)))
        print(f"{name:14s} selected {len(r_eval) / t_sel:9.0f} pts/s "
              f"({t_sel:6.3f} s)  pure-serial {len(r_eval) / t_pure:8.0f} pts/s "
              f"({t_pure:6.3f} s)  speedup x{t_pure / t_sel:5.1f}  "
              f"max|diff| {diff:.2e}")


if __name__ == "__main__":
    main()
