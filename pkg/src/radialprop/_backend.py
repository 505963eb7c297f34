"""Backend selection for the propagation integrals.

The compiled extension is used when it imported cleanly; otherwise the
pure NumPy implementation takes over. Setting RADIALPROP_FORCE_PURE=1
forces the fallback, and RADIALPROP_THREADS caps the worker threads used
to spread output points."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _pure
from .errors import SubdivisionLimitError

KERNEL_2D_BESSEL = _pure.KERNEL_2D_BESSEL
KERNEL_3D_DIFFERENCE = _pure.KERNEL_3D_DIFFERENCE
KERNEL_3D_BESSEL = _pure.KERNEL_3D_BESSEL

_core = None
if os.environ.get("RADIALPROP_FORCE_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _core as _core_mod
    except ImportError:
        _core = None
    else:
        _core = _core_mod


def backend_name() -> str:
    return "compiled" if _core is not None else "pure"


def thread_count() -> int:
    env = os.environ.get("RADIALPROP_THREADS", "")
    if env:
        try:
            n = int(env)
        except ValueError as exc:
            raise ValueError("RADIALPROP_THREADS must be an integer") from exc
        return max(1, n)
    return max(1, min(8, os.cpu_count() or 1))


def _chunks(n, workers):
    size = max(16, -(-n // workers))
    return [(s, min(n, s + size)) for s in range(0, n, size)]


def propagate_points(kernel_id, r_eval, alpha, norm, breaks, coef_re, coef_im,
                     a, b, spec):
    """Evaluate the propagation integral at every radius in r_eval.

    The reduced state enters as piecewise-cubic spline data. Output points
    are independent, so they are spread over worker threads; results do not
    depend on the chunking.
    """
    r_eval = np.ascontiguousarray(r_eval, dtype=float)
    n = len(r_eval)
    workers = min(thread_count(), max(1, n // 16))
    spans = _chunks(n, workers)
    if _core is not None:
        out_re = np.empty(n)
        out_im = np.empty(n)

        def run(span):
            return _core.propagate_points(
                kernel_id, r_eval, alpha, norm.real, norm.imag, breaks,
                coef_re, coef_im, a, b, spec.abs_tol, spec.rel_tol,
                spec.max_subdivisions, out_re, out_im, span[0], span[1])

        if len(spans) == 1:
            statuses = [run(spans[0])]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                statuses = list(pool.map(run, spans))
        if any(statuses):
            raise SubdivisionLimitError(
                "subdivision budget exhausted in the compiled backend"
            )
        return out_re + 1j * out_im

    out = np.empty(n, dtype=complex)

    def run_pure(span):
        _pure.propagate_points(kernel_id, r_eval, alpha, norm, breaks,
                               coef_re, coef_im, a, b, spec.abs_tol,
                               spec.rel_tol, spec.max_subdivisions, out,
                               span[0], span[1])

    if len(spans) == 1:
        run_pure(spans[0])
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run_pure, spans))
    return out
