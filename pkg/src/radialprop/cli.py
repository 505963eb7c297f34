"""Command-line front end: evolve ring packets, tabulate kernels, sweep the
retarded wave-equation kernels, or run the self-verification suite.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 numerical failure. Output files are written atomically (temp file then
rename) with '\\n' line endings and shortest round-trip float formatting,
so identical configs give byte-identical files."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import dalembert as dal
from . import evolution
from .config import apply_overrides, parse_config
from .errors import (ConfigError, DomainError, GridTooSmallError, OnLightConeError,
                     OscillationBudgetError, SubdivisionLimitError,
                     TooCloseToFrontError)
from .propagators import g2_bessel, g3, make_context
from .verify import run_checks

_CONFIG_EXIT = 2
_NUMERIC_EXIT = 3


def _format_cell(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def _atomic_write(path: str, text: str):
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _write_table(out_dir: str, stem: str, fmt: str, columns, rows) -> str:
    os.makedirs(out_dir, exist_ok=True)
    if fmt == "csv":
        path = os.path.join(out_dir, f"{stem}.csv")
        lines = [",".join(columns)]
        lines.extend(",".join(_format_cell(v) for v in row) for row in rows)
        _atomic_write(path, "\n".join(lines) + "\n")
    else:
        path = os.path.join(out_dir, f"{stem}.json")
        payload = {"columns": list(columns),
                   "rows": [[_json_cell(v) for v in row] for row in rows]}
        _atomic_write(path, json.dumps(payload, indent=2) + "\n")
    return path


def _json_cell(v):
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    v = float(v)
    if math.isnan(v):
        return None
    return v


def _time_stem(prefix: str, t: float) -> str:
    return f"{prefix}_t{t:g}".replace("-", "m")


def run_evolve(cfg) -> int:
    grid = np.linspace(0.0, cfg.grid_r_max, cfg.grid_points)
    packet = evolution.make_ring_packet(cfg.packet_r0, cfg.packet_sigma,
                                        cfg.dimension, grid)
    diag_rows = []
    for t in cfg.times:
        ctx = make_context(cfg.params, t)
        state = evolution.propagate_radial(packet, ctx, cfg.quadrature)
        rows = zip(state.grid, state.values.real, state.values.imag,
                   np.abs(state.values) ** 2)
        _write_table(cfg.output_path, _time_stem("u", t), cfg.format,
                     ("r", "re_u", "im_u", "abs2_u"), rows)
        d = evolution.diagnostics(state, cfg.packet_r0, t=t)
        diag_rows.append((d.t, d.p_inner, d.p_outer, d.mean_r, d.rms_width,
                          state.norm()))
    _write_table(cfg.output_path, "diagnostics", cfg.format,
                 ("t", "p_inner", "p_outer", "mean_r", "rms_width", "norm"),
                 diag_rows)
    return 0


def run_green(cfg) -> int:
    grid = np.linspace(0.0, cfg.grid_r_max, cfg.grid_points)
    rho = cfg.green_rho
    kernel = g2_bessel if cfg.dimension == 2 else g3
    for t in cfg.times:
        ctx = make_context(cfg.params, t)
        vals = kernel(grid, ctx, rho)
        rows = ((r, rho, v.real, v.imag, abs(v)) for r, v in zip(grid, vals))
        _write_table(cfg.output_path, _time_stem("green", t), cfg.format,
                     ("r", "rho", "re_g", "im_g", "abs_g"), rows)
    return 0


_SMEARED_FUNCTIONS = (
    ("constant", lambda r: 1.0),
    ("inverse", lambda r: 1.0 / r),
    ("gaussian", lambda r: math.exp(-((r - 3.0) ** 2) / (2.0 * 0.25))),
)


def run_dalembert(cfg) -> int:
    c = cfg.params.c
    n = int(round((cfg.dalembert_r_max - cfg.dalembert_r_min) / cfg.dalembert_r_step)) + 1
    radii = cfg.dalembert_r_min + cfg.dalembert_r_step * np.arange(n)
    rows = []
    for t in cfg.times:
        for r in radii:
            r = float(r)
            region = dal.classify_region(t, r, c)
            if t <= 0:
                closed, spectral = 0.0, 0.0
            else:
                ct = c * t
                closed = (float("nan") if region == dal.REGION_ON_FRONT
                          else dal.g2_ret(t, r, c).value)
                if abs(r - ct) < dal.FRONT_EXCLUSION * ct:
                    spectral = float("nan")
                else:
                    spectral = dal.g2_ret_spectral(t, r, c, spec=cfg.quadrature)
            rows.append((t, r, closed, spectral, region))
    _write_table(cfg.output_path, "dalembert", cfg.format,
                 ("t", "r", "g2_closed", "g2_spectral", "region"), rows)
    smeared = [(t, name, dal.g3_ret_smeared(t, f, c))
               for t in cfg.times for name, f in _SMEARED_FUNCTIONS]
    _write_table(cfg.output_path, "dalembert_smeared", cfg.format,
                 ("t", "f_name", "value"), smeared)
    return 0


def run_verify(cfg) -> int:
    results = run_checks(only=cfg.verify_only,
                         tolerance_override=cfg.verify_tolerance_override,
                         params=cfg.params)
    os.makedirs(cfg.output_path, exist_ok=True)
    report = [{"check_name": r.check_name, "status": r.status,
               "max_error": r.max_error, "tolerance": r.tolerance}
              for r in results]
    _atomic_write(os.path.join(cfg.output_path, "verify_report.json"),
                  json.dumps(report, indent=2) + "\n")
    for r in results:
        print(f"{r.check_name}: {r.status} "
              f"(max_error={r.max_error:.3e}, tolerance={r.tolerance:.3e})")
    return 0 if all(r.status == "pass" for r in results) else 1


_RUNNERS = {
    "evolve": run_evolve,
    "green": run_green,
    "dalembert": run_dalembert,
    "verify": run_verify,
}


def _parse_times(raw: str):
    try:
        return tuple(float(s) for s in raw.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad time list {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radialprop",
        description="Radial free-particle kernels, ring-packet spreading, "
                    "and retarded wave-equation kernels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("evolve", "green", "dalembert", "verify"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="run configuration file")
        p.add_argument("--out", help="output directory (overrides config)")
        p.add_argument("--format", choices=("csv", "json"),
                       help="output format (overrides config)")
        if name != "verify":
            p.add_argument("--dim", type=int, choices=(2, 3),
                           help="dimension (overrides config)")
            p.add_argument("--t", type=_parse_times, metavar="T1,T2,...",
                           help="comma-separated times (overrides config)")
        else:
            p.add_argument("--only", help="run a single named check")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = parse_config(args.config, command=args.command)
        cfg = apply_overrides(cfg,
                              dimension=getattr(args, "dim", None),
                              times=getattr(args, "t", None),
                              output=args.out,
                              fmt=args.format,
                              only=getattr(args, "only", None))
        return _RUNNERS[cfg.command](cfg)
    except (OscillationBudgetError, SubdivisionLimitError, TooCloseToFrontError,
            OnLightConeError) as exc:
        # TooCloseToFrontError is a ValueError, so this clause must come first.
        print(f"numerical failure: {exc}", file=sys.stderr)
        return _NUMERIC_EXIT
    except (ConfigError, GridTooSmallError, DomainError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return _CONFIG_EXIT


if __name__ == "__main__":
    sys.exit(main())
