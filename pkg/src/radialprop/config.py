"""Run configuration: one flat sectioned text file plus command-line
overrides. Parsing is strict: anything malformed raises ConfigError, which
the command line maps to exit code 2."""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass, field, replace

from .errors import ConfigError, DomainError
from .numerics import QuadratureSpec
from .propagators import PhysicalParams

COMMANDS = ("evolve", "green", "dalembert", "verify")
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class RunConfig:
    """Everything a run needs, flattened to scalar fields so a config file
    and a parsed value correspond one to one."""

    command: str
    dimension: int = 2
    times: tuple = (0.25, 0.5, 1.0)
    params: PhysicalParams = field(default_factory=PhysicalParams)
    packet_r0: float = 10.0
    packet_sigma: float = 1.0
    grid_r_max: float = 20.0
    grid_points: int = 2048
    quadrature: QuadratureSpec = field(default_factory=QuadratureSpec)
    output_path: str = "out"
    format: str = "csv"
    green_rho: float = 5.0
    dalembert_r_min: float = 0.0
    dalembert_r_max: float = 3.0
    dalembert_r_step: float = 0.1
    verify_only: str = ""
    verify_tolerance_override: float = 0.0

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.dimension not in (2, 3):
            raise ConfigError("dimension must be 2 or 3")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format {self.format!r}")
        if self.command == "evolve":
            if not self.times:
                raise ConfigError("evolve needs a non-empty times list")
            if any(t <= 0 for t in self.times):
                raise ConfigError("evolve times must be positive")
            if any(b <= a for a, b in zip(self.times, self.times[1:])):
                raise ConfigError("times must be strictly increasing")
        if self.grid_points < 2 or self.grid_r_max <= 0:
            raise ConfigError("grid needs r_max > 0 and at least 2 points")
        if self.dalembert_r_step <= 0 or self.dalembert_r_max < self.dalembert_r_min:
            raise ConfigError("bad dalembert radius sweep")
        if self.verify_tolerance_override < 0:
            raise ConfigError("tolerance override must be non-negative")


def _get(cp, section, key, default, convert):
    if not cp.has_option(section, key):
        return default
    raw = cp.get(section, key)
    try:
        return convert(raw)
    except ValueError as exc:
        raise ConfigError(f"[{section}] {key} = {raw!r}: {exc}") from None


def _parse_times(raw: str) -> tuple:
    items = [s for s in (p.strip() for p in raw.split(",")) if s]
    return tuple(float(s) for s in items)


def parse_config_text(text: str, command: str | None = None) -> RunConfig:
    cp = configparser.ConfigParser()
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None

    run = "run"
    if command is None:
        if not cp.has_option(run, "command"):
            raise ConfigError("config must set [run] command")
        command = cp.get(run, "command").strip()

    base = RunConfig(command="verify")
    try:
        params = PhysicalParams(
            mass=_get(cp, "physical", "mass", 1.0, float),
            hbar=_get(cp, "physical", "hbar", 1.0, float),
            c=_get(cp, "physical", "c", 1.0, float),
        )
        quadrature = QuadratureSpec(
            abs_tol=_get(cp, "quadrature", "abs_tol", base.quadrature.abs_tol, float),
            rel_tol=_get(cp, "quadrature", "rel_tol", base.quadrature.rel_tol, float),
            max_subdivisions=_get(cp, "quadrature", "max_subdivisions",
                                  base.quadrature.max_subdivisions, int),
            truncation_sigmas=_get(cp, "quadrature", "truncation_sigmas",
                                   base.quadrature.truncation_sigmas, float),
        )
    except (DomainError, ValueError) as exc:
        raise ConfigError(str(exc)) from None

    return RunConfig(
        command=command,
        dimension=_get(cp, run, "dimension", base.dimension, int),
        times=_get(cp, run, "times", base.times, _parse_times),
        params=params,
        packet_r0=_get(cp, "packet", "r0", base.packet_r0, float),
        packet_sigma=_get(cp, "packet", "sigma", base.packet_sigma, float),
        grid_r_max=_get(cp, "grid", "r_max", base.grid_r_max, float),
        grid_points=_get(cp, "grid", "points", base.grid_points, int),
        quadrature=quadrature,
        output_path=_get(cp, run, "output", base.output_path, str),
        format=_get(cp, run, "format", base.format, str).strip(),
        green_rho=_get(cp, "green", "rho", base.green_rho, float),
        dalembert_r_min=_get(cp, "dalembert", "r_min", base.dalembert_r_min, float),
        dalembert_r_max=_get(cp, "dalembert", "r_max", base.dalembert_r_max, float),
        dalembert_r_step=_get(cp, "dalembert", "r_step", base.dalembert_r_step, float),
        verify_only=_get(cp, "verify", "only", base.verify_only, str).strip(),
        verify_tolerance_override=_get(cp, "verify", "tolerance_override",
                                       base.verify_tolerance_override, float),
    )


def parse_config(path, command: str | None = None) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config_text(text, command=command)


def dump_config(cfg: RunConfig) -> str:
    """Serialize so that parse_config_text(dump_config(cfg)) == cfg."""
    cp = configparser.ConfigParser()
    cp["run"] = {
        "command": cfg.command,
        "dimension": str(cfg.dimension),
        "times": ", ".join(repr(t) for t in cfg.times),
        "output": cfg.output_path,
        "format": cfg.format,
    }
    cp["physical"] = {
        "mass": repr(cfg.params.mass),
        "hbar": repr(cfg.params.hbar),
        "c": repr(cfg.params.c),
    }
    cp["packet"] = {"r0": repr(cfg.packet_r0), "sigma": repr(cfg.packet_sigma)}
    cp["grid"] = {"r_max": repr(cfg.grid_r_max), "points": str(cfg.grid_points)}
    cp["quadrature"] = {
        "abs_tol": repr(cfg.quadrature.abs_tol),
        "rel_tol": repr(cfg.quadrature.rel_tol),
        "max_subdivisions": str(cfg.quadrature.max_subdivisions),
        "truncation_sigmas": repr(cfg.quadrature.truncation_sigmas),
    }
    cp["green"] = {"rho": repr(cfg.green_rho)}
    cp["dalembert"] = {
        "r_min": repr(cfg.dalembert_r_min),
        "r_max": repr(cfg.dalembert_r_max),
        "r_step": repr(cfg.dalembert_r_step),
    }
    cp["verify"] = {
        "only": cfg.verify_only,
        "tolerance_override": repr(cfg.verify_tolerance_override),
    }
    buf = io.StringIO()
    cp.write(buf)
    return buf.getvalue()


def apply_overrides(cfg: RunConfig, dimension=None, times=None,
                    output=None, fmt=None, only=None) -> RunConfig:
    updates = {}
    if dimension is not None:
        updates["dimension"] = dimension
    if times is not None:
        updates["times"] = tuple(times)
    if output is not None:
        updates["output_path"] = output
    if fmt is not None:
        updates["format"] = fmt
    if only is not None:
        updates["verify_only"] = only
    return replace(cfg, **updates) if updates else cfg
