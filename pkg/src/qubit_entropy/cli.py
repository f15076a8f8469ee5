"""Deterministic temperature sweep of the entropy pipeline.

The ``qubit-entropy`` entry point sweeps temperature for a fixed
circuit, reporting joint and marginal entropies for each requested
entropic index together with the truncation diagnostics.  Identical
configurations produce byte-identical output.

Exit codes: 0 success, 1 a sweep point failed, 2 bad configuration.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields, replace

import numpy as np

from . import __version__
from .entropy import analyze_bipartite
from .hermite import DEFAULT_QUAD_ORDER, MIN_QUAD_ORDER
from .model import CircuitParams, FrequencyMethod, normal_modes
from .state import subspace_validity, thermal_density, transform_density
from .transform import TransformMethod, build_transform

__all__ = ["SweepConfig", "SweepError", "emit", "main", "parse_config", "run_sweep"]

QUAD_ORDER_ENV = "QUBIT_ENTROPY_QUAD_ORDER"

CSV_COLUMNS = (
    "T",
    "q",
    "S_joint",
    "S_1",
    "S_2",
    "I",
    "margin",
    "mu_I",
    "mu_II",
    "offdiag_sum",
)


class SweepError(RuntimeError):
    """A sweep point failed; the message names the failing (T, q)."""


@dataclass(frozen=True)
class SweepConfig:
    lam: float = 1.5
    g: float = 0.1
    t_min: float = 0.01
    t_max: float = 0.5
    t_steps: int = 50
    t_scale: str = "linear"
    q_values: tuple[float, ...] = (0.5, 0.8, 1.0, 1.5, 2.0)
    levels_small: int = 2
    levels_big: int = 6
    method: str = "closed-form"
    output_format: str = "csv"
    output: str | None = None
    quad_order: int = DEFAULT_QUAD_ORDER

    def validate(self) -> None:
        if self.t_min <= 0:
            raise ValueError("t-min must be positive")
        if self.t_max <= self.t_min:
            raise ValueError("t-max must exceed t-min")
        if self.t_steps < 2:
            raise ValueError("t-steps must be at least 2")
        if self.t_scale not in ("linear", "log"):
            raise ValueError(f"unknown t-scale {self.t_scale!r}")
        if not self.q_values:
            raise ValueError("at least one q value is required")
        if any(q <= 0 for q in self.q_values):
            raise ValueError("q values must be positive")
        if self.levels_small < 2:
            raise ValueError("levels-small must be at least 2")
        if self.levels_big <= self.levels_small:
            raise ValueError("levels-big must exceed levels-small")
        if self.method not in ("closed-form", "quadrature"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.method == "closed-form" and self.levels_small != 2:
            raise ValueError("closed-form supports levels-small=2 only")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.output_format!r}")
        if self.quad_order < MIN_QUAD_ORDER:
            raise ValueError(
                f"{QUAD_ORDER_ENV} must be at least {MIN_QUAD_ORDER}"
            )


def _parse_q_list(text: str) -> tuple[float, ...]:
    values = tuple(float(tok) for tok in text.split(",") if tok.strip())
    if not values:
        raise ValueError(f"could not parse q list from {text!r}")
    return values


# config-file keys (and their flag spellings) mapped to SweepConfig fields
_KEY_TO_FIELD = {
    "lambda": "lam",
    "g": "g",
    "t-min": "t_min",
    "t-max": "t_max",
    "t-steps": "t_steps",
    "t-scale": "t_scale",
    "q": "q_values",
    "levels-small": "levels_small",
    "levels-big": "levels_big",
    "method": "method",
    "format": "output_format",
    "output": "output",
}


def _read_config_file(path: str) -> dict[str, str]:
    pairs: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("_", "-")
            if key not in _KEY_TO_FIELD:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            pairs[key] = value
    return pairs


def _convert(field_name: str, text: str):
    if field_name == "q_values":
        return _parse_q_list(text)
    types = {f.name: f.type for f in fields(SweepConfig)}
    target = types[field_name]
    if target == "int":
        return int(text)
    if target == "float":
        return float(text)
    return text


def parse_config(argv: list[str] | None = None) -> SweepConfig:
    """Build a SweepConfig from flags, an optional config file, and the env.

    Flags override file values, which override defaults.  The
    quadrature order comes from the QUBIT_ENTROPY_QUAD_ORDER
    environment variable only.  Configuration problems terminate with
    exit code 2.
    """
    parser = argparse.ArgumentParser(
        prog="qubit-entropy",
        description="Temperature sweep of two-mode thermal entropies.",
    )
    parser.add_argument("--lambda", dest="lam", type=float, help="bare frequency ratio")
    parser.add_argument("--g", type=float, help="coupling strength")
    parser.add_argument("--t-min", type=float, help="lowest temperature")
    parser.add_argument("--t-max", type=float, help="highest temperature")
    parser.add_argument("--t-steps", type=int, help="number of temperatures")
    parser.add_argument("--t-scale", choices=("linear", "log"), help="grid spacing")
    parser.add_argument("--q", type=str, help="comma-separated entropic indices")
    parser.add_argument("--levels-small", type=int, help="levels per mode for entropies")
    parser.add_argument("--levels-big", type=int, help="levels per mode for diagnostics")
    parser.add_argument("--method", choices=("closed-form", "quadrature"))
    parser.add_argument("--format", dest="output_format", choices=("csv", "json"))
    parser.add_argument("--output", type=str, help="output path (default stdout)")
    parser.add_argument("--config", type=str, help="flat key = value config file")
    args = parser.parse_args(argv)

    config = SweepConfig()
    try:
        if args.config is not None:
            for key, text in _read_config_file(args.config).items():
                field_name = _KEY_TO_FIELD[key]
                config = replace(config, **{field_name: _convert(field_name, text)})
        overrides = {}
        for field_name in (
            "lam", "g", "t_min", "t_max", "t_steps", "t_scale",
            "levels_small", "levels_big", "method", "output_format", "output",
        ):
            value = getattr(args, field_name)
            if value is not None:
                overrides[field_name] = value
        if args.q is not None:
            overrides["q_values"] = _parse_q_list(args.q)
        env_order = os.environ.get(QUAD_ORDER_ENV)
        if env_order is not None:
            overrides["quad_order"] = int(env_order)
        config = replace(config, **overrides)
        config.validate()
        CircuitParams(lam=config.lam, g=config.g)
    except (OSError, ValueError) as exc:
        parser.error(str(exc))
    return config


def _temperature_grid(config: SweepConfig) -> np.ndarray:
    if config.t_scale == "log":
        return np.geomspace(config.t_min, config.t_max, config.t_steps)
    return np.linspace(config.t_min, config.t_max, config.t_steps)


def run_sweep(config: SweepConfig) -> list[dict[str, float]]:
    """Compute one row per (T, q) grid point, in T-major order.

    Both transform tensors are built once and reused across the grid;
    the diagnostics columns depend on T only and repeat across the q
    rows of one temperature.
    """
    params = CircuitParams(lam=config.lam, g=config.g)
    modes = normal_modes(params, FrequencyMethod.SMALL_ANGLE)
    small_method = (
        TransformMethod.CLOSED_FORM
        if config.method == "closed-form"
        else TransformMethod.QUADRATURE
    )
    u_small = build_transform(
        params, modes, d=config.levels_small, method=small_method,
        order=config.quad_order,
    )
    u_big = build_transform(
        params, modes, d=config.levels_big, method=TransformMethod.QUADRATURE,
        order=config.quad_order,
    )
    rows: list[dict[str, float]] = []
    for temperature in _temperature_grid(config):
        temperature = float(temperature)
        current_q: float | None = None
        try:
            diag = subspace_validity(
                modes, params, temperature,
                d_small=config.levels_small, d_big=config.levels_big,
                transform=u_big,
            )
            state = transform_density(
                thermal_density(modes, temperature, config.levels_small), u_small
            )
            for q in config.q_values:
                current_q = q
                report = analyze_bipartite(state, q)
                rows.append(
                    {
                        "T": temperature,
                        "q": q,
                        "S_joint": report.s_joint,
                        "S_1": report.s_first,
                        "S_2": report.s_second,
                        "I": report.mutual_info,
                        "margin": report.subadditivity_margin,
                        "mu_I": diag.mu_block,
                        "mu_II": diag.mu_complement,
                        "offdiag_sum": diag.offdiag_sum,
                    }
                )
        except Exception as exc:
            where = f"T={temperature:.12g}"
            if current_q is not None:
                where += f", q={current_q:.12g}"
            raise SweepError(f"sweep failed at {where}: {exc}") from exc
    return rows


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _header_lines(config: SweepConfig) -> list[str]:
    q_text = ",".join(_fmt(q) for q in config.q_values)
    return [
        f"# qubit-entropy {__version__}",
        f"# lambda={_fmt(config.lam)} g={_fmt(config.g)}",
        f"# t_min={_fmt(config.t_min)} t_max={_fmt(config.t_max)}"
        f" t_steps={config.t_steps} t_scale={config.t_scale}",
        f"# q={q_text} levels_small={config.levels_small}"
        f" levels_big={config.levels_big} method={config.method}"
        f" quad_order={config.quad_order}",
    ]


def emit(rows: list[dict[str, float]], config: SweepConfig, stream=None) -> None:
    """Write the sweep to config.output (or a given stream) as CSV or JSON.

    CSV carries the configuration in leading ``#`` comments and prints
    every value with 12 significant digits; JSON is a bare array of row
    objects with the same keys and rounding.  Line endings are LF.
    """
    if stream is None:
        if config.output is None:
            _write(rows, config, sys.stdout)
        else:
            with open(config.output, "w", encoding="utf-8", newline="") as handle:
                _write(rows, config, handle)
    else:
        _write(rows, config, stream)


def _write(rows: list[dict[str, float]], config: SweepConfig, stream) -> None:
    if config.output_format == "json":
        rounded = [
            {key: float(_fmt(row[key])) for key in CSV_COLUMNS} for row in rows
        ]
        stream.write(json.dumps(rounded, indent=2))
        stream.write("\n")
        return
    for line in _header_lines(config):
        stream.write(line + "\n")
    stream.write(",".join(CSV_COLUMNS) + "\n")
    for row in rows:
        stream.write(",".join(_fmt(row[key]) for key in CSV_COLUMNS) + "\n")


def main(argv: list[str] | None = None) -> int:
    config = parse_config(argv)
    try:
        rows = run_sweep(config)
        emit(rows, config)
    except Exception as exc:
        print(f"qubit-entropy: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
