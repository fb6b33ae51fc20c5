"""JSON run configuration and the built-in figure presets.

A config document has a required ``market`` section and optional ``energy``,
``hardware``, ``sweep`` and ``output`` sections; see the README for the
schema. Unknown keys are rejected so that typos surface as errors.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field, fields
from typing import Any, Optional

import numpy as np

from .closed_form import TwoGroupParams
from .energy import ClampMode, EnergyKind, EnergyModel
from .hardware import HardwareConstants, HardwareKind
from .sweeps import grid


class ConfigError(ValueError):
    """Malformed or invalid configuration; the message names the field."""


SWEEP_VARIABLES = ("cap_E", "n_q", "a")

PRESETS: dict[str, dict] = {
    "fig1": {
        "market": {"n_q": 1, "n_c": 1, "a_q": 10, "a_c": 10, "theta_q": 3, "theta_c": 2,
                   "gamma_qq": 2, "gamma_cc": 2, "gamma_qc": 1},
        "energy": {"model_q": {"kind": "log_power", "beta": 1, "exponent": 1},
                   "model_c": {"kind": "power_law", "beta": 1, "exponent": 1},
                   "cap_E": 1, "mode": "paper_clamp"},
        "sweep": {"variable": "cap_E",
                  "grid": {"spacing": "linear", "start": 0.1, "stop": 4, "points": 200}},
    },
    "fig2": {
        "market": {"n_q": 1, "n_c": 1, "a_q": 30, "a_c": 30, "theta_q": 3, "theta_c": 2,
                   "gamma_qq": 2, "gamma_cc": 2, "gamma_qc": 1},
        "energy": {"model_q": {"kind": "log_power", "beta": 1, "exponent": 1},
                   "model_c": {"kind": "power_law", "beta": 1, "exponent": 1}},
        "sweep": {"variable": "n_q",
                  "grid": {"spacing": "linear", "start": 1, "stop": 20, "points": 20}},
    },
    "fig3": {
        "market": {"n_q": 10, "n_c": 10, "a_q": 1000, "a_c": 1000, "theta_q": 2, "theta_c": 2,
                   "gamma_qq": 2, "gamma_cc": 2, "gamma_qc": 0.1},
        "hardware": {"quantum_kind": ["rydberg", "ion_trap"], "classical_kind": "classical_hpc"},
        "sweep": {"variable": "a",
                  "grid": {"spacing": "log", "start": 1e3, "stop": 1e22, "points": 96}},
    },
}


@dataclass(frozen=True)
class EnergySection:
    model_q: EnergyModel
    model_c: EnergyModel
    cap_E: Optional[float] = None
    mode: ClampMode = ClampMode.PAPER_CLAMP


@dataclass(frozen=True)
class HardwareSection:
    quantum_kinds: tuple[HardwareKind, ...] = (HardwareKind.RYDBERG, HardwareKind.ION_TRAP)
    classical_kind: HardwareKind = HardwareKind.CLASSICAL_HPC
    constants: HardwareConstants = HardwareConstants()
    bracket: Optional[tuple[float, float]] = None


@dataclass(frozen=True)
class SweepSection:
    variable: str
    spacing: str
    start: float
    stop: float
    points: int

    def values(self) -> np.ndarray:
        g = grid(self.spacing, self.start, self.stop, self.points)
        if self.variable == "n_q":
            return np.rint(g).astype(int)
        return g


@dataclass(frozen=True)
class RunConfig:
    market: TwoGroupParams
    energy: Optional[EnergySection] = None
    hardware: Optional[HardwareSection] = None
    sweep: Optional[SweepSection] = None
    output_path: Optional[str] = None
    raw: dict = field(default_factory=dict, compare=False, repr=False)


def deep_merge(base: dict, override: dict) -> dict:
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = deep_merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


def _section(doc: dict, name: str, allowed: set[str], required: bool = False) -> Optional[dict]:
    sec = doc.get(name)
    if sec is None:
        if required:
            raise ConfigError(f"missing required section '{name}'")
        return None
    if not isinstance(sec, dict):
        raise ConfigError(f"section '{name}' must be an object")
    extra = set(sec) - allowed
    if extra:
        raise ConfigError(f"unknown field(s) in '{name}': {', '.join(sorted(extra))}")
    return sec


def _number(sec: dict, key: str, where: str, default=None) -> float:
    if key not in sec:
        if default is not None:
            return default
        raise ConfigError(f"missing field '{where}.{key}'")
    v = sec[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"field '{where}.{key}' must be a number, got {v!r}")
    return float(v)


def _energy_model(spec: Any, where: str) -> EnergyModel:
    if not isinstance(spec, dict):
        raise ConfigError(f"field '{where}' must be an object")
    extra = set(spec) - {"kind", "beta", "exponent"}
    if extra:
        raise ConfigError(f"unknown field(s) in '{where}': {', '.join(sorted(extra))}")
    try:
        kind = EnergyKind(spec.get("kind"))
    except ValueError:
        raise ConfigError(f"field '{where}.kind' must be one of "
                          f"{[k.value for k in EnergyKind]}, got {spec.get('kind')!r}") from None
    try:
        return EnergyModel(kind, _number(spec, "beta", where), _number(spec, "exponent", where))
    except ValueError as exc:
        raise ConfigError(f"field '{where}': {exc}") from None


def _hardware_kind(value: Any, where: str) -> HardwareKind:
    try:
        return HardwareKind(value)
    except ValueError:
        raise ConfigError(f"field '{where}' must be one of "
                          f"{[k.value for k in HardwareKind]}, got {value!r}") from None


def parse_config(doc: Any) -> RunConfig:
    """Validate a decoded JSON document and build a :class:`RunConfig`."""
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    extra = set(doc) - {"market", "energy", "hardware", "sweep", "output", "description"}
    if extra:
        raise ConfigError(f"unknown top-level field(s): {', '.join(sorted(extra))}")

    market_keys = {f.name for f in fields(TwoGroupParams)} - {"warnings"}
    m = _section(doc, "market", market_keys, required=True)
    missing = market_keys - set(m)
    if missing:
        raise ConfigError(f"missing field(s) in 'market': {', '.join(sorted(missing))}")
    values = {k: _number(m, k, "market") for k in market_keys}
    try:
        market = TwoGroupParams(**values)
    except ValueError as exc:
        raise ConfigError(f"section 'market': {exc}") from None

    energy = None
    e = _section(doc, "energy", {"model_q", "model_c", "cap_E", "mode"})
    if e is not None:
        for key in ("model_q", "model_c"):
            if key not in e:
                raise ConfigError(f"missing field 'energy.{key}'")
        cap = _number(e, "cap_E", "energy") if "cap_E" in e else None
        if cap is not None and cap <= 0:
            raise ConfigError("field 'energy.cap_E' must be positive")
        try:
            mode = ClampMode(e.get("mode", "paper_clamp"))
        except ValueError:
            raise ConfigError(f"field 'energy.mode' must be one of "
                              f"{[m.value for m in ClampMode]}, got {e.get('mode')!r}") from None
        energy = EnergySection(_energy_model(e["model_q"], "energy.model_q"),
                               _energy_model(e["model_c"], "energy.model_c"), cap, mode)

    hardware = None
    h = _section(doc, "hardware", {"quantum_kind", "classical_kind", "constants", "bracket"})
    if h is not None:
        qk = h.get("quantum_kind", ["rydberg", "ion_trap"])
        qk = [qk] if isinstance(qk, str) else qk
        if not isinstance(qk, list) or not qk:
            raise ConfigError("field 'hardware.quantum_kind' must be a kind or a non-empty list")
        quantum = tuple(_hardware_kind(k, "hardware.quantum_kind") for k in qk)
        if any(not k.is_quantum for k in quantum):
            raise ConfigError("field 'hardware.quantum_kind' must name quantum hardware")
        classical = _hardware_kind(h.get("classical_kind", "classical_hpc"), "hardware.classical_kind")
        if classical.is_quantum:
            raise ConfigError("field 'hardware.classical_kind' must be 'classical_hpc'")
        const_keys = {f.name for f in fields(HardwareConstants)}
        c = _section(h, "constants", const_keys) or {}
        consts = {k: _number(c, k, "hardware.constants") for k in c}
        if any(v <= 0 for v in consts.values()):
            raise ConfigError("field 'hardware.constants' entries must be positive")
        bracket = h.get("bracket")
        if bracket is not None:
            if (not isinstance(bracket, list) or len(bracket) != 2
                    or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in bracket)
                    or not 0 < bracket[0] < bracket[1]):
                raise ConfigError("field 'hardware.bracket' must be [lo, hi] with 0 < lo < hi")
            bracket = (float(bracket[0]), float(bracket[1]))
        hardware = HardwareSection(quantum, classical, HardwareConstants(**consts), bracket)

    sweep = None
    s = _section(doc, "sweep", {"variable", "grid"})
    if s is not None:
        var = s.get("variable")
        if var not in SWEEP_VARIABLES:
            raise ConfigError(f"field 'sweep.variable' must be one of {list(SWEEP_VARIABLES)}, got {var!r}")
        g = _section(s, "grid", {"spacing", "start", "stop", "points"}, required=True)
        spacing = g.get("spacing", "linear")
        if spacing not in ("linear", "log"):
            raise ConfigError(f"field 'sweep.grid.spacing' must be 'linear' or 'log', got {spacing!r}")
        start, stop = _number(g, "start", "sweep.grid"), _number(g, "stop", "sweep.grid")
        points = g.get("points")
        if isinstance(points, bool) or not isinstance(points, int) or points < 2:
            raise ConfigError("field 'sweep.grid.points' must be an integer >= 2")
        if spacing == "log" and (start <= 0 or stop <= 0):
            raise ConfigError("log grid in 'sweep.grid' needs positive start and stop")
        if not start < stop:
            raise ConfigError("field 'sweep.grid' needs start < stop")
        if var == "n_q":
            vals = grid(spacing, start, stop, points)
            if not np.allclose(vals, np.rint(vals)) or start < 1:
                raise ConfigError("sweep over 'n_q' needs an integer grid starting at >= 1")
        sweep = SweepSection(var, spacing, start, stop, points)

    output_path = None
    o = _section(doc, "output", {"path", "format"})
    if o is not None:
        if o.get("format", "csv") != "csv":
            raise ConfigError("field 'output.format' must be 'csv'")
        output_path = o.get("path")

    return RunConfig(market, energy, hardware, sweep, output_path, raw=copy.deepcopy(doc))


def load_config(path: Optional[str] = None, preset: Optional[str] = None) -> RunConfig:
    """Read a config file, optionally layered over a named preset."""
    doc: dict = {}
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r}; choose from {sorted(PRESETS)}")
        doc = copy.deepcopy(PRESETS[preset])
    if path is not None:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from None
        try:
            user = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        if not isinstance(user, dict):
            raise ConfigError(f"{path}: config must be a JSON object")
        doc = deep_merge(doc, user)
    if not doc:
        raise ConfigError("no configuration given: pass --config and/or --preset")
    return parse_config(doc)
