"""Parameter sweeps producing CSV-ready tables.

Each sweep evaluates one model quantity over a grid and records failures
(domain errors, degenerate models) as a per-row flag instead of aborting.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .closed_form import TwoGroupParams, two_group_equilibrium
from .energy import ClampMode, EnergyModel, constrained_equilibrium, group_energy
from .errors import CournotError
from .hardware import DEFAULT_CONSTANTS, HardwareConstants, HardwareKind, hardware_model

NAN = float("nan")


@dataclass
class SweepTable:
    """Rows of numbers keyed by ``columns``; the last entry of every row is a flag string."""

    columns: list[str]
    rows: list[tuple] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.columns or self.columns[-1] != "flag":
            self.columns = [*self.columns, "flag"]

    def add(self, values: Sequence[float], flag: str = "") -> None:
        row = (*(float(v) for v in values), flag)
        if len(row) != len(self.columns):
            raise ValueError(f"row has {len(row)} entries, expected {len(self.columns)}")
        self.rows.append(row)

    def column(self, name: str) -> np.ndarray:
        j = self.columns.index(name)
        return np.array([r[j] for r in self.rows], dtype=float if name != "flag" else object)

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write(f"# tool: cournot_energy {__version__}\n")
        for key in sorted(self.metadata):
            out.write(f"# {key}: {json.dumps(self.metadata[key], sort_keys=True)}\n")
        out.write(",".join(self.columns) + "\n")
        for row in self.rows:
            out.write(",".join([*(_fmt(v) for v in row[:-1]), row[-1]]) + "\n")
        return out.getvalue()

    def write(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv())


def _fmt(v: float) -> str:
    if math.isnan(v):
        return "nan"
    return format(v, ".16e")


def grid(spacing: str, start: float, stop: float, points: int) -> np.ndarray:
    """Linear or logarithmic grid with ``points >= 2`` entries, endpoints included."""
    if points < 2:
        raise ValueError(f"grid needs at least 2 points, got {points}")
    if spacing == "linear":
        return np.linspace(start, stop, points)
    if spacing == "log":
        if start <= 0 or stop <= 0:
            raise ValueError("log grid endpoints must be positive")
        return np.logspace(math.log10(start), math.log10(stop), points)
    raise ValueError(f"unknown grid spacing {spacing!r}")


def sweep_energy_constraint(
    p: TwoGroupParams,
    mq: EnergyModel,
    mc: EnergyModel,
    caps: Iterable[float],
    mode: ClampMode | str = ClampMode.PAPER_CLAMP,
) -> SweepTable:
    """Capped quantities and profits as the shared energy budget varies.

    The unconstrained profits are repeated on every row as a reference line.
    """
    table = SweepTable(["E", "q_q_E", "q_c_E", "q_q_F", "q_c_F",
                        "pi_q_F", "pi_c_F", "pi_q_star", "pi_c_star"])
    star = two_group_equilibrium(p)
    for E in caps:
        try:
            ce = constrained_equilibrium(p, mq, mc, E, mode)
        except CournotError as exc:
            table.add([E] + [NAN] * 6 + [star.pi_q, star.pi_c], f"error:{type(exc).__name__}")
            continue
        table.add([E, ce.q_q_E, ce.q_c_E, ce.q_q_F, ce.q_c_F,
                   ce.pi_q_F, ce.pi_c_F, star.pi_q, star.pi_c])
    return table


def sweep_ratio(p: TwoGroupParams, mq: EnergyModel, mc: EnergyModel, n_q_values: Iterable[int]) -> SweepTable:
    """Per-firm equilibrium energy of each group as the number of quantum firms varies."""
    table = SweepTable(["n_q_over_n_c", "E_q", "E_c"])
    for n_q in n_q_values:
        pk = p.with_(n_q=int(n_q))
        ratio = pk.n_q / pk.n_c
        try:
            eq = two_group_equilibrium(pk)
        except CournotError as exc:
            table.add([ratio, NAN, NAN], f"error:{type(exc).__name__}")
            continue
        values, flags = [], []
        for q, model, which in ((eq.q_q, mq, "q_q"), (eq.q_c, mc, "q_c")):
            try:
                values.append(group_energy(q, model, which))
            except CournotError:
                values.append(NAN)
                flags.append(f"domain:{which}")
        table.add([ratio, *values], ";".join(flags))
    return table


def sweep_scale(
    p: TwoGroupParams,
    scales: Iterable[float],
    constants: HardwareConstants = DEFAULT_CONSTANTS,
) -> SweepTable:
    """Hardware energy of the equilibrium quantities as the demand scale ``a`` grows."""
    table = SweepTable(["a", "q_q_star", "q_c_star", "E_rydberg", "E_ion", "E_classical"])
    models = [
        (hardware_model(HardwareKind.RYDBERG, constants), "q_q", 0),
        (hardware_model(HardwareKind.ION_TRAP, constants), "q_q", 0),
        (hardware_model(HardwareKind.CLASSICAL_HPC, constants), "q_c", 1),
    ]
    for a in scales:
        try:
            eq = two_group_equilibrium(p.with_(a_q=float(a), a_c=float(a)))
        except CournotError as exc:
            table.add([a] + [NAN] * 5, f"error:{type(exc).__name__}")
            continue
        qs = (eq.q_q, eq.q_c)
        values, flags = [], []
        for model, which, idx in models:
            try:
                values.append(group_energy(qs[idx], model, which))
            except CournotError:
                values.append(NAN)
                if f"domain:{which}" not in flags:
                    flags.append(f"domain:{which}")
        table.add([a, eq.q_q, eq.q_c, *values], ";".join(flags))
    return table
