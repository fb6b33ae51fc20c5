"""Physical energy costs of quantum and classical hardware.

A quantum algorithm on ``n = log2(N)`` qubits is assumed to use ``n**2``
gates, so its energy is ``beta_q * log2(N)**2``; classical state-vector
simulation of the same task costs ``beta_c * N``. Plugging the equilibrium
quantities into these curves gives the demand scale ``a*`` beyond which the
quantum sector uses less energy per firm.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .closed_form import TwoGroupParams, check_denominator, two_group_equilibrium
from .energy import EnergyModel, equilibrium_energy, power
from .errors import NoSignChange
from .numerics import Bracket, bisect


class HardwareKind(enum.Enum):
    RYDBERG = "rydberg"
    ION_TRAP = "ion_trap"
    CLASSICAL_HPC = "classical_hpc"

    @property
    def is_quantum(self) -> bool:
        return self is not HardwareKind.CLASSICAL_HPC


@dataclass(frozen=True)
class HardwareConstants:
    alpha: float = 1.0
    mu: float = 2.0
    beta_rydberg: float = 1.5e4  # J, 15 kJ per gate at 1 kHz
    beta_ion: float = 0.0175  # J
    beta_classical: float = 4e-10  # J per amplitude at 20 GFLOPS/W


DEFAULT_CONSTANTS = HardwareConstants()


def hardware_model(kind: HardwareKind | str, constants: HardwareConstants = DEFAULT_CONSTANTS) -> EnergyModel:
    kind = HardwareKind(kind)
    if kind is HardwareKind.RYDBERG:
        return EnergyModel.log_power(constants.beta_rydberg, constants.mu)
    if kind is HardwareKind.ION_TRAP:
        return EnergyModel.log_power(constants.beta_ion, constants.mu)
    return EnergyModel.power_law(constants.beta_classical, constants.alpha)


def algorithm_energy(kind: HardwareKind | str, scale_N: float,
                     constants: HardwareConstants = DEFAULT_CONSTANTS) -> float:
    """Energy in joules to run a size-``N`` computation on ``kind`` hardware."""
    return power(hardware_model(kind, constants), scale_N)


def _at_scale(p: TwoGroupParams, a: float) -> TwoGroupParams:
    return p.with_(a_q=a, a_c=a)


def scale_energies(p: TwoGroupParams, quantum: HardwareKind | str, classical: HardwareKind | str,
                   a: float, constants: HardwareConstants = DEFAULT_CONSTANTS) -> tuple[float, float]:
    """Per-firm ``(E_q, E_c)`` at the equilibrium with both intercepts set to ``a``."""
    return equilibrium_energy(
        _at_scale(p, a), hardware_model(quantum, constants), hardware_model(classical, constants)
    )


def critical_scale(
    p: TwoGroupParams,
    quantum: HardwareKind | str,
    classical: HardwareKind | str,
    a_lo: float,
    a_hi: float,
    *,
    constants: HardwareConstants = DEFAULT_CONSTANTS,
    expand: bool = False,
    max_expansions: int = 30,
    rel_tol: float = 1e-12,
) -> float:
    """Demand scale ``a*`` at which quantum and classical per-firm energy are equal.

    Bisection runs on ``E_q(a) - E_c(a)`` with geometric midpoints. With
    ``expand=True`` a bracket without a sign change is extended by moving
    ``a_hi`` up a decade at a time, at most ``max_expansions`` times.

    Raises:
        NoSignChange: if no crossing is found (after any expansion); the
            exception carries the explored bracket.
        NoConvergence: from the bisection.
    """

    def gap(a: float) -> float:
        e_q, e_c = scale_energies(p, quantum, classical, a, constants)
        return e_q - e_c

    lo, hi = float(a_lo), float(a_hi)
    f_lo, f_hi = gap(lo), gap(hi)
    expansions = 0
    while f_lo * f_hi > 0 and expand and expansions < max_expansions:
        lo, f_lo = hi, f_hi
        hi *= 10.0
        f_hi = gap(hi)
        expansions += 1
    if f_lo * f_hi > 0:
        raise NoSignChange(float(a_lo), hi, gap(float(a_lo)), f_hi)
    return bisect(gap, Bracket(lo, hi, f_lo, f_hi), rel_tol=rel_tol, log_space=True)


def asymptotic_quantities(p: TwoGroupParams, a: float) -> tuple[float, float]:
    """Large-group approximations of the equilibrium quantities with ``a_q = a_c = a``.

    Returns ``a (gamma_cc - gamma_qc) / (det n_q)`` and
    ``a (gamma_qq - gamma_qc) / (det n_c)`` with
    ``det = gamma_cc gamma_qq - gamma_qc**2``.
    """
    det = check_denominator("asymptotic determinant", p.gamma_cc * p.gamma_qq - p.gamma_qc**2,
                             p.gamma_cc * p.gamma_qq, p.gamma_qc**2)
    return (
        a * (p.gamma_cc - p.gamma_qc) / (det * p.n_q),
        a * (p.gamma_qq - p.gamma_qc) / (det * p.n_c),
    )


def exact_quantities(p: TwoGroupParams, a: float) -> tuple[float, float]:
    eq = two_group_equilibrium(_at_scale(p, a))
    return eq.q_q, eq.q_c
