"""Energy curves, regulatory caps and the cap-constrained equilibrium.

Quantum data centres are modelled with a log-power curve
``P = beta * log2(q)**mu`` and classical ones with a power law
``P = beta * q**alpha``. A common energy budget ``E`` turns each curve into a
quantity cap, and the caps shift the two-group equilibrium.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .closed_form import (
    TwoGroupParams,
    expand_two_group,
    group_profits,
    two_group_equilibrium,
)
from .errors import DomainError, NoConvergence
from .market import build_gamma


class EnergyKind(enum.Enum):
    LOG_POWER = "log_power"
    POWER_LAW = "power_law"


@dataclass(frozen=True)
class EnergyModel:
    """Energy per unit time as a function of produced quantity.

    ``exponent`` is ``mu`` for :attr:`EnergyKind.LOG_POWER` and ``alpha`` for
    :attr:`EnergyKind.POWER_LAW`.
    """

    kind: EnergyKind
    beta: float
    exponent: float

    def __post_init__(self):
        object.__setattr__(self, "kind", EnergyKind(self.kind))
        for name in ("beta", "exponent"):
            v = float(getattr(self, name))
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive and finite, got {v!r}")
            object.__setattr__(self, name, v)

    @classmethod
    def log_power(cls, beta: float, mu: float) -> "EnergyModel":
        return cls(EnergyKind.LOG_POWER, beta, mu)

    @classmethod
    def power_law(cls, beta: float, alpha: float) -> "EnergyModel":
        return cls(EnergyKind.POWER_LAW, beta, alpha)


def power(model: EnergyModel, q: float) -> float:
    """Energy per unit time at quantity ``q``.

    Raises:
        DomainError: if ``q <= 0``, or ``q <= 1`` for a log-power curve (the
            log would make the energy zero or negative).
    """
    q = float(q)
    if model.kind is EnergyKind.LOG_POWER:
        if not q > 1:
            raise DomainError(f"log-power energy needs q > 1, got {q!r}", which="q")
        return model.beta * math.log2(q) ** model.exponent
    if not q > 0:
        raise DomainError(f"power-law energy needs q > 0, got {q!r}", which="q")
    return model.beta * q**model.exponent


def quantity_cap(model: EnergyModel, E: float) -> float:
    """Largest quantity whose energy use does not exceed ``E``."""
    E = float(E)
    if not E > 0:
        raise DomainError(f"energy budget must be positive, got {E!r}", which="E")
    ratio = (E / model.beta) ** (1.0 / model.exponent)
    try:
        q = 2.0**ratio if model.kind is EnergyKind.LOG_POWER else ratio
    except OverflowError:
        q = math.inf
    if not math.isfinite(q):
        raise DomainError(f"quantity cap for E={E!r} overflows double precision", which="E")
    return q


class ClampMode(enum.Enum):
    """How energy caps turn the unconstrained equilibrium into ``q^F``.

    PAPER_CLAMP: once any group's cap binds, every group produces exactly at
        its cap; with no binding cap the unconstrained equilibrium stands.
    INDEPENDENT_CLAMP: each group takes ``min(q*, q^E)`` on its own.
    BEST_RESPONSE: iterate box-constrained best responses ``[0, q^E]`` firm
        by firm to a fixed point (a genuine equilibrium of the capped game).
    """

    PAPER_CLAMP = "paper_clamp"
    INDEPENDENT_CLAMP = "independent_clamp"
    BEST_RESPONSE = "best_response"


@dataclass(frozen=True)
class ConstrainedEquilibrium:
    q_q_F: float
    q_c_F: float
    pi_q_F: float
    pi_c_F: float
    cap_binding_q: bool
    cap_binding_c: bool
    mode: ClampMode
    q_q_E: float
    q_c_E: float


BR_TOL = 1e-10
BR_MAX_ITER = 10_000


def _best_response_fixed_point(p: TwoGroupParams, cap_q: float, cap_c: float) -> tuple[float, float]:
    market = expand_two_group(p)
    G = build_gamma(market)
    a = market.a
    diag = np.diag(G)
    upper = np.r_[np.full(p.n_q, cap_q), np.full(p.n_c, cap_c)]
    q = np.zeros(market.n)
    for _ in range(BR_MAX_ITER):
        change = 0.0
        for i in range(market.n):
            rival = G[i] @ q - diag[i] * q[i]
            new = min(max((a[i] - rival) / diag[i], 0.0), upper[i])
            change = max(change, abs(new - q[i]))
            q[i] = new
        if change < BR_TOL:
            return float(q[: p.n_q].mean()), float(q[p.n_q :].mean())
    raise NoConvergence("best response iteration", BR_MAX_ITER, f"last change {change:.3e}")


def constrained_equilibrium(
    p: TwoGroupParams,
    mq: EnergyModel,
    mc: EnergyModel,
    E: float,
    mode: ClampMode | str = ClampMode.PAPER_CLAMP,
) -> ConstrainedEquilibrium:
    """Equilibrium under a common energy budget ``E`` for both groups.

    Profits use the group formula in which every same-group rival also
    produces its group's capped quantity.
    """
    mode = ClampMode(mode)
    cap_q, cap_c = quantity_cap(mq, E), quantity_cap(mc, E)
    star = two_group_equilibrium(p)

    if mode is ClampMode.PAPER_CLAMP:
        if cap_q < star.q_q or cap_c < star.q_c:
            q_q, q_c = cap_q, cap_c
        else:
            q_q, q_c = star.q_q, star.q_c
    elif mode is ClampMode.INDEPENDENT_CLAMP:
        q_q, q_c = min(star.q_q, cap_q), min(star.q_c, cap_c)
    else:
        q_q, q_c = _best_response_fixed_point(p, cap_q, cap_c)

    pi_q, pi_c = group_profits(p, q_q, q_c)
    return ConstrainedEquilibrium(
        q_q_F=q_q,
        q_c_F=q_c,
        pi_q_F=pi_q,
        pi_c_F=pi_c,
        cap_binding_q=abs(q_q - cap_q) <= 1e-9 * cap_q,
        cap_binding_c=abs(q_c - cap_c) <= 1e-9 * cap_c,
        mode=mode,
        q_q_E=cap_q,
        q_c_E=cap_c,
    )


def equilibrium_energy(p: TwoGroupParams, mq: EnergyModel, mc: EnergyModel) -> tuple[float, float]:
    """Per-firm energy use ``(E_q, E_c)`` at the unconstrained equilibrium.

    Raises:
        DomainError: with ``which`` set to ``"q_q"`` or ``"q_c"`` when that
            group's equilibrium quantity is outside its curve's domain.
    """
    eq = two_group_equilibrium(p)
    return group_energy(eq.q_q, mq, "q_q"), group_energy(eq.q_c, mc, "q_c")


def group_energy(q: float, model: EnergyModel, which: str) -> float:
    try:
        return power(model, q)
    except DomainError as exc:
        raise DomainError(f"{which} = {q!r}: {exc}", which=which) from None
