"""General N-firm Cournot market with linear inverse demand.

Firm ``i`` faces the price ``p_i = a_i - sum_j gamma_ij q_j`` where the
diagonal ``gamma_ii`` is the firm's own sensitivity ``theta_i``. The Nash
point solves ``Gamma q = a`` with ``Gamma = gamma + diag(theta)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numerics import linsolve


def _frozen(x) -> np.ndarray:
    arr = np.array(x, dtype=float, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class MarketParams:
    """Demand intercepts and sensitivities for ``n`` firms.

    Attributes:
        a: demand intercepts, shape ``(n,)``.
        theta: own-quantity price sensitivities, shape ``(n,)``.
        gamma: cross sensitivities, shape ``(n, n)``, with ``gamma[i, i] == theta[i]``.
    """

    a: np.ndarray
    theta: np.ndarray
    gamma: np.ndarray
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        a, theta, gamma = _frozen(self.a), _frozen(self.theta), _frozen(self.gamma)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "gamma", gamma)
        n = a.shape[0]
        if a.ndim != 1 or n < 1:
            raise ValueError("a must be a non-empty vector")
        if theta.shape != (n,) or gamma.shape != (n, n):
            raise ValueError(
                f"shape mismatch: a{a.shape}, theta{theta.shape}, gamma{gamma.shape}"
            )
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(gamma))):
            raise ValueError("parameters must be finite")
        if np.any(a <= 0):
            raise ValueError("demand intercepts must be positive")
        if np.any(theta <= 0):
            raise ValueError("own sensitivities theta must be positive")
        if np.any(gamma < 0):
            raise ValueError("cross sensitivities must be non-negative")
        if not np.array_equal(np.diag(gamma), theta):
            raise ValueError("gamma diagonal must equal theta")

        off = gamma - np.diag(theta)
        warns = []
        rows = np.nonzero(off.max(axis=1) > theta)[0]
        if rows.size:
            warns.append(f"theta < gamma_ij in rows {rows.tolist()}")
        object.__setattr__(self, "warnings", tuple(warns))

    @classmethod
    def from_cross(cls, a, theta, cross) -> "MarketParams":
        """Build params from an off-diagonal cross matrix (its diagonal is ignored)."""
        theta = np.asarray(theta, dtype=float)
        gamma = np.array(cross, dtype=float, copy=True)
        np.fill_diagonal(gamma, theta)
        return cls(a=a, theta=theta, gamma=gamma)

    @property
    def n(self) -> int:
        return self.a.shape[0]

    @property
    def theta_dominates(self) -> bool:
        """True when ``theta_i >= gamma_ij`` holds for every pair."""
        return not self.warnings


@dataclass(frozen=True)
class Equilibrium:
    quantities: np.ndarray
    prices: np.ndarray
    profits: np.ndarray
    all_nonnegative: bool
    foc_residual_max: float


def build_gamma(params: MarketParams) -> np.ndarray:
    """The first-order-condition matrix: ``2 theta`` on the diagonal, ``gamma`` off it."""
    G = np.array(params.gamma, dtype=float, copy=True)
    np.fill_diagonal(G, 2.0 * params.theta)
    return G


def is_diagonally_dominant(G) -> tuple[bool, float]:
    """Strict row diagonal dominance test.

    Returns:
        ``(flag, margin)`` where margin is the smallest row slack
        ``|G_ii| - sum_{j != i} |G_ij|`` (negative when violated).
    """
    G = np.asarray(G, dtype=float)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {G.shape}")
    absG = np.abs(G)
    diag = np.diag(absG)
    slack = diag - (absG.sum(axis=1) - diag)
    margin = float(slack.min())
    return bool(margin > 0), margin


def _check_q(params: MarketParams, q) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    if q.shape != (params.n,):
        raise ValueError(f"expected {params.n} quantities, got shape {q.shape}")
    return q


def prices(params: MarketParams, q) -> np.ndarray:
    q = _check_q(params, q)
    return params.a - params.gamma @ q


def profits(params: MarketParams, q) -> np.ndarray:
    """Per-firm profit ``q_i * p_i(q)`` (marginal cost already netted out of prices)."""
    q = _check_q(params, q)
    return q * prices(params, q)


def foc_residual(params: MarketParams, q) -> np.ndarray:
    """Gradient ``d pi_i / d q_i = a_i - 2 theta_i q_i - sum_{j != i} gamma_ij q_j``."""
    q = _check_q(params, q)
    return params.a - build_gamma(params) @ q


def solve_equilibrium(params: MarketParams) -> Equilibrium:
    """Unconstrained Nash quantities by direct solve of ``Gamma q = a``.

    Negative quantities or prices are returned as-is and reported through
    ``all_nonnegative``.

    Raises:
        SingularMatrix: when ``Gamma`` has no unique solution.
    """
    q = linsolve(build_gamma(params), params.a)
    p = prices(params, q)
    return Equilibrium(
        quantities=q,
        prices=p,
        profits=q * p,
        all_nonnegative=bool(np.all(q >= 0) and np.all(p >= 0)),
        foc_residual_max=float(np.abs(foc_residual(params, q)).max()),
    )
