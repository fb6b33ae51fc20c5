"""Randomised cross-checks of the closed forms against the dense-solve oracle."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .closed_form import (
    TwoGroupParams,
    assemble_inverse,
    block_inverse,
    expand_two_group,
    two_group_equilibrium,
)
from .market import MarketParams, build_gamma, profits, solve_equilibrium
from .numerics import central_diff

# quantities whose numerator cancels below this fraction of its leading term
# are redrawn: relative comparison is meaningless there
CANCELLATION_FLOOR = 0.05


def random_market(rng: np.random.Generator, n: int) -> MarketParams:
    """Strictly diagonally dominant ``n``-firm market with ``theta_i >= gamma_ij``."""
    a = rng.uniform(1.0, 10.0, n)
    cross = rng.uniform(0.0, 1.0, (n, n))
    np.fill_diagonal(cross, 0.0)
    half_row = cross.sum(axis=1) / 2.0
    theta = np.maximum(cross.max(axis=1), half_row) * rng.uniform(1.05, 2.0, n) + 0.05
    return MarketParams.from_cross(a, theta, cross)


def random_two_group(rng: np.random.Generator, max_group: int = 8) -> TwoGroupParams:
    """Two-group market that stays diagonally dominant once expanded.

    Instances whose equilibrium quantities nearly cancel are redrawn.
    """
    while True:
        n_q, n_c = (int(v) for v in rng.integers(1, max_group + 1, 2))
        g_qq, g_cc, g_qc = rng.uniform(0.0, 1.0, 3)
        row_q = ((n_q - 1) * g_qq + n_c * g_qc) / 2.0
        row_c = ((n_c - 1) * g_cc + n_q * g_qc) / 2.0
        theta_q = max(g_qq, g_qc, row_q) * rng.uniform(1.05, 2.0) + 0.05
        theta_c = max(g_cc, g_qc, row_c) * rng.uniform(1.05, 2.0) + 0.05
        a_q, a_c = rng.uniform(1.0, 10.0, 2)
        lead_q = a_q * ((n_c - 1) * g_cc + 2 * theta_c)
        lead_c = a_c * ((n_q - 1) * g_qq + 2 * theta_q)
        num_q = lead_q - a_c * n_c * g_qc
        num_c = lead_c - a_q * n_q * g_qc
        if abs(num_q) < CANCELLATION_FLOOR * lead_q or abs(num_c) < CANCELLATION_FLOOR * lead_c:
            continue
        return TwoGroupParams(n_q, n_c, a_q, a_c, theta_q, theta_c, g_qq, g_cc, g_qc)


def _rel(x, y) -> float:
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    scale = np.maximum(np.maximum(np.abs(x), np.abs(y)), np.finfo(float).tiny)
    return float(np.max(np.abs(x - y) / scale))


def closed_form_error(p: TwoGroupParams) -> float:
    """Worst relative gap between the closed form and the expanded dense solve (q, p, pi)."""
    eq = two_group_equilibrium(p)
    ref = solve_equilibrium(expand_two_group(p))
    nq = p.n_q
    group = lambda v, x: np.r_[np.full(nq, v), np.full(p.n_c, x)]  # noqa: E731
    return max(
        _rel(group(eq.q_q, eq.q_c), ref.quantities),
        _rel(group(eq.p_q, eq.p_c), ref.prices),
        _rel(group(eq.pi_q, eq.pi_c), ref.profits),
    )


def identity_error(p: TwoGroupParams) -> float:
    """Max-norm of ``W Gamma - I`` for the reassembled block inverse ``W``."""
    W = assemble_inverse(block_inverse(p), p.n_q, p.n_c)
    G = build_gamma(expand_two_group(p))
    return float(np.abs(W @ G - np.eye(G.shape[0])).max())


def foc_gradient_error(market: MarketParams, h_rel: float = 1e-6) -> float:
    """Largest central-difference own-profit derivative at the solved equilibrium."""
    q = solve_equilibrium(market).quantities
    worst = 0.0
    for i in range(market.n):

        def own_profit(x, i=i):
            qq = q.copy()
            qq[i] = x
            return profits(market, qq)[i]

        h = h_rel * max(1.0, abs(q[i]))
        worst = max(worst, abs(central_diff(own_profit, q[i], h)))
    return worst


@dataclass
class SuiteResult:
    name: str
    tolerance: float
    trials: int = 0
    failures: list = field(default_factory=list)
    worst: float = 0.0
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures


# tolerances: closed-form agreement 1e-9 relative, inverse identity 1e-10
# max-norm, gradient 1e-9 absolute with h = 1e-4 (pi is quadratic in q_i, so
# the central difference has no truncation error and a wide step is safe)
SUITE_TOLERANCES = {"closed_form_vs_linsolve": 1e-9, "block_inverse_identity": 1e-10, "foc_gradient": 1e-9}
VERIFY_FD_STEP = 1e-4


def run_suites(seed: int = 0, trials: int = 500) -> list[SuiteResult]:
    """Run the three oracle suites on ``trials`` seeded instances each.

    Each suite draws from its own child generator, so results for a given
    ``(seed, trials)`` are reproducible and independent of suite order.
    """
    children = np.random.SeedSequence(seed).spawn(3)
    checks = [
        ("closed_form_vs_linsolve", closed_form_error, lambda r: random_two_group(r)),
        ("block_inverse_identity", identity_error, lambda r: random_two_group(r)),
        ("foc_gradient", lambda m: foc_gradient_error(m, VERIFY_FD_STEP),
         lambda r: random_market(r, int(r.integers(1, 13)))),
    ]
    results = []
    for (name, check, draw), child in zip(checks, children):
        rng = np.random.default_rng(child)
        res = SuiteResult(name, SUITE_TOLERANCES[name], trials)
        t0 = time.perf_counter()
        for k in range(trials):
            inst = draw(rng)
            err = check(inst)
            res.worst = max(res.worst, err)
            if not err <= res.tolerance:
                res.failures.append((k, err, inst))
        res.seconds = time.perf_counter() - t0
        results.append(res)
    return results
