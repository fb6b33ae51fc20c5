"""Closed-form equilibria for homogeneous and two-group (quantum/classical) markets.

The two-group market has ``n_q`` identical quantum firms followed by ``n_c``
identical classical firms. Within a group, firms share an intercept and an own
sensitivity and interact through ``gamma_qq`` (resp. ``gamma_cc``); every
quantum/classical pair interacts through ``gamma_qc``. The inverse of the
first-order-condition matrix then has only five distinct entries, which are
derived here through the Schur complement of the quantum block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .errors import DegenerateDenominator
from .market import MarketParams

DENOM_RTOL = 1e-12


def check_denominator(stage: str, value: float, *terms: float) -> float:
    """Raise if ``value`` is cancellation-level small against its terms."""
    scale = sum(abs(t) for t in terms) if terms else abs(value)
    if not math.isfinite(value) or abs(value) <= DENOM_RTOL * scale or value == 0.0:
        raise DegenerateDenominator(stage, value, scale)
    return value


@dataclass(frozen=True)
class TwoGroupParams:
    n_q: int
    n_c: int
    a_q: float
    a_c: float
    theta_q: float
    theta_c: float
    gamma_qq: float
    gamma_cc: float
    gamma_qc: float
    warnings: tuple[str, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        for name in ("n_q", "n_c"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ValueError(f"{name} must be an integer >= 1, got {v!r}")
            object.__setattr__(self, name, int(v))
        for name in ("a_q", "a_c", "theta_q", "theta_c"):
            v = float(getattr(self, name))
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive and finite, got {v!r}")
            object.__setattr__(self, name, v)
        for name in ("gamma_qq", "gamma_cc", "gamma_qc"):
            v = float(getattr(self, name))
            if not (math.isfinite(v) and v >= 0):
                raise ValueError(f"{name} must be non-negative and finite, got {v!r}")
            object.__setattr__(self, name, v)

        warns = []
        checks = [
            ("theta_q", "gamma_qq", self.theta_q, self.gamma_qq, self.n_q > 1),
            ("theta_q", "gamma_qc", self.theta_q, self.gamma_qc, True),
            ("theta_c", "gamma_cc", self.theta_c, self.gamma_cc, self.n_c > 1),
            ("theta_c", "gamma_qc", self.theta_c, self.gamma_qc, True),
        ]
        for tn, gn, t, g, relevant in checks:
            if relevant and t < g:
                warns.append(f"{tn} < {gn}")
        object.__setattr__(self, "warnings", tuple(warns))

    def swapped(self) -> "TwoGroupParams":
        """The same market with the quantum and classical roles exchanged."""
        return TwoGroupParams(
            n_q=self.n_c, n_c=self.n_q, a_q=self.a_c, a_c=self.a_q,
            theta_q=self.theta_c, theta_c=self.theta_q,
            gamma_qq=self.gamma_cc, gamma_cc=self.gamma_qq, gamma_qc=self.gamma_qc,
        )

    def with_(self, **changes) -> "TwoGroupParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class GroupEquilibrium:
    """Per-firm equilibrium values of each group."""

    q_q: float
    q_c: float
    p_q: float
    p_c: float
    pi_q: float
    pi_c: float
    denominator: float

    @property
    def all_nonnegative(self) -> bool:
        return min(self.q_q, self.q_c, self.p_q, self.p_c) >= 0


@dataclass(frozen=True)
class HomogeneousInverse:
    """Entries of the inverse of a homogeneous ``n x n`` FOC matrix.

    ``phi`` is every diagonal entry and ``psi`` every off-diagonal entry.
    """

    phi: float
    psi: float
    n: int
    theta: float
    gamma: float

    @property
    def row_sum(self) -> float:
        return self.phi + (self.n - 1) * self.psi


@dataclass(frozen=True)
class BlockInverse:
    """The five distinct entries of the two-group inverse.

    ``varpi_qq`` / ``varpi_cc`` (within-group off-diagonal entries) do not
    exist for a single-firm group and are ``None`` then.
    """

    omega_qq: float
    varpi_qq: Optional[float]
    omega_cc: float
    varpi_cc: Optional[float]
    omega_qc: float


# --------------------------------------------------------------------------
# homogeneous market
# --------------------------------------------------------------------------

def _pattern_inverse(diag: float, off: float, n: int, stage: str) -> tuple[float, Optional[float]]:
    """Inverse of ``diag * I + off * (J - I)`` of size ``n``, as (diagonal, off-diagonal)."""
    if n == 1:
        check_denominator(stage, diag, diag)
        return 1.0 / diag, None
    d1 = check_denominator(stage, diag - off, diag, off)
    d2 = check_denominator(stage, diag + (n - 1) * off, diag, (n - 1) * off)
    den = d1 * d2
    return (diag + (n - 2) * off) / den, -off / den


def homogeneous_inverse(theta: float, gamma: float, n: int) -> HomogeneousInverse:
    """Inverse entries for ``n >= 2`` identical firms.

    Raises:
        DegenerateDenominator: if ``2 theta - gamma`` or ``2 theta + (n-1) gamma``
            vanishes.
    """
    if n < 2:
        raise ValueError(f"homogeneous inverse needs n >= 2, got {n}")
    phi, psi = _pattern_inverse(2.0 * theta, gamma, n, "homogeneous")
    return HomogeneousInverse(phi=phi, psi=psi, n=n, theta=theta, gamma=gamma)


def expanded_profit_polynomial(a: float, inv: HomogeneousInverse) -> float:
    """The expanded cubic-in-``N`` profit expression, transcribed term by term.

    This equals ``a q - (theta N + gamma N (N - 1)) q^2`` at the symmetric
    point, which is not the per-firm profit for ``N > 1``; see
    :func:`homogeneous_profit_polynomial` for the per-firm expansion.
    """
    phi, psi, N, th, g = inv.phi, inv.psi, inv.n, inv.theta, inv.gamma
    bracket = (
        -g * psi * N**3
        + (2 * g * psi - g * phi - th * psi) * N**2
        + (-g * psi + g * phi + th * psi - th * phi) * N
        + 1
    )
    return a * a * (phi + (N - 1) * psi) * bracket


def homogeneous_profit_polynomial(a: float, inv: HomogeneousInverse) -> float:
    """Per-firm profit ``a q - (theta + (N-1) gamma) q^2`` written in ``phi``/``psi``."""
    s = inv.row_sum
    return a * a * s * (1.0 - (inv.theta + (inv.n - 1) * inv.gamma) * s)


def homogeneous_equilibrium(a: float, theta: float, gamma: float, n: int) -> tuple[float, float]:
    """Symmetric Nash quantity and profit ``(q*, pi*)`` for ``n`` identical firms."""
    inv = homogeneous_inverse(theta, gamma, n)
    q = a * inv.phi + (n - 1) * a * inv.psi
    return q, theta * q * q


# --------------------------------------------------------------------------
# two-group market
# --------------------------------------------------------------------------

def _denominator_terms(p: TwoGroupParams):
    t1 = p.n_c * p.n_q * (p.gamma_cc * p.gamma_qq - p.gamma_qc**2)
    t2 = p.n_c * p.gamma_cc * (2 * p.theta_q - p.gamma_qq)
    t3 = p.n_q * p.gamma_qq * (2 * p.theta_c - p.gamma_cc)
    t4 = (2 * p.theta_q - p.gamma_qq) * (2 * p.theta_c - p.gamma_cc)
    return t1, t2, t3, t4


def two_group_denominator(p: TwoGroupParams) -> float:
    t1, t2, t3, t4 = _denominator_terms(p)
    # grouped so that swapping the groups gives a bit-identical sum
    return check_denominator("two-group denominator", (t1 + t4) + (t2 + t3), t1, t2, t3, t4)


def _numerators(p: TwoGroupParams) -> tuple[float, float]:
    num_q = p.a_q * ((p.n_c - 1) * p.gamma_cc + 2 * p.theta_c) - p.a_c * p.n_c * p.gamma_qc
    num_c = p.a_c * ((p.n_q - 1) * p.gamma_qq + 2 * p.theta_q) - p.a_q * p.n_q * p.gamma_qc
    return num_q, num_c


def two_group_equilibrium(p: TwoGroupParams) -> GroupEquilibrium:
    """Explicit two-group Nash equilibrium.

    Profits are exported as ``theta * q**2`` (the first-order-condition
    identity); :func:`two_group_profits_quotient` gives the squared-quotient
    form for cross-checking.

    Raises:
        DegenerateDenominator: when the shared denominator cancels to zero.
    """
    D = two_group_denominator(p)
    num_q, num_c = _numerators(p)
    q_q, q_c = num_q / D, num_c / D
    return GroupEquilibrium(
        q_q=q_q,
        q_c=q_c,
        p_q=p.theta_q * num_q / D,
        p_c=p.theta_c * num_c / D,
        pi_q=p.theta_q * q_q * q_q,
        pi_c=p.theta_c * q_c * q_c,
        denominator=D,
    )


def two_group_profits_quotient(p: TwoGroupParams) -> tuple[float, float]:
    D = two_group_denominator(p)
    num_q, num_c = _numerators(p)
    return (
        p.theta_q * (p.a_c * p.n_c * p.gamma_qc - p.a_q * ((p.n_c - 1) * p.gamma_cc + 2 * p.theta_c)) ** 2 / D**2,
        p.theta_c * (p.a_q * p.n_q * p.gamma_qc - p.a_c * ((p.n_q - 1) * p.gamma_qq + 2 * p.theta_q)) ** 2 / D**2,
    )


def _flipped_denominator(p: TwoGroupParams) -> float:
    return p.n_c * (
        p.n_q * (p.gamma_qc**2 - p.gamma_cc * p.gamma_qq) + p.gamma_cc * (p.gamma_qq - 2 * p.theta_q)
    ) + (p.gamma_cc - 2 * p.theta_c) * ((p.n_q - 1) * p.gamma_qq + 2 * p.theta_q)


def two_group_quantities_flipped(p: TwoGroupParams) -> tuple[float, float]:
    """Equilibrium quantities from the sign-flipped numerator/denominator form."""
    Dn = _flipped_denominator(p)
    check_denominator("flipped denominator", Dn, *_denominator_terms(p))
    q_q = (p.a_q * (-(p.n_c - 1) * p.gamma_cc - 2 * p.theta_c) + p.a_c * p.n_c * p.gamma_qc) / Dn
    q_c = (p.a_c * (-(p.n_q - 1) * p.gamma_qq - 2 * p.theta_q) + p.a_q * p.n_q * p.gamma_qc) / Dn
    return q_q, q_c


def group_profits(p: TwoGroupParams, q_q: float, q_c: float) -> tuple[float, float]:
    """Per-firm profits when every firm of a group produces its group's quantity."""
    pi_q = p.a_q * q_q - p.n_c * p.gamma_qc * q_c * q_q - (p.theta_q + (p.n_q - 1) * p.gamma_qq) * q_q * q_q
    pi_c = p.a_c * q_c - p.n_q * p.gamma_qc * q_c * q_q - (p.theta_c + (p.n_c - 1) * p.gamma_cc) * q_c * q_c
    return pi_q, pi_c


def expand_two_group(p: TwoGroupParams) -> MarketParams:
    """Embed the two-group market as an explicit ``N = n_q + n_c`` firm market."""
    nq, nc = p.n_q, p.n_c
    N = nq + nc
    cross = np.full((N, N), p.gamma_qc)
    cross[:nq, :nq] = p.gamma_qq
    cross[nq:, nq:] = p.gamma_cc
    a = np.r_[np.full(nq, p.a_q), np.full(nc, p.a_c)]
    theta = np.r_[np.full(nq, p.theta_q), np.full(nc, p.theta_c)]
    return MarketParams.from_cross(a, theta, cross)


def block_inverse(p: TwoGroupParams) -> BlockInverse:
    """Inverse of the two-group FOC matrix via the Schur complement of the quantum block.

    The quantum block inverts by the homogeneous pattern formula, its
    contribution is folded into the classical block (the Schur complement,
    again a diagonal/off-diagonal pattern), and the five entries follow.

    Raises:
        DegenerateDenominator: naming the stage (``"quantum block"`` or
            ``"schur complement"``) whose pattern inverse does not exist.
    """
    nq, nc, g = p.n_q, p.n_c, p.gamma_qc
    phi_qq, psi_qq = _pattern_inverse(2 * p.theta_q, p.gamma_qq, nq, "quantum block")
    s_q = phi_qq + (nq - 1) * (psi_qq or 0.0)

    k = g * g * nq * s_q
    phi_cc, psi_cc = 2 * p.theta_c - k, p.gamma_cc - k
    phi_cc_inv, psi_cc_inv = _pattern_inverse(phi_cc, psi_cc, nc, "schur complement")
    r_c = phi_cc_inv + (nc - 1) * (psi_cc_inv or 0.0)

    corr = nc * g * g * s_q * s_q * r_c
    return BlockInverse(
        omega_qq=phi_qq + corr,
        varpi_qq=None if psi_qq is None else psi_qq + corr,
        omega_cc=phi_cc_inv,
        varpi_cc=psi_cc_inv,
        omega_qc=-g * r_c * s_q,
    )


def block_inverse_explicit(p: TwoGroupParams) -> BlockInverse:
    """The five inverse entries from their expressions in the original parameters.

    Valid only when both groups have at least two firms (the within-group
    factors ``gamma_qq - 2 theta_q`` and ``gamma_cc - 2 theta_c`` appear as
    denominators).
    """
    if p.n_q < 2 or p.n_c < 2:
        raise ValueError("explicit block inverse needs n_q >= 2 and n_c >= 2")
    nq, nc = p.n_q, p.n_c
    tq, tc, gq, gc, x = p.theta_q, p.theta_c, p.gamma_qq, p.gamma_cc, p.gamma_qc
    Dn = check_denominator("flipped denominator", _flipped_denominator(p), *_denominator_terms(p))
    fq = check_denominator("quantum block", gq - 2 * tq, gq, 2 * tq)
    fc = check_denominator("classical block", gc - 2 * tc, gc, 2 * tc)
    return BlockInverse(
        omega_qq=-(nc * ((nq - 1) * x * x - gc * ((nq - 2) * gq + 2 * tq)) + (gc - 2 * tc) * ((nq - 2) * gq + 2 * tq)) / (fq * Dn),
        varpi_qq=-(nc * (gc * gq - x * x) - gq * (gc - 2 * tc)) / (fq * Dn),
        omega_cc=-(nq * ((nc - 1) * x * x - gq * ((nc - 2) * gc + 2 * tc)) + (gq - 2 * tq) * ((nc - 2) * gc + 2 * tc)) / (fc * Dn),
        varpi_cc=-(nq * (gc * gq - x * x) - gc * (gq - 2 * tq)) / (fc * Dn),
        omega_qc=x / Dn,
    )


def assemble_inverse(bi: BlockInverse, n_q: int, n_c: int) -> np.ndarray:
    """Expand the five block entries into the full ``N x N`` inverse."""
    N = n_q + n_c
    W = np.full((N, N), bi.omega_qc)
    W[:n_q, :n_q] = bi.varpi_qq if bi.varpi_qq is not None else 0.0
    W[n_q:, n_q:] = bi.varpi_cc if bi.varpi_cc is not None else 0.0
    idx = np.arange(N)
    W[idx[:n_q], idx[:n_q]] = bi.omega_qq
    W[idx[n_q:], idx[n_q:]] = bi.omega_cc
    return W


def profitability_margin(p: TwoGroupParams) -> float:
    """Slack in the quantum-profitability condition (positive means it holds).

    Returns ``(gamma_cc + (2 theta_c - gamma_cc)/n_c) / a_c - gamma_qc / a_q``.
    """
    rhs = (p.gamma_cc + (2 * p.theta_c - p.gamma_cc) / p.n_c) / p.a_c
    return rhs - p.gamma_qc / p.a_q
