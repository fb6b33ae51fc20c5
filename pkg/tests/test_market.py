import numpy as np
import pytest

from cournot_energy import (
    MarketParams,
    SingularMatrix,
    build_gamma,
    foc_residual,
    is_diagonally_dominant,
    prices,
    profits,
    solve_equilibrium,
)
from cournot_energy.verification import random_market


def duopoly():
    return MarketParams.from_cross([10.0, 10.0], [3.0, 2.0], [[0.0, 1.0], [1.0, 0.0]])


def test_duopoly_by_hand():
    # [[6, 1], [1, 4]] q = [10, 10]  ->  q = (30/23, 50/23)
    eq = solve_equilibrium(duopoly())
    np.testing.assert_allclose(eq.quantities, [30 / 23, 50 / 23], rtol=1e-14)
    np.testing.assert_allclose(eq.prices, [3 * 30 / 23, 2 * 50 / 23], rtol=1e-14)
    np.testing.assert_allclose(eq.profits, [2700 / 529, 5000 / 529], rtol=1e-14)
    assert eq.all_nonnegative
    assert eq.foc_residual_max < 1e-13


def test_build_gamma_doubles_diagonal():
    G = build_gamma(duopoly())
    np.testing.assert_array_equal(G, [[6.0, 1.0], [1.0, 4.0]])


@pytest.mark.parametrize("G, flag", [
    ([[6.0, 1.0], [1.0, 4.0]], True),
    ([[1.0, 1.0], [1.0, 1.0]], False),
    ([[2.0, -3.0], [0.0, 1.0]], False),
])
def test_diagonal_dominance(G, flag):
    ok, margin = is_diagonally_dominant(G)
    assert ok is flag
    assert (margin > 0) is flag


def test_params_are_read_only():
    m = duopoly()
    with pytest.raises(ValueError):
        m.a[0] = 1.0


@pytest.mark.parametrize("a, theta, gamma", [
    ([0.0, 1.0], [1.0, 1.0], [[1.0, 0.5], [0.5, 1.0]]),
    ([1.0, 1.0], [0.0, 1.0], [[0.0, 0.5], [0.5, 1.0]]),
    ([1.0, 1.0], [1.0, 1.0], [[1.0, -0.5], [0.5, 1.0]]),
    ([1.0, 1.0], [1.0, 1.0], [[2.0, 0.5], [0.5, 1.0]]),
    ([1.0, 1.0], [1.0, 1.0, 1.0], [[1.0, 0.5], [0.5, 1.0]]),
])
def test_params_validation(a, theta, gamma):
    with pytest.raises(ValueError):
        MarketParams(a, theta, gamma)


def test_theta_below_cross_warns():
    m = MarketParams.from_cross([1.0, 1.0], [0.5, 2.0], [[0.0, 1.0], [1.0, 0.0]])
    assert not m.theta_dominates
    assert "rows [0]" in m.warnings[0]


def test_singular_market():
    # 2 theta = gamma makes every row identical
    m = MarketParams.from_cross([1.0, 1.0], [0.5, 0.5], [[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(SingularMatrix):
        solve_equilibrium(m)


def test_negative_equilibrium_is_reported_not_clamped():
    m = MarketParams.from_cross([1.0, 10.0], [1.0, 1.0], [[0.0, 1.0], [1.0, 0.0]])
    eq = solve_equilibrium(m)
    assert eq.quantities[0] < 0
    assert not eq.all_nonnegative


@pytest.mark.parametrize("n", [1, 3, 8, 15])
def test_random_markets_satisfy_focs(rng, n):
    for _ in range(20):
        m = random_market(rng, n)
        assert is_diagonally_dominant(build_gamma(m))[0]
        q = solve_equilibrium(m).quantities
        assert np.abs(foc_residual(m, q)).max() < 1e-12 * np.abs(m.a).max()
        # interior optimum: p_i = theta_i q_i, pi_i = theta_i q_i^2
        np.testing.assert_allclose(prices(m, q), m.theta * q, rtol=1e-10, atol=1e-12)
        np.testing.assert_allclose(profits(m, q), m.theta * q * q, rtol=1e-10, atol=1e-12)


def test_unilateral_deviation_does_not_pay(rng):
    m = random_market(rng, 6)
    q = solve_equilibrium(m).quantities
    base = profits(m, q)
    for i in range(m.n):
        for dq in (-1e-3, 1e-3, 0.1):
            qq = q.copy()
            qq[i] += dq
            assert profits(m, qq)[i] <= base[i] + 1e-12


def test_wrong_quantity_length():
    with pytest.raises(ValueError):
        prices(duopoly(), [1.0])
