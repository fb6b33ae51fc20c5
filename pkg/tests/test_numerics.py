import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cournot_energy import Bracket, InvalidBracket, NoConvergence, NoSignChange, SingularMatrix
from cournot_energy.numerics import as_dense, bisect, central_diff, linsolve


@pytest.mark.parametrize("n", [1, 2, 5, 20, 60])
def test_linsolve_matches_lapack(rng, n):
    A = rng.normal(size=(n, n)) + n * np.eye(n)
    b = rng.normal(size=n)
    np.testing.assert_allclose(linsolve(A, b), np.linalg.solve(A, b), rtol=1e-10, atol=1e-12)


def test_linsolve_needs_pivoting():
    A = np.array([[0.0, 1.0], [1.0, 0.0]])
    np.testing.assert_array_equal(linsolve(A, [2.0, 3.0]), [3.0, 2.0])


def test_linsolve_does_not_mutate_inputs():
    A = np.array([[4.0, 1.0], [1.0, 3.0]])
    b = np.array([1.0, 2.0])
    A0, b0 = A.copy(), b.copy()
    linsolve(A, b)
    np.testing.assert_array_equal(A, A0)
    np.testing.assert_array_equal(b, b0)


@pytest.mark.parametrize("A", [
    [[1.0, 2.0], [2.0, 4.0]],
    [[0.0, 0.0], [0.0, 0.0]],
    [[1.0, 1.0, 1.0], [1.0, 2.0, 3.0], [2.0, 3.0, 4.0]],
])
def test_linsolve_singular(A):
    with pytest.raises(SingularMatrix) as info:
        linsolve(A, np.ones(len(A)))
    assert info.value.pivot < info.value.tolerance or info.value.pivot == 0.0


@pytest.mark.parametrize("A, b", [
    ([[1.0, 2.0, 3.0]], [1.0]),
    ([[1.0, 0.0], [0.0, 1.0]], [1.0, 2.0, 3.0]),
    ([1.0, 2.0], [1.0]),
    ([[np.nan, 0.0], [0.0, 1.0]], [1.0, 1.0]),
])
def test_linsolve_rejects_bad_shapes(A, b):
    with pytest.raises(ValueError):
        linsolve(A, b)


def test_as_dense_copies():
    A = np.eye(2)
    M = as_dense(A)
    M[0, 0] = 5
    assert A[0, 0] == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_linsolve_residual_property(n, seed):
    r = np.random.default_rng(seed)
    A = r.uniform(-1, 1, (n, n))
    A += np.diag(np.abs(A).sum(axis=1) + 0.1)
    b = r.uniform(-1, 1, n)
    x = linsolve(A, b)
    assert np.abs(A @ x - b).max() <= 1e-12 * (np.abs(A).sum(axis=1).max() * np.abs(x).max() + 1)


@pytest.mark.parametrize("f, lo, hi, root", [
    (lambda x: x * x - 2, 0.0, 2.0, math.sqrt(2)),
    (lambda x: math.cos(x) - x, 0.0, 1.0, 0.7390851332151607),
    (lambda x: x**3, -1.0, 2.0, 0.0),
])
def test_bisect_linear(f, lo, hi, root):
    assert bisect(f, (lo, hi), rel_tol=1e-14, abs_tol=1e-15) == pytest.approx(root, abs=1e-13)


def test_bisect_log_space_wide_bracket():
    root = bisect(lambda a: math.log(a) - math.log(3.7e17), (1.0, 1e30), log_space=True)
    assert root == pytest.approx(3.7e17, rel=1e-11)


def test_bisect_exact_endpoint_root():
    assert bisect(lambda x: x - 1.0, (1.0, 2.0)) == 1.0
    assert bisect(lambda x: x - 2.0, (1.0, 2.0)) == 2.0


def test_bracket_validation():
    with pytest.raises(InvalidBracket):
        Bracket(2.0, 1.0, -1.0, 1.0)
    with pytest.raises(InvalidBracket):
        Bracket(0.0, math.inf, -1.0, 1.0)
    with pytest.raises(NoSignChange) as info:
        Bracket.around(lambda x: x * x + 1, -1.0, 1.0)
    assert (info.value.lo, info.value.hi) == (-1.0, 1.0)


def test_bisect_log_space_needs_positive_lo():
    with pytest.raises(InvalidBracket):
        bisect(lambda x: x, (-1.0, 1.0), log_space=True)


def test_bisect_iteration_cap():
    with pytest.raises(NoConvergence):
        bisect(lambda x: x - 0.3, (0.0, 1.0), rel_tol=1e-15, max_iter=5)


@pytest.mark.parametrize("f, df, x", [
    (lambda x: 3 * x * x - 2 * x, lambda x: 6 * x - 2, 1.7),
    (math.sin, math.cos, 0.4),
])
def test_central_diff(f, df, x):
    assert central_diff(f, x, 1e-5) == pytest.approx(df(x), rel=1e-8)


def test_central_diff_step():
    with pytest.raises(ValueError):
        central_diff(math.sin, 0.0, 0.0)
