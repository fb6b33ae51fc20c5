"""Small numerical kernel: dense solve, bisection and central differences.

These are the independent oracles against which the closed-form results are
checked, so they are deliberately plain and do not call into LAPACK.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InvalidBracket, NoConvergence, NoSignChange, SingularMatrix

PIVOT_RTOL = 1e-12


def as_dense(A) -> np.ndarray:
    """Return ``A`` as a finite 2-D float array (copy)."""
    M = np.array(A, dtype=float, copy=True)
    if M.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def linsolve(A, b) -> np.ndarray:
    """Solve ``A x = b`` by Gaussian elimination with partial pivoting.

    Args:
        A: square matrix.
        b: right-hand side, length matching ``A``.

    Returns:
        The solution vector.

    Raises:
        SingularMatrix: when the largest available pivot at some step is below
            ``1e-12 * ||A||_inf``.
    """
    M = as_dense(A)
    n, m = M.shape
    if n != m:
        raise ValueError(f"matrix must be square, got {M.shape}")
    x = np.array(b, dtype=float, copy=True).reshape(-1)
    if x.shape[0] != n:
        raise ValueError(f"rhs length {x.shape[0]} does not match matrix size {n}")

    tol = PIVOT_RTOL * np.abs(M).sum(axis=1).max() if n else 0.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(M[k:, k])))
        pivot = abs(M[p, k])
        if pivot < tol or pivot == 0.0:
            raise SingularMatrix(k, pivot, tol)
        if p != k:
            M[[k, p]] = M[[p, k]]
            x[[k, p]] = x[[p, k]]
        factors = M[k + 1 :, k] / M[k, k]
        M[k + 1 :, k:] -= np.outer(factors, M[k, k:])
        x[k + 1 :] -= factors * x[k]

    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - M[k, k + 1 :] @ x[k + 1 :]) / M[k, k]
    return x


@dataclass(frozen=True)
class Bracket:
    """A sign-changing interval ``[lo, hi]`` with cached end values."""

    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise InvalidBracket(f"bracket ends must be finite: [{self.lo}, {self.hi}]")
        if not self.lo < self.hi:
            raise InvalidBracket(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")
        if self.f_lo * self.f_hi > 0:
            raise NoSignChange(self.lo, self.hi, self.f_lo, self.f_hi)

    @classmethod
    def around(cls, f: Callable[[float], float], lo: float, hi: float) -> "Bracket":
        return cls(lo, hi, f(lo), f(hi))


def bisect(
    f: Callable[[float], float],
    bracket: Bracket | tuple[float, float],
    rel_tol: float = 1e-12,
    max_iter: int = 200,
    log_space: bool = False,
    abs_tol: float = 0.0,
) -> float:
    """Locate a sign change of ``f`` by bisection.

    With ``log_space=True`` the bracket is split at its geometric mean, which
    keeps the iteration count bounded when the ends differ by many orders of
    magnitude (both ends must then be positive).

    Returns:
        ``x`` such that the final interval satisfies
        ``hi - lo <= max(abs_tol, rel_tol*|x|)`` and still straddles the sign
        change. Pass ``abs_tol > 0`` for roots at or near zero.

    Raises:
        NoSignChange, InvalidBracket: for a bad starting bracket.
        NoConvergence: if ``max_iter`` halvings are not enough.
    """
    if not isinstance(bracket, Bracket):
        bracket = Bracket.around(f, *bracket)
    lo, hi, f_lo, f_hi = bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi
    if log_space and lo <= 0:
        raise InvalidBracket(f"log-space bisection needs lo > 0, got {lo}")
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi

    def midpoint(lo, hi):
        if log_space:
            return math.exp(0.5 * (math.log(lo) + math.log(hi)))
        return 0.5 * (lo + hi)

    for _ in range(max_iter):
        mid = midpoint(lo, hi)
        if hi - lo <= max(abs_tol, rel_tol * abs(mid)):
            return mid
        f_mid = f(mid)
        if f_mid == 0:
            return mid
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    mid = midpoint(lo, hi)
    if hi - lo <= max(abs_tol, rel_tol * abs(mid)):
        return mid
    raise NoConvergence("bisect", max_iter, f"final bracket [{lo!r}, {hi!r}]")


def central_diff(f: Callable[[float], float], x: float, h: float) -> float:
    """Central difference ``(f(x+h) - f(x-h)) / (2h)``."""
    if not h > 0:
        raise ValueError(f"step must be positive, got {h}")
    return (f(x + h) - f(x - h)) / (2.0 * h)
