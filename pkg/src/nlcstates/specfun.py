"""Laguerre polynomials, log-space binomials and the f-factorial."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


def laguerre(m: int, x: float) -> float:
    """L_m(x) = sum_n (-1)^n C(m, n) x^n / n!, via the three-term recurrence."""
    if m < 0:
        raise DomainError(f"Laguerre order must be non-negative, got {m}")
    prev, cur = 1.0, 1.0 - x
    if m == 0:
        return prev
    for k in range(1, m):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
    return cur


def log_binomial(a: int, b: int) -> float:
    if b < 0 or a < 0 or b > a:
        raise DomainError(f"log_binomial needs 0 <= b <= a, got a={a}, b={b}")
    if b == 0 or b == a:
        return 0.0
    return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)


def log_binomial_array(a, b) -> np.ndarray:
    """Elementwise :func:`log_binomial` over broadcast integer arrays."""
    a, b = np.broadcast_arrays(np.asarray(a, dtype=int), np.asarray(b, dtype=int))
    return np.array([log_binomial(int(x), int(y)) for x, y in zip(a.ravel(), b.ravel())]).reshape(a.shape)


@dataclass(frozen=True)
class FFactorialResult:
    value: complex
    is_exact_zero: bool = False


def f_factorial(f, n: int) -> FFactorialResult:
    """f(n)! = f(n) f(n-1) ... f(0), with f(-1)! = 1."""
    values = np.asarray(getattr(f, "values", f), dtype=complex)
    if n < -1:
        raise DomainError(f"f-factorial is defined for n >= -1, got {n}")
    if n >= values.size:
        raise DomainError(f"f is tabulated on [0, {values.size - 1}], cannot form f({n})!")
    if n == -1:
        return FFactorialResult(1.0 + 0j)
    factors = values[: n + 1]
    if np.any(factors == 0):
        return FFactorialResult(0j, True)
    return FFactorialResult(complex(np.prod(factors)))
