"""q-numbers, q-factorials, Gaussian binomials and q-shifted factorials as ``IntPoly`` values."""

from __future__ import annotations

from .bigpoly import ONE, ZERO, IntPoly, compose_qpow, exact_div, mul, shift
from .errors import InvalidRange


def _check_nonneg(**kw: int) -> None:
    for name, v in kw.items():
        if v < 0:
            raise InvalidRange(f"{name} must be non-negative, got {v}")


def _check_nk(n: int, k: int) -> None:
    _check_nonneg(n=n, k=k)
    if k > n:
        raise InvalidRange(f"k={k} exceeds n={n}")


def one_minus_qpow(e: int) -> IntPoly:
    """``1 - q**e``."""
    if e == 0:
        return ZERO
    return IntPoly._raw([1] + [0] * (e - 1) + [-1])


def q_number(n: int) -> IntPoly:
    """``[n]_q = 1 + q + ... + q**(n-1)``; ``[0]_q = 0``."""
    _check_nonneg(n=n)
    return IntPoly._raw([1] * n)


def q_factorial(n: int) -> IntPoly:
    _check_nonneg(n=n)
    result = ONE
    for j in range(2, n + 1):
        result = mul(result, q_number(j))
    return result


def q_binomial(n: int, k: int) -> IntPoly:
    """Gaussian binomial coefficient.

    Builds the prefix values ``binom(n-k+j, j)_q`` for ``j = 1..k``: each step
    multiplies by ``[n-k+j]_q`` and divides exactly by ``[j]_q``.  Both factors
    are applied through the sparse forms ``1 - q**(n-k+j)`` and ``1 - q**j``
    (the ``1 - q`` denominators cancel), so each step costs O(degree).
    """
    _check_nk(n, k)
    k = min(k, n - k)
    result = ONE
    for j in range(1, k + 1):
        result = mul(result, one_minus_qpow(n - k + j))
        result = exact_div(result, one_minus_qpow(j))
    return result


def q_binomial_pascal(n: int, k: int) -> IntPoly:
    """Gaussian binomial from the division-free recurrence
    ``binom(r, j) = binom(r-1, j-1) + q**j * binom(r-1, j)``, row by row.

    Kept as an independent oracle for ``q_binomial``; uses only additions.
    """
    _check_nk(n, k)
    # row[j] holds the coefficient list of binom(r, j), j <= min(r, k)
    row = [[1]]
    for r in range(1, n + 1):
        new = [[1]]
        for j in range(1, min(r, k) + 1):
            left = row[j - 1]
            right = row[j] if j < r else []
            out = left + [0] * max(0, j + len(right) - len(left))
            for i, c in enumerate(right):
                out[i + j] += c
            new.append(out)
        row = new
    return IntPoly(row[k])


def q_binomial_base(n: int, k: int, t: int) -> IntPoly:
    """Gaussian binomial in base ``q**t``."""
    return compose_qpow(q_binomial(n, k), t)


def q_shifted_factorial(a: int, n: int) -> IntPoly:
    """``(q**a; q)_n = (1 - q**a)(1 - q**(a+1))...(1 - q**(a+n-1))``."""
    _check_nonneg(a=a, n=n)
    result = ONE
    for j in range(n):
        e = a + j
        if e == 0:
            return ZERO
        # (1 - q^e) * f  ==  f - q^e f
        result = result - shift(result, e)
    return result
