from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qglaisher.bigpoly import ONE, ZERO, IntPoly, eval_int, exact_div, mul, power
from qglaisher.errors import InvalidRange
from qglaisher.qcore import (
    q_binomial,
    q_binomial_base,
    q_binomial_pascal,
    q_factorial,
    q_number,
    q_shifted_factorial,
)

P = IntPoly


def subset_sum_oracle(n, k):
    """Gaussian binomial by enumeration: k-subsets of {0..n-1} counted by sum - k(k-1)/2."""
    out = [0] * (k * (n - k) + 1)
    for s in combinations(range(n), k):
        out[sum(s) - k * (k - 1) // 2] += 1
    return IntPoly(out)


def test_q_number():
    assert q_number(0) == ZERO
    assert q_number(1) == ONE
    assert q_number(3) == P([1, 1, 1])


def test_q_factorial():
    assert q_factorial(0) == ONE
    assert q_factorial(2) == P([1, 1])
    assert q_factorial(3) == P([1, 2, 2, 1])


@pytest.mark.parametrize("impl", [q_binomial, q_binomial_pascal])
def test_q_binomial_examples(impl):
    assert impl(7, 0) == ONE
    assert impl(6, 6) == ONE
    assert impl(1, 0) == ONE
    assert impl(4, 2) == P([1, 1, 2, 1, 1])
    assert impl(5, 2) == P([1, 1, 2, 2, 2, 1, 1])


def test_q_binomial_matches_factorial_quotient():
    assert exact_div(q_factorial(4), mul(q_factorial(2), q_factorial(2))) == q_binomial(4, 2)


@pytest.mark.parametrize("n", range(0, 13))
def test_q_binomial_matches_enumeration(n):
    for k in range(n + 1):
        assert q_binomial(n, k) == subset_sum_oracle(n, k)


def test_q_binomial_invalid():
    for impl in (q_binomial, q_binomial_pascal):
        with pytest.raises(InvalidRange):
            impl(3, 4)
        with pytest.raises(InvalidRange):
            impl(-1, 0)


def test_q_binomial_base():
    assert q_binomial_base(2, 1, 4) == P([1, 0, 0, 0, 1])
    assert q_binomial_base(9, 0, 5) == ONE
    assert q_binomial_base(3, 1, 2) == P([1, 0, 1, 0, 1])


def test_q_shifted_factorial():
    assert q_shifted_factorial(4, 0) == ONE
    assert q_shifted_factorial(3, 1) == P([1, 0, 0, -1])
    assert q_shifted_factorial(1, 2) == P([1, -1, -1, 1])
    assert q_shifted_factorial(0, 3) == ZERO


def test_oracle_equivalence_small():
    for n in range(0, 25):
        for k in range(n + 1):
            assert q_binomial(n, k) == q_binomial_pascal(n, k)


@given(st.integers(0, 40).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_binomial_properties(nk):
    n, k = nk
    f = q_binomial(n, k)
    assert f == q_binomial(n, n - k)
    assert f.degree == k * (n - k)
    assert all(c > 0 for c in f.coeffs)
    assert eval_int(f, 1) == comb(n, k)


@given(st.integers(0, 30))
def test_q_number_at_one(n):
    assert eval_int(q_number(n), 1) == n


@given(st.integers(0, 15))
def test_shifted_vs_factorial(n):
    assert q_shifted_factorial(1, n) == mul(power(P([1, -1]), n), q_factorial(n))


@given(st.integers(1, 10), st.integers(0, 10))
def test_shifted_concatenation(a, n):
    lhs = mul(q_shifted_factorial(a, n), q_shifted_factorial(1, a - 1))
    assert lhs == q_shifted_factorial(1, a + n - 1)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_pivot_identity(p, m):
    lhs = mul(q_number(p), q_binomial((m + 1) * p, p))
    rhs = mul(q_number((m + 1) * p), q_binomial((m + 1) * p - 1, p - 1))
    assert lhs == rhs
