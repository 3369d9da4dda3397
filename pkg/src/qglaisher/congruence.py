"""The modulus ``[p]_q**k`` and exact congruence testing against it."""

from __future__ import annotations

from dataclasses import dataclass, field

from .bigpoly import IntPoly, divrem_monic, power, sub
from .errors import InvalidParameter
from .qcore import one_minus_qpow, q_number


@dataclass(frozen=True)
class QModulus:
    """``[p]_q**k`` with its expanded polynomial.

    ``p`` need not be prime here; the claims layer checks primality where it matters.
    """

    p: int
    k: int
    poly: IntPoly = field(repr=False, compare=False)

    @property
    def degree(self) -> int:
        return self.k * (self.p - 1)

    def __str__(self) -> str:
        return f"[{self.p}]_q^{self.k}"


def modulus(p: int, k: int) -> QModulus:
    if p < 2:
        raise InvalidParameter(f"p must be at least 2, got {p}")
    if k < 1:
        raise InvalidParameter(f"k must be at least 1, got {k}")
    return QModulus(p, k, power(q_number(p), k))


def _sparse_multiple(M: QModulus) -> IntPoly:
    # (q^p - 1)^k = ((q - 1) [p]_q)^k is a sparse multiple of the modulus
    return power(-one_minus_qpow(M.p), M.k)


def reduce(f: IntPoly, M: QModulus) -> IntPoly:
    """Canonical remainder of ``f`` modulo ``M`` (degree below ``k*(p-1)``).

    Large inputs are first brought below degree ``k*p`` by dividing by the
    sparse multiple ``(q**p - 1)**k``; the remainder of that step is congruent
    to ``f`` modulo ``M``, so the final dense division gives the same answer
    at a fraction of the cost.
    """
    if f.is_zero():
        return f
    if len(f) > M.k * M.p:
        _, f = divrem_monic(f, _sparse_multiple(M))
    return divrem_monic(f, M.poly)[1]


def congruent(f: IntPoly, g: IntPoly, M: QModulus) -> bool:
    return reduce(sub(f, g), M).is_zero()


def reduce_oracle(f: IntPoly, M: QModulus) -> IntPoly:
    """Second, independent route to the canonical remainder.

    Walks the powers ``q**d`` upward, keeping each one's residue (shift by one,
    then cancel the overflowing top term with the modulus), and accumulates
    ``sum c_d * (q**d mod M)``.  Shares no code with ``divrem_monic``.
    """
    m = list(M.poly.coeffs)
    n = len(m) - 1
    acc = [0] * n
    res = [0] * n  # residue of q^d
    if n == 0:
        return IntPoly()
    res[0] = 1
    for d, c in enumerate(f.coeffs):
        if d:
            top = res[-1]
            res = [0] + res[:-1]
            if top:
                for j in range(n):
                    res[j] -= top * m[j]
        if c:
            for j in range(n):
                acc[j] += c * res[j]
    return IntPoly(acc)
