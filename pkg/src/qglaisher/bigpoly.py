"""Dense univariate polynomials in ``q`` with arbitrary-precision integer coefficients.

``IntPoly`` stores its coefficients lowest degree first in a tuple that is
always canonical: either empty (the zero polynomial) or ending in a nonzero
entry.  Every operation here returns a fresh canonical value; nothing is
mutated after construction.

Multiplication switches from schoolbook convolution to Karatsuba splitting
once both operands are longer than ``KARATSUBA_THRESHOLD`` coefficients.
The two paths give identical results; the threshold only affects speed.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DivisionByZero, InexactDivision, NonIntegralCoefficient, NonMonicDivisor

KARATSUBA_THRESHOLD = 64


def _trim(coeffs: list) -> list:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    del coeffs[n:]
    return coeffs


class IntPoly:
    """Immutable integer-coefficient polynomial in one indeterminate."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        self._c = tuple(_trim(c))

    @classmethod
    def _raw(cls, coeffs: list) -> "IntPoly":
        # caller guarantees ints; trimming still happens here
        obj = cls.__new__(cls)
        obj._c = tuple(_trim(coeffs))
        return obj

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls._raw([int(c)])

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "IntPoly":
        if exponent < 0:
            raise ValueError("exponent must be non-negative")
        return cls._raw([0] * exponent + [int(coeff)])

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> Optional[int]:
        """Degree, or ``None`` for the zero polynomial."""
        return len(self._c) - 1 if self._c else None

    def is_zero(self) -> bool:
        return not self._c

    def leading_coeff(self) -> int:
        return self._c[-1] if self._c else 0

    def max_coeff_bits(self) -> int:
        return max((abs(c).bit_length() for c in self._c), default=0)

    def __len__(self) -> int:
        return len(self._c)

    def __getitem__(self, i: int) -> int:
        if 0 <= i < len(self._c):
            return self._c[i]
        return 0

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPoly):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == IntPoly.constant(other)._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        return f"IntPoly({list(self._c)!r})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for i, c in enumerate(self._c):
            if not c:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' if mono else ''}{mono}"
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __neg__(self) -> "IntPoly":
        return IntPoly._raw([-c for c in self._c])

    def __add__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else sub(self, other)

    def __rsub__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else sub(other, self)

    def __mul__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPoly":
        return power(self, e)

    def __call__(self, x: int) -> int:
        return eval_int(self, x)

    def to_json(self) -> str:
        return json.dumps(self.to_strings())

    def to_strings(self) -> list:
        return [str(c) for c in self._c]

    @classmethod
    def from_strings(cls, items: Sequence) -> "IntPoly":
        """Parse the serialized form: base-10 coefficient strings, lowest degree first."""
        if not isinstance(items, (list, tuple)):
            raise ValueError("polynomial must be a JSON array")
        coeffs = []
        for item in items:
            if not isinstance(item, str):
                raise ValueError(f"coefficient {item!r} is not a string")
            coeffs.append(int(item, 10))
        if coeffs and coeffs[-1] == 0:
            raise ValueError("non-canonical polynomial: trailing zero coefficient")
        return cls._raw(coeffs)

    @classmethod
    def from_json(cls, text: str) -> "IntPoly":
        return cls.from_strings(json.loads(text))


def _coerce(x) -> Optional[IntPoly]:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly.constant(x)
    return None


ZERO = IntPoly()
ONE = IntPoly.constant(1)
Q = IntPoly.monomial(1)


def add(f: IntPoly, g: IntPoly) -> IntPoly:
    a, b = f.coeffs, g.coeffs
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return IntPoly._raw(out)


def sub(f: IntPoly, g: IntPoly) -> IntPoly:
    a, b = f.coeffs, g.coeffs
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return IntPoly._raw(out)


def scale(f: IntPoly, c: int) -> IntPoly:
    return IntPoly._raw([c * x for x in f.coeffs])


def shift(f: IntPoly, n: int) -> IntPoly:
    """Multiply by ``q**n``."""
    if not f.coeffs:
        return f
    return IntPoly._raw([0] * n + list(f.coeffs))


# -- multiplication kernels (lists in, list out; no trimming) -----------------

def _schoolbook(a: Sequence[int], b: Sequence[int]) -> list:
    if not a or not b:
        return []
    if len(a) > len(b):
        a, b = b, a
    n = len(b)
    out = [0] * (len(a) + n - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        if x == 1:
            out[i:i + n] = [o + y for o, y in zip(out[i:i + n], b)]
        elif x == -1:
            out[i:i + n] = [o - y for o, y in zip(out[i:i + n], b)]
        else:
            out[i:i + n] = [o + x * y for o, y in zip(out[i:i + n], b)]
    return out


def _add_into(out: list, src: Sequence[int], offset: int, sign: int = 1) -> None:
    end = offset + len(src)
    if sign > 0:
        out[offset:end] = [o + s for o, s in zip(out[offset:end], src)]
    else:
        out[offset:end] = [o - s for o, s in zip(out[offset:end], src)]


def _ladd(a: Sequence[int], b: Sequence[int]) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def _karatsuba(a: Sequence[int], b: Sequence[int], threshold: int) -> list:
    if not a or not b:
        return []
    if len(a) > len(b):
        a, b = b, a
    na, nb = len(a), len(b)
    if na <= threshold:
        return _schoolbook(a, b)
    if 2 * na <= nb:
        # unbalanced: slice the long operand into chunks the size of the short one
        out = [0] * (na + nb - 1)
        for start in range(0, nb, na):
            part = _karatsuba(a, b[start:start + na], threshold)
            _add_into(out, part, start)
        return out
    h = (nb + 1) // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = _karatsuba(a0, b0, threshold)
    z2 = _karatsuba(a1, b1, threshold)
    z1 = _karatsuba(_ladd(a0, a1), _ladd(b0, b1), threshold)
    out = [0] * (na + nb - 1)
    _add_into(out, z0, 0)
    _add_into(out, z2, 2 * h)
    # z1 - z0 - z2 lands at offset h; z1 may carry trailing zeros past the product length
    mid = _ladd(z1, [-c for c in z0])
    mid = _ladd(mid, [-c for c in z2])
    _trim(mid)
    _add_into(out, mid, h)
    return out


def mul(f: IntPoly, g: IntPoly, threshold: Optional[int] = None) -> IntPoly:
    """Exact product.  ``threshold`` overrides ``KARATSUBA_THRESHOLD`` for this call."""
    t = KARATSUBA_THRESHOLD if threshold is None else threshold
    a, b = f.coeffs, g.coeffs
    if min(len(a), len(b)) <= t:
        return IntPoly._raw(_schoolbook(a, b))
    return IntPoly._raw(_karatsuba(a, b, max(t, 1)))


def power(f: IntPoly, e: int) -> IntPoly:
    if e < 0:
        raise ValueError("exponent must be non-negative")
    result = ONE
    base = f
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


# -- division -----------------------------------------------------------------

def _long_divide(num: list, den: Sequence[int]) -> list:
    """In-place long division by a divisor with leading coefficient 1.

    ``num`` is overwritten with the remainder in its low ``len(den) - 1``
    slots; the quotient is returned.
    """
    dg = len(den) - 1
    nq = len(num) - dg
    if nq <= 0:
        return []
    terms = [(j, c) for j, c in enumerate(den[:-1]) if c]
    quot = [0] * nq
    for k in range(nq - 1, -1, -1):
        c = num[k + dg]
        if not c:
            continue
        quot[k] = c
        for j, d in terms:
            num[k + j] -= c * d
    return quot


def divrem_monic(f: IntPoly, g: IntPoly) -> tuple:
    """Euclidean division by a divisor whose leading coefficient is +1 or -1.

    Returns ``(quot, rem)`` with ``f == quot*g + rem`` and ``rem`` of lower degree than ``g``.
    """
    if g.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    lead = g.leading_coeff()
    if lead not in (1, -1):
        raise NonMonicDivisor(f"leading coefficient {lead} is not +1 or -1")
    den = g.coeffs if lead == 1 else tuple(-c for c in g.coeffs)
    num = list(f.coeffs)
    quot = _long_divide(num, den)
    dg = len(den) - 1
    rem = IntPoly._raw(num[:dg]) if len(num) > dg else IntPoly._raw(num)
    if lead == -1:
        quot = [-c for c in quot]
    return IntPoly._raw(quot), rem


def exact_div(f: IntPoly, g: IntPoly) -> IntPoly:
    """Return ``h`` with ``f == g*h``; raise ``InexactDivision`` if no such integer polynomial exists."""
    if g.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    if f.is_zero():
        return ZERO
    lead = g.leading_coeff()
    if lead in (1, -1):
        quot, rem = divrem_monic(f, g)
        if not rem.is_zero():
            raise InexactDivision(f"{g.degree}-degree divisor leaves a nonzero remainder", rem)
        return quot
    num = list(f.coeffs)
    den = g.coeffs
    dg = len(den) - 1
    nq = len(num) - dg
    if nq <= 0:
        raise InexactDivision("divisor has larger degree than dividend", f)
    terms = [(j, c) for j, c in enumerate(den[:-1]) if c]
    quot = [0] * nq
    for k in range(nq - 1, -1, -1):
        c, r = divmod(num[k + dg], lead)
        if r:
            raise InexactDivision(
                f"coefficient of q^{k + dg} not divisible by leading coefficient {lead}",
                IntPoly._raw(num[:k + dg + 1]),
            )
        if not c:
            continue
        quot[k] = c
        num[k + dg] = 0
        for j, d in terms:
            num[k + j] -= c * d
    rem = IntPoly._raw(num[:dg])
    if not rem.is_zero():
        raise InexactDivision("nonzero remainder", rem)
    return IntPoly._raw(quot)


# -- evaluation and substitution ----------------------------------------------

def eval_int(f: IntPoly, x: int) -> int:
    acc = 0
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


def compose_qpow(f: IntPoly, t: int) -> IntPoly:
    """Substitute ``q -> q**t``."""
    if t < 1:
        raise ValueError("t must be a positive integer")
    if t == 1 or len(f) <= 1:
        return f
    out = [0] * ((len(f) - 1) * t + 1)
    out[::t] = f.coeffs
    return IntPoly._raw(out)


# -- exact rational scalars ---------------------------------------------------

class RationalScalar(Fraction):
    """A ``Fraction`` (always lowest terms, positive denominator) that can insist on being an integer."""

    __slots__ = ()

    def is_integer(self) -> bool:
        return self.denominator == 1

    def require_integer(self, what: str = "coefficient") -> int:
        if self.denominator != 1:
            raise NonIntegralCoefficient(f"{what} = {self} is not an integer")
        return self.numerator
