"""Each congruence as a parameterized, checkable claim.

A builder (``build_*``) validates the hypotheses, computes both sides exactly
and returns a ``CongruenceClaim``; ``check`` reduces ``lhs - rhs`` modulo the
claim's modulus and returns a ``VerificationRecord``.  The unprefixed
functions (``theorem1`` etc.) do both.  The two classical integer congruences
have no polynomial modulus and produce records directly.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from math import comb, factorial, prod
from typing import Optional

from .bigpoly import (
    IntPoly,
    RationalScalar,
    eval_int,
    exact_div,
    mul,
    power,
    scale,
    shift,
    sub,
)
from .congruence import QModulus, modulus, reduce
from .errors import HypothesisViolated, InexactDivision, NotPrime, ResourceCap
from .primes import is_prime
from .qcore import one_minus_qpow, q_binomial, q_binomial_base, q_number, q_shifted_factorial

DEFAULT_DEGREE_CAP = 200_000


class ClaimId(str, enum.Enum):
    GLAISHER_BINOM = "GLAISHER_BINOM"
    GLAISHER_PROD = "GLAISHER_PROD"
    ANDREWS_Q = "ANDREWS_Q"
    THEOREM1 = "THEOREM1"
    LEMMA1 = "LEMMA1"
    LEMMA2 = "LEMMA2"
    ANDREWS_PROD_Q = "ANDREWS_PROD_Q"
    THEOREM2 = "THEOREM2"

    @property
    def order(self) -> int:
        return list(ClaimId).index(self)

    def __str__(self) -> str:
        return self.value


EQUATION_TAGS = {
    ClaimId.GLAISHER_BINOM: "(1)",
    ClaimId.GLAISHER_PROD: "(2)",
    ClaimId.ANDREWS_Q: "(7)",
    ClaimId.THEOREM1: "(8)",
    ClaimId.LEMMA1: "(9)",
    ClaimId.LEMMA2: "(10)",
    ClaimId.ANDREWS_PROD_Q: "(12)",
    ClaimId.THEOREM2: "(13)",
}


@dataclass(frozen=True)
class CongruenceClaim:
    claim_id: ClaimId
    params: dict
    lhs: IntPoly
    rhs: IntPoly
    modulus: QModulus
    paper_eq: str = ""
    control: Optional[str] = None


@dataclass
class VerificationRecord:
    claim_id: ClaimId
    params: dict
    holds: bool
    lhs_degree: int = 0
    max_coeff_bits: int = 0
    residual: Optional[IntPoly] = None
    wall_time: float = 0.0
    error: Optional[str] = None
    control: Optional[str] = None
    inconsistency: Optional[str] = None
    detail: dict = field(default_factory=dict)

    @property
    def expected_holds(self) -> bool:
        return self.control is None

    @property
    def ok(self) -> bool:
        """True when the outcome is what a correct theorem predicts."""
        return self.error is None and self.inconsistency is None and self.holds == self.expected_holds

    def sort_key(self) -> tuple:
        g = self.params.get
        return (ClaimId(self.claim_id).order, g("p", -1), g("m", -1), g("i", -1), g("s", -1), self.control or "")


# -- hypotheses and scalars ---------------------------------------------------

def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"p={p} is not prime")


def _require_p_ge5(p: int, m: int) -> None:
    _require_prime(p)
    if p < 5:
        raise HypothesisViolated(f"requires p >= 5, got p={p}")
    if m < 1:
        raise HypothesisViolated(f"requires m >= 1, got m={m}")


def _require_odd(p: int) -> None:
    _require_prime(p)
    if p == 2:
        raise HypothesisViolated("requires an odd prime, got p=2")


def _require_odd_m(p: int, m: int) -> None:
    _require_odd(p)
    if m < 1:
        raise HypothesisViolated(f"requires m >= 1, got m={m}")


def _cap(degree: int, cap: Optional[int]) -> None:
    if cap is not None and degree > cap:
        raise ResourceCap(f"lhs degree {degree} exceeds cap {cap}")


def theorem1_coefficient(p: int, m: int) -> RationalScalar:
    return RationalScalar(RationalScalar(m * m * (p * p - 1), 8) + RationalScalar(m * (p - 1) * (7 * p - 5), 24))


def lemma1_scalar(p: int) -> RationalScalar:
    return RationalScalar(p * p - 1, 12)


def andrews_prod_scalar(p: int) -> RationalScalar:
    return RationalScalar((p * p - 1) * p, 24)


def theorem2_scalar(p: int, m: int) -> RationalScalar:
    return RationalScalar(m * (m + 1) * (p * p - 1) * p, 24)


def _cyclotomic_square(p: int) -> IntPoly:
    """``(1 - q)**2 * [p]_q**2``."""
    return mul(power(one_minus_qpow(1), 2), power(q_number(p), 2))


# -- integer congruences ------------------------------------------------------

def _integer_record(claim_id: ClaimId, p: int, m: int, lhs: int, rhs: int, t0: float) -> VerificationRecord:
    mod = p ** 3
    diff = (lhs - rhs) % mod
    return VerificationRecord(
        claim_id=claim_id,
        params={"p": p, "m": m},
        holds=diff == 0,
        lhs_degree=0,
        max_coeff_bits=abs(lhs).bit_length(),
        residual=None if diff == 0 else IntPoly.constant(diff),
        wall_time=time.perf_counter() - t0,
    )


def glaisher_binom(p: int, m: int, *, rhs_offset: int = 0) -> VerificationRecord:
    """``C(mp+p-1, p-1) == 1 (mod p**3)`` with exact integers."""
    _require_p_ge5(p, m)
    t0 = time.perf_counter()
    return _integer_record(ClaimId.GLAISHER_BINOM, p, m, comb(m * p + p - 1, p - 1), 1 + rhs_offset, t0)


def glaisher_prod(p: int, m: int, *, rhs_offset: int = 0) -> VerificationRecord:
    """``(mp+1)(mp+2)...(mp+p-1) == (p-1)! (mod p**3)``."""
    _require_p_ge5(p, m)
    t0 = time.perf_counter()
    lhs = prod(range(m * p + 1, m * p + p))
    return _integer_record(ClaimId.GLAISHER_PROD, p, m, lhs, factorial(p - 1) + rhs_offset, t0)


# -- q-congruence builders ----------------------------------------------------

def build_andrews_q(p: int, m: int, *, degree_cap: Optional[int] = DEFAULT_DEGREE_CAP,
                    binomial=q_binomial,
                    exponent_offset: int = 0) -> CongruenceClaim:
    """``binomial`` picks the Gaussian binomial routine; oracle runs pass the Pascal one."""
    _require_odd_m(p, m)
    _cap(m * p * (p - 1), degree_cap)
    lhs = binomial((m + 1) * p - 1, p - 1)
    rhs = IntPoly.monomial(m * p * (p - 1) // 2 + exponent_offset)
    return CongruenceClaim(ClaimId.ANDREWS_Q, {"p": p, "m": m}, lhs, rhs, modulus(p, 2),
                           EQUATION_TAGS[ClaimId.ANDREWS_Q])


def build_theorem1(p: int, m: int, *, degree_cap: Optional[int] = DEFAULT_DEGREE_CAP,
                   binomial=q_binomial,
                   exponent_offset: int = 0) -> CongruenceClaim:
    _require_p_ge5(p, m)
    c = theorem1_coefficient(p, m).require_integer("Theorem 1 coefficient")
    _cap(m * p * (p - 1), degree_cap)
    lhs = binomial((m + 1) * p - 1, p - 1)
    rhs = sub(IntPoly.monomial(m * p * (p - 1) // 2 + exponent_offset), scale(_cyclotomic_square(p), c))
    return CongruenceClaim(ClaimId.THEOREM1, {"p": p, "m": m}, lhs, rhs, modulus(p, 3),
                           EQUATION_TAGS[ClaimId.THEOREM1])


def build_lemma1(p: int, m: int, *, degree_cap: Optional[int] = DEFAULT_DEGREE_CAP,
                 binomial=q_binomial) -> CongruenceClaim:
    _require_p_ge5(p, m)
    scalar = lemma1_scalar(p).require_integer("(p^2-1)/12")
    _cap(m * p * p, degree_cap)
    lhs = binomial((m + 1) * p, p)
    rhs = sub(q_binomial_base(m + 1, 1, p * p), scale(_cyclotomic_square(p), comb(m + 1, 2) * scalar))
    return CongruenceClaim(ClaimId.LEMMA1, {"p": p, "m": m}, lhs, rhs, modulus(p, 3),
                           EQUATION_TAGS[ClaimId.LEMMA1])


def lemma2_rhs(p: int, i: int, s: int) -> IntPoly:
    """Truncated expansion ``sum_{k<s} C(i,k) (-1)**k [p]_q**k (1-q)**k``."""
    base = mul(q_number(p), one_minus_qpow(1))
    total = IntPoly()
    term = IntPoly.constant(1)
    for k in range(s):
        if k:
            term = mul(term, base)
        c = comb(i, k)
        if c:
            total = total + scale(term, -c if k % 2 else c)
    return total


def build_lemma2(p: int, i: int, s: int, *, degree_cap: Optional[int] = DEFAULT_DEGREE_CAP) -> CongruenceClaim:
    _require_odd(p)
    if i < 0:
        raise HypothesisViolated(f"requires i >= 0, got i={i}")
    if s < 1:
        raise HypothesisViolated(f"requires s >= 1, got s={s}")
    _cap(p * i, degree_cap)
    return CongruenceClaim(ClaimId.LEMMA2, {"p": p, "i": i, "s": s}, IntPoly.monomial(p * i),
                           lemma2_rhs(p, i, s), modulus(p, s),
                           "(11)" if s == 3 else EQUATION_TAGS[ClaimId.LEMMA2])


def andrews_prod_numerator(p: int, m: int) -> IntPoly:
    """``(q^{mp+1}; q)_{p-1} - q^{mp(p-1)/2} (q; q)_{p-1}``."""
    return sub(q_shifted_factorial(m * p + 1, p - 1),
               shift(q_shifted_factorial(1, p - 1), m * p * (p - 1) // 2))


def build_andrews_prod_q(p: int, m: int, *, degree_cap: Optional[int] = DEFAULT_DEGREE_CAP) -> CongruenceClaim:
    """Quotient form.  ``InexactDivision`` propagates: it means the quotient is not a polynomial."""
    _require_odd_m(p, m)
    rhs_const = andrews_prod_scalar(p).require_integer("(p^2-1)p/24")
    _cap((p - 1) * (m * p + 1) + (p - 1) * (p - 2) // 2, degree_cap)
    num = andrews_prod_numerator(p, m)
    den = mul(one_minus_qpow((m + 1) * p), one_minus_qpow(m * p))
    quot = exact_div(num, den)
    return CongruenceClaim(ClaimId.ANDREWS_PROD_Q, {"p": p, "m": m}, quot, IntPoly.constant(rhs_const),
                           modulus(p, 1), EQUATION_TAGS[ClaimId.ANDREWS_PROD_Q])


def build_theorem2(p: int, m: int, *, degree_cap: Optional[int] = DEFAULT_DEGREE_CAP,
                   allow_p3: bool = False) -> CongruenceClaim:
    """Product form modulo ``[p]_q**3``.  ``allow_p3`` admits ``p = 3`` experimentally."""
    if allow_p3 and p == 3:
        _require_odd_m(p, m)
    else:
        _require_p_ge5(p, m)
    t = theorem2_scalar(p, m).require_integer("m(m+1)(p^2-1)p/24")
    _cap((p - 1) * (m * p + 1) + (p - 1) * (p - 2) // 2, degree_cap)
    lhs = andrews_prod_numerator(p, m)
    rhs = scale(_cyclotomic_square(p), t)
    return CongruenceClaim(ClaimId.THEOREM2, {"p": p, "m": m}, lhs, rhs, modulus(p, 3),
                           EQUATION_TAGS[ClaimId.THEOREM2])


# -- diagnostics --------------------------------------------------------------

def fit_square_coefficient(lhs: IntPoly, main: IntPoly, p: int) -> Optional[RationalScalar]:
    """Solve ``lhs == main - c*(1-q)**2*[p]_q**2 (mod [p]_q**3)`` for a rational constant ``c``.

    Returns ``None`` when no constant works (``lhs - main`` is not even
    divisible by ``[p]_q**2``, or the quotient is not a scalar multiple of
    ``(1-q)**2`` modulo ``[p]_q``).
    """
    r = reduce(sub(lhs, main), modulus(p, 3))
    if r.is_zero():
        return RationalScalar(0)
    try:
        s = exact_div(r, modulus(p, 2).poly)
    except InexactDivision:
        return None
    m1 = modulus(p, 1)
    s = reduce(s, m1)
    t = reduce(power(one_minus_qpow(1), 2), m1)
    j = next(j for j, x in enumerate(t.coeffs) if x)
    c = RationalScalar(-s[j], t[j])
    # c must reproduce every coefficient, not just the pivot
    if any(RationalScalar(-s[i]) != c * t[i] for i in range(max(len(s), len(t)))):
        return None
    return c


def theorem1_fitted_coefficient(p: int, m: int) -> Optional[RationalScalar]:
    """The constant that actually makes the ``THEOREM1`` congruence hold at ``(p, m)``."""
    _require_p_ge5(p, m)
    lhs = q_binomial((m + 1) * p - 1, p - 1)
    return fit_square_coefficient(lhs, IntPoly.monomial(m * p * (p - 1) // 2), p)


# -- checking -----------------------------------------------------------------

def check(claim: CongruenceClaim, t0: Optional[float] = None) -> VerificationRecord:
    if t0 is None:
        t0 = time.perf_counter()
    residual = reduce(sub(claim.lhs, claim.rhs), claim.modulus)
    holds = residual.is_zero()
    rec = VerificationRecord(
        claim_id=claim.claim_id,
        params=dict(claim.params),
        holds=holds,
        lhs_degree=claim.lhs.degree or 0,
        max_coeff_bits=claim.lhs.max_coeff_bits(),
        residual=None if holds else residual,
        wall_time=time.perf_counter() - t0,
        control=claim.control,
    )
    if not holds and claim.claim_id is ClaimId.THEOREM1 and claim.control is None:
        E = claim.params["m"] * claim.params["p"] * (claim.params["p"] - 1) // 2
        fitted = fit_square_coefficient(claim.lhs, IntPoly.monomial(E), claim.params["p"])
        rec.detail["coefficient_used"] = theorem1_coefficient(claim.params["p"], claim.params["m"])
        rec.detail["fitted_coefficient"] = fitted
        rec.wall_time = time.perf_counter() - t0
    return rec


def _timed(builder, *args, **kw) -> VerificationRecord:
    t0 = time.perf_counter()
    return check(builder(*args, **kw), t0)


def andrews_q(p: int, m: int, **kw) -> VerificationRecord:
    return _timed(build_andrews_q, p, m, **kw)


def theorem1(p: int, m: int, **kw) -> VerificationRecord:
    return _timed(build_theorem1, p, m, **kw)


def lemma1(p: int, m: int, **kw) -> VerificationRecord:
    return _timed(build_lemma1, p, m, **kw)


def lemma2(p: int, i: int, s: int, **kw) -> VerificationRecord:
    return _timed(build_lemma2, p, i, s, **kw)


def andrews_prod_q(p: int, m: int, **kw) -> VerificationRecord:
    return _timed(build_andrews_prod_q, p, m, **kw)


def theorem2(p: int, m: int, **kw) -> VerificationRecord:
    return _timed(build_theorem2, p, m, **kw)


# -- negative controls --------------------------------------------------------

def with_modulus_power(claim: CongruenceClaim, k: int) -> CongruenceClaim:
    """Same sides, read modulo ``[p]_q**k``."""
    return CongruenceClaim(claim.claim_id, claim.params, claim.lhs, claim.rhs,
                           modulus(claim.modulus.p, k), claim.paper_eq, f"modulus_k{k}")


def with_rhs_plus_one(claim: CongruenceClaim) -> CongruenceClaim:
    return CongruenceClaim(claim.claim_id, claim.params, claim.lhs, claim.rhs + 1,
                           claim.modulus, claim.paper_eq, "rhs_plus_one")


# -- q = 1 ----------------------------------------------------------------------

def specialize_q1(claim: CongruenceClaim) -> VerificationRecord:
    """Recover the classical congruence from a verified q-congruence.

    Writes ``lhs - rhs = M * h`` exactly and evaluates at ``q = 1``, where
    ``M(1) = p**k``.  Raises ``InexactDivision`` if the claim does not hold.
    """
    t0 = time.perf_counter()
    diff = sub(claim.lhs, claim.rhs)
    cofactor = exact_div(diff, claim.modulus.poly)
    lhs1 = eval_int(claim.lhs, 1)
    rhs1 = eval_int(claim.rhs, 1)
    h1 = eval_int(cofactor, 1)
    mod1 = eval_int(claim.modulus.poly, 1)
    pk = claim.modulus.p ** claim.modulus.k
    holds = mod1 == pk and lhs1 - rhs1 == mod1 * h1
    return VerificationRecord(
        claim_id=claim.claim_id,
        params=dict(claim.params),
        holds=holds,
        lhs_degree=claim.lhs.degree or 0,
        max_coeff_bits=claim.lhs.max_coeff_bits(),
        wall_time=time.perf_counter() - t0,
        detail={"lhs_at_1": lhs1, "rhs_at_1": rhs1, "cofactor_at_1": h1, "modulus_at_1": mod1},
    )


__all__ = [
    "ClaimId", "CongruenceClaim", "VerificationRecord", "DEFAULT_DEGREE_CAP",
    "glaisher_binom", "glaisher_prod", "andrews_q", "theorem1", "lemma1", "lemma2",
    "andrews_prod_q", "theorem2", "build_andrews_q", "build_theorem1", "build_lemma1",
    "build_lemma2", "build_andrews_prod_q", "build_theorem2", "check", "specialize_q1",
    "with_modulus_power", "with_rhs_plus_one", "theorem1_coefficient", "lemma1_scalar",
    "andrews_prod_scalar", "theorem2_scalar", "lemma2_rhs", "andrews_prod_numerator",
    "fit_square_coefficient", "theorem1_fitted_coefficient",
]
