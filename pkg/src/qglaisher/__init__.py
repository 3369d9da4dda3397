"""Exact q-analogue polynomials and verification of Glaisher-type q-congruences."""

__version__ = "0.1.0"

from .bigpoly import IntPoly, RationalScalar  # noqa: E402
from .congruence import QModulus, congruent, modulus, reduce, reduce_oracle  # noqa: E402
from .qcore import (  # noqa: E402
    q_binomial,
    q_binomial_base,
    q_binomial_pascal,
    q_factorial,
    q_number,
    q_shifted_factorial,
)

__all__ = [
    "IntPoly", "RationalScalar", "QModulus", "congruent", "modulus", "reduce", "reduce_oracle",
    "q_binomial", "q_binomial_base", "q_binomial_pascal", "q_factorial", "q_number",
    "q_shifted_factorial", "__version__",
]
