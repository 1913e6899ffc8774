"""Exact rational scalars.

Coefficients are :class:`gmpy2.mpq` values. They behave like
:class:`fractions.Fraction` (always in lowest terms, positive denominator)
but arithmetic is an order of magnitude faster.
"""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq, mpz

ZERO = mpq(0)
ONE = mpq(1)


def scalar(value) -> mpq:
    """Coerce ints, Fractions, mpq and strings like ``"3/7"`` to ``mpq``."""
    if isinstance(value, type(ZERO)):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, type(mpz(0)))):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_scalar(text: str) -> mpq:
    """Parse ``"n"`` or ``"n/d"``; decimals are rejected to keep inputs exact."""
    s = text.strip()
    if not s or "." in s or "e" in s.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    if "/" in s:
        num, den = s.split("/", 1)
        d = int(den)
        if d == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return mpq(int(num), d)
    return mpq(int(s))


def format_scalar(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
