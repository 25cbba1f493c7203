"""Exact rational scalar type.

gmpy2's ``mpq`` is used when available; it compares and hashes equal to
:class:`fractions.Fraction`, so both may appear as coefficients.
"""
from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as Q, mpz
except ImportError:  # pragma: no cover
    Q = Fraction
    mpz = int

RATIONAL_TYPES = (int, Fraction, type(Q(0)), type(mpz(0)))


def is_rational_scalar(c) -> bool:
    return isinstance(c, RATIONAL_TYPES)


def to_q(c):
    """Coerce ints and fractions to the rational type; other values are left alone."""
    if isinstance(c, RATIONAL_TYPES):
        return Q(c)
    return c


def rational_root(c, n: int):
    """An ``n``-th root of the rational ``c`` inside the rationals, or ``None``.

    For even ``n`` the positive root is returned.
    """
    from sympy import integer_nthroot

    c = Q(c)
    if n <= 0:
        raise ValueError("root index must be positive")
    sign = 1
    if c < 0:
        if n % 2 == 0:
            return None
        sign, c = -1, -c
    num, ok1 = integer_nthroot(int(c.numerator), n)
    den, ok2 = integer_nthroot(int(c.denominator), n)
    if not (ok1 and ok2):
        return None
    return Q(sign * num, den)
