"""Univariate polynomial helpers and simple algebraic number fields.

Univariate polynomials are coefficient lists, lowest degree first, over any
field whose elements support ``+ - * /`` and truthiness.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .rational import Q, RATIONAL_TYPES
from .poly import format_coeff

UPoly = list


def utrim(p: Sequence) -> list:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def udeg(p: Sequence) -> int:
    return len(utrim(p)) - 1


def uadd(p: Sequence, q: Sequence) -> list:
    n = max(len(p), len(q))
    zero = Q(0)
    return utrim([(p[i] if i < len(p) else zero) + (q[i] if i < len(q) else zero) for i in range(n)])


def uneg(p: Sequence) -> list:
    return [-c for c in p]


def usub(p: Sequence, q: Sequence) -> list:
    return uadd(p, uneg(q))


def umul(p: Sequence, q: Sequence) -> list:
    p, q = utrim(p), utrim(q)
    if not p or not q:
        return []
    out = [Q(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return utrim(out)


def udivmod(p: Sequence, q: Sequence) -> tuple[list, list]:
    q = utrim(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    r = utrim(p)
    if len(r) < len(q):
        return [], r
    quo = [Q(0)] * (len(r) - len(q) + 1)
    lead = q[-1]
    while r and len(r) >= len(q):
        k = len(r) - len(q)
        c = r[-1] / lead
        quo[k] = c
        for i, b in enumerate(q):
            r[i + k] = r[i + k] - c * b
        r = utrim(r)
    return utrim(quo), r


def umonic(p: Sequence) -> list:
    p = utrim(p)
    if not p:
        return []
    lead = p[-1]
    return [c / lead for c in p]


def ugcd(p: Sequence, q: Sequence) -> list:
    """Monic greatest common divisor."""
    a, b = utrim(p), utrim(q)
    while b:
        _, r = udivmod(a, b)
        a, b = b, r
    return umonic(a)


def uderiv(p: Sequence) -> list:
    return utrim([c * i for i, c in enumerate(p)][1:])


def ueval(p: Sequence, x):
    acc = Q(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def is_squarefree(p: Sequence) -> bool:
    p = utrim(p)
    if len(p) <= 2:
        return True
    return udeg(ugcd(p, uderiv(p))) == 0


def rational_roots(p: Sequence) -> list:
    """Distinct rational roots of a polynomial with rational coefficients."""
    p = utrim([Q(c) for c in p])
    if not p:
        raise ValueError("zero polynomial has every root")
    roots = []
    while p and p[0] == 0:
        p = p[1:]
        if Q(0) not in roots:
            roots.append(Q(0))
    if len(p) <= 1:
        return roots
    import math
    den = 1
    for c in p:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    ints = [c // g for c in ints]
    a0, an = abs(ints[0]), abs(ints[-1])
    for num in _divisors(a0):
        for dd in _divisors(an):
            for s in (1, -1):
                r = Q(s * num, dd)
                if r not in roots and ueval(ints, r) == 0:
                    roots.append(r)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


# -- number fields --------------------------------------------------------

@dataclass(frozen=True)
class NumberField:
    """``Q[a]/(modulus)`` for a monic irreducible ``modulus`` over the rationals."""

    modulus: tuple
    name: str = "a"

    def __post_init__(self):
        mod = tuple(Q(c) for c in umonic(self.modulus))
        object.__setattr__(self, "modulus", mod)
        if len(mod) < 2:
            raise ValueError("modulus must have positive degree")

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def gen(self) -> "NFElement":
        if self.degree == 1:
            return NFElement(self, (-self.modulus[0],))
        return NFElement(self, (Q(0), Q(1)))

    def __call__(self, value) -> "NFElement":
        if isinstance(value, NFElement):
            return value
        return NFElement(self, (Q(value),))

    def modulus_str(self) -> str:
        terms = []
        for i in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            mon = "" if i == 0 else (self.name if i == 1 else f"{self.name}^{i}")
            if not mon:
                s = format_coeff(c)
            elif c == 1:
                s = mon
            elif c == -1:
                s = "-" + mon
            else:
                s = f"{format_coeff(c)}*{mon}"
            if terms and not s.startswith("-"):
                terms.append("+")
            terms.append(s)
        return "".join(terms)


class NFElement:
    """Element of a :class:`NumberField`, stored as a reduced coefficient tuple."""

    __slots__ = ("field", "c")

    def __init__(self, field: NumberField, coeffs: Sequence):
        self.field = field
        c = utrim([Q(v) for v in coeffs])
        if len(c) > field.degree:
            _, c = udivmod(c, field.modulus)
        self.c = tuple(c)

    def _coerce(self, other):
        if isinstance(other, NFElement):
            if other.field != self.field:
                raise ValueError("mixing elements of different number fields")
            return other
        if isinstance(other, RATIONAL_TYPES):
            return NFElement(self.field, (Q(other),))
        return None

    def is_rational(self) -> bool:
        return len(self.c) <= 1

    def to_rational(self) -> object:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.c[0] if self.c else Q(0)

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.to_rational())
        return hash((self.field, self.c))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, uadd(self.c, o.c))

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, uneg(self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, usub(self.c, o.c))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, umul(self.c, o.c))

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        if not self.c:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid on (c, modulus)
        r0, r1 = list(self.field.modulus), list(self.c)
        s0, s1 = [], [Q(1)]
        while udeg(r1) > 0:
            q, r = udivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, usub(s0, umul(q, s1))
        if not r1:
            raise ZeroDivisionError("modulus is not irreducible")
        return NFElement(self.field, [v / r1[0] for v in s1])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = NFElement(self.field, (Q(1),))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __str__(self) -> str:
        if self.is_rational():
            return format_coeff(self.to_rational())
        name = self.field.name
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            v = self.c[i]
            if not v:
                continue
            mon = "" if i == 0 else (name if i == 1 else f"{name}^{i}")
            if not mon:
                s = format_coeff(v)
            elif v == 1:
                s = mon
            elif v == -1:
                s = "-" + mon
            else:
                s = f"{format_coeff(v)}*{mon}"
            if terms and not s.startswith("-"):
                terms.append("+")
            terms.append(s)
        return "(" + "".join(terms) + ")"

    __repr__ = __str__
