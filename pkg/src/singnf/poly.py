"""Sparse exact bivariate polynomials.

A polynomial is a map from exponent pairs ``(ex, ey)`` to nonzero coefficients.
Coefficients are exact rationals (see :mod:`singnf.rational`); elements of a
:class:`singnf.numberfield.NumberField` are accepted too, since every routine
only uses field operations.
"""
from __future__ import annotations

import re
from typing import Callable, Iterable, Iterator, Mapping, Optional, Tuple

from .rational import Q, RATIONAL_TYPES

Monomial = Tuple[int, int]
LaurentMonomial = Tuple[int, int]
Keep = Optional[Callable[[Monomial], bool]]

__all__ = [
    "Monomial", "LaurentMonomial", "Poly", "ParseError", "parse", "serialize",
    "partial", "laurent_restrict", "saturate", "add", "sub", "mul", "scale",
    "substitute", "X", "Y", "ONE", "ZERO", "format_coeff", "format_monomial",
    "grlex_key",
]


def _coerce(c):
    if isinstance(c, RATIONAL_TYPES):
        return Q(c)
    return c


def grlex_key(m: Monomial) -> tuple[int, int]:
    """Sort key for graded-lex *descending* order (use as ``sorted(key=...)``)."""
    return (-(m[0] + m[1]), -m[0])


class Poly:
    """Immutable sparse polynomial in ``x`` and ``y``."""

    __slots__ = ("_t", "_h")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        t: dict[Monomial, object] = {}
        if terms:
            for m, c in terms.items():
                ex, ey = int(m[0]), int(m[1])
                if ex < 0 or ey < 0:
                    raise ValueError(f"negative exponent in {m}")
                c = _coerce(c)
                if c:
                    k = (ex, ey)
                    s = t.get(k)
                    if s is None:
                        t[k] = c
                    else:
                        s = s + c
                        if s:
                            t[k] = s
                        else:
                            del t[k]
        self._t = t
        self._h = None

    @classmethod
    def _raw(cls, t: dict) -> "Poly":
        p = cls.__new__(cls)
        p._t = t
        p._h = None
        return p

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> "Poly":
        c = _coerce(c)
        return cls._raw({(m[0], m[1]): c} if c else {})

    @classmethod
    def const(cls, c) -> "Poly":
        return cls.monomial((0, 0), c)

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, object]:
        return self._t

    def items(self):
        return self._t.items()

    def monomials(self) -> list[Monomial]:
        return sorted(self._t, key=grlex_key)

    def coeff(self, m: Monomial):
        return self._t.get((m[0], m[1]), Q(0))

    def __len__(self) -> int:
        return len(self._t)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self._t)

    def __contains__(self, m) -> bool:
        return m in self._t

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((a + b for a, b in self._t), default=-1)

    def order(self) -> Optional[int]:
        """Lowest total degree of a term, ``None`` for zero."""
        return min((a + b for a, b in self._t), default=None)

    def constant(self):
        return self._t.get((0, 0), Q(0))

    # -- comparison -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._t == other._t
        if isinstance(other, RATIONAL_TYPES):
            return self._t == Poly.const(other)._t
        return NotImplemented

    def __hash__(self) -> int:
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _lift(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(other)

    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        if len(other._t) > len(self._t):
            a, b = other._t, self._t
        else:
            a, b = self._t, other._t
        t = dict(a)
        for m, c in b.items():
            s = t.get(m)
            if s is None:
                t[m] = c
            else:
                s = s + c
                if s:
                    t[m] = s
                else:
                    del t[m]
        return Poly._raw(t)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self._t.items()})

    def __sub__(self, other) -> "Poly":
        other = self._lift(other)
        t = dict(self._t)
        for m, c in other._t.items():
            s = t.get(m)
            if s is None:
                t[m] = -c
            else:
                s = s - c
                if s:
                    t[m] = s
                else:
                    del t[m]
        return Poly._raw(t)

    def __rsub__(self, other) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            return self.mul(other)
        return self.scale(other)

    def __rmul__(self, other) -> "Poly":
        return self.scale(other)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        c = _coerce(c)
        if not c:
            return ZERO
        if c == 1:
            return self
        return Poly._raw({m: v * c for m, v in self._t.items()})

    def mul(self, other: "Poly", maxdeg: Optional[int] = None, keep: Keep = None) -> "Poly":
        """Product, optionally dropping monomials of total degree > ``maxdeg``
        or monomials rejected by ``keep``."""
        a, b = self._t, other._t
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((mb, cb),) = b.items()
            t = {}
            bx, by = mb
            for (ax, ay), ca in a.items():
                m = (ax + bx, ay + by)
                if maxdeg is not None and m[0] + m[1] > maxdeg:
                    continue
                if keep is not None and not keep(m):
                    continue
                t[m] = ca * cb
            return Poly._raw(t)
        t: dict = {}
        bl = sorted(b.items(), key=lambda it: it[0][0] + it[0][1])
        for (ax, ay), ca in a.items():
            da = ax + ay
            for (bx, by), cb in bl:
                if maxdeg is not None and da + bx + by > maxdeg:
                    break
                m = (ax + bx, ay + by)
                if keep is not None and not keep(m):
                    continue
                s = t.get(m)
                if s is None:
                    t[m] = ca * cb
                else:
                    t[m] = s + ca * cb
        return Poly._raw({m: c for m, c in t.items() if c})

    def shift(self, m: Monomial, c=1) -> "Poly":
        """Multiply by the term ``c * x^m[0] * y^m[1]``."""
        c = _coerce(c)
        if not c:
            return ZERO
        sx, sy = m
        if c == 1:
            return Poly._raw({(a + sx, b + sy): v for (a, b), v in self._t.items()})
        return Poly._raw({(a + sx, b + sy): v * c for (a, b), v in self._t.items()})

    def filter(self, pred: Callable[[Monomial], bool]) -> "Poly":
        return Poly._raw({m: c for m, c in self._t.items() if pred(m)})

    def jet(self, k: int) -> "Poly":
        """Terms of total degree at most ``k``."""
        return self.filter(lambda m: m[0] + m[1] <= k)

    def diff(self, var: str) -> "Poly":
        if var == "x":
            return Poly._raw({(a - 1, b): c * a for (a, b), c in self._t.items() if a})
        if var == "y":
            return Poly._raw({(a, b - 1): c * b for (a, b), c in self._t.items() if b})
        raise ValueError(f"unknown variable {var!r}")

    def substitute(self, sx: "Poly", sy: "Poly", maxdeg: Optional[int] = None,
                   keep: Keep = None) -> "Poly":
        """``f(sx, sy)``, expanded.

        With ``maxdeg`` or ``keep`` the result is truncated; truncation is applied
        to every intermediate product, which is exact whenever the discarded
        monomials form an ideal (true for degree bounds and weight bounds).
        """
        if not self._t:
            return ZERO
        rows: dict[int, dict[int, object]] = {}
        for (a, b), c in self._t.items():
            rows.setdefault(a, {})[b] = c
        ymax = max(b for _, b in self._t)
        ypow = [ONE]
        for _ in range(ymax):
            ypow.append(ypow[-1].mul(sy, maxdeg, keep))

        def row_value(r: dict[int, object]) -> Poly:
            acc: dict = {}
            for b, c in r.items():
                for m, v in ypow[b]._t.items():
                    s = acc.get(m)
                    acc[m] = v * c if s is None else s + v * c
            return Poly._raw({m: v for m, v in acc.items() if v})

        # Horner in x over the rows, highest exponent first.
        exps = sorted(rows, reverse=True)
        sxpow: dict[int, Poly] = {}

        def sx_power(n: int) -> Poly:
            if n not in sxpow:
                p = ONE
                for _ in range(n):
                    p = p.mul(sx, maxdeg, keep)
                sxpow[n] = p
            return sxpow[n]

        acc = row_value(rows[exps[0]])
        for prev, cur in zip(exps, exps[1:]):
            acc = acc.mul(sx_power(prev - cur), maxdeg, keep) + row_value(rows[cur])
        acc = acc.mul(sx_power(exps[-1]), maxdeg, keep)
        if maxdeg is not None:
            acc = acc.jet(maxdeg)
        if keep is not None:
            acc = acc.filter(keep)
        return acc

    def shift_near_identity(self, gx: "Poly", gy: "Poly", maxdeg: int) -> "Poly":
        """``f(x + gx, y + gy)`` up to degree ``maxdeg`` by Taylor expansion.

        Requires ``gx(0) = gy(0) = 0``; cheap when both have high order, since
        only products ``gx^i gy^j`` of order at most ``maxdeg`` contribute.
        """
        if gx.constant() or gy.constant():
            raise ValueError("shift_near_identity needs maps through the origin")
        ox = gx.order() if gx else None
        oy = gy.order() if gy else None
        out: dict = {}

        def add(p: "Poly") -> None:
            for m, c in p._t.items():
                s = out.get(m)
                if s is None:
                    out[m] = c
                else:
                    s = s + c
                    if s:
                        out[m] = s
                    else:
                        del out[m]

        dx = self.jet(maxdeg)
        gi = ONE
        i = 0
        while dx and gi and (i == 0 or dx.order() + gi.order() <= maxdeg):
            dxy = dx
            prod = gi
            j = 0
            while dxy and prod and dxy.order() + prod.order() <= maxdeg:
                add(dxy.mul(prod, maxdeg))
                j += 1
                if oy is None:
                    break
                dxy = dxy.diff("y").scale(Q(1, j))
                prod = prod.mul(gy, maxdeg - (dxy.order() or 0) if dxy else maxdeg)
            i += 1
            if ox is None:
                break
            dx = dx.diff("x").scale(Q(1, i))
            gi = gi.mul(gx, maxdeg)
        return Poly._raw(out)

    # -- text ---------------------------------------------------------------
    def __str__(self) -> str:
        return serialize(self)

    def __repr__(self) -> str:
        return f"Poly({serialize(self)!r})"


ZERO = Poly._raw({})
ONE = Poly._raw({(0, 0): Q(1)})
X = Poly._raw({(1, 0): Q(1)})
Y = Poly._raw({(0, 1): Q(1)})


# -- serialization --------------------------------------------------------

def format_coeff(c) -> str:
    if isinstance(c, RATIONAL_TYPES):
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_monomial(m: Monomial) -> str:
    parts = []
    for name, e in (("x", m[0]), ("y", m[1])):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def _format_term(m: Monomial, c) -> str:
    if m == (0, 0):
        return format_coeff(c)
    mon = format_monomial(m)
    if c == 1:
        return mon
    if c == -1:
        return "-" + mon
    return f"{format_coeff(c)}*{mon}"


def serialize(f: Poly) -> str:
    """Canonical text form: graded-lex descending, coefficients ``n`` or ``n/d``."""
    if not f._t:
        return "0"
    out = []
    for m in f.monomials():
        s = _format_term(m, f._t[m])
        if out and not s.startswith("-"):
            out.append("+")
        out.append(s)
    return "".join(out)


# -- parsing --------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            break
        if mt.group(1) is not None:
            toks.append(("int", mt.group(1), mt.start(1)))
        elif mt.group(2) is not None:
            name = mt.group(2)
            if name not in ("x", "y"):
                raise ParseError(f"unknown variable {name!r}", mt.start(2))
            toks.append(("var", name, mt.start(2)))
        elif mt.group(3) is not None:
            ch = mt.group(3)
            if ch not in "+-*^/()":
                raise ParseError(f"unexpected character {ch!r}", mt.start(3))
            toks.append(("op", ch, mt.start(3)))
        pos = mt.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, value: str | None = None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", tok[2])
        return tok

    def expr(self) -> Poly:
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        acc = self.term().scale(sign)
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                t = self.term()
                acc = acc + t if tok[1] == "+" else acc - t
            else:
                return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Poly:
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            e = self.expect("int")
            base = base ** int(e[1])
        return base

    def atom(self) -> Poly:
        tok = self.take()
        if tok[0] == "int":
            num = int(tok[1])
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                den_tok = self.expect("int")
                den = int(den_tok[1])
                if den == 0:
                    raise ParseError("zero denominator", den_tok[2])
                return Poly.const(Q(num, den))
            return Poly.const(num)
        if tok[0] == "var":
            return X if tok[1] == "x" else Y
        if tok == ("op", "(", tok[2]):
            inner = self.expr()
            self.expect("op", ")")
            return inner
        got = tok[1] or "end of input"
        raise ParseError(f"unexpected {got!r}", tok[2])


def parse(text: str) -> Poly:
    """Parse ``text`` over the grammar: ``x``, ``y``, ``+ - * ^``, parentheses,
    integer and ``p/q`` literals. Multiplication must be explicit."""
    p = _Parser(text)
    if p.peek()[0] == "end":
        raise ParseError("empty input", 0)
    result = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected {tok[1]!r}", tok[2])
    return result


# -- named operators ------------------------------------------------------

def partial(f: Poly, var: str) -> Poly:
    return f.diff(var)


def laurent_restrict(f: Poly, m: LaurentMonomial) -> Poly:
    """Terms ``t`` of ``f`` such that ``m * t`` has no negative exponent."""
    mx, my = m
    return f.filter(lambda e: e[0] + mx >= 0 and e[1] + my >= 0)


def saturate(f: Poly) -> tuple[Poly, Monomial]:
    """Split off the largest monomial factor: ``f = x^a y^b * g``."""
    if not f:
        raise ValueError("cannot saturate the zero polynomial")
    a = min(m[0] for m in f.terms)
    b = min(m[1] for m in f.terms)
    return f.shift((-a, -b)), (a, b)


def add(f: Poly, g: Poly) -> Poly:
    return f + g


def sub(f: Poly, g: Poly) -> Poly:
    return f - g


def mul(f: Poly, g: Poly) -> Poly:
    return f * g


def scale(f: Poly, c) -> Poly:
    return f.scale(c)


def substitute(f: Poly, sx: Poly, sy: Poly) -> Poly:
    return f.substitute(sx, sy)


def from_terms(items: Iterable[tuple[Monomial, object]]) -> Poly:
    acc: dict = {}
    for m, c in items:
        acc[m] = acc.get(m, 0) + c
    return Poly(acc)
