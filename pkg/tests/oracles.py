"""Brute-force reference computations, independent of the package internals.

Everything here works on plain dicts ``{(i, j): Fraction}`` or goes through
sympy, so agreement with the package is a genuine cross-check.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

import sympy

X, Y = sympy.symbols("x y")


def to_dict(f) -> dict:
    return {m: Fraction(int(c.numerator), int(c.denominator)) for m, c in f.items()}


def to_sympy(f):
    return sympy.Add(*[sympy.Rational(int(c.numerator), int(c.denominator)) * X**a * Y**b
                       for (a, b), c in f.items()])


def from_sympy(expr) -> dict:
    p = sympy.Poly(sympy.expand(expr), X, Y)
    return {m: Fraction(int(c.p), int(c.q)) for m, c in zip(p.monoms(), p.coeffs()) if c}


def _diff(f: dict, var: int) -> dict:
    out = {}
    for m, c in f.items():
        if m[var]:
            n = list(m)
            n[var] -= 1
            out[tuple(n)] = c * m[var]
    return out


def _rank(rows: list[dict]) -> int:
    """Rank of sparse rational rows by plain Gaussian elimination."""
    pivots: dict = {}
    r = 0
    for row in rows:
        row = {k: v for k, v in row.items() if v}
        while row:
            k = max(row)
            if k not in pivots:
                lead = row[k]
                pivots[k] = {kk: vv / lead for kk, vv in row.items()}
                r += 1
                break
            p = pivots[k]
            c = row[k]
            for kk, vv in p.items():
                row[kk] = row.get(kk, 0) - c * vv
                if not row[kk]:
                    del row[kk]
    return r


def quotient_dim(gens: list[dict], n: int) -> int:
    """``dim Q[x,y] / (gens + m^n)``: monomials of degree below ``n`` minus the
    rank of all monomial multiples of the generators, cut at degree ``n``."""
    rows = []
    for g in gens:
        if not g:
            continue
        o = min(a + b for a, b in g)
        for k in range(n - o):
            for a in range(k + 1):
                row = {(i + a, j + k - a): c for (i, j), c in g.items() if i + j + k < n}
                if row:
                    rows.append(row)
    return n * (n + 1) // 2 - _rank(rows)


def milnor_oracle(f, max_degree: int = 40):
    """Milnor number from ``dim Q/(J + m^n)`` for growing ``n``. Once two
    consecutive values agree, ``m^n`` lies in ``J + m^(n+1)`` and Nakayama gives
    the local dimension; ``inf`` if that does not happen up to ``max_degree``."""
    fd = to_dict(f)
    J = [_diff(fd, 0), _diff(fd, 1)]
    prev = None
    for n in range(1, max_degree + 1):
        cur = quotient_dim(J, n)
        if cur == prev:
            return cur
        prev = cur
    return math.inf


def hull_facets(points) -> set:
    """Compact facets of the Newton polygon by checking every pair of support
    points: the segment is a facet when its positive normal supports all points
    and no third point lies beyond its ends."""
    pts = sorted(set(points))
    out = set()
    for p, q in combinations(pts, 2):
        if p[0] == q[0] or p[1] == q[1]:
            continue
        a, b = (p, q) if p[0] > q[0] else (q, p)  # a has the larger x exponent
        if a[1] >= b[1]:
            continue
        wx, wy = b[1] - a[1], a[0] - b[0]
        g = math.gcd(wx, wy)
        wx, wy = wx // g, wy // g
        d = wx * a[0] + wy * a[1]
        if any(wx * r[0] + wy * r[1] < d for r in pts):
            continue
        on = [r for r in pts if wx * r[0] + wy * r[1] == d]
        if max(r[0] for r in on) == a[0] and min(r[0] for r in on) == b[0]:
            out.add((a, b, (wx, wy)))
    return out


def is_nondegenerate_oracle(f) -> bool:
    """Every saturated facet jet has no repeated irreducible factor over Q."""
    pts = list(f.terms)
    facets = hull_facets(pts)
    if not facets:
        return False
    for a, b, (wx, wy) in facets:
        d = wx * a[0] + wy * a[1]
        jet = {m: c for m, c in f.items() if wx * m[0] + wy * m[1] == d}
        expr = sympy.factor_list(to_sympy(jet), X, Y)[1]
        for fac, e in expr:
            if e > 1 and sympy.Poly(fac, X, Y).length() > 1:
                return False
    return True


def _mul(p: dict, q: dict, maxdeg: int) -> dict:
    out: dict = {}
    for (a, b), c in p.items():
        for (e, g), v in q.items():
            if a + b + e + g <= maxdeg:
                k = (a + e, b + g)
                out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


def parse_sympy(text: str) -> dict:
    return from_sympy(sympy.sympify(text.replace("^", "**"), locals={"x": X, "y": Y}))


def substitute_truncate(f: dict, sx: dict, sy: dict, maxdeg: int) -> dict:
    """``f(sx, sy)`` cut at total degree ``maxdeg``, by plain truncated
    products (exact, since the dropped monomials form an ideal)."""
    xs, ys = [{(0, 0): Fraction(1)}], [{(0, 0): Fraction(1)}]
    out: dict = {}
    for (a, b), c in f.items():
        while len(xs) <= a:
            xs.append(_mul(xs[-1], sx, maxdeg))
        while len(ys) <= b:
            ys.append(_mul(ys[-1], sy, maxdeg))
        for k, v in _mul(xs[a], ys[b], maxdeg).items():
            out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}
