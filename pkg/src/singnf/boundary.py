"""Removing boundary terms that are neither vertices nor basis monomials.

When a boundary is not normalized, lattice points that the regular basis does
not cover may carry nonzero coefficients. Shears ``x -> x + s*y^k`` and
``y -> y + t*x^k`` that keep every facet degree (filtration zero) act on the
boundary jet; the coefficients ``s, t`` killing the offending terms solve a
polynomial system, possibly only over an algebraic number field.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import sympy

from .newton import NewtonPolygon, is_nondegenerate, polygon, pw_jet
from .numberfield import NumberField, ugcd, udeg, uneg, umonic
from .poly import Monomial, Poly, X, Y
from .rational import Q


@dataclass(frozen=True)
class Shear:
    var: str  # the variable being moved
    power: int  # exponent of the other variable


def shears(poly: NewtonPolygon) -> list[Shear]:
    """Filtration-zero shears acting nontrivially on some facet."""
    out = []
    ratios_x = [Q(fc.weight.wx, fc.weight.wy) for fc in poly.facets]
    k = int(math.ceil(max(ratios_x)))
    if any(r == k for r in ratios_x):
        out.append(Shear("x", k))
    ratios_y = [Q(fc.weight.wy, fc.weight.wx) for fc in poly.facets]
    k = int(math.ceil(max(ratios_y)))
    if any(r == k for r in ratios_y):
        out.append(Shear("y", k))
    return out


def offending_terms(f: Poly, poly: NewtonPolygon, B: Sequence[Monomial]) -> list[Monomial]:
    """Boundary lattice points with a nonzero coefficient that are neither
    vertices nor members of ``B``."""
    verts, bset = set(poly.vertices), set(B)
    return [m for m in poly.boundary_points()
            if m not in verts and m not in bset and f.coeff(m)]


@dataclass
class BoundaryResult:
    f: Poly
    gx: Poly
    gy: Poly
    field: Optional[NumberField]
    values: dict  # unknown name -> value

    def to_json(self) -> dict:
        return {"field": None if self.field is None else
                {"generator": self.field.name, "minimal_polynomial": self.field.modulus_str()},
                "values": {k: str(v) for k, v in sorted(self.values.items())}}


def _sym_boundary(f: Poly, pw, sx, sy):
    x, y = sympy.symbols("x y")
    expr = sympy.Integer(0)
    for (a, b), c in pw_jet(f, pw, pw.d).items():
        expr += sympy.Rational(int(c.numerator), int(c.denominator)) * sx ** a * sy ** b
    return sympy.Poly(sympy.expand(expr), x, y)


def _equations(f: Poly, poly: NewtonPolygon, targets, active: Sequence[Shear]):
    x, y = sympy.symbols("x y")
    names = {"x": sympy.Symbol("s"), "y": sympy.Symbol("t")}
    sx, sy = x, y
    for sh in active:
        if sh.var == "x":
            sx = x + names["x"] * y ** sh.power
        else:
            sy = y + names["y"] * x ** sh.power
    P = _sym_boundary(f, poly.pw, sx, sy)
    eqs = [sympy.expand(P.coeff_monomial(x ** a * y ** b)) for a, b in targets]
    return [e for e in eqs if e != 0], [names[sh.var] for sh in active]


def _upoly(expr, var) -> list:
    """Rational coefficient list (lowest first) of a univariate sympy expression."""
    cs = sympy.Poly(expr, var).all_coeffs()[::-1]
    return [Q(int(c.p), int(c.q)) for c in cs]


def _horner(coeffs: Sequence, v):
    out = Q(0)
    for c in reversed(coeffs):
        out = out * v + c
    return out


def _candidates_one(eqs, var):
    g = None
    for e in eqs:
        p = _upoly(e, var)
        g = p if g is None else ugcd(g, p)
    if g is None or udeg(g) <= 0:
        return
    expr = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * var ** i for i, c in enumerate(g))
    _, factors = sympy.factor_list(expr, var)
    for fac, _ in sorted(factors, key=lambda fe: (sympy.degree(fe[0], var), str(fe[0]))):
        p = _upoly(fac, var)
        if len(p) == 2:
            yield None, {str(var): -p[0] / p[1]}
        else:
            K = NumberField(tuple(p), str(var))
            yield K, {str(var): K.gen()}


def _candidates_two(eqs, s, t):
    G = sympy.groebner(eqs, s, t, order="lex")
    if list(G.exprs) == [1]:
        return
    univ = [g for g in G.exprs if not g.has(s)]
    if not univ:
        return
    _, factors = sympy.factor_list(univ[0], t)
    for fac, _ in sorted(factors, key=lambda fe: (sympy.degree(fe[0], t), str(fe[0]))):
        p = _upoly(fac, t)
        K = None if len(p) == 2 else NumberField(tuple(p), "t")
        tv = -p[0] / p[1] if K is None else K.gen()
        # the remaining equations become univariate in s over the field of t
        g = None
        for e in G.exprs:
            if not e.has(s):
                continue
            coeffs = [_horner(_upoly(c, t), tv) for c in sympy.Poly(e, s).all_coeffs()[::-1]]
            g = coeffs if g is None else ugcd(g, coeffs)
        if g is None or udeg(g) != 1:
            continue
        g = umonic(g)
        yield K, {"s": uneg(g[:1])[0] if g[0] else Q(0), "t": tv}


def _apply(f: Poly, active: Sequence[Shear], values: dict, maxdeg: int) -> tuple[Poly, Poly, Poly]:
    gx, gy = Poly(), Poly()
    for sh in active:
        if sh.var == "x":
            gx = Poly.monomial((0, sh.power), values.get("s", 0))
        else:
            gy = Poly.monomial((sh.power, 0), values.get("t", 0))
    return f.substitute(X + gx, Y + gy, maxdeg), gx, gy


def _valid(f_new: Poly, poly: NewtonPolygon, targets, active, values) -> bool:
    if any(f_new.coeff(m) for m in targets):
        return False
    if any(not f_new.coeff(v) for v in poly.vertices):
        return False
    if polygon(f_new).vertices != poly.vertices:
        return False
    if len(active) == 2 and active[0].power == 1 and active[1].power == 1:
        if 1 - values["s"] * values["t"] == 0:
            return False
    return is_nondegenerate(f_new)


def normalize_boundary(f: Poly, B: Sequence[Monomial], maxdeg: int) -> Optional[BoundaryResult]:
    """Find a shear removing every offending boundary term of ``f``.

    Returns ``None`` when no shear of the allowed shape works. Systems with a
    one-dimensional solution set are cut down by fixing one unknown to zero.
    """
    poly = polygon(f)
    targets = offending_terms(f, poly, B)
    if not targets:
        return BoundaryResult(f, Poly(), Poly(), None, {})
    targets = [m for m in poly.boundary_points()
               if m not in set(poly.vertices) and m not in set(B)]
    active_all = shears(poly)
    tries = [active_all] + [[sh] for sh in active_all] if len(active_all) == 2 else [active_all]
    for active in tries:
        if not active:
            continue
        eqs, unknowns = _equations(f, poly, targets, active)
        if not eqs:
            continue
        if len(unknowns) == 1:
            cands = _candidates_one(eqs, unknowns[0])
        else:
            cands = _candidates_two(eqs, *unknowns)
        for K, values in cands:
            f_new, gx, gy = _apply(f, active, values, maxdeg)
            if _valid(f_new, poly, targets, active, values):
                return BoundaryResult(f_new, gx, gy, K, values)
    return None
