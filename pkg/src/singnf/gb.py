"""Groebner and standard bases in Q[x, y] with lift certificates.

Two kinds of orders are supported: a global weighted degree-reverse-lex order
and the local degree-reverse-lex order ``ds`` (where ``1 > x, y``).

Bases can be computed in a truncated ring ``R/T`` where ``T`` is a monomial
ideal cofinite in ``R``; such a quotient is finite-dimensional, so plain
reduction terminates under either kind of order. Without truncation a local
order uses Mora's tangent-cone normal form.

Every basis element carries a *tag*: a tuple of polynomials expressing it in
a fixed list of base polynomials, so ideal membership comes with an explicit
lift.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .rational import Q
from .newton import PiecewiseWeight
from .poly import Monomial, Poly

Tag = tuple  # tuple of Poly

INFINITE = math.inf


class NotInIdeal(Exception):
    """Raised when a polynomial has a nonzero normal form."""

    def __init__(self, remainder: Poly):
        super().__init__(f"not in ideal, remainder {remainder}")
        self.remainder = remainder


class InfiniteMilnorNumber(ValueError):
    pass


# -- orders ---------------------------------------------------------------

@dataclass(frozen=True)
class MonOrder:
    kind: str  # "global" or "local"
    weight: tuple[int, int] = (1, 1)

    @classmethod
    def weighted_degrevlex(cls, wx: int = 1, wy: int = 1) -> "MonOrder":
        return cls("global", (wx, wy))

    @classmethod
    def negdegrevlex(cls) -> "MonOrder":
        return cls("local", (1, 1))

    @property
    def is_local(self) -> bool:
        return self.kind == "local"

    def key(self, m: Monomial) -> tuple[int, int]:
        """Larger key means larger monomial."""
        a, b = m
        if self.kind == "global":
            return (self.weight[0] * a + self.weight[1] * b, -b)
        return (-(a + b), -b)

    def leading(self, f: Poly) -> Monomial:
        return max(f.terms, key=self.key)

    def to_json(self) -> dict:
        return {"kind": self.kind, "weight": list(self.weight)}


# -- truncation -----------------------------------------------------------

@dataclass(frozen=True)
class Truncation:
    """The monomial ideal ``{pw > pw_bound} + {deg > std_bound}``."""

    pw: Optional[PiecewiseWeight] = None
    pw_bound: Optional[int] = None
    std_bound: Optional[int] = None

    def __post_init__(self):
        if self.std_bound is None and (self.pw is None or self.pw_bound is None):
            raise ValueError("a truncation needs a degree bound or a piecewise bound")

    def __contains__(self, m: Monomial) -> bool:
        if self.std_bound is not None and m[0] + m[1] > self.std_bound:
            return True
        if self.pw is not None and self.pw_bound is not None:
            return self.pw.deg(m) > self.pw_bound
        return False

    def keep(self, m: Monomial) -> bool:
        return m not in self

    def _column_height(self, a: int) -> int:
        """Smallest ``b`` with ``x^a y^b`` in the ideal."""
        b = 0
        while (a, b) not in self:
            b += 1
        return b

    def generators(self) -> list[Monomial]:
        gens = []
        prev = None
        a = 0
        while True:
            h = self._column_height(a)
            if prev is None or h < prev:
                gens.append((a, h))
                prev = h
            if h == 0:
                return gens
            a += 1

    def staircase(self) -> frozenset:
        pts = []
        a = 0
        while True:
            h = self._column_height(a)
            if h == 0:
                break
            pts.extend((a, b) for b in range(h))
            a += 1
        return frozenset(pts)

    def apply(self, f: Poly) -> Poly:
        return f.filter(self.keep)


def truncation_gens(pw: PiecewiseWeight, d: int) -> list[Monomial]:
    """Divisibility-minimal monomials of piecewise degree exceeding ``d``."""
    return Truncation(pw=pw, pw_bound=d).generators()


# -- records ----------------------------------------------------------------

@dataclass
class LiftRecord:
    """``unit * dividend = sum(coeffs[i] * base[i]) + remainder`` modulo the
    truncation ideal (``unit`` is 1 except for Mora reductions)."""

    coeffs: list
    remainder: Poly
    dividend: Poly
    base: list
    unit: Poly = field(default_factory=lambda: Poly.const(1))
    truncation: Optional[Truncation] = None

    def check(self) -> bool:
        total = self.remainder
        for c, g in zip(self.coeffs, self.base):
            total = total + c * g
        diff = total - self.unit * self.dividend
        if self.truncation is not None:
            diff = self.truncation.apply(diff)
        return diff.is_zero()


@dataclass
class GBasis:
    gens: list
    order: MonOrder
    reduced: bool
    tags: list
    base: list
    truncation: Optional[Truncation] = None
    syzygies: list = field(default_factory=list)

    @property
    def leading_monomials(self) -> list[Monomial]:
        return [self.order.leading(g) for g in self.gens]

    def is_zero_dimensional(self) -> bool:
        if self.truncation is not None:
            return True
        lms = self.leading_monomials
        return any(m[1] == 0 for m in lms) and any(m[0] == 0 for m in lms)


# -- internal dict arithmetic -------------------------------------------------

class _Ctx:
    """Order, truncation and tag shape shared by a computation."""

    def __init__(self, order: MonOrder, truncation: Optional[Truncation], ntags: int):
        self.order = order
        self.truncation = truncation
        self.keepset = truncation.staircase() if truncation is not None else None
        self.ntags = ntags
        wx, wy = order.weight
        if order.kind == "global":
            self.negkey = lambda m: (-(wx * m[0] + wy * m[1]), m[1])
        else:
            self.negkey = lambda m: (m[0] + m[1], m[1])

    def lm(self, t: dict) -> Monomial:
        return min(t, key=self.negkey)

    def keep(self, m: Monomial) -> bool:
        return self.keepset is None or m in self.keepset

    def trunc(self, t: dict) -> dict:
        if self.keepset is None:
            return t
        ks = self.keepset
        return {m: c for m, c in t.items() if m in ks}

    def mul_term(self, t: dict, u: Monomial, c) -> dict:
        ux, uy = u
        ks = self.keepset
        out = {}
        for (a, b), v in t.items():
            m = (a + ux, b + uy)
            if ks is None or m in ks:
                out[m] = v * c
        return out

    def axpy(self, dst: dict, c, u: Monomial, src: dict) -> None:
        """``dst -= c * u * src`` in place (truncated)."""
        ux, uy = u
        ks = self.keepset
        for (a, b), v in src.items():
            m = (a + ux, b + uy)
            if ks is not None and m not in ks:
                continue
            s = dst.get(m)
            if s is None:
                dst[m] = -c * v
            else:
                s = s - c * v
                if s:
                    dst[m] = s
                else:
                    del dst[m]


class _Elem:
    __slots__ = ("t", "lm", "lc", "tag", "ecart", "unit")

    def __init__(self, t: dict, ctx: _Ctx, tag: list, unit: Optional[dict] = None):
        self.t = t
        self.lm = ctx.lm(t)
        self.lc = t[self.lm]
        self.tag = tag
        self.unit = unit
        if ctx.order.is_local:
            self.ecart = max(a + b for a, b in t) - (self.lm[0] + self.lm[1])
        else:
            self.ecart = 0


def _divides(a: Monomial, b: Monomial) -> bool:
    return a[0] <= b[0] and a[1] <= b[1]


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return (max(a[0], b[0]), max(a[1], b[1]))


def _quot(a: Monomial, b: Monomial) -> Monomial:
    return (a[0] - b[0], a[1] - b[1])


def _reduce_full(t: dict, tag: list, basis: list, ctx: _Ctx, full: bool = True):
    """Reduce ``t`` (with its tag) by ``basis``; plain division, so it is only
    used when the order is global or the ring is truncated."""
    heap = [(ctx.negkey(m), m) for m in t]
    heapq.heapify(heap)
    rem: dict = {}
    tag = [dict(x) for x in tag]
    negkey = ctx.negkey
    while heap:
        _, m = heapq.heappop(heap)
        c = t.get(m)
        if c is None:
            continue
        div = None
        for e in basis:
            if e.lm[0] <= m[0] and e.lm[1] <= m[1]:
                div = e
                break
        if div is None:
            rem[m] = t.pop(m)
            if not full:
                rem.update(t)
                t.clear()
                break
            continue
        coef = c / div.lc
        u = (m[0] - div.lm[0], m[1] - div.lm[1])
        ux, uy = u
        ks = ctx.keepset
        for (a, b), v in div.t.items():
            mm = (a + ux, b + uy)
            if ks is not None and mm not in ks:
                continue
            s = t.get(mm)
            if s is None:
                t[mm] = -coef * v
                heapq.heappush(heap, (negkey(mm), mm))
            else:
                s = s - coef * v
                if s:
                    t[mm] = s
                else:
                    del t[mm]
        t.pop(m, None)
        for i in range(ctx.ntags):
            if div.tag[i]:
                ctx.axpy(tag[i], coef, u, div.tag[i])
    return rem, tag


def _reduce_mora(t: dict, tag: list, unit: dict, basis: list, ctx: _Ctx):
    """Mora's weak normal form: top reduction with ecart selection."""
    tset = list(basis)
    tag = [dict(x) for x in tag]
    unit = dict(unit)
    while t:
        lm_t = ctx.lm(t)
        best = None
        for e in tset:
            if _divides(e.lm, lm_t) and (best is None or e.ecart < best.ecart):
                best = e
        if best is None:
            break
        ecart_t = max(a + b for a, b in t) - (lm_t[0] + lm_t[1])
        if best.ecart > ecart_t:
            tset.append(_Elem(dict(t), ctx, [dict(x) for x in tag], dict(unit)))
        coef = t[lm_t] / best.lc
        u = _quot(lm_t, best.lm)
        ctx.axpy(t, coef, u, best.t)
        t.pop(lm_t, None)
        for i in range(ctx.ntags):
            if best.tag[i]:
                ctx.axpy(tag[i], coef, u, best.tag[i])
        if best.unit:
            ctx.axpy(unit, coef, u, best.unit)
    return t, tag, unit


def _as_dict(p: Poly) -> dict:
    return dict(p.terms)


def _tag_vec(tag: Sequence, ctx: _Ctx) -> list:
    return [ctx.trunc(_as_dict(x)) for x in tag]


def _ctx_for(order: MonOrder, truncation: Optional[Truncation], ntags: int) -> _Ctx:
    return _Ctx(order, truncation, ntags)


def _complete(elems: list, ctx: _Ctx, extra_dividends: list, collect_syz: bool,
              use_criteria: bool = True):
    """Buchberger completion over the element list (mutated).

    ``extra_dividends`` holds ``(dict, tag)`` pairs that must also reduce to
    zero; it is used to feed the truncation pairs.
    """
    use_mora = ctx.order.is_local and ctx.truncation is None
    tgens = ctx.truncation.generators() if ctx.truncation is not None else []
    syz: list = []
    pairs: list = []
    counter = 0
    done: set = set()

    def reduce(t: dict, tag: list):
        if use_mora:
            r, tg, un = _reduce_mora(t, tag, {}, elems, ctx)
            return r, tg
        return _reduce_full(t, tag, elems, ctx, full=True)

    def push_pairs(j: int):
        nonlocal counter
        ej = elems[j]
        for i in range(j):
            ei = elems[i]
            if ei is None:
                continue
            l = _lcm(ei.lm, ej.lm)
            pairs.append(((l[0] + l[1], ctx.negkey(l), counter), i, j))
            counter += 1
        heapq.heapify(pairs)
        # truncation pairs: the smallest multiples of the leading term in T
        if tgens:
            us = []
            for t in tgens:
                u = (max(t[0] - ej.lm[0], 0), max(t[1] - ej.lm[1], 0))
                if not any(_divides(v, u) for v in us):
                    us = [v for v in us if not _divides(u, v)] + [u]
            for u in sorted(us):
                extra_dividends.append((ctx.mul_term(ej.t, u, 1),
                                        [ctx.mul_term(x, u, 1) for x in ej.tag]))

    def add(t: dict, tag: list):
        elems.append(_Elem(t, ctx, tag))
        push_pairs(len(elems) - 1)

    for j in range(len(elems)):
        push_pairs(j)

    def drain_extra():
        while extra_dividends:
            t, tag = extra_dividends.pop(0)
            if not t:
                continue
            r, tg = reduce(t, tag)
            if r:
                add(r, tg)
            elif collect_syz:
                syz.append(tg)

    drain_extra()
    while pairs:
        _, i, j = heapq.heappop(pairs)
        ei, ej = elems[i], elems[j]
        l = _lcm(ei.lm, ej.lm)
        done.add((i, j))
        if use_criteria:
            if ctx.truncation is not None and l not in ctx.keepset:
                continue
            if (ctx.order.kind == "global" or ctx.truncation is not None) \
                    and min(ei.lm[0], ej.lm[0]) == 0 and min(ei.lm[1], ej.lm[1]) == 0:
                continue
            if _chain_skip(i, j, l, elems, done):
                continue
        ui, uj = _quot(l, ei.lm), _quot(l, ej.lm)
        s = ctx.mul_term(ei.t, ui, 1 / ei.lc)
        ctx.axpy(s, 1 / ej.lc, uj, ej.t)
        s = {m: c for m, c in s.items() if c}
        stag = [ctx.mul_term(x, ui, 1 / ei.lc) for x in ei.tag]
        for k in range(ctx.ntags):
            ctx.axpy(stag[k], 1 / ej.lc, uj, ej.tag[k])
        if s:
            r, tg = reduce(s, stag)
        else:
            r, tg = {}, stag
        if r:
            add(r, tg)
        elif collect_syz:
            syz.append(tg)
        drain_extra()
    return syz


def _chain_skip(i: int, j: int, l: Monomial, elems: list, done: set) -> bool:
    for k, ek in enumerate(elems):
        if k == i or k == j:
            continue
        if _divides(ek.lm, l) and (min(i, k), max(i, k)) in done and (min(j, k), max(j, k)) in done:
            if _lcm(elems[i].lm, ek.lm) != l and _lcm(elems[j].lm, ek.lm) != l:
                return True
    return False


def _to_poly(t: dict) -> Poly:
    return Poly._raw({m: c for m, c in t.items() if c})


def groebner(gens: Sequence[Poly], order: MonOrder, truncation: Optional[Truncation] = None,
             *, tags: Optional[Sequence[Tag]] = None, base: Optional[Sequence[Poly]] = None,
             interreduce: bool = True, collect_syzygies: bool = False,
             use_criteria: bool = True, exact_local: bool = False) -> GBasis:
    """Groebner basis (standard basis for the local order) of ``gens``.

    ``tags[i]`` expresses ``gens[i]`` in ``base``; by default ``base = gens``
    with unit tags. In a truncated ring the identities hold modulo ``T``.

    For the local order without a truncation, a zero-dimensional ideal is
    completed in ``R/m^(N+1)`` with ``N`` doubled until ``m^N`` lies in the
    ideal (see :func:`local_basis`); the result carries that truncation.
    Exact Mora cofactors grow too fast to be usable there. Other ideals, or
    ``exact_local=True``, run Mora's normal form with exact cofactors, which
    terminates but can be very slow.
    """
    gens = list(gens)
    if order.is_local and truncation is None and not exact_local and zero_dimensional_at_origin(gens):
        return _corner_loop(
            gens, 4, lambda T: groebner(gens, order, T, tags=tags, base=base, interreduce=interreduce,
                                        collect_syzygies=collect_syzygies,
                                        use_criteria=use_criteria))[0]
    if base is None:
        base = gens
        tags = [tuple(Poly.const(1) if k == i else Poly() for k in range(len(gens)))
                for i in range(len(gens))]
    elif tags is None:
        raise ValueError("tags are required when a base is given")
    ctx = _ctx_for(order, truncation, len(base))
    elems: list = []
    extra: list = []
    for g, tg in zip(gens, tags):
        t = ctx.trunc(_as_dict(g))
        if t:
            extra.append((t, _tag_vec(tg, ctx)))
    syz = _complete(elems, ctx, extra, collect_syzygies, use_criteria)
    elems = _minimalize(elems)
    reduced = False
    if interreduce and not (order.is_local and truncation is None):
        elems = _tail_reduce(elems, ctx)
        reduced = True
    elems.sort(key=lambda e: order.key(e.lm))
    out_gens, out_tags = [], []
    for e in elems:
        inv = 1 / e.lc
        out_gens.append(_to_poly({m: c * inv for m, c in e.t.items()}))
        out_tags.append(tuple(_to_poly({m: c * inv for m, c in x.items()}) for x in e.tag))
    syzygies = [tuple(_to_poly(x) for x in s) for s in syz]
    return GBasis(out_gens, order, reduced, out_tags, list(base), truncation, syzygies)


def _minimalize(elems: list) -> list:
    keep = []
    for i, e in enumerate(elems):
        dominated = False
        for j, o in enumerate(elems):
            if i == j:
                continue
            if _divides(o.lm, e.lm) and (o.lm != e.lm or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(e)
    return keep


def _tail_reduce(elems: list, ctx: _Ctx) -> list:
    out = []
    for i, e in enumerate(elems):
        others = [o for j, o in enumerate(elems) if j != i]
        head = {e.lm: e.lc}
        tail = {m: c for m, c in e.t.items() if m != e.lm}
        r, tg = _reduce_full(tail, [dict(x) for x in e.tag], others, ctx)
        r.update(head)
        ne = _Elem(r, ctx, tg)
        out.append(ne)
    return out


def _basis_elems(G: GBasis, ctx: _Ctx) -> list:
    return [_Elem(_as_dict(g), ctx, _tag_vec(tg, ctx), {}) for g, tg in zip(G.gens, G.tags)]


def reduce(p: Poly, G: GBasis) -> LiftRecord:
    """Divide ``p`` by ``G``; coefficients refer to ``G.base``."""
    ctx = _ctx_for(G.order, G.truncation, len(G.base))
    elems = _basis_elems(G, ctx)
    t = ctx.trunc(_as_dict(p))
    zero_tag = [{} for _ in range(ctx.ntags)]
    if G.order.is_local and G.truncation is None:
        r, tg, unit = _reduce_mora(t, zero_tag, {(0, 0): Q(1)}, elems, ctx)
        unit_p = _to_poly(unit)
    else:
        r, tg = _reduce_full(t, zero_tag, elems, ctx)
        unit_p = Poly.const(1)
    coeffs = [-_to_poly(x) for x in tg]
    return LiftRecord(coeffs, _to_poly(r), p, list(G.base), unit_p, G.truncation)


def lift_in_ideal(q: Poly, gens: Sequence[Poly], order: MonOrder,
                  truncation: Optional[Truncation] = None, *,
                  tags: Optional[Sequence[Tag]] = None,
                  base: Optional[Sequence[Poly]] = None) -> LiftRecord:
    """Express ``q`` in terms of ``base`` (default ``gens``); raise
    :class:`NotInIdeal` when the normal form is nonzero."""
    G = groebner(gens, order, truncation, tags=tags, base=base)
    rec = reduce(q, G)
    if rec.remainder:
        raise NotInIdeal(rec.remainder)
    return rec


def is_groebner(G: GBasis) -> bool:
    """Re-check Buchberger's criterion without any pair criteria."""
    ctx = _ctx_for(G.order, G.truncation, 0)
    elems = [_Elem(_as_dict(g), ctx, []) for g in G.gens]
    use_mora = G.order.is_local and G.truncation is None

    def nf_zero(t: dict) -> bool:
        if not t:
            return True
        if use_mora:
            r, _, _ = _reduce_mora(t, [], {}, elems, ctx)
        else:
            r, _ = _reduce_full(t, [], elems, ctx)
        return not r

    for i, ei in enumerate(elems):
        for ej in elems[i + 1:]:
            l = _lcm(ei.lm, ej.lm)
            s = ctx.mul_term(ei.t, _quot(l, ei.lm), 1 / ei.lc)
            ctx.axpy(s, 1 / ej.lc, _quot(l, ej.lm), ej.t)
            if not nf_zero({m: c for m, c in s.items() if c}):
                return False
        if G.truncation is not None:
            for t in G.truncation.generators():
                u = (max(t[0] - ei.lm[0], 0), max(t[1] - ei.lm[1], 0))
                if not nf_zero(ctx.mul_term(ei.t, u, 1)):
                    return False
    return True


def syzygies(gens: Sequence[Poly], order: MonOrder) -> list:
    """Syzygies of ``gens`` found as zero reductions during completion (no pair
    criteria, so every S-pair contributes)."""
    G = groebner(gens, order, collect_syzygies=True, use_criteria=False, interreduce=False,
                 exact_local=True)
    return [s for s in G.syzygies if any(not c.is_zero() for c in s)]


def divide_exact(p: Poly, q: Poly) -> Poly:
    """``p / q`` when ``q`` divides ``p``; raises ``ValueError`` otherwise."""
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    order = MonOrder.weighted_degrevlex()
    lq = order.leading(q)
    cq = q.coeff(lq)
    rest = dict(p.terms)
    quo: dict = {}
    while rest:
        m = max(rest, key=order.key)
        if not _divides(lq, m):
            raise ValueError("not an exact division")
        u = _quot(m, lq)
        c = rest[m] / cq
        quo[u] = c
        for mq, v in q.items():
            mm = (mq[0] + u[0], mq[1] + u[1])
            s = rest.get(mm, 0) - c * v
            if s:
                rest[mm] = s
            else:
                rest.pop(mm, None)
    return _to_poly(quo)


# -- local algebra ------------------------------------------------------------

def share_factor_at_origin(p: Poly, q: Poly) -> bool:
    """Whether ``p`` and ``q`` have a common factor vanishing at the origin,
    i.e. whether ``<p, q>`` fails to be zero-dimensional locally."""
    import sympy

    x, y = sympy.symbols("x y")
    field = _coefficient_field(p, q)
    if field is None:
        g = sympy.gcd(_to_sympy(p, x, y), _to_sympy(q, x, y))
        g = sympy.Poly(g, x, y)
    else:
        a = sympy.Symbol(field.name)
        root = sympy.CRootOf(sympy.Poly(list(reversed(field.modulus)), a), 0)
        dom = sympy.QQ.algebraic_field(root)
        sp = sympy.Poly(_to_sympy(p, x, y, root), x, y, domain=dom)
        sq = sympy.Poly(_to_sympy(q, x, y, root), x, y, domain=dom)
        g = sympy.gcd(sp, sq)
    return g.total_degree() > 0 and g.eval({x: 0, y: 0}) == 0


def _coefficient_field(*polys: Poly):
    for p in polys:
        for c in p.terms.values():
            field = getattr(c, "field", None)
            if field is not None and not c.is_rational():
                return field
    return None


def _to_sympy_scalar(c, root=None):
    import sympy

    if hasattr(c, "field") and c.is_rational():
        c = c.to_rational()
    if hasattr(c, "field"):
        return sum((sympy.Rational(int(v.numerator), int(v.denominator)) * root ** i
                    for i, v in enumerate(c.c)), sympy.Integer(0))
    return sympy.Rational(int(c.numerator), int(c.denominator))


def _to_sympy(p: Poly, x, y, root=None):
    import sympy

    return sympy.Add(*[_to_sympy_scalar(c, root) * x**a * y**b for (a, b), c in p.items()])


def contains_degree(G: GBasis, n: int) -> bool:
    """Every monomial of degree ``n`` is a leading monomial of ``G``."""
    lms = G.leading_monomials
    return all(any(_divides(l, (a, n - a)) for l in lms) for a in range(n + 1))


def local_basis(gens: Sequence[Poly], start: int = 4) -> tuple[GBasis, int]:
    """Local standard basis of a zero-dimensional ideal, computed in
    ``R/m^(N+1)`` for growing ``N`` until all monomials of degree ``N`` are
    leading monomials. By Nakayama the ideal then contains ``m^N`` and the
    truncated basis describes the local algebra exactly."""
    gens = [g for g in gens if g]
    if not gens:
        raise InfiniteMilnorNumber("zero ideal")
    return _corner_loop(gens, start, lambda T: groebner(gens, MonOrder.negdegrevlex(), T))


def _corner_loop(gens: Sequence[Poly], start: int, compute) -> tuple[GBasis, int]:
    n = max(start, min(g.order() for g in gens if g) + 1)
    while True:
        G = compute(Truncation(std_bound=n))
        if contains_degree(G, n):
            return G, n
        n *= 2


def zero_dimensional_at_origin(gens: Sequence[Poly]) -> bool:
    """Whether ``<gens>`` has finite colength in the local ring: the gcd of
    the generators must not vanish at the origin. Number field coefficients
    are not examined and give ``False``."""
    import sympy

    gens = [g for g in gens if g]
    if not gens or _coefficient_field(*gens) is not None:
        return False
    x, y = sympy.symbols("x y")
    g = _to_sympy(gens[0], x, y)
    for p in gens[1:]:
        g = sympy.gcd(g, _to_sympy(p, x, y))
    return g.subs({x: 0, y: 0}) != 0


def jacobian_basis(f: Poly) -> GBasis:
    fx, fy = f.diff("x"), f.diff("y")
    if not fx or not fy or share_factor_at_origin(fx, fy):
        raise InfiniteMilnorNumber("the singularity is not isolated")
    return local_basis([fx, fy])[0]


def kbase(G: GBasis) -> list[Monomial]:
    """Monomials outside the leading ideal (graded, then x-exponent, ascending)."""
    lms = G.leading_monomials
    if G.truncation is None and not G.is_zero_dimensional():
        raise InfiniteMilnorNumber("the quotient is not finite-dimensional")
    if G.truncation is not None:
        cands = G.truncation.staircase()
    else:
        ax = min(m[0] for m in lms if m[1] == 0)
        ay = min(m[1] for m in lms if m[0] == 0)
        cands = [(a, b) for a in range(ax) for b in range(ay)]
    out = [m for m in cands if not any(_divides(l, m) for l in lms)]
    out.sort(key=lambda m: (m[0] + m[1], m[0]))
    return out


def milnor_number(f: Poly):
    """Dimension of the local algebra; ``INFINITE`` for non-isolated germs."""
    try:
        G = jacobian_basis(f)
    except InfiniteMilnorNumber:
        return INFINITE
    return len(kbase(G))


def determinacy_bound(f: Poly) -> int:
    mu = milnor_number(f)
    if mu == INFINITE:
        raise InfiniteMilnorNumber("non-isolated singularity")
    return int(mu) + 1


def sharp_determinacy(f: Poly) -> int:
    """Smallest ``k`` with ``m^(k+1)`` inside ``m^2 * J(f)``; ``f`` is then
    ``k``-determined."""
    fx, fy = f.diff("x"), f.diff("y")
    if not fx or not fy or share_factor_at_origin(fx, fy):
        raise InfiniteMilnorNumber("non-isolated singularity")
    gens = [g.shift(u) for g in (fx, fy) for u in ((2, 0), (1, 1), (0, 2))]
    G, _ = local_basis(gens)
    k = 0
    while not contains_degree(G, k):
        k += 1
    return k - 1
