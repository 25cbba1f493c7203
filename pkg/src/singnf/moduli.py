"""Elimination of the terms above the Newton boundary that are not moduli monomials.

The outer loop removes, degree by degree, the terms above the boundary that are
not basis monomials by a first-order change of coordinates. The second-order
contributions of that substitution may land at or below the degree just
treated; the inner loop cancels them again with maps of increasing order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional, Sequence, Union

from .rational import Q, rational_root
from . import gb
from .errors import InternalLiftError
from .linalg import Echelon
from .newton import PiecewiseWeight, pw_jet
from .poly import Monomial, Poly, X, Y, format_coeff, format_monomial

if TYPE_CHECKING:
    from .regbasis import NormalFormFamily

ONE = Poly.const(1)


# -- log steps ----------------------------------------------------------------

@dataclass(frozen=True)
class RightEquivalence:
    """``x -> x + gx``, ``y -> y + gy``."""

    gx: Poly
    gy: Poly
    stage: str = "outer"  # outer, inner or boundary
    degree: Optional[int] = None  # piecewise degree being treated

    @property
    def order(self) -> Optional[int]:
        """Lowest standard degree among the nonzero components."""
        orders = [g.order() for g in (self.gx, self.gy) if g]
        return min(orders) if orders else None

    @property
    def filtration(self) -> Optional[int]:
        o = self.order
        return None if o is None else o - 1

    def is_identity(self) -> bool:
        return not self.gx and not self.gy

    def apply(self, f: Poly, maxdeg: Optional[int] = None) -> Poly:
        if maxdeg is not None and not self.gx.constant() and not self.gy.constant():
            return f.shift_near_identity(self.gx, self.gy, maxdeg)
        return f.substitute(X + self.gx, Y + self.gy, maxdeg)

    def to_json(self) -> dict:
        return {"type": "substitution", "stage": self.stage, "degree": self.degree,
                "x": str(X + self.gx), "y": str(Y + self.gy), "order": self.order}

    def describe(self) -> str:
        return f"{self.stage} substitution x -> {X + self.gx}, y -> {Y + self.gy}"


@dataclass(frozen=True)
class Scaling:
    """``x -> cx * x``, ``y -> cy * y``; a ``None`` factor is only known through
    ``constraints``."""

    cx: object
    cy: object
    constraints: tuple = ()

    @property
    def symbolic(self) -> bool:
        return self.cx is None or self.cy is None

    def apply(self, f: Poly, maxdeg: Optional[int] = None) -> Poly:
        if self.symbolic:
            raise ValueError("scaling factors are only known symbolically")
        out = {}
        for (a, b), c in f.items():
            if maxdeg is None or a + b <= maxdeg:
                out[(a, b)] = c * self.cx ** a * self.cy ** b
        return Poly(out)

    def to_json(self) -> dict:
        return {"type": "scaling",
                "x": None if self.cx is None else format_coeff(self.cx),
                "y": None if self.cy is None else format_coeff(self.cy),
                "constraints": list(self.constraints)}

    def describe(self) -> str:
        if self.symbolic:
            return "scaling x -> c1*x, y -> c3*y with " + ", ".join(self.constraints)
        return f"scaling x -> {format_coeff(self.cx)}*x, y -> {format_coeff(self.cy)}*y"


@dataclass(frozen=True)
class TermReset:
    """Replace the coefficient of a monomial above the determinacy degree."""

    monomial: Monomial
    old: object
    new: object

    def apply(self, f: Poly, maxdeg: Optional[int] = None) -> Poly:
        return f + Poly.monomial(self.monomial, self.new - self.old)

    def to_json(self) -> dict:
        return {"type": "determinacy_reset", "monomial": format_monomial(self.monomial),
                "old": format_coeff(self.old), "new": format_coeff(self.new)}

    def describe(self) -> str:
        return (f"reset coefficient of {format_monomial(self.monomial)} from "
                f"{format_coeff(self.old)} to {format_coeff(self.new)} (above determinacy)")


@dataclass(frozen=True)
class AxisCompletion:
    monomial: Monomial

    def apply(self, f: Poly, maxdeg: Optional[int] = None) -> Poly:
        return f + Poly.monomial(self.monomial)

    def to_json(self) -> dict:
        return {"type": "axis_completion", "monomial": format_monomial(self.monomial)}

    def describe(self) -> str:
        return f"add {format_monomial(self.monomial)}"


Step = Union[RightEquivalence, Scaling, TermReset, AxisCompletion]


@dataclass
class TransformationLog:
    steps: list = field(default_factory=list)

    def append(self, step: Step) -> None:
        self.steps.append(step)

    def extend(self, other: "TransformationLog") -> None:
        self.steps.extend(other.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def replay(self, f: Poly, maxdeg: int, upto: Optional[int] = None) -> Poly:
        """Apply the steps in order, truncating at standard degree ``maxdeg``."""
        f = f.jet(maxdeg)
        for step in self.steps[:upto]:
            if isinstance(step, Scaling) and step.symbolic:
                raise ValueError("cannot replay a symbolic scaling exactly")
            f = step.apply(f, maxdeg).jet(maxdeg)
        return f

    def to_json(self) -> list:
        return [s.to_json() for s in self.steps]


# -- filtration-positive multipliers ------------------------------------------

def positive_multipliers(pw: PiecewiseWeight) -> tuple[list[Monomial], list[Monomial]]:
    """Generators of the monomial ideals ``Jx``, ``Jy`` of multipliers ``u`` for
    which ``x -> x + u`` (resp. ``y -> y + u``) raises every facet weight."""
    k0 = max(wx // wy for wx, wy in pw.weights) + 1
    k1 = max(wy // wx for wx, wy in pw.weights) + 1
    return [(2, 0), (1, 1), (0, k0)], [(0, 2), (1, 1), (k1, 0)]


def _minimal(mons: Sequence[Monomial]) -> list[Monomial]:
    mons = sorted(set(mons))
    return [m for m in mons if not any(o != m and o[0] <= m[0] and o[1] <= m[1] for o in mons)]


def intersect_monomial_ideals(g1: Sequence[Monomial], g2: Sequence[Monomial]) -> list[Monomial]:
    return _minimal([(max(a[0], b[0]), max(a[1], b[1])) for a in g1 for b in g2])


def power_of_max_ideal(k: int) -> list[Monomial]:
    return [(a, k - a) for a in range(k + 1)]


# -- lifting --------------------------------------------------------------------

def active_weight(terms: Poly, pw: PiecewiseWeight) -> tuple[int, int]:
    """Primitive weight of the facet on which the lowest term of ``terms``
    attains its piecewise degree (first such facet)."""
    m = min(terms.terms, key=lambda m: (m[0] + m[1], m[0]))
    d = pw.deg(m)
    for wx, wy in pw.weights:
        if wx * m[0] + wy * m[1] == d:
            g = math.gcd(wx, wy)
            return wx // g, wy // g
    raise AssertionError("piecewise degree not attained")


LOCAL_ORDER = gb.MonOrder.negdegrevlex()


def lift_order(terms: Poly, pw: PiecewiseWeight) -> gb.MonOrder:
    return gb.MonOrder.weighted_degrevlex(*active_weight(terms, pw))


def _lift_gens(fx: Poly, fy: Poly, mx: Sequence[Monomial], my: Sequence[Monomial]):
    gens, tags = [], []
    for u in mx:
        gens.append(fx.shift(u))
        tags.append((Poly.monomial(u), Poly()))
    for u in my:
        gens.append(fy.shift(u))
        tags.append((Poly(), Poly.monomial(u)))
    return gens, tags


def lift_partials(q: Poly, f: Poly, mx: Sequence[Monomial], my: Sequence[Monomial],
                  trunc: gb.Truncation, span: Sequence[Monomial] = (),
                  order: Optional[gb.MonOrder] = None):
    """Write ``q = A*fx + B*fy + sum(c_b * b) mod T`` with ``A`` in the ideal
    generated by ``mx`` and ``B`` in the one generated by ``my``.

    Returns ``(A, B, {b: c_b}, record)``; raises :class:`gb.NotInIdeal`.
    """
    fx, fy = f.diff("x"), f.diff("y")
    gens, tags = _lift_gens(fx, fy, mx, my)
    G = gb.groebner(gens, order or LOCAL_ORDER, trunc, tags=tags, base=[fx, fy])
    rec = gb.reduce(q, G)
    A, B = rec.coeffs
    coeffs: dict = {}
    if rec.remainder and span:
        # solve remainder = sum c_b NF(b) by linear algebra
        e = Echelon(lambda m: (m[0] + m[1], m[0]))
        nfs = {}
        for b in span:
            rb = gb.reduce(Poly.monomial(b), G)
            nfs[b] = rb
            e.insert(dict(rb.remainder.terms), {b: Q(1)})
        r, tag = e.reduce(dict(rec.remainder.terms), {})
        if not r:
            # remainder = sum_b (-tag_b) NF(b)
            for b, t in tag.items():
                c = -t
                coeffs[b] = c
                # NF(b) = b - (A_b fx + B_b fy)
                A = A - nfs[b].coeffs[0].scale(c)
                B = B - nfs[b].coeffs[1].scale(c)
            rem = Poly()
        else:
            rem = rec.remainder
    else:
        rem = rec.remainder
    if rem:
        raise gb.NotInIdeal(rem)
    return A, B, coeffs, rec


def _check_lift(q: Poly, f: Poly, A: Poly, B: Poly, coeffs: dict, trunc: gb.Truncation) -> bool:
    total = A.mul(f.diff("x"), trunc.std_bound, trunc.keep) + \
        B.mul(f.diff("y"), trunc.std_bound, trunc.keep)
    for b, c in coeffs.items():
        total = total + Poly.monomial(b, c)
    return trunc.apply(total - q).is_zero()


# -- algorithm steps ------------------------------------------------------------

@dataclass
class Decomposition:
    g: Poly
    h: Poly
    basis_part: Poly
    restricted: bool = True


def decompose(q: Poly, f: Poly, B: Sequence[Monomial], d1: int, pw: PiecewiseWeight,
              d2: int, diagnostics: Optional[list] = None,
              order: Optional[gb.MonOrder] = None) -> Decomposition:
    """``q = g*fx + h*fy + (basis monomials of degree d1) + (degree > d1)``."""
    trunc = gb.Truncation(pw=pw, pw_bound=d1, std_bound=d2)
    span = [b for b in B if pw.deg(b) == d1 and b[0] + b[1] <= d2]
    jx, jy = positive_multipliers(pw)
    order = order or LOCAL_ORDER
    try:
        A, Bc, coeffs, _ = lift_partials(q, f, jx, jy, trunc, span, order)
        restricted = True
    except gb.NotInIdeal:
        if diagnostics is not None:
            diagnostics.append(f"degree {d1}: restricted lift failed, using unrestricted multipliers")
        try:
            A, Bc, coeffs, _ = lift_partials(q, f, [(0, 0)], [(0, 0)], trunc, span, order)
        except gb.NotInIdeal as exc:
            raise InternalLiftError(
                f"terms of degree {d1} are not in the Jacobian ideal plus basis span: {exc}") from exc
        restricted = False
    assert _check_lift(q, f, A, Bc, coeffs, trunc)
    bpart = Poly({b: c for b, c in coeffs.items()})
    return Decomposition(trunc.apply(A), trunc.apply(Bc), bpart, restricted)


def first_order_residual(f: Poly, phi: RightEquivalence, d1: int, pw: PiecewiseWeight,
                         d2: Optional[int] = None, image: Optional[Poly] = None) -> Poly:
    """Piecewise ``d1``-jet of ``phi(f) - f - gx*fx - gy*fy``."""
    if image is None:
        image = phi.apply(f, d2)
    lin = f + phi.gx.mul(f.diff("x"), d2) + phi.gy.mul(f.diff("y"), d2)
    diff = image - lin
    if d2 is not None:
        diff = diff.jet(d2)
    return pw_jet(diff, pw, d1)


def inner_cancel(f: Poly, q: Poly, l: int, d1: int, pw: PiecewiseWeight, d2: int,
                 diagnostics: Optional[list] = None,
                 order: Optional[gb.MonOrder] = None) -> RightEquivalence:
    """Map cancelling the residual ``q`` at first order: lift ``q = A*fx + B*fy``
    with ``A, B`` of order above ``l`` and substitute ``x -> x - A``, ``y -> y - B``
    (both jetted at piecewise degree ``d1``)."""
    trunc = gb.Truncation(pw=pw, pw_bound=d1, std_bound=d2)
    jx, jy = positive_multipliers(pw)
    ml = power_of_max_ideal(l + 1)
    try:
        A, Bc, _, _ = lift_partials(q, f, intersect_monomial_ideals(ml, jx),
                                    intersect_monomial_ideals(ml, jy), trunc, order=order)
    except gb.NotInIdeal:
        if diagnostics is not None:
            diagnostics.append(f"degree {d1}: restricted inner lift failed, using order-only multipliers")
        try:
            A, Bc, _, _ = lift_partials(q, f, ml, ml, trunc, order=order)
        except gb.NotInIdeal as exc:
            raise InternalLiftError(f"inner residual at degree {d1} could not be lifted: {exc}") from exc
    assert _check_lift(q, f, A, Bc, {}, trunc)
    return RightEquivalence(-pw_jet(A, pw, d1), -pw_jet(Bc, pw, d1), "inner", d1)


@dataclass
class OuterPass:
    degree: int
    terms: Poly
    basis_part: Poly
    residual_orders: list = field(default_factory=list)  # standard orders
    residual_pw_orders: list = field(default_factory=list)
    map_orders: list = field(default_factory=list)
    first_residual: Optional[Poly] = None
    restricted: bool = True

    @property
    def inner_iterations(self) -> int:
        return len(self.residual_orders)

    def to_json(self) -> dict:
        return {"degree": self.degree, "terms": str(self.terms),
                "inner_iterations": self.inner_iterations,
                "residual_orders": self.residual_orders,
                "residual_pw_orders": self.residual_pw_orders,
                "map_orders": self.map_orders}


def above_outside(f: Poly, pw: PiecewiseWeight, B: Sequence[Monomial],
                  maxdeg: Optional[int] = None) -> list[Monomial]:
    bset = set(B)
    return [m for m in f.terms if pw.deg(m) > pw.d and m not in bset
            and (maxdeg is None or m[0] + m[1] <= maxdeg)]


def eliminate(f: Poly, f0: Poly, B: Sequence[Monomial], d2: int, pw: PiecewiseWeight,
              max_inner: Optional[int] = None, diagnostics: Optional[list] = None,
              on_step=None, target_degree: Optional[int] = None,
              decomposer=None, global_lifts: bool = False) -> tuple[Poly, TransformationLog, list[OuterPass]]:
    """Remove every term above the boundary that is not in ``B``.

    Only terms of standard degree at most ``target_degree`` (default ``d2``)
    are targeted; callers pass a determinacy degree and drop the rest.
    ``decomposer`` replaces :func:`decompose` for the outer step (same signature).
    Lifts use the local degree ordering unless ``global_lifts`` selects the
    weighted ordering of the active facet; both are valid in the truncated
    ring, the local one keeps coefficients small.
    """
    if diagnostics is None:
        diagnostics = []
    cap = max_inner if max_inner is not None else 4 * d2
    log = TransformationLog()
    passes: list[OuterPass] = []
    f = f.jet(d2)
    total_inner = 0
    while True:
        S = above_outside(f, pw, B, target_degree)
        if not S:
            break
        d1 = min(pw.deg(m) for m in S)
        terms = f.filter(lambda m: pw.deg(m) == d1)
        order = lift_order(terms, pw) if global_lifts else LOCAL_ORDER
        dec = (decomposer or decompose)(-terms, f, B, d1, pw, d2, diagnostics, order)
        phi = RightEquivalence(dec.g, dec.h, "outer", d1)
        image = phi.apply(f, d2)
        q = first_order_residual(f, phi, d1, pw, d2, image)
        rec = OuterPass(d1, terms, dec.basis_part, restricted=dec.restricted)
        rec.first_residual = q
        rec.map_orders.append(phi.order)
        log.append(phi)
        f = image
        if on_step:
            on_step(phi, f)
        l = phi.order
        while q:
            rec.residual_orders.append(q.order())
            rec.residual_pw_orders.append(pw.order(q))
            total_inner += 1
            if total_inner > cap:
                raise InternalLiftError(f"inner loop exceeded {cap} iterations")
            psi = inner_cancel(f, q, l, d1, pw, d2, diagnostics, order)
            if psi.is_identity():
                raise InternalLiftError(f"degree {d1}: inner residual {q} lifted to zero")
            if psi.order <= l:
                raise InternalLiftError(f"degree {d1}: map order {psi.order} did not exceed {l}")
            image = psi.apply(f, d2)
            q_new = pw_jet(image - (f - q), pw, d1).jet(d2)
            if q_new and q_new.order() <= q.order():
                raise InternalLiftError(
                    f"degree {d1}: residual order {q_new.order()} did not exceed {q.order()}")
            log.append(psi)
            rec.map_orders.append(psi.order)
            f = image
            if on_step:
                on_step(psi, f)
            l = psi.order
            q = q_new
        passes.append(rec)
    return f, log, passes


# -- determinacy ----------------------------------------------------------------

@dataclass(frozen=True)
class DeterminacyDrop:
    """Remove terms of standard degree above a determinacy degree."""

    terms: Poly
    degree: int

    def apply(self, f: Poly, maxdeg: Optional[int] = None) -> Poly:
        return f - self.terms

    def to_json(self) -> dict:
        return {"type": "determinacy_drop", "above_degree": self.degree, "terms": str(self.terms)}

    def describe(self) -> str:
        return f"drop {len(self.terms)} terms of degree above {self.degree}"


def determinacy_drop(f: Poly, pw: PiecewiseWeight, B: Sequence[Monomial],
                     dt: int) -> Optional[DeterminacyDrop]:
    """Terms above the boundary, outside ``B``, of standard degree above ``dt``."""
    drop = f.filter(lambda m: m[0] + m[1] > dt and pw.deg(m) > pw.d and m not in set(B))
    return DeterminacyDrop(drop, dt) if drop else None


# -- scaling --------------------------------------------------------------------

def _power_str(ex: int, ey: int) -> str:
    parts = [f"c1^{ex}" if ex != 1 else "c1"] if ex else []
    if ey:
        parts.append(f"c3^{ey}" if ey != 1 else "c3")
    return "*".join(parts)


@dataclass(frozen=True)
class ScaledCoeff:
    """``value * c1^ex * c3^ey - shift`` where ``c1, c3`` are known only
    through the scaling constraints."""

    value: object
    ex: int
    ey: int
    shift: object = 0

    def __str__(self) -> str:
        p = _power_str(self.ex, self.ey)
        s = format_coeff(self.value) if not p else (
            p if self.value == 1 else f"{format_coeff(self.value)}*{p}")
        if self.shift:
            s += f"-{format_coeff(self.shift)}" if self.shift > 0 else f"+{format_coeff(-self.shift)}"
        return f"({s})"

    def with_shift(self, shift) -> "ScaledCoeff":
        return ScaledCoeff(self.value, self.ex, self.ey, shift)

    def to_json(self) -> dict:
        return {"value": format_coeff(self.value), "c1": self.ex, "c3": self.ey,
                "shift": format_coeff(self.shift), "text": str(self)}


def _solve2(v1: Monomial, v2: Monomial, e: Monomial) -> tuple:
    """Rational ``i, j`` with ``e = i*v1 + j*v2``."""
    D = v1[0] * v2[1] - v1[1] * v2[0]
    i = Q(e[0] * v2[1] - e[1] * v2[0], D)
    j = Q(v1[0] * e[1] - v1[1] * e[0], D)
    return i, j


@dataclass(frozen=True)
class ScalingSolution:
    step: Optional[Scaling]
    monomials: tuple  # the two normalized monomials
    coefficients: tuple  # their coefficients before scaling

    @property
    def symbolic(self) -> bool:
        return self.step is not None and self.step.symbolic

    def scale(self, m: Monomial, c):
        """Coefficient of ``m`` after scaling, given coefficient ``c`` before."""
        if self.step is None:
            return c
        if not self.step.symbolic:
            return c * self.step.cx ** m[0] * self.step.cy ** m[1]
        if not c:
            return Q(0)
        if m in self.monomials and c == self.coefficients[self.monomials.index(m)]:
            return Q(1)
        return ScaledCoeff(c, m[0], m[1])

    def invariant(self, m: Monomial, c, shift=0) -> Optional[str]:
        """A scaling-free relation ``(alpha + shift)^N = value`` for the
        parameter of ``m`` whose coefficient before scaling was ``c``."""
        if not self.symbolic or not c:
            return None
        (v1, v2), (A, C) = self.monomials, self.coefficients
        i, j = _solve2(v1, v2, m)
        N = math.lcm(int(i.denominator), int(j.denominator))
        p, q = int(i * N), int(j * N)
        value = c ** N * A ** (-p) * C ** (-q)
        lhs = "alpha" if not shift else f"(alpha+{format_coeff(shift)})"
        return f"{lhs}^{N} = {format_coeff(value)}" if N != 1 else f"{lhs} = {format_coeff(value)}"


def _is_rational(c) -> bool:
    return not hasattr(c, "field") or c.is_rational()


def solve_scaling(v1: Monomial, A, v2: Monomial, C) -> ScalingSolution:
    """Scaling ``x -> c1*x, y -> c3*y`` with ``A*c^v1 = 1`` and ``C*c^v2 = 1``.

    Rational factors are searched for exactly; otherwise the step only records
    the two constraints.
    """
    mons, coeffs = (v1, v2), (A, C)
    if A == 1 and C == 1:
        return ScalingSolution(None, mons, coeffs)
    constraints = tuple(f"{_power_str(*v)} = 1" if c == 1 else f"{format_coeff(c)}*{_power_str(*v)} = 1"
                        for v, c in zip(mons, coeffs))
    if _is_rational(A) and _is_rational(C):
        A = A.to_rational() if hasattr(A, "field") else Q(A)
        C = C.to_rational() if hasattr(C, "field") else Q(C)
        D = v1[0] * v2[1] - v1[1] * v2[0]
        u, v = 1 / A, 1 / C
        # c1^D = u^b2 * v^-b1 and c3^D = u^-a2 * v^a1
        p1 = u ** v2[1] * v ** (-v1[1])
        p3 = u ** (-v2[0]) * v ** v1[0]
        if D < 0:
            D, p1, p3 = -D, 1 / p1, 1 / p3
        r1, r3 = rational_root(p1, D), rational_root(p3, D)
        if r1 is not None and r3 is not None:
            for s1 in (1, -1):
                for s3 in (1, -1):
                    c1, c3 = s1 * r1, s3 * r3
                    if A * c1 ** v1[0] * c3 ** v1[1] == 1 and C * c1 ** v2[0] * c3 ** v2[1] == 1:
                        return ScalingSolution(Scaling(c1, c3, constraints), mons, coeffs)
    return ScalingSolution(Scaling(None, None, constraints), mons, coeffs)


def eligible_terms(f: Poly, pw: PiecewiseWeight, B: Sequence[Monomial], d2: int) -> list[Monomial]:
    """Boundary terms outside ``B`` up to standard degree ``d2``, graded-lex ascending."""
    bset = set(B)
    ms = [m for m in f.terms if pw.deg(m) == pw.d and m[0] + m[1] <= d2 and m not in bset]
    return sorted(ms, key=lambda m: (m[0] + m[1], m[0]))


@dataclass
class Normalization:
    scaling: ScalingSolution
    resets: list  # TermReset steps, applied after scaling
    kept: list  # eligible monomials left with their coefficient


def normalize_two(f: Poly, B: Sequence[Monomial], d2: int, pw: PiecewiseWeight,
                  dt: Optional[int] = None, diagnostics: Optional[list] = None) -> Normalization:
    """Scale the two lowest eligible boundary terms to coefficient one.

    Further eligible terms of standard degree above ``dt`` are set to one by
    determinacy; any other one keeps its coefficient, with a diagnostic.
    """
    diagnostics = diagnostics if diagnostics is not None else []
    ms = eligible_terms(f, pw, B, d2)
    if len(ms) < 2:
        diagnostics.append(f"only {len(ms)} boundary term(s) outside the basis; scaling skipped")
        return Normalization(ScalingSolution(None, tuple(ms), tuple(f.coeff(m) for m in ms)), [], [])
    sol = solve_scaling(ms[0], f.coeff(ms[0]), ms[1], f.coeff(ms[1]))
    resets, kept = [], []
    for m in ms[2:]:
        new_c = sol.scale(m, f.coeff(m))
        if new_c == 1:
            continue
        if dt is not None and m[0] + m[1] > dt:
            resets.append(TermReset(m, new_c, Q(1)))
        else:
            kept.append(m)
            diagnostics.append(f"boundary term {format_monomial(m)} keeps coefficient {new_c}")
    return Normalization(sol, resets, kept)


# -- the normal form equation ---------------------------------------------------

def render_terms(terms: dict) -> str:
    """Text form of a term map, graded-lex descending; symbolic coefficients in
    parentheses."""
    if not terms:
        return "0"
    out = []
    for m in sorted(terms, key=lambda m: (-(m[0] + m[1]), -m[0])):
        c = terms[m]
        mon = format_monomial(m)
        if isinstance(c, ScaledCoeff):
            t = str(c) if m == (0, 0) else f"{c}*{mon}"
        else:
            t = Poly.monomial(m, c).__str__()
        if out and not t.startswith("-"):
            out.append("+")
        out.append(t)
    return "".join(out)


@dataclass
class NormalFormEquation:
    """A member of the family; coefficients are exact scalars, or
    :class:`ScaledCoeff` when the final scaling is only known by constraints."""

    terms: dict
    parameter_values: dict  # parameter name -> value
    constraints: list = field(default_factory=list)
    invariants: dict = field(default_factory=dict)
    completion: list = field(default_factory=list)  # axis terms added last

    @property
    def symbolic(self) -> bool:
        return any(isinstance(c, ScaledCoeff) for c in self.terms.values()) or bool(self.constraints)

    @property
    def poly(self) -> Poly:
        if any(isinstance(c, ScaledCoeff) for c in self.terms.values()):
            raise ValueError("coefficients are only known up to the scaling constraints")
        return Poly(self.terms)

    def render(self) -> str:
        return render_terms(self.terms)

    def to_json(self) -> dict:
        return {"poly": self.render(),
                "values": {k: str(v) if isinstance(v, ScaledCoeff) else format_coeff(v)
                           for k, v in self.parameter_values.items()},
                "constraints": list(self.constraints),
                "invariants": dict(self.invariants),
                "completion": [format_monomial(m) for m in self.completion]}


# -- the whole pipeline -----------------------------------------------------------

@dataclass
class RunResult:
    input: Poly
    family: "NormalFormFamily"
    equation: NormalFormEquation
    log: TransformationLog
    passes: list
    polygon: object
    mu: int
    truncation: int  # standard degree every substitution is cut at
    determinacy: int
    normalization: object  # NormalizationReport of the input
    boundary: Optional[object]  # BoundaryResult when boundary terms were removed
    prescaled: Poly  # exact result of every step before the scaling
    scaling: ScalingSolution
    diagnostics: list

    @property
    def inner_modality(self) -> int:
        return len(self.family.moduli)

    def boundary_jet(self) -> Poly:
        return pw_jet(self.prescaled, self.polygon.pw, self.polygon.pw.d)

    def to_json(self) -> dict:
        return {
            "input": str(self.input),
            "family": self.family.to_json(),
            "equation": self.equation.to_json(),
            "log": self.log.to_json(),
            "polygon": self.polygon.to_json(),
            "mu": self.mu,
            "inner_modality": self.inner_modality,
            "truncation_degree": self.truncation,
            "determinacy_degree": self.determinacy,
            "normalization": self.normalization.to_json(),
            "boundary": None if self.boundary is None else self.boundary.to_json(),
            "passes": [p.to_json() for p in self.passes],
            "diagnostics": list(self.diagnostics),
        }


def check_preconditions(f: Poly) -> int:
    """Reject inputs the algorithm does not handle; return the Milnor number."""
    from .errors import CorankError, NonIsolatedError, ZeroGermError

    if not f or f.constant():
        raise ZeroGermError("the germ must be nonzero and vanish at the origin")
    o = f.order()
    if o == 1:
        raise CorankError("the germ has a nonzero linear part (smooth, corank 0)")
    if o == 2:
        raise CorankError("the germ has a nonzero quadratic part (corank below 2); "
                          "the input must lie in m^3")
    mu = gb.milnor_number(f)
    if mu == gb.INFINITE:
        raise NonIsolatedError("the singularity is not isolated (infinite Milnor number)")
    return int(mu)


def run(f_raw: Poly, max_inner: Optional[int] = None, check: str = "fast",
        global_lifts: bool = False, on_step=None) -> RunResult:
    """Normal form family and normal form equation of ``f_raw``.

    ``check="paranoid"`` recomputes the Milnor number after every step and
    replays the log at the end.
    """
    from .boundary import normalize_boundary, offending_terms
    from .errors import (DegenerateBoundaryError, NoFacetError, NotNormalizedError,
                         PreconditionError)
    from .newton import check_normalized, is_nondegenerate, polygon
    from .regbasis import normal_form_family, regular_basis

    diagnostics: list = []
    mu = check_preconditions(f_raw)
    d2 = mu + 1
    f = f_raw.jet(d2)
    poly = polygon(f)
    if not poly.has_facets:
        raise NoFacetError("the Newton polygon has no compact facet")
    if not is_nondegenerate(f):
        raise DegenerateBoundaryError("the Newton boundary is degenerate")
    pw = poly.pw
    report = check_normalized(f, mu)
    diagnostics.extend(report.advisories)
    f0 = Poly({v: 1 for v in poly.vertices})
    rb = regular_basis(f0, pw)
    if len(rb) != mu:
        raise PreconditionError(
            f"the vertex sum has Milnor number {len(rb)}, the germ {mu}")
    B = rb.moduli
    family = normal_form_family(f0, rb)
    log = TransformationLog()

    paranoid = check == "paranoid"

    def step_hook(step, g):
        if paranoid and gb.milnor_number(g) != mu:
            raise InternalLiftError(f"Milnor number changed by {step.describe()}")
        if on_step:
            on_step(step, g)

    # right equivalences keep m^(dt+1) inside m^2 J, so the rational input decides
    dt = gb.sharp_determinacy(f)
    boundary = None
    if offending_terms(f, poly, B):
        boundary = normalize_boundary(f, B, d2)
        if boundary is None:
            raise NotNormalizedError(
                "boundary terms outside the regular basis could not be removed: "
                + ", ".join(format_monomial(m) for m in offending_terms(f, poly, B)))
        phi = RightEquivalence(boundary.gx, boundary.gy, "boundary", pw.d)
        log.append(phi)
        f = boundary.f
        step_hook(phi, f)
        if boundary.field is not None:
            diagnostics.append(f"boundary terms removed over the number field with "
                               f"{boundary.field.name} a root of {boundary.field.modulus_str()}")
    elif not report.normalized:
        diagnostics.append("the boundary is not normalized, but no boundary term lies outside "
                           "the regular basis")

    f, elog, passes = eliminate(f, f0, B, d2, pw, max_inner, diagnostics, step_hook,
                                target_degree=dt, global_lifts=global_lifts)
    log.extend(elog)
    drop = determinacy_drop(f, pw, B, dt)
    if drop is not None:
        log.append(drop)
        f = drop.apply(f)
        step_hook(drop, f)
    prescaled = f
    norm = normalize_two(f, B, d2, pw, dt, diagnostics)
    if norm.kept:
        # scaling fixes two boundary coefficients; a third one below the
        # determinacy would need a shear the normalization table rules out
        raise NotNormalizedError(
            "boundary terms outside the regular basis keep a coefficient other than one "
            "after scaling: " + ", ".join(format_monomial(m) for m in norm.kept))
    sol = norm.scaling
    if sol.step is not None:
        log.append(sol.step)
    terms = {m: sol.scale(m, c) for m, c in f.items()}
    for r in norm.resets:
        log.append(r)
        terms[r.monomial] = r.new
    if not sol.symbolic:
        g = Poly(terms)
        if sol.step is not None or norm.resets:
            step_hook(sol.step or norm.resets[0], g)

    values, invariants = {}, {}
    for name, b in zip(family.params, family.moduli):
        base = f0.coeff(b)
        c = terms.get(b, Q(0))
        if isinstance(c, ScaledCoeff):
            values[name] = c.with_shift(base)
            inv = sol.invariant(b, f.coeff(b), base)
            if inv:
                invariants[name] = inv.replace("alpha", name)
        else:
            values[name] = c - base

    # fill the axes last; the parameter values above are read before
    support = set(terms)
    completion = []
    if not any(m[1] == 0 for m in support):
        completion.append((mu + 2, 0))
    if not any(m[0] == 0 for m in support):
        completion.append((0, mu + 2))
    for m in completion:
        log.append(AxisCompletion(m))
        terms[m] = Q(1)
    equation = NormalFormEquation(terms, values, list(sol.step.constraints) if sol.symbolic else [],
                                  invariants, completion)
    if not sol.symbolic:
        member = family.member(values)
        if equation.poly - Poly({m: 1 for m in completion}) != member:
            raise InternalLiftError("the equation is not a member of the family: "
                                    f"{equation.poly} vs {member}")
    if paranoid:
        upto = next((i for i, s in enumerate(log.steps)
                     if not isinstance(s, (RightEquivalence, DeterminacyDrop))), None)
        if log.replay(f_raw, d2, upto) != prescaled:
            raise InternalLiftError("replaying the log does not reproduce the result")
    return RunResult(f_raw, family, equation, log, passes, poly, mu, d2, dt, report,
                     boundary, prescaled, sol, diagnostics)
