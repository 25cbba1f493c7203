"""Newton polygon geometry and the piecewise weight it induces."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

from .numberfield import is_squarefree, rational_roots
from .poly import Monomial, Poly, grlex_key, saturate


class Weight(NamedTuple):
    wx: int
    wy: int

    def deg(self, m: Monomial) -> int:
        return self.wx * m[0] + self.wy * m[1]

    @property
    def slope(self) -> Fraction:
        return Fraction(self.wy, self.wx)


@dataclass(frozen=True)
class PiecewiseWeight:
    """Scaled facet weights (ordered by increasing ``wy/wx``) and the common
    boundary degree ``d``. The degree of a monomial is the minimum over the
    weights, which makes it superadditive."""

    weights: tuple[Weight, ...]
    d: int

    def deg(self, m: Monomial) -> int:
        a, b = m
        return min(wx * a + wy * b for wx, wy in self.weights)

    def order(self, f: Poly) -> Optional[int]:
        """Lowest piecewise degree among the terms of ``f``."""
        return min((self.deg(m) for m in f.terms), default=None)

    def max_weight(self) -> int:
        return max(max(w) for w in self.weights)

    def to_json(self) -> dict:
        return {"weights": [list(w) for w in self.weights], "d": self.d}


@dataclass(frozen=True)
class Facet:
    v0: Monomial  # endpoint with the larger x-exponent
    v1: Monomial
    weight: Weight  # primitive inward normal
    lam: int  # scale factor to the common degree

    @property
    def degree(self) -> int:
        return self.weight.deg(self.v0)

    @property
    def lattice_length(self) -> int:
        return math.gcd(self.v0[0] - self.v1[0], self.v1[1] - self.v0[1])

    @property
    def lattice_points(self) -> list[Monomial]:
        n = self.lattice_length
        sx = (self.v0[0] - self.v1[0]) // n
        sy = (self.v1[1] - self.v0[1]) // n
        return [(self.v0[0] - k * sx, self.v0[1] + k * sy) for k in range(n + 1)]

    def contains(self, m: Monomial) -> bool:
        if not (self.v1[0] <= m[0] <= self.v0[0]):
            return False
        return self.weight.deg(m) == self.degree

    def cuts_axis(self) -> bool:
        return self.v0[1] == 0 or self.v1[0] == 0

    def to_json(self) -> dict:
        return {"v0": list(self.v0), "v1": list(self.v1), "weight": list(self.weight),
                "lambda": self.lam, "degree": self.degree}


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple[Monomial, ...]  # along the boundary, x ascending
    facets: tuple[Facet, ...]
    pw: Optional[PiecewiseWeight]  # None when there is no compact facet

    @property
    def has_facets(self) -> bool:
        return bool(self.facets)

    @property
    def convenient(self) -> bool:
        return bool(self.vertices) and self.vertices[0][0] == 0 and self.vertices[-1][1] == 0

    @property
    def d(self) -> int:
        if self.pw is None:
            raise ValueError("polygon has no compact facet")
        return self.pw.d

    def on_boundary(self, m: Monomial) -> bool:
        return any(fc.contains(m) for fc in self.facets)

    def boundary_points(self) -> list[Monomial]:
        pts: list[Monomial] = []
        for fc in self.facets:
            for m in fc.lattice_points:
                if m not in pts:
                    pts.append(m)
        return sorted(pts, key=grlex_key)

    def to_json(self) -> dict:
        return {
            "vertices": [list(v) for v in self.vertices],
            "facets": [fc.to_json() for fc in self.facets],
            "d": self.pw.d if self.pw else None,
            "weights": [list(w) for w in self.pw.weights] if self.pw else [],
        }


def _cross(o: Monomial, a: Monomial, b: Monomial) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def boundary_vertices(points) -> list[Monomial]:
    """Vertices of the lower-left boundary of ``conv(points) + R^2_+``, x ascending."""
    pts = sorted(set(points))
    if not pts:
        return []
    hull: list[Monomial] = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    ymin = min(p[1] for p in pts)
    out = []
    for v in hull:
        out.append(v)
        if v[1] == ymin:
            break
    return out


def polygon(f: Poly) -> NewtonPolygon:
    if not f:
        raise ValueError("the zero polynomial has no Newton polygon")
    verts = boundary_vertices(f.terms.keys())
    raw = []
    for p, q in zip(verts, verts[1:]):
        dx, dy = q[0] - p[0], p[1] - q[1]
        g = math.gcd(dx, dy)
        w = Weight(dy // g, dx // g)
        raw.append((q, p, w))
    if not raw:
        return NewtonPolygon(tuple(verts), (), None)
    degs = [w.deg(v0) for v0, _, w in raw]
    d = 1
    for k in degs:
        d = d * k // math.gcd(d, k)
    facets = tuple(Facet(v0, v1, w, d // k) for (v0, v1, w), k in zip(raw, degs))
    pw = PiecewiseWeight(tuple(Weight(fc.lam * fc.weight.wx, fc.lam * fc.weight.wy)
                               for fc in facets), d)
    return NewtonPolygon(tuple(verts), facets, pw)


def pw_deg(pw: PiecewiseWeight, m: Monomial) -> int:
    return pw.deg(m)


def pw_jet(f: Poly, pw: PiecewiseWeight, j: int) -> Poly:
    return f.filter(lambda m: pw.deg(m) <= j)


def facet_jet(f: Poly, facet: Facet) -> Poly:
    return f.filter(facet.contains)


def vertex_sum(f: Poly) -> Poly:
    verts = set(polygon(f).vertices)
    return f.filter(lambda m: m in verts)


def facet_univariate(f: Poly, facet: Facet) -> list:
    """Coefficients ``c_k`` of the facet jet along its lattice points, read from
    ``v0`` to ``v1``; the saturated facet jet is homogeneous in
    ``x^wy`` and ``y^wx`` with these coefficients."""
    return [f.coeff(m) for m in facet.lattice_points]


def is_nondegenerate(f: Poly) -> bool:
    poly = polygon(f)
    if not poly.facets:
        return False
    return all(is_squarefree(facet_univariate(f, fc)) for fc in poly.facets)


def is_smooth_facet(facet: Facet, f: Poly) -> bool:
    """The saturated facet jet has order one."""
    g, _ = saturate(facet_jet(f, facet))
    return g.order() == 1


@dataclass
class FacetVerdict:
    facet: Facet
    a: int  # exponent of x in the monomial factor of the facet jet
    b: int
    linear_factors: int  # rational factors of the form x - c*y^k or y - c*x^k
    smooth: bool
    cuts_axis: bool
    normalized: bool
    exempt: bool

    def to_json(self) -> dict:
        return {"v0": list(self.facet.v0), "v1": list(self.facet.v1),
                "weight": list(self.facet.weight), "a": self.a, "b": self.b,
                "linear_factors": self.linear_factors, "smooth": self.smooth,
                "cuts_axis": self.cuts_axis, "normalized": self.normalized,
                "exempt": self.exempt}


@dataclass
class NormalizationReport:
    facets: list[FacetVerdict]
    normalized: bool
    advisories: list[str] = field(default_factory=list)

    def offending(self) -> list[FacetVerdict]:
        return [v for v in self.facets if not v.normalized and not v.exempt]

    def to_json(self) -> dict:
        return {"normalized": self.normalized,
                "facets": [v.to_json() for v in self.facets],
                "advisories": list(self.advisories)}


def _facet_verdict(f: Poly, fc: Facet) -> FacetVerdict:
    a, b = fc.v1[0], fc.v0[1]
    wx, wy = fc.weight
    coeffs = facet_univariate(f, fc)
    n = 0
    if wx != wy and min(wx, wy) == 1:
        n = len(rational_roots(coeffs))
    if wx == wy:
        ok = a != 0 and b != 0
    elif wx > wy:
        ok = a != 0 or n == 0
    else:
        ok = b != 0 or n == 0
    smooth = is_smooth_facet(fc, f)
    cuts = fc.cuts_axis()
    return FacetVerdict(fc, a, b, n, smooth, cuts, ok, smooth and cuts)


def check_normalized(f: Poly, mu: Optional[int] = None) -> NormalizationReport:
    """Per-facet normalization verdicts over the rationals.

    A homogeneous factor counts as linear when it is rational; for facets of
    equal weights every factor is linear over the complex numbers, so the
    condition there only looks at the monomial factor. Counting over the
    complex numbers instead would reject the facet ``y^4*(x^2+y^36)`` of
    ``x^2*y^4+x^4*y^2+x^20+y^40``, a germ the algorithm is meant to accept.
    """
    poly = polygon(f)
    verdicts = [_facet_verdict(f, fc) for fc in poly.facets]
    advisories = []
    if mu is not None:
        for v in verdicts:
            if v.exempt:
                end = v.facet.v1 if v.facet.v1[0] == 0 else v.facet.v0
                if sum(end) != mu + 1:
                    advisories.append(
                        f"smooth facet {list(v.facet.v1)}-{list(v.facet.v0)} cuts an axis "
                        f"in degree {sum(end)}, not {mu + 1}")
    ok = bool(verdicts) and all(v.normalized or v.exempt for v in verdicts)
    return NormalizationReport(verdicts, ok, advisories)


def ensure_convenient(f: Poly, mu: int) -> tuple[Poly, list[Monomial]]:
    """Add ``x^(mu+2)`` / ``y^(mu+2)`` where the polygon misses an axis."""
    added = []
    if not any(m[1] == 0 for m in f.terms):
        added.append((mu + 2, 0))
    if not any(m[0] == 0 for m in f.terms):
        added.append((0, mu + 2))
    for m in added:
        f = f + Poly.monomial(m)
    return f, added


def monomials_above(f: Poly, pw: PiecewiseWeight) -> list[tuple[Monomial, object]]:
    out = [(m, c) for m, c in f.items() if pw.deg(m) > pw.d]
    out.sort(key=lambda mc: (pw.deg(mc[0]), mc[0][0] + mc[0][1], mc[0][0]))
    return out
