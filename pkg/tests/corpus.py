"""Germ sets and generators shared by the test modules."""
import random

from singnf import gb
from singnf.newton import facet_jet, is_nondegenerate, polygon
from singnf.poly import Poly, saturate


def normalized_over_c(f: Poly) -> bool:
    """The normalization table with linear factors counted over the complex
    numbers: a facet with a weight equal to one has only linear factors."""
    for fc in polygon(f).facets:
        wx, wy = fc.weight
        a, b = fc.v1[0], fc.v0[1]
        g, _ = saturate(facet_jet(f, fc))
        lin = min(wx, wy) == 1 and len(g) > 1
        if wx == wy and not (a and b):
            return False
        if wx > wy and a == 0 and lin:
            return False
        if wx < wy and b == 0 and lin:
            return False
    return True


def random_normalized_germs(n: int, seed: int = 11):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        a, b = rng.randint(3, 12), rng.randint(3, 12)
        terms = {(a, 0): 1, (0, b): 1}
        for _ in range(rng.randint(1, 2)):
            terms[(rng.randint(1, a - 1), rng.randint(1, b - 1))] = rng.choice([1, 2, -1])
        for _ in range(rng.randint(0, 3)):
            terms[(rng.randint(0, a), rng.randint(0, b))] = rng.randint(-3, 3)
        f = Poly(terms)
        if f.constant() or f.order() < 3:
            continue
        if not polygon(f).has_facets or not is_nondegenerate(f) or not normalized_over_c(f):
            continue
        mu = gb.milnor_number(f)
        if mu == gb.INFINITE or mu > 60:
            continue
        out.append(f)
    return out


def with_terms_above(fs, seed: int = 5, extra: int = 3):
    """Each germ plus a few random terms above its Newton boundary."""
    rng = random.Random(seed)
    out = []
    for f in fs:
        P = polygon(f)
        g = dict(f.terms)
        a = max(m[0] for m in P.vertices)
        b = max(m[1] for m in P.vertices)
        cands = [(i, j) for i in range(a + 1) for j in range(b + 1)
                 if P.pw.deg((i, j)) > P.d and (i, j) not in g]
        for m in rng.sample(cands, min(extra, len(cands))):
            g[m] = rng.choice([1, -1, 2, 3, -5])
        out.append(Poly(g))
    return out


MILNOR_SUITE = [
    "x^3+y^3", "x^4+y^4", "x^3+y^4", "x^3+y^5", "x^2*y+y^4", "x^3+x*y^3", "x^3*y+y^4",
    "x^4+x^2*y^2+y^4", "x^5+y^4", "x^4+y^5+x^2*y^2", "x^2*y+y^6", "x^3+y^7", "x^3+x*y^4",
    "x^2*y^2+x^5+y^5", "x^4+x^3*y+y^4", "x^3*y+x*y^3", "x^3+y^3+x^2*y^2",
    "x^5+x*y^3", "x^2*y^3+x^4+y^6", "x^3+2*x^2*y+x*y^2+y^5", "x^4-y^4+x^3*y^2",
    "x^2*y+x*y^2+x^6+y^6", "x^3*y+x*y^3+x^11+y^11", "x^5+y^5", "x^4+y^6",
]


def random_facet_jet(rng: random.Random):
    """A non-degenerate quasi-homogeneous polynomial on one segment of lattice
    length at most five."""
    while True:
        n = rng.randint(1, 5)
        wx, wy = rng.choice([(1, 1), (1, 2), (2, 1), (2, 3), (3, 2), (1, 3)])
        a0, b0 = rng.randint(0, 2), rng.randint(0, 2)
        terms = {(a0 + wy * (n - k), b0 + wx * k): rng.randint(-4, 4) for k in range(n + 1)}
        terms[(a0 + wy * n, b0)] = rng.choice([1, -2, 3])
        terms[(a0, b0 + wx * n)] = rng.choice([1, 2, -1])
        F = Poly(terms)
        if is_nondegenerate(F) and F.degree() >= 2:
            return F


def koszul_pair(F: Poly):
    """Partials of ``F`` and the Koszul syzygy of their saturations."""
    fx, fy = F.diff("x"), F.diff("y")
    sx, mx = saturate(fx)
    sy, my = saturate(fy)
    m = (min(mx[0], my[0]), min(mx[1], my[1]))
    return fx, fy, fy.shift((-m[0], -m[1])), -fx.shift((-m[0], -m[1]))


def pipeline_corpus():
    """Small germs with terms above the boundary; each runs in a few seconds."""
    return [f for f in with_terms_above(random_normalized_germs(12, seed=3))
            if gb.milnor_number(f) <= 24]
