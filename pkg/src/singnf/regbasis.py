"""Regular monomial bases of the local algebra with respect to a piecewise weight.

The local algebra of ``f0`` is modelled inside ``V = R/m^N`` with ``m^N`` in
the Jacobian ideal. The Jacobian ideal spans a subspace of ``V``; putting it
in echelon form with columns ordered by piecewise degree, the non-pivot
monomials form a regular basis: within each degree they are independent
modulo the Jacobian ideal plus everything of higher degree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from . import gb
from .linalg import Echelon
from .newton import PiecewiseWeight
from .poly import Monomial, Poly, format_monomial, grlex_key


def grlex_asc(m: Monomial) -> tuple[int, int]:
    return (m[0] + m[1], m[0])


@dataclass
class RegularBasis:
    monomials: list  # the whole basis, ascending by piecewise degree
    degrees: dict  # monomial -> piecewise degree
    moduli: list  # members of piecewise degree >= d
    pw: PiecewiseWeight
    cut: int  # m^cut lies in the Jacobian ideal

    @property
    def all(self) -> list[tuple[Monomial, int]]:
        return [(m, self.degrees[m]) for m in self.monomials]

    def __len__(self) -> int:
        return len(self.monomials)

    def to_json(self) -> dict:
        return {
            "all": [{"monomial": format_monomial(m), "degree": self.degrees[m]}
                    for m in self.monomials],
            "moduli": [format_monomial(m) for m in self.moduli],
            "inner_modality": len(self.moduli),
        }


def _jacobian_rows(f0: Poly, cut: int) -> list[dict]:
    rows = []
    for g in (f0.diff("x"), f0.diff("y")):
        if not g:
            continue
        o = g.order()
        for dg in range(cut - o):
            for a in range(dg + 1):
                r = {m: c for m, c in g.shift((a, dg - a)).items() if m[0] + m[1] < cut}
                if r:
                    rows.append(r)
    return rows


def jacobian_echelon(f0: Poly, pw: PiecewiseWeight, cut: int,
                     colkey: Callable[[Monomial], tuple]) -> Echelon:
    e = Echelon(colkey)
    for r in _jacobian_rows(f0, cut):
        e.insert(r)
    return e


def regular_basis(f0: Poly, pw: PiecewiseWeight, tiebreak: Optional[Callable] = None) -> RegularBasis:
    """Regular monomial basis of the local algebra of ``f0``.

    Within one piecewise degree, monomials outside the leading ideal of a local
    standard basis are preferred as basis members; remaining ties go by
    ``tiebreak`` (default graded-lex ascending, later means preferred).
    """
    G = gb.jacobian_basis(f0)
    cut = G.truncation.std_bound + 1
    stair = set(gb.kbase(G))
    tb = tiebreak or grlex_asc
    colkey = lambda m: (pw.deg(m), -(m[0] + m[1]), m in stair, tb(m))
    e = jacobian_echelon(f0, pw, cut, colkey)
    piv = e.pivots
    allmons = [(a, s - a) for s in range(cut) for a in range(s + 1)]
    basis = [m for m in allmons if m not in piv]
    basis.sort(key=lambda m: (pw.deg(m), grlex_asc(m)))
    degrees = {m: pw.deg(m) for m in basis}
    moduli = [m for m in basis if degrees[m] >= pw.d]
    return RegularBasis(basis, degrees, moduli, pw, cut)


def inner_modality(rb: RegularBasis) -> int:
    return len(rb.moduli)


def check_regular(f: Poly, rb: RegularBasis) -> bool:
    """Direct check of the regularity condition for every degree ``D``: the
    degree-``D`` members stay independent modulo the Jacobian ideal of ``f``
    plus all monomials of degree above ``D``.

    For each ``D`` this works in the space of monomials of piecewise degree at
    most ``D`` and standard degree below the cut, where the Jacobian ideal is
    spanned by the truncated shifted partials.
    """
    pw = rb.pw
    if len(rb.monomials) != gb.milnor_number(f):
        return False
    cut = rb.cut
    gens = _jacobian_rows(f, cut)
    for D in sorted(set(rb.degrees.values())):
        keep = lambda m: pw.deg(m) <= D
        e = Echelon(grlex_key)
        for r in gens:
            rr = {m: c for m, c in r.items() if keep(m)}
            if rr:
                e.insert(rr)
        before = len(e)
        members = [m for m in rb.monomials if rb.degrees[m] == D]
        for m in members:
            e.insert({m: 1})
        if len(e) - before != len(members):
            return False
    return True


def lattice_points_covered(f0: Poly, rb: RegularBasis, boundary: list[Monomial]) -> bool:
    """Every lattice point of the polygon is a monomial of ``f0`` or a member of the basis."""
    members = set(rb.monomials)
    return all(m in f0.terms or m in members for m in boundary)


def f0_monomials_outside(f0: Poly, rb: RegularBasis, max_degree: int) -> list[Monomial]:
    members = set(rb.monomials)
    return sorted((m for m in f0.terms if m not in members and m[0] + m[1] <= max_degree),
                  key=grlex_asc)


@dataclass
class NormalFormFamily:
    base: Poly
    moduli: list
    params: list = field(default_factory=list)

    def __post_init__(self):
        if not self.params:
            self.params = [f"a{i + 1}" for i in range(len(self.moduli))]

    def render(self) -> str:
        s = str(self.base)
        for p, m in zip(self.params, self.moduli):
            s += f"+{p}*{format_monomial(m)}"
        return s

    def member(self, values: dict) -> Poly:
        out = self.base
        for p, m in zip(self.params, self.moduli):
            out = out + Poly.monomial(m, values.get(p, 0))
        return out

    def to_json(self) -> dict:
        return {"base": str(self.base), "moduli": [format_monomial(m) for m in self.moduli],
                "params": list(self.params), "render": self.render()}


def normal_form_family(f0: Poly, rb: RegularBasis) -> NormalFormFamily:
    mods = sorted(rb.moduli, key=lambda m: (rb.degrees[m], grlex_asc(m)))
    return NormalFormFamily(f0, mods)
