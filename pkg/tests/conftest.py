import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from singnf.moduli import run  # noqa: E402
from singnf.poly import parse  # noqa: E402

EX1 = "y^28+x*y^7+x^2*y^3+11*x^2*y^4+x^22"
EX2 = "x^2*y^4+x^4*y^2+x^20+y^40+60*x^21*y^14"
X9 = "x^4+x^3*y+y^4"

ACCEPTANCE_LINES: list = []


def verdict(label: str, ok: bool, detail: str = "") -> None:
    """Record and print one acceptance line, then fail the test if ``ok`` is false."""
    line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  [{detail}]" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def ex1_run():
    return run(parse(EX1))


@pytest.fixture(scope="session")
def ex2_run():
    return run(parse(EX2))


@pytest.fixture(scope="session")
def x9_run():
    return run(parse(X9))


# A reference decomposition of the Example 2 term above the boundary, written
# for x -> x - g; the package substitutes x -> x + g, hence the signs below.
EX2_G = "2*x^4*y^12+4*x^2*y^14+40*y^50-10*x^20*y^10"
EX2_H = "-4*x^3*y^13-2*x*y^15"
EX2_FIRST_RESIDUAL = (
    "-24*x^10*y^26-12*x^8*y^28-12*x^6*y^30-24*x^4*y^32-224*x^7*y^44-32*x^5*y^46"
    "+144*x^6*y^60+12160*x^6*y^64+12640*x^4*y^66+2800*x^2*y^68+384*x^7*y^74"
    "+952320*x^7*y^78+472320*x^5*y^80+79680*x^3*y^82+256*x^8*y^88+11704320*x^6*y^94"
    "+1467360*x^4*y^96+9600*x^2*y^102+1600*y^104+21065216*x^5*y^110+38400*x^5*y^114"
    "-12800*x^3*y^116+12800*x*y^118+245661440*x^6*y^124+38400*x^4*y^130"
    "+38400*x^2*y^132+51200*x^3*y^146-256000*x*y^152+25600*x^4*y^160+2560000*y^202")


def seeded_decomposer(degree: int = 700):
    """Outer decomposition that uses the reference pair at ``degree``."""
    from singnf import moduli as M

    g, h = parse(EX2_G), parse(EX2_H)

    def dec(q, f, B, d1, pw, d2, diagnostics=None, order=None):
        if d1 == degree:
            return M.Decomposition(-g, -h, parse("0"))
        return M.decompose(q, f, B, d1, pw, d2, diagnostics, order)

    return dec


def eliminate_seeded(global_lifts: bool = False):
    from singnf import gb
    from singnf import moduli as M
    from singnf.newton import polygon, vertex_sum
    from singnf.regbasis import regular_basis

    f = parse(EX2)
    P = polygon(f)
    f0 = vertex_sum(f)
    rb = regular_basis(f0, P.pw)
    mu = gb.milnor_number(f)
    dt = gb.sharp_determinacy(f)
    return M.eliminate(f, f0, rb.moduli, mu + 1, P.pw, target_degree=dt,
                       decomposer=seeded_decomposer(), global_lifts=global_lifts)
