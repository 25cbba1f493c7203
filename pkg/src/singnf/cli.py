"""Command line front end."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import SingNFError
from .moduli import (AxisCompletion, DeterminacyDrop, RightEquivalence, RunResult, Scaling,
                     ScaledCoeff, TermReset, run)
from .poly import X, Y, ParseError, format_coeff, format_monomial, parse


@dataclass
class RunConfig:
    input: Optional[str] = None
    path: Optional[str] = None
    output_format: str = "text"
    trace: bool = False
    max_inner_iterations: Optional[int] = None
    check_level: str = "fast"

    def __post_init__(self):
        if (self.input is None) == (self.path is None):
            raise ValueError("give exactly one of an expression or --file")
        if self.max_inner_iterations is not None and self.max_inner_iterations <= 0:
            raise ValueError("--max-inner must be positive")

    def source(self) -> str:
        if self.path is not None:
            with open(self.path, encoding="utf-8") as fh:
                return fh.read().strip()
        return self.input


def _value_str(v) -> str:
    return str(v) if isinstance(v, ScaledCoeff) else format_coeff(v)


def trace_lines(result: RunResult) -> list[str]:
    """Every step in full, in a form a plain substitute-and-truncate script can replay."""
    out = [f"TRUNCATE {result.truncation}", f"INPUT {result.input}"]
    if result.boundary is not None and result.boundary.field is not None:
        fld = result.boundary.field
        out.append(f"FIELD {fld.name} : {fld.modulus_str()} = 0")
    for st in result.log:
        if isinstance(st, RightEquivalence):
            out.append(f"SUBST x={X + st.gx} ; y={Y + st.gy}")
        elif isinstance(st, DeterminacyDrop):
            out.append(f"DROP {st.terms}")
        elif isinstance(st, Scaling):
            if st.symbolic:
                out.append("SCALE symbolic ; " + " ; ".join(st.constraints))
            else:
                out.append(f"SCALE x={format_coeff(st.cx)}*x ; y={format_coeff(st.cy)}*y")
        elif isinstance(st, TermReset):
            out.append(f"RESET {format_monomial(st.monomial)} {format_coeff(st.new)}")
        elif isinstance(st, AxisCompletion):
            out.append(f"ADD {format_monomial(st.monomial)}")
    out.append(f"RESULT {result.prescaled}")
    return out


def render(result: RunResult, fmt: str = "text", trace: bool = False) -> str:
    """Deterministic rendering of a run."""
    if fmt == "json":
        data = result.to_json()
        if trace:
            data["trace"] = trace_lines(result)
        return json.dumps(data, sort_keys=True, indent=2)
    eq = result.equation
    lines = [f"FAMILY: {result.family.render()}",
             f"EQUATION: {eq.render()}"]
    params = ", ".join(f"{k}={_value_str(v)}" for k, v in eq.parameter_values.items())
    lines.append(f"PARAMETERS: {params if params else '(none)'}")
    if eq.constraints:
        lines.append("CONSTRAINTS: " + "; ".join(eq.constraints))
    if eq.invariants:
        lines.append("INVARIANTS: " + "; ".join(eq.invariants.values()))
    if eq.completion:
        lines.append("COMPLETION: " + ", ".join(format_monomial(m) for m in eq.completion))
    lines.append(f"MILNOR: {result.mu}")
    if len(result.log) == 0:
        lines.append("LOG: (identity)")
    else:
        lines.append(f"LOG({len(result.log)} steps):")
        for i, st in enumerate(result.log, 1):
            lines.append(f"  {i}. {_short(st.describe())}")
    for d in result.diagnostics:
        lines.append(f"NOTE: {d}")
    if trace:
        lines.append("TRACE:")
        lines.extend("  " + t for t in trace_lines(result))
    return "\n".join(lines)


def _short(s: str, width: int = 160) -> str:
    return s if len(s) <= width else s[: width - 3] + "..."


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="singnf",
        description="Normal form family and normal form equation of a plane curve germ "
                    "with non-degenerate Newton boundary.")
    p.add_argument("expression", nargs="?", help="polynomial in x, y, e.g. 'x^4+x^3*y+y^4'")
    p.add_argument("--file", dest="path", help="read the polynomial from a file")
    p.add_argument("--json", action="store_true", help="JSON output")
    p.add_argument("--trace", action="store_true", help="print every step in replayable form")
    p.add_argument("--max-inner", type=int, default=None, metavar="N",
                   help="cap on inner cancellation iterations")
    p.add_argument("--check", choices=("fast", "paranoid"), default="fast",
                   help="paranoid: recompute the Milnor number after every step and replay the log")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.expression, args.path, "json" if args.json else "text",
                        args.trace, args.max_inner, args.check)
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"singnf: error: {exc}", file=sys.stderr)
        return 2
    try:
        f = parse(cfg.source())
    except (ParseError, OSError) as exc:
        print(f"singnf: input rejected (parse): {exc}", file=sys.stderr)
        return 2
    try:
        result = run(f, cfg.max_inner_iterations, cfg.check_level)
    except SingNFError as exc:
        reason = getattr(exc, "reason", "error")
        print(f"singnf: input rejected ({reason}): {exc}" if exc.exit_code == 2
              else f"singnf: internal failure ({reason}): {exc}", file=sys.stderr)
        return exc.exit_code
    print(render(result, cfg.output_format, cfg.trace))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
