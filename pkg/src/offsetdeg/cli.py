"""Command line front end: ``offsetdeg compute | verify | parse``.

Surface files hold one surface as ``key=value`` lines::

    # hyperbolic paraboloid
    label=hyperbolic paraboloid
    P1=t1
    P2=2*t2
    P3=t1^2 - t2^2
    P0=1        # optional common denominator
    m=1         # optional tracing index

Exit codes: 0 success, 1 usage or parse error, 2 assumption violated,
3 formula inapplicable, 4 internal consistency failure, 5 time budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import signal
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Iterator

from . import __version__
from .errors import AssumptionViolation, BudgetExceeded, ConsistencyError, OffsetDegError, ParseError
from .mvpoly import render
from .offset import (
    TH_VARS,
    CheckOutcome,
    Parametrization,
    associated_normal,
    build_projective_auxiliary,
    check_assumptions,
    extract_degree,
    generalized_resultant,
    known_input_notes,
    normalize,
    projectivize,
)
from .parse import parse_expression
from .verify import SampleConfig, identity_suite, oracle_suite, specialization_suite

log = logging.getLogger("offsetdeg")

BUDGET_ENV = "OFFSETDEG_MAX_SECONDS"
SURFACE_KEYS = ("label", "P1", "P2", "P3", "P0", "m")


@dataclass(frozen=True)
class SurfaceInput:
    P1: str
    P2: str
    P3: str
    P0: str = "1"
    tracing_index: int | None = None
    label: str = ""


@dataclass(frozen=True)
class RunOptions:
    checks: str = "fast"
    seed: int = 0
    trials: int = 25
    format: str = "text"
    timing: bool = False


@dataclass
class RunResult:
    exit_code: int
    report: dict
    error: str = ""
    artifacts: dict = field(default_factory=dict)


def parse_surface(text: str) -> SurfaceInput:
    """Parse the ``key=value`` surface format."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in SURFACE_KEYS:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ParseError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value
    missing = [k for k in ("P1", "P2", "P3") if k not in values]
    if missing:
        raise ParseError(f"missing required key(s): {', '.join(missing)}")
    m = None
    if "m" in values:
        try:
            m = int(values["m"])
        except ValueError:
            raise ParseError(f"tracing index m must be a positive integer, got {values['m']!r}") from None
        if m < 1:
            raise ParseError(f"tracing index m must be a positive integer, got {m}")
    return SurfaceInput(values["P1"], values["P2"], values["P3"], values.get("P0", "1"), m, values.get("label", ""))


def parametrization_from_input(inp: SurfaceInput) -> Parametrization:
    comps = [parse_expression(t) for t in (inp.P1, inp.P2, inp.P3)]
    den = parse_expression(inp.P0)
    if not den.num:
        raise ParseError("the denominator P0 is zero")
    return normalize(comps, den)


# -- time budget ----------------------------------------------------------------


class _Budget:
    def __init__(self, seconds: float | None):
        self.deadline = None if seconds is None else time.monotonic() + seconds
        self.seconds = seconds

    def check(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"time budget of {self.seconds:g} s exceeded")


def _budget_seconds() -> float | None:
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return None
    try:
        value = float(raw)
    except ValueError:
        raise OffsetDegError(f"{BUDGET_ENV} must be a number of seconds, got {raw!r}") from None
    if value <= 0:
        raise OffsetDegError(f"{BUDGET_ENV} must be positive")
    return value


@contextmanager
def _alarm(seconds: float | None) -> Iterator[None]:
    """Interrupt long stages with SIGALRM when running on the main thread."""
    usable = seconds is not None and hasattr(signal, "setitimer")
    if usable:
        try:
            def handler(signum, frame):
                raise BudgetExceeded(f"time budget of {seconds:g} s exceeded")

            previous = signal.signal(signal.SIGALRM, handler)
        except ValueError:  # not the main thread
            usable = False
    if not usable:
        yield
        return
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, previous)


# -- pipeline ---------------------------------------------------------------------


def _vec(v) -> list[str]:
    return [render(p) for p in v]


def run(inp: SurfaceInput, opts: RunOptions) -> RunResult:
    """Run the full pipeline; never raises for input-dependent failures."""
    if opts.checks not in ("none", "fast", "all"):
        raise OffsetDegError(f"unknown check level {opts.checks!r}")
    report: dict = {"label": inp.label, "status": "ok"}
    timings: dict[str, int] = {}
    checks: list[CheckOutcome] = []
    warnings: list[str] = []
    artifacts: dict = {}

    def finish(code: int, err: Exception | None = None) -> RunResult:
        report["checks"] = [c.as_dict() for c in checks]
        report["warnings"] = warnings
        report["timings_ms"] = timings if opts.timing else {}
        msg = ""
        if err is not None:
            msg = str(err)
            report["status"] = "error"
            report["error"] = {"type": type(err).__name__, "message": msg, "exit_code": code}
            diag = getattr(err, "diagnostics", None)
            if diag:
                report["error"]["diagnostics"] = diag
        return RunResult(code, report, msg, artifacts)

    try:
        budget = _Budget(_budget_seconds())
        cfg = SampleConfig(seed=opts.seed, trials=opts.trials)
    except OffsetDegError as e:
        return finish(e.exit_code, e)

    @contextmanager
    def stage(name: str) -> Iterator[None]:
        budget.check()
        t = time.perf_counter()
        yield
        timings[name] = round((time.perf_counter() - t) * 1000)

    try:
        with _alarm(budget.seconds):
            with stage("normalize"):
                P = parametrization_from_input(inp)
            artifacts["P"] = P
            report["P"] = _vec(P.components)
            report["m"] = inp.tracing_index
            warnings.extend(known_input_notes(P))
            with stage("check_assumptions"):
                try:
                    outcomes = check_assumptions(P)
                except AssumptionViolation as e:
                    checks.append(CheckOutcome("assumptions", "fail", str(e)))
                    raise
            checks.extend(outcomes)
            warnings.extend(f"{c.name}: {c.detail}" for c in outcomes if c.status == "warn")
            with stage("projectivize"):
                Ph = projectivize(P)
            report["d_P"] = Ph.d_P
            with stage("normal"):
                normal = associated_normal(P, Ph)
            report["N"] = _vec(normal.N)
            report["H"] = render(normal.H)
            with stage("auxiliary"):
                A = build_projective_auxiliary(Ph, normal)
            artifacts.update(Ph=Ph, normal=normal, A=A)
            report["Q"] = render(A.Q)
            report["Q0"] = render(A.Q0)
            report["T"] = [{"deg_t0": t.degree_in("t0"), "deg_total": t.degree(TH_VARS)} for t in A.T]
            report["T0"] = render(A.T[0])
            with stage("resultant"):
                R = generalized_resultant(A)
            artifacts["R"] = R
            with stage("extract_degree"):
                deg = extract_degree(R, inp.tracing_index)
            artifacts["degree"] = deg
            checks.extend(deg.checks)
            report.update(
                deg_R=deg.deg_R,
                deg_M1=deg.deg_M1,
                deg_M2=deg.deg_M2,
                deg_M3=deg.deg_M3,
                M1=render(deg.M1),
                m_delta=deg.m_delta,
                delta=deg.delta,
            )
            suites = []
            if opts.checks in ("fast", "all"):
                with stage("identity_suite"):
                    suites.append(identity_suite(P, normal, A, Ph))
            if opts.checks == "all":
                with stage("specialization_suite"):
                    suites.append(specialization_suite(A, R, cfg))
                with stage("oracle_suite"):
                    suites.append(oracle_suite(cfg))
            for s in suites:
                checks.append(CheckOutcome(s.name, s.status, s.detail()))
                if s.inconclusive:
                    warnings.append(f"{s.name}: too many degenerate draws, result inconclusive")
            failed = [s for s in suites if s.failed]
            if failed:
                first = failed[0]
                raise ConsistencyError(f"{first.name} failed: {first.failures[0]}")
            budget.check()
    except OffsetDegError as e:
        return finish(e.exit_code, e)
    return finish(0)


# -- rendering ----------------------------------------------------------------------


def format_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def format_text(report: dict) -> str:
    lines = []
    if report.get("label"):
        lines.append(f"surface: {report['label']}")
    if "P" in report:
        for name, p in zip(("P0", "P1", "P2", "P3"), report["P"]):
            lines.append(f"{name} = {p}")
    if "d_P" in report:
        lines.append(f"d_P = {report['d_P']}")
    if "N" in report:
        lines.append(f"N = ({', '.join(report['N'])})")
    if "Q" in report:
        lines.append(f"Q = {report['Q']}")
        lines.append(f"Q0 = {report['Q0']}")
    if "m_delta" in report:
        lines.append(
            f"deg R = {report['deg_R']} = {report['deg_M1']} (M1) + {report['deg_M2']} (M2) + {report['deg_M3']} (M3)"
        )
        lines.append(f"m*delta = {report['m_delta']}")
        if report.get("delta") is not None:
            lines.append(f"delta = {report['delta']} (m = {report['m']})")
    for c in report.get("checks", []):
        detail = f": {c['detail']}" if c["detail"] else ""
        lines.append(f"check {c['name']} {c['status']}{detail}")
    for w in report.get("warnings", []):
        lines.append(f"warning: {w}")
    for stage_name, ms in report.get("timings_ms", {}).items():
        lines.append(f"time {stage_name} {ms} ms")
    if report.get("status") == "error":
        lines.append(f"error: {report['error']['message']}")
    return "\n".join(lines) + "\n"


# -- argument handling ----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="offsetdeg", description="Total degree of the generic offset to a rational surface.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("file", help="surface file (key=value lines)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=_positive, default=25)
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--timing", action="store_true", help="record per-stage wall clock times")

    compute = sub.add_parser("compute", help="compute m*delta")
    common(compute)
    compute.add_argument("--checks", choices=("none", "fast", "all"), default="fast")
    verify = sub.add_parser("verify", help="compute m*delta with every check enabled")
    common(verify)
    parse = sub.add_parser("parse", help="echo an expression in canonical form")
    parse.add_argument("expression")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    if args.command == "parse":
        try:
            print(parse_expression(args.expression))
        except OffsetDegError as e:
            print(f"error: {e}", file=sys.stderr)
            return e.exit_code
        return 0
    try:
        with open(args.file, encoding="utf-8") as fh:
            inp = parse_surface(fh.read())
    except OSError as e:
        print(f"error: cannot read {args.file}: {e.strerror}", file=sys.stderr)
        return 1
    except OffsetDegError as e:
        print(f"error: {args.file}: {e}", file=sys.stderr)
        return e.exit_code
    checks = "all" if args.command == "verify" else args.checks
    opts = RunOptions(checks=checks, seed=args.seed, trials=args.trials, format=args.format, timing=args.timing)
    result = run(inp, opts)
    out = format_json(result.report) if opts.format == "json" else format_text(result.report)
    sys.stdout.write(out)
    if result.exit_code:
        print(f"error: {result.error}", file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
