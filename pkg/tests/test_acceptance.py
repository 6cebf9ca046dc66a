"""Acceptance criteria, one test each; a summary line per criterion is printed at the end of the run."""

from __future__ import annotations

import random
import re
import time

import pytest

from conftest import FIXTURES, poly
from offsetdeg.cli import RunOptions, format_json, parse_surface, run
from offsetdeg.errors import OffsetDegError
from offsetdeg.mvpoly import Universe
from offsetdeg.offset import (
    associated_normal,
    build_projective_auxiliary,
    check_assumptions,
    extract_degree,
    generalized_resultant,
    normalize,
    projectivize,
)
from offsetdeg.parse import parse_expression
from offsetdeg.verify import (
    SampleConfig,
    identity_suite,
    oracle_suite,
    random_parametrization,
    specialization_suite,
)

HYPERBOLIC_T0 = "2*k1*t2*t0^2 - k1*t2*t1^2 + k1*t2^3 - t1*t0^2*k2 + 5*t1*t0*k3*t2 - 2*k2*t1^3 + 2*t1*k2*t2^2"
EXAMPLES = ("hyperbolic", "circular", "whitney")


def _load(name):
    return parse_surface((FIXTURES / f"{name}.surf").read_text(encoding="utf-8"))


def _compute(name, checks="fast"):
    t = time.perf_counter()
    result = run(_load(name), RunOptions(checks=checks, seed=0))
    return result, time.perf_counter() - t


def _up_to_sign(got, expected):
    exp = [poly(e) for e in expected]
    return got == exp or [-g for g in got] == exp


class _Criterion:
    def __init__(self, log, name):
        self.log, self.name, self.detail = log, name, ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        ok = exc_type is None
        detail = self.detail if ok else f"{self.detail} [{exc_type.__name__}: {exc}]".strip()
        self.log.append((self.name, ok, detail))
        return False


def test_hyperbolic_paraboloid(acceptance_log):
    with _Criterion(acceptance_log, "1 hyperbolic paraboloid") as c:
        result, secs = _compute("hyperbolic")
        rep, art = result.report, result.artifacts
        c.detail = f"m_delta={rep.get('m_delta')} in {secs:.2f} s"
        assert result.exit_code == 0
        assert rep["m_delta"] == 10
        assert secs <= 120
        assert _up_to_sign([poly(p) for p in rep["N"]], ("-2*t1", "t2", "t0"))
        T0 = art["A"].T[0]
        assert T0 == poly(HYPERBOLIC_T0) or T0 == -poly(HYPERBOLIC_T0)


def test_circular_paraboloid(acceptance_log):
    with _Criterion(acceptance_log, "2 circular paraboloid") as c:
        result, secs = _compute("circular")
        rep = result.report
        c.detail = f"m_delta={rep.get('m_delta')}, delta={rep.get('delta')} (m=3) in {secs:.2f} s"
        assert result.exit_code == 0
        assert rep["m_delta"] == 18
        assert rep["delta"] == 6 and rep["m"] == 3
        assert secs <= 300
        assert _up_to_sign([poly(p) for p in rep["N"]], ("-2*t1^3", "-2*t0^2*t2", "t0^3"))


def _generic_offset_x_degree():
    raw = (FIXTURES / "whitney_generic_offset.txt").read_text(encoding="utf-8")
    body = raw.split("=", 1)[1].rsplit("$", 1)[0].replace("{\\,}", "*")
    body = re.sub(r"x_(\d)", r"x\1", body)
    body = re.sub(r"\^\{(\d+)\}", r"^\1", body)
    U = Universe(("d", "x1", "x2", "x3"))
    return parse_expression(body, U.names, U).num.degree(["x1", "x2", "x3"])


def test_whitney_umbrella(acceptance_log):
    with _Criterion(acceptance_log, "3 Whitney umbrella") as c:
        result, secs = _compute("whitney")
        rep = result.report
        gdeg = _generic_offset_x_degree()
        c.detail = f"m_delta={rep.get('m_delta')} in {secs:.2f} s, stored g has x-degree {gdeg}"
        assert result.exit_code == 0
        assert rep["m_delta"] == 14
        assert secs <= 600
        assert any("typo" in w for w in rep["warnings"])
        assert gdeg == 14


def test_sphere_rejection(acceptance_log):
    with _Criterion(acceptance_log, "4 sphere rejection") as c:
        result, _ = _compute("sphere")
        c.detail = f"exit {result.exit_code}: {result.error}"
        assert result.exit_code == 2
        assert "sphere" in result.error and "origin" in result.error


def test_oracle_suite_200(acceptance_log):
    with _Criterion(acceptance_log, "5a oracle suite") as c:
        rep = oracle_suite(SampleConfig(seed=0, trials=200))
        c.detail = f"200 resultant trials plus gcd and content checks: {rep.detail()}"
        assert rep.failed == 0
        assert rep.passed >= 200


def test_identity_suite_random(acceptance_log):
    with _Criterion(acceptance_log, "5b identity suite on random surfaces") as c:
        rng = random.Random(2024)
        accepted = rejected = 0
        while accepted < 50:
            P0, P1, P2, P3 = random_parametrization(rng, max_degree=3, bound=5)
            try:
                P = normalize([P1, P2, P3], P0)
                check_assumptions(P)
            except OffsetDegError:
                rejected += 1
                continue
            Ph = projectivize(P)
            normal = associated_normal(P, Ph)
            # the identities hold whether or not the degree formula applies
            A = build_projective_auxiliary(Ph, normal, check=False)
            rep = identity_suite(P, normal, A, Ph)
            assert rep.failed == 0
            accepted += 1
        c.detail = f"{accepted} surfaces passed, {rejected} rejected by check_assumptions"


def test_specialization_suite_examples(acceptance_log):
    with _Criterion(acceptance_log, "5c specialization suite") as c:
        parts = []
        for name in EXAMPLES:
            art = _compute(name, checks="none")[0].artifacts
            rep = specialization_suite(art["A"], art["R"], SampleConfig(seed=0, trials=50))
            parts.append(f"{name} {rep.detail()}")
            c.detail = "; ".join(parts)
            assert rep.failed == 0 and rep.passed == 50
            assert rep.degenerate <= 5


def _factor_check(P):
    Ph = projectivize(P)
    A = build_projective_auxiliary(Ph, associated_normal(P, Ph))
    R = generalized_resultant(A)
    rep = extract_degree(R)
    rest = R.exact_div(rep.M1).exact_div(rep.M2)
    assert rest == rep.M3
    assert rep.M1 * rep.M2 * rep.M3 == R
    return rep.m_delta


def test_factorization_every_run(acceptance_log):
    with _Criterion(acceptance_log, "5d factorization by exact division") as c:
        surfaces = []
        for name in EXAMPLES:
            inp = _load(name)
            P = normalize([parse_expression(t) for t in (inp.P1, inp.P2, inp.P3)])
            surfaces += [P, P.scaled(7)]
        surfaces += [
            normalize([parse_expression(t) for t in ("t1", "t2", "t1 + t2")]),
            normalize([parse_expression(t) for t in ("t1", "t2", "t1^2 + t2^2")]),
        ]
        degrees = [_factor_check(P) for P in surfaces]
        c.detail = f"{len(surfaces)} runs, m_delta {degrees}"


def test_scaling_invariance(acceptance_log):
    with _Criterion(acceptance_log, "5e scaling by 7") as c:
        pairs = []
        for name in EXAMPLES:
            inp = _load(name)
            P = normalize([parse_expression(t) for t in (inp.P1, inp.P2, inp.P3)])
            pairs.append((_factor_check(P), _factor_check(P.scaled(7))))
        c.detail = ", ".join(f"{n} {a}->{b}" for n, (a, b) in zip(EXAMPLES, pairs))
        assert all(a == b for a, b in pairs)


@pytest.mark.parametrize("checks", ["all"])
def test_determinism(acceptance_log, checks):
    with _Criterion(acceptance_log, "6 determinism") as c:
        outputs = []
        for name in EXAMPLES + ("sphere",):
            runs = [format_json(run(_load(name), RunOptions(checks=checks, seed=17, trials=10)).report) for _ in range(2)]
            outputs.append(runs[0] == runs[1])
        c.detail = f"{sum(outputs)}/{len(outputs)} inputs byte-identical"
        assert all(outputs)
