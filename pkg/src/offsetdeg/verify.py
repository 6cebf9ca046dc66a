"""Property checks behind a degree computation.

Three suites:

* :func:`identity_suite` re-derives the defining identities of the auxiliary
  system from scratch and compares exactly;
* :func:`specialization_suite` checks that the resultant commutes with random
  rational specializations of ``(d, k, c)``;
* :func:`oracle_suite` compares the fast elimination routines with slow,
  independent ones on random small inputs.

All randomness comes from ``random.Random(seed)``, so a suite is a pure
function of its inputs and :class:`SampleConfig`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .eliminate import content, gcd, gcd_prs, resultant, resultant_oracle
from .errors import ConsistencyError, OffsetDegError
from .mvpoly import DEFAULT_UNIVERSE, MultiPoly, Universe
from .offset import (
    C_VARS,
    DK_VARS,
    AuxiliarySystem,
    NormalData,
    Parametrization,
    ProjectiveParametrization,
    build_affine_auxiliary,
    cross,
    dot,
    projectivize,
    tangent_numerators,
)

SPEC_VARS = DK_VARS + C_VARS


@dataclass(frozen=True)
class SampleConfig:
    seed: int = 0
    trials: int = 25
    bound: int = 5

    def __post_init__(self):
        if not isinstance(self.seed, int) or not -(2**63) <= self.seed < 2**64:
            raise OffsetDegError("seed must be a 64-bit integer")
        if self.trials < 1:
            raise OffsetDegError("trials must be at least 1")
        if self.bound < 2:
            raise OffsetDegError("bound must be at least 2")

    def rng(self) -> random.Random:
        return random.Random(self.seed)


@dataclass
class SuiteReport:
    name: str
    passed: int = 0
    failed: int = 0
    degenerate: int = 0
    inconclusive: bool = False
    failures: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.failed:
            return "fail"
        if self.inconclusive:
            return "inconclusive"
        return "pass"

    def detail(self) -> str:
        parts = [f"{self.passed} passed", f"{self.failed} failed"]
        if self.degenerate:
            parts.append(f"{self.degenerate} degenerate draws")
        return ", ".join(parts)

    def record(self, ok: bool, witness: str = "") -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(witness)


# -- identities -----------------------------------------------------------------


def identity_suite(
    P: Parametrization,
    normal: NormalData,
    A: AuxiliarySystem,
    Ph: ProjectiveParametrization | None = None,
) -> SuiteReport:
    """Exact identities of the normal data and auxiliary system.

    Raises :class:`ConsistencyError` naming the first identity that fails.
    """
    Ph = Ph or projectivize(P)
    U = P.universe
    zero = MultiPoly.zero(U)
    d = MultiPoly.variable("d", U)
    k = [MultiPoly.variable(v, U) for v in ("k1", "k2", "k3")]
    n, N = normal.n, normal.N
    checks: list[tuple[str, bool]] = []

    checks.append(("syzygy X*U1 + Y*U2 + Z*U3 = 0", dot(Ph.spatial, A.U) == zero))
    checks.append(("syzygy N1*U1 + N2*U2 + N3*U3 = 0", dot(N, A.U) == zero))
    for var in ("t1", "t2"):
        tan = tangent_numerators(P.numerators, P.P0, var)
        checks.append((f"orthogonality n . dP/d{var} = 0", dot(n, tan) == zero))
        tan_h = tangent_numerators(Ph.spatial, Ph.W, var)
        checks.append((f"orthogonality N . dPh/d{var} = 0", dot(N, tan_h) == zero))
    checks.append(("h = n1^2 + n2^2 + n3^2", normal.h == dot(n, n)))
    checks.append(("H = N1^2 + N2^2 + N3^2", normal.H == dot(N, N)))
    Mh = cross(k, Ph.spatial)
    Gh = cross(k, N)
    for i in range(3):
        S = normal.H * Mh[i] ** 2 - (d * Ph.W) ** 2 * Gh[i] ** 2
        checks.append((f"T{i + 1}*Q = H*Mh{i + 1}^2 - d^2*W^2*Gh{i + 1}^2", A.T[i + 1] * A.Q == S))
    S0 = dot(k, cross(Ph.spatial, N))
    checks.append(("T0*Q0 = S0", A.T[0] * A.Q0 == S0))
    checks.append(("T0 = k1*U1 + k2*U2 + k3*U3", A.T[0] == dot(k, A.U)))
    s = build_affine_auxiliary(P, normal)
    for i in range(1, 4):
        lhs = A.T[i].evaluate("t0", 1) * A.Q.evaluate("t0", 1)
        checks.append((f"T{i}(t0=1)*Q(t0=1) = s{i}", lhs == s[i]))
    s0h = A.T[0].evaluate("t0", 1) * A.Q0.evaluate("t0", 1)
    checks.append(("T0(t0=1)*Q0(t0=1) = +-s0", s0h == s[0] or s0h == -s[0]))

    report = SuiteReport("identity_suite")
    for name, ok in checks:
        report.record(ok, name)
        if not ok:
            raise ConsistencyError(f"identity failed: {name}")
    return report


# -- specialization -------------------------------------------------------------


def _draw(rng: random.Random, bound: int) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-bound, bound)
    return Fraction(num, rng.randint(1, bound))


def is_degenerate(
    bindings: dict[str, Fraction], T0: MultiPoly, T: MultiPoly, F: MultiPoly | None = None, G: MultiPoly | None = None
) -> bool:
    """A draw is degenerate when ``d`` or some ``k_i`` vanishes or a leading ``t0``-coefficient dies."""
    if any(bindings.get(v, 1) == 0 for v in ("d", "k1", "k2", "k3")):
        return True
    if F is None:
        F = T0.substitute(bindings)[0]
    if G is None:
        G = T.substitute(bindings)[0]
    return not F or not G or F.degree_in("t0") != T0.degree_in("t0") or G.degree_in("t0") != T.degree_in("t0")


def specialization_suite(A: AuxiliarySystem, R: MultiPoly, cfg: SampleConfig) -> SuiteReport:
    """``R`` evaluated at random ``(d, k, c)`` equals the resultant of the evaluated inputs."""
    rng = cfg.rng()
    T0, T = A.T[0], A.T_combination
    report = SuiteReport("specialization_suite")
    max_draws = 10 * cfg.trials
    draws = 0
    while report.passed + report.failed < cfg.trials:
        if draws >= max_draws:
            report.inconclusive = True
            break
        draws += 1
        bindings = {v: _draw(rng, cfg.bound) for v in SPEC_VARS}
        F, a = T0.substitute(bindings)
        G, b = T.substitute(bindings)
        if is_degenerate(bindings, T0, T, F, G):
            report.degenerate += 1
            continue
        Rn, Rd = R.substitute(bindings)
        m, n = F.degree_in("t0"), G.degree_in("t0")
        # Res(F/a, G/b) = Res(F, G) / (a^n * b^m)
        rhs = resultant(F, G, "t0") if (m or n) else MultiPoly.constant(1, R.universe)
        ok = Rn.scale(a**n * b**m) == rhs.scale(Rd)
        report.record(ok, "witness " + ", ".join(f"{v}={bindings[v]}" for v in SPEC_VARS))
    return report


# -- oracle comparisons ---------------------------------------------------------


def random_poly(
    rng: random.Random,
    variables: tuple[str, ...],
    max_degree: int,
    bound: int,
    terms: int,
    universe: Universe = DEFAULT_UNIVERSE,
) -> MultiPoly:
    """Sparse random polynomial with at most ``terms`` terms of total degree <= ``max_degree``.

    Every coefficient lies in ``[-bound, bound]``.
    """
    idx = [universe.index(v) for v in variables]
    data: dict[tuple[int, ...], int] = {}
    for _ in range(terms):
        exps = [0] * len(universe)
        budget = rng.randint(0, max_degree)
        for _ in range(budget):
            exps[rng.choice(idx)] += 1
        key = tuple(exps)
        data[key] = rng.randint(-bound, bound)
    return MultiPoly.from_dict(data, universe)


def _random_in_t0(rng: random.Random, deg: int, bound: int, U: Universe) -> MultiPoly:
    coeffs = [random_poly(rng, ("t1", "d"), 2, bound, 3, U) for _ in range(deg)]
    lead = MultiPoly.zero(U)
    while not lead:
        lead = random_poly(rng, ("t1", "d"), 2, bound, 3, U)
    return MultiPoly.from_univariate(coeffs + [lead], "t0", U)


def oracle_suite(cfg: SampleConfig, universe: Universe = DEFAULT_UNIVERSE) -> SuiteReport:
    """Fast routines against independent slow ones on ``cfg.trials`` random cases each."""
    rng = cfg.rng()
    U = universe
    report = SuiteReport("oracle_suite")
    pool = ("t1", "t2", "d", "k1")
    for trial in range(cfg.trials):
        m = rng.randint(1, 4)
        n = rng.randint(1, 8 - m)
        f = _random_in_t0(rng, m, cfg.bound, U)
        g = _random_in_t0(rng, n, cfg.bound, U)
        report.record(
            resultant(f, g, "t0") == resultant_oracle(f, g, "t0"),
            f"resultant trial {trial}: f = {f}; g = {g}",
        )

        a, b, c = (random_poly(rng, pool, 3, cfg.bound, 4, U) for _ in range(3))
        if a and b and c:
            ga, gb = c * a, c * b
            h = gcd(ga, gb)
            ok = c.divides(h) and h.divides(ga) and h.divides(gb) and h == gcd_prs(ga, gb)
            report.record(ok, f"gcd trial {trial}: a = {a}; b = {b}; c = {c}")

        p = random_poly(rng, pool, 4, cfg.bound, 6, U)
        if p:
            subset = tuple(v for v in pool if rng.random() < 0.5) or (pool[0],)
            co = content(p, subset)
            report.record(co * p.exact_div(co) == p, f"content trial {trial}: p = {p}; vars = {subset}")
    return report


def random_parametrization(
    rng: random.Random, max_degree: int = 3, bound: int = 5, universe: Universe = DEFAULT_UNIVERSE
) -> tuple[MultiPoly, MultiPoly, MultiPoly, MultiPoly]:
    """Random ``(P0, P1, P2, P3)`` in ``(t1, t2)``; ``P0`` is nonzero."""
    def draw() -> MultiPoly:
        return random_poly(rng, ("t1", "t2"), max_degree, bound, rng.randint(1, 4), universe)

    P0 = draw()
    while not P0:
        P0 = draw()
    return (P0, draw(), draw(), draw())
