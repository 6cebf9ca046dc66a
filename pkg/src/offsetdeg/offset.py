"""Total degree of the generic offset of a rational surface.

Pipeline: :func:`normalize` -> :func:`check_assumptions` -> :func:`projectivize`
-> :func:`associated_normal` -> :func:`build_projective_auxiliary` ->
:func:`generalized_resultant` -> :func:`extract_degree`.

The degree is read off the resultant ``R = Res_t0(T0, c1*T1 + c2*T2 + c3*T3)``:
with ``N1 = Con_c(R)`` the factor ``M2 = PP_(d,k)(N1)`` has total degree
``m * delta`` in ``(t1, t2)``, where ``m`` is the tracing index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from .eliminate import content, gcd, gcd_many, resultant
from .errors import (
    AssumptionViolation,
    ConsistencyError,
    DegenerateParametrization,
    FormulaInapplicable,
    InexactDivision,
    OffsetDegError,
)
from .mvpoly import DEFAULT_UNIVERSE, MultiPoly, Universe
from .parse import RationalPoly

T_VARS = ("t1", "t2")
TH_VARS = ("t0", "t1", "t2")
DK_VARS = ("d", "k1", "k2", "k3")
C_VARS = ("c1", "c2", "c3")

Component = Union[MultiPoly, RationalPoly, int, tuple]


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    status: str  # pass | fail | warn | info | inconclusive | skipped
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass(frozen=True)
class Parametrization:
    """``(P1/P0, P2/P0, P3/P0)`` with integer coefficients and ``gcd(P0, ..., P3) = 1``."""

    P0: MultiPoly
    P1: MultiPoly
    P2: MultiPoly
    P3: MultiPoly

    @property
    def numerators(self) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
        return (self.P1, self.P2, self.P3)

    @property
    def components(self) -> tuple[MultiPoly, MultiPoly, MultiPoly, MultiPoly]:
        return (self.P0, self.P1, self.P2, self.P3)

    @property
    def universe(self) -> Universe:
        return self.P0.universe

    def scaled(self, c: int) -> Parametrization:
        """Same surface with every component multiplied by ``c`` (not re-normalized)."""
        return Parametrization(*(p.scale(c) for p in self.components))


@dataclass(frozen=True)
class ProjectiveParametrization:
    X: MultiPoly
    Y: MultiPoly
    Z: MultiPoly
    W: MultiPoly
    d_P: int

    @property
    def spatial(self) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
        return (self.X, self.Y, self.Z)


@dataclass(frozen=True)
class NormalData:
    n: tuple[MultiPoly, MultiPoly, MultiPoly]
    N: tuple[MultiPoly, MultiPoly, MultiPoly]
    h: MultiPoly
    H: MultiPoly


@dataclass(frozen=True)
class AuxiliarySystem:
    Q0: MultiPoly
    Q: MultiPoly
    U: tuple[MultiPoly, MultiPoly, MultiPoly]
    T: tuple[MultiPoly, MultiPoly, MultiPoly, MultiPoly]
    S: tuple[MultiPoly, MultiPoly, MultiPoly, MultiPoly]
    Mh: tuple[MultiPoly, MultiPoly, MultiPoly]
    Gh: tuple[MultiPoly, MultiPoly, MultiPoly]

    @property
    def T_combination(self) -> MultiPoly:
        U = self.Q.universe
        c = [MultiPoly.variable(v, U) for v in C_VARS]
        return c[0] * self.T[1] + c[1] * self.T[2] + c[2] * self.T[3]


@dataclass
class DegreeReport:
    m_delta: int
    delta: int | None
    deg_R: int
    deg_M1: int
    deg_M2: int
    deg_M3: int
    M1: MultiPoly
    M2: MultiPoly
    M3: MultiPoly
    checks: list[CheckOutcome] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    timings_ms: dict[str, int] = field(default_factory=dict)


# -- helpers ------------------------------------------------------------------


def cross(u: Sequence[MultiPoly], v: Sequence[MultiPoly]) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """Right-handed cross product ``u x v``."""
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u: Sequence[MultiPoly], v: Sequence[MultiPoly]) -> MultiPoly:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _sign_normalized(vec: Sequence[MultiPoly]) -> tuple[MultiPoly, ...]:
    for p in vec:
        if p:
            if p.leading_coefficient() < 0:
                return tuple(-q for q in vec)
            break
    return tuple(vec)


def _reduce_vector(vec: Sequence[MultiPoly]) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    g = gcd_many(vec)
    return _sign_normalized([p.exact_div(g) for p in vec])


def tangent_numerators(num: Sequence[MultiPoly], den: MultiPoly, var: str) -> tuple[MultiPoly, ...]:
    """Numerators of ``d/dvar (num_j / den)`` over the common denominator ``den**2``."""
    dden = den.partial_derivative(var)
    return tuple(p.partial_derivative(var) * den - p * dden for p in num)


def _as_fraction(item: Component, U: Universe) -> tuple[MultiPoly, MultiPoly]:
    if isinstance(item, tuple):
        a, b = item
        na, da = _as_fraction(a, U)
        nb, db = _as_fraction(b, U)
        return na * db, da * nb
    if isinstance(item, RationalPoly):
        return item.num, MultiPoly.constant(item.den, U)
    if isinstance(item, int):
        return MultiPoly.constant(item, U), MultiPoly.constant(1, U)
    return item, MultiPoly.constant(1, U)


# -- pipeline -----------------------------------------------------------------


def normalize(
    components: Sequence[Component],
    denominator: Component | None = None,
    universe: Universe = DEFAULT_UNIVERSE,
) -> Parametrization:
    """Bring three rational functions of ``(t1, t2)`` to a :class:`Parametrization`.

    Each component may be a :class:`MultiPoly`, a :class:`RationalPoly`, an int
    or a ``(numerator, denominator)`` pair of those.  ``denominator`` divides
    all three components.
    """
    if len(components) != 3:
        raise OffsetDegError(f"expected three components, got {len(components)}")
    fracs = [_as_fraction(c, universe) for c in components]
    if denominator is not None:
        dn, dd = _as_fraction(denominator, universe)
        fracs = [(n * dd, d * dn) for n, d in fracs]
    for n, d in fracs:
        if not d:
            raise OffsetDegError("zero denominator")
        bad = set(n.variables()) | set(d.variables())
        bad -= set(T_VARS)
        if bad:
            raise OffsetDegError(f"components may only use t1, t2 (found {', '.join(sorted(bad))})")
    L = fracs[0][1]
    for _, d in fracs[1:]:
        L = (L * d).exact_div(gcd(L, d))
    nums = [n * L.exact_div(d) for n, d in fracs]
    comps = [L] + nums
    g = gcd_many(comps)
    comps = [p.exact_div(g) for p in comps]
    if comps[0].leading_coefficient() < 0:
        comps = [-p for p in comps]
    P = Parametrization(*comps)
    if all(_is_constant_ratio(p, P.P0) for p in P.numerators):
        raise DegenerateParametrization("constant map: every component is constant")
    return P


def _is_constant_ratio(p: MultiPoly, q: MultiPoly) -> bool:
    if not p:
        return True
    return p.scale(q.leading_coefficient()) == q.scale(p.leading_coefficient())


def projectivize(P: Parametrization) -> ProjectiveParametrization:
    """Homogenize with ``t0`` to the common degree ``d_P`` and strip common powers of ``t0``."""
    d_P = max(p.total_degree() for p in P.components if p)
    comps = [p.homogenize("t0", d_P) for p in P.components]
    shift = min(p.min_degree_in("t0") for p in comps if p)
    if shift:
        t0s = MultiPoly.variable("t0", P.universe) ** shift
        comps = [p.exact_div(t0s) for p in comps]
        d_P -= shift
    W, X, Y, Z = comps
    return ProjectiveParametrization(X, Y, Z, W, d_P)


def associated_normal(P: Parametrization, Ph: ProjectiveParametrization) -> NormalData:
    """Affine normal ``n`` and homogeneous normal ``N`` with their hodographs."""
    raw = cross(tangent_numerators(P.numerators, P.P0, "t1"), tangent_numerators(P.numerators, P.P0, "t2"))
    if not any(raw):
        raise DegenerateParametrization("the normal vector vanishes identically (zero hodograph)")
    n = _reduce_vector(raw)
    raw_h = cross(tangent_numerators(Ph.spatial, Ph.W, "t1"), tangent_numerators(Ph.spatial, Ph.W, "t2"))
    if not any(raw_h):
        raise DegenerateParametrization("the homogeneous normal vector vanishes identically")
    N = _reduce_vector(raw_h)
    h = dot(n, n)
    H = dot(N, N)
    if not h or not H:
        raise DegenerateParametrization("the normal hodograph vanishes identically")
    return NormalData(n, N, h, H)


def _M(k: Sequence[MultiPoly], v: Sequence[MultiPoly]) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """``(k2*v3 - k3*v2, k3*v1 - k1*v3, k1*v2 - k2*v1)``, i.e. ``k x v``."""
    return cross(k, v)


def _kd(U: Universe) -> tuple[MultiPoly, list[MultiPoly]]:
    return MultiPoly.variable("d", U), [MultiPoly.variable(v, U) for v in ("k1", "k2", "k3")]


def build_affine_auxiliary(P: Parametrization, normal: NormalData) -> tuple[MultiPoly, MultiPoly, MultiPoly, MultiPoly]:
    """``(s0, s1, s2, s3)`` of the affine auxiliary system."""
    d, k = _kd(P.universe)
    n, h = normal.n, normal.h
    s0 = dot(k, cross(P.numerators, n))
    M = _M(k, P.numerators)
    G = _M(k, n)
    dP0sq = (d * P.P0) ** 2
    return (s0,) + tuple(h * M[i] ** 2 - dP0sq * G[i] ** 2 for i in range(3))


def build_projective_auxiliary(
    Ph: ProjectiveParametrization, normal: NormalData, check: bool = True
) -> AuxiliarySystem:
    """Projective auxiliary system.

    With ``check`` the hypotheses of the resultant step are enforced and a
    failure raises :class:`FormulaInapplicable`.
    """
    U_ = Ph.W.universe
    d, k = _kd(U_)
    N, H = normal.N, normal.H
    u = cross(Ph.spatial, N)
    if not any(u):
        raise FormulaInapplicable("position and normal vectors are parallel everywhere", {"u": "0"})
    Q0 = gcd_many(u)
    Us = tuple(p.exact_div(Q0) for p in u)
    S0 = dot(k, u)
    T0 = dot(k, Us)
    Mh = _M(k, Ph.spatial)
    Gh = _M(k, N)
    dWsq = (d * Ph.W) ** 2
    S = tuple(H * Mh[i] ** 2 - dWsq * Gh[i] ** 2 for i in range(3))
    Q = gcd(H, Ph.W**2)
    T = tuple(s.exact_div(Q) for s in S)
    A = AuxiliarySystem(Q0, Q, Us, (T0,) + T, (S0,) + S, Mh, Gh)
    if check:
        check_hypotheses(A, normal)
    return A


def check_hypotheses(A: AuxiliarySystem, normal: NormalData) -> None:
    """Hypotheses of the generalized resultant step; raise with diagnostics on failure."""
    T1, T2, T3 = A.T[1:]
    diag = {
        "deg_t0": [t.degree_in("t0") if t else None for t in A.T],
        "deg_total": [t.degree(TH_VARS) if t else None for t in A.T],
    }
    if not all(A.T):
        raise FormulaInapplicable("an auxiliary polynomial T_i vanishes identically", diag)
    if any(t.degree_in("t0") == 0 for t in (T1, T2, T3)):
        raise FormulaInapplicable("some T_i (i = 1, 2, 3) does not depend on t0", diag)
    degs = {t.degree(TH_VARS) for t in (T1, T2, T3)}
    if len(degs) != 1:
        raise FormulaInapplicable("T1, T2, T3 have different total degrees in (t0, t1, t2)", diag)
    g = gcd_many([T1, T2, T3])
    # integer content is a unit over Q
    if not g.is_constant:
        diag["gcd_T"] = str(g)
        raise FormulaInapplicable("gcd(T1, T2, T3) is not 1", diag)
    t0 = MultiPoly.variable("t0", A.Q.universe)
    if not any(not t0.divides(A.U[i]) and not t0.divides(A.T[i + 1]) for i in range(3)):
        raise FormulaInapplicable("t0 divides U_i or T_i for every i", diag)
    if all(t0.divides(p) for p in normal.N):
        raise FormulaInapplicable("t0 divides every component of N", diag)


def generalized_resultant(A: AuxiliarySystem) -> MultiPoly:
    """``Res_t0(T0, c1*T1 + c2*T2 + c3*T3)``."""
    T0, T = A.T[0], A.T_combination
    if T0.degree_in("t0") == 0 and T.degree_in("t0") == 0:
        raise FormulaInapplicable("T0 and T are both free of t0")
    return resultant(T0, T, "t0")


def split_resultant(R: MultiPoly) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """``(M1, M2, M3)`` with ``R = M1*M2*M3``; ``M2`` carries the offset degree."""
    N1 = content(R, C_VARS)
    M3 = R.exact_div(N1)
    M1 = content(N1, DK_VARS + C_VARS)
    M2 = N1.exact_div(M1)
    return M1, M2, M3


def extract_degree(R: MultiPoly, m: int | None = None) -> DegreeReport:
    """Factor ``R`` and read off ``m * delta``; the factorization is verified by exact division."""
    if not R:
        raise FormulaInapplicable("the resultant vanishes identically")
    if m is not None and m < 1:
        raise OffsetDegError("the tracing index must be a positive integer")
    M1, M2, M3 = split_resultant(R)
    checks = []
    try:
        ok = R.exact_div(M1 * M2) == M3
    except InexactDivision:
        ok = False
    if not ok:
        raise ConsistencyError("R != M1*M2*M3")
    checks.append(CheckOutcome("factorization", "pass", "R = M1*M2*M3 by exact division"))
    if any(M1.depends_on(v) for v in DK_VARS + C_VARS) or any(M2.depends_on(v) for v in C_VARS):
        raise ConsistencyError("M1 or M2 depends on eliminated parameters")
    if not all(M.is_homogeneous(T_VARS) for M in (R, M1, M2, M3)):
        raise ConsistencyError("R, M1, M2 or M3 is not homogeneous in (t1, t2)")
    checks.append(CheckOutcome("factor_shape", "pass", "M1, M2, M3 homogeneous in (t1, t2)"))
    degs = [M.degree(T_VARS) for M in (R, M1, M2, M3)]
    if degs[0] != degs[1] + degs[2] + degs[3]:
        raise ConsistencyError("deg R != deg M1 + deg M2 + deg M3")
    m_delta = degs[2]
    delta = None
    if m is not None:
        if m_delta % m:
            raise OffsetDegError(f"tracing index {m} does not divide m*delta = {m_delta}")
        delta = m_delta // m
    return DegreeReport(m_delta, delta, degs[0], degs[1], degs[2], degs[3], M1, M2, M3, checks)


# -- assumptions --------------------------------------------------------------


_WHITNEY_NOTE = (
    "Whitney umbrella: the widely reproduced parametrization (t1*t2, t2, t1) does not satisfy "
    "y1^2 - y2^2*y3 = 0; this input uses the corrected third component t1^2 (documented typo)"
)


def known_input_notes(P: Parametrization) -> list[str]:
    """Warnings attached to specific well-known inputs."""
    U = P.universe
    t1, t2 = MultiPoly.variable("t1", U), MultiPoly.variable("t2", U)
    one = MultiPoly.constant(1, U)
    notes = []
    if P.components == (one, t1 * t2, t2, t1**2):
        notes.append(_WHITNEY_NOTE)
    if P.components == (one, t1 * t2, t2, t1):
        notes.append(
            "Whitney umbrella: (t1*t2, t2, t1) does not satisfy y1^2 - y2^2*y3 = 0; "
            "the intended surface is (t1*t2, t2, t1^2) (documented typo)"
        )
    return notes


def is_origin_sphere(P: Parametrization) -> bool:
    """True when ``P1^2 + P2^2 + P3^2 = c * P0^2`` for a constant ``c``."""
    s = dot(P.numerators, P.numerators)
    q = s.try_div(P.P0**2)
    return q is not None and q.is_constant and bool(q)


def check_assumptions(P: Parametrization) -> list[CheckOutcome]:
    """Standing assumptions; raises :class:`AssumptionViolation` when one fails."""
    out = []
    if is_origin_sphere(P):
        raise AssumptionViolation("sphere check failed: the surface is a sphere centered at the origin")
    out.append(CheckOutcome("sphere", "pass", "not a sphere centered at the origin"))
    raw = cross(tangent_numerators(P.numerators, P.P0, "t1"), tangent_numerators(P.numerators, P.P0, "t2"))
    h = dot(raw, raw)
    if not h:
        raise DegenerateParametrization("hodograph check failed: the normal hodograph vanishes identically")
    out.append(CheckOutcome("hodograph", "pass", "normal hodograph is not identically zero"))
    Ph = projectivize(P)
    if not Ph.W.depends_on("t0") and sum(p.depends_on("t0") for p in Ph.spatial) == 1:
        out.append(CheckOutcome("cylinder", "warn", "W is free of t0 and exactly one of X, Y, Z depends on t0"))
    else:
        out.append(CheckOutcome("cylinder", "pass", ""))
    out.append(
        CheckOutcome(
            "origin_assumption",
            "info",
            "the origin is assumed not to lie on the offset at a generic distance; this is not verified",
        )
    )
    return out
