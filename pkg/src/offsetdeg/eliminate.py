"""GCDs, contents and univariate resultants of multivariate integer polynomials.

``gcd`` first strips monomial and integer contents.  Inputs in at most
``HEURISTIC_MAX_VARIABLES`` variables then go through the heuristic GCD
(evaluation at a large integer, candidate rebuilt from its x-adic expansion
and confirmed by exact division); the evaluated integers grow too fast for
more variables.  Everything else, and every heuristic failure, goes to
:func:`gcd_prs`: recursive content / primitive part reduction over a
subresultant PRS in the occurring variable of least degree.  Both routes
return the same normalized value.

Resultants are determinants of the Sylvester matrix (rows of ``f`` first).
:func:`resultant` dispatches to the subresultant PRS when one degree is at
most two and to fraction-free Bareiss elimination otherwise;
:func:`resultant_oracle` expands the Sylvester determinant by cofactors and
shares no code with either.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from math import gcd as igcd, isqrt
from typing import Iterable, Sequence

from .errors import UndefinedDegree
from .mvpoly import MultiPoly

log = logging.getLogger(__name__)

HEURISTIC_ATTEMPTS = 6
HEURISTIC_MAX_VARIABLES = 2
ORACLE_MAX_DIMENSION = 8


# -- gcd ----------------------------------------------------------------------


def _monomial_content(p: MultiPoly) -> MultiPoly:
    """The largest monomial (coefficient 1) dividing ``p``."""
    U = p.universe
    keys = list(p.term_dict())
    exps = [min(col) for col in zip(*(U.unpack(k) for k in keys))]
    return MultiPoly(U, {U.pack(exps): 1})


def _monomial_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    U = a.universe
    ea = U.unpack(_monomial_content(a).leading_key())
    eb = U.unpack(_monomial_content(b).leading_key())
    return MultiPoly(U, {U.pack([min(x, y) for x, y in zip(ea, eb)]): 1})


def gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Greatest common divisor with positive leading coefficient.

    The integer content is part of the result, so ``gcd(6*x, 4*x) == 2*x``.
    """
    if not p and not q:
        raise UndefinedDegree("gcd(0, 0) is undefined")
    if not p:
        return q.normalized()
    if not q:
        return p.normalized()
    U = p.universe
    if q.universe != U:
        p + q  # raises UniverseMismatch
    c = igcd(p.content_int(), q.content_int())
    if p.is_constant or q.is_constant:
        return MultiPoly.constant(c, U)
    mono = _monomial_gcd(p, q)
    p = p.exact_div(_monomial_content(p)).exact_div_int(p.content_int())
    q = q.exact_div(_monomial_content(q)).exact_div_int(q.content_int())
    if p.is_constant or q.is_constant:
        core = MultiPoly.constant(1, U)
    elif p == q or p == -q:
        core = p.normalized()
    else:
        core = None
        if len(set(p.variables()) | set(q.variables())) <= HEURISTIC_MAX_VARIABLES:
            core = _gcd_heuristic(p, q)
        if core is None:
            core = _gcd_prs_core(p, q)
    return (core * mono).scale(c).normalized()


def gcd_many(polys: Iterable[MultiPoly]) -> MultiPoly:
    """gcd of a family, cheapest members first, skipping members the running gcd divides."""
    polys = sorted((p for p in polys if p), key=len)
    if not polys:
        raise UndefinedDegree("gcd of zero polynomials is undefined")
    g = polys[0].normalized()
    for p in polys[1:]:
        if g.is_constant and g.constant_value() == 1:
            break
        if g.divides(p):
            continue
        g = gcd(g, p)
    return g


# heuristic gcd ----------------------------------------------------------------


def _max_norm(p: MultiPoly) -> int:
    return max(abs(c) for c in p.term_dict().values())


def _symmetric_mod(h: MultiPoly, x: int) -> MultiPoly:
    half = x // 2
    out = {}
    for k, c in h.term_dict().items():
        r = c % x
        if r > half:
            r -= x
        if r:
            out[k] = r
    return MultiPoly(h.universe, out)


def _interpolate(h: MultiPoly, x: int, var: str) -> MultiPoly:
    """Rebuild a polynomial in ``var`` from its value ``h`` at ``var = x``."""
    U = h.universe
    coeffs = []
    while h:
        g = _symmetric_mod(h, x)
        coeffs.append(g)
        h = (h - g).exact_div_int(x)
    f = MultiPoly.from_univariate(coeffs, var, U)
    return f.normalized()


def _heu(f: MultiPoly, g: MultiPoly, names: tuple[str, ...]):
    """Return ``(h, f/h, g/h)`` or ``None``; ``names`` are the variables still present."""
    U = f.universe
    if not names:
        a, b = f.constant_value(), g.constant_value()
        h = igcd(a, b)
        return MultiPoly.constant(h, U), MultiPoly.constant(a // h, U), MultiPoly.constant(b // h, U)
    if not f or not g:
        return None
    cf, cg = f.content_int(), g.content_int()
    ic = igcd(cf, cg)
    f, g = f.exact_div_int(ic), g.exact_div_int(ic)
    var, rest = names[0], names[1:]
    fn, gn = _max_norm(f), _max_norm(g)
    bound = 2 * min(fn, gn) + 29
    x = max(min(bound, 99 * isqrt(bound)), 2 * min(fn // abs(f.leading_coefficient()), gn // abs(g.leading_coefficient())) + 4)
    for _ in range(HEURISTIC_ATTEMPTS):
        ff, gg = f.evaluate(var, x), g.evaluate(var, x)
        if ff and gg:
            sub = _heu(ff, gg, rest)
            if sub is not None:
                h, cff, cfg = sub
                cand = _interpolate(h, x, var)
                cand = cand.exact_div_int(cand.content_int())
                qf = f.try_div(cand)
                if qf is not None:
                    qg = g.try_div(cand)
                    if qg is not None:
                        return cand.scale(ic), qf, qg
                cff = _interpolate(cff, x, var)
                hh = f.try_div(cff)
                if hh is not None:
                    qg = g.try_div(hh)
                    if qg is not None:
                        return hh.scale(ic), cff, qg
                cfg = _interpolate(cfg, x, var)
                hh = g.try_div(cfg)
                if hh is not None:
                    qf = f.try_div(hh)
                    if qf is not None:
                        return hh.scale(ic), qf, cfg
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    return None


def _gcd_heuristic(p: MultiPoly, q: MultiPoly) -> MultiPoly | None:
    names = tuple(n for n in p.universe.names if n in set(p.variables()) | set(q.variables()))
    res = _heu(p, q, names)
    if res is None:
        return None
    return res[0].normalized()


# subresultant PRS gcd -----------------------------------------------------------


def _content_in(p: MultiPoly, var: str) -> MultiPoly:
    return _gcd_many_prs(p.as_univariate(var))


def _gcd_many_prs(polys: Sequence[MultiPoly]) -> MultiPoly:
    polys = sorted((p for p in polys if p), key=len)
    g = polys[0].normalized()
    for p in polys[1:]:
        if g.is_constant and abs(g.constant_value()) == 1:
            break
        if not g.divides(p):
            g = gcd_prs(g, p)
    return g


def gcd_prs(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """gcd via recursive content/primitive part reduction and subresultant PRS."""
    if not p and not q:
        raise UndefinedDegree("gcd(0, 0) is undefined")
    if not p or not q:
        return (p or q).normalized()
    if p.is_constant or q.is_constant:
        return MultiPoly.constant(igcd(p.content_int(), q.content_int()), p.universe)
    return _gcd_prs_core(p, q).normalized()


def _gcd_prs_core(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    U = p.universe
    occurring = set(p.variables()) | set(q.variables())
    if not occurring:
        return MultiPoly.constant(igcd(p.constant_value(), q.constant_value()), U)
    var = min((n for n in U.names if n in occurring), key=lambda n: max(p.degree_in(n), q.degree_in(n)))
    if not p.depends_on(var):
        return gcd_prs(p, _content_in(q, var))
    if not q.depends_on(var):
        return gcd_prs(_content_in(p, var), q)
    cp, cq = _content_in(p, var), _content_in(q, var)
    c = gcd_prs(cp, cq)
    A = [a.exact_div(cp) for a in p.as_univariate(var)]
    B = [b.exact_div(cq) for b in q.as_univariate(var)]
    if len(A) < len(B):
        A, B = B, A
    one = MultiPoly.constant(1, U)
    g_, h = one, one
    while True:
        delta = len(A) - len(B)
        R = _prem(A, B)
        if not R:
            break
        if len(R) == 1:
            return c
        A = B
        div = g_ * h**delta
        B = [r.exact_div(div) for r in R]
        g_ = A[-1]
        if delta == 1:
            h = g_
        elif delta > 1:
            h = (g_**delta).exact_div(h ** (delta - 1))
    prim = MultiPoly.from_univariate(B, var, U)
    prim = prim.exact_div(_content_in(prim, var))
    return (prim * c).normalized()


# -- content ------------------------------------------------------------------


def content(p: MultiPoly, variables: Iterable[str]) -> MultiPoly:
    """gcd of the coefficients of ``p`` viewed as a polynomial in ``variables``."""
    if not p:
        raise UndefinedDegree("the content of the zero polynomial is undefined")
    return gcd_many(p.coefficients(variables).values())


def primitive_part(p: MultiPoly, variables: Iterable[str]) -> MultiPoly:
    return p.exact_div(content(p, variables))


def content_and_primitive(p: MultiPoly, variables: Iterable[str]) -> tuple[MultiPoly, MultiPoly]:
    c = content(p, variables)
    return c, p.exact_div(c)


# -- univariate helpers (coefficient lists, low degree first) -------------------


def _trim(coeffs: list[MultiPoly]) -> list[MultiPoly]:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _prem(A: Sequence[MultiPoly], B: Sequence[MultiPoly]) -> list[MultiPoly]:
    """Pseudo-remainder ``lc(B)**(deg A - deg B + 1) * A mod B``."""
    dB = len(B) - 1
    lcB = B[-1]
    unit_lc = lcB.is_constant and lcB.constant_value() == 1
    R = _trim(list(A))
    e = len(A) - len(B) + 1
    while R and len(R) - 1 >= dB:
        lcR = R[-1]
        shift = len(R) - 1 - dB
        new = list(R[:-1]) if unit_lc else [lcB * r for r in R[:-1]]
        for i, b in enumerate(B[:-1]):
            if b:
                new[i + shift] = new[i + shift] - lcR * b
        R = _trim(new)
        e -= 1
    if e > 0 and R and not unit_lc:
        f = lcB**e
        R = [f * r for r in R]
    return R


def sylvester_matrix(f: MultiPoly, g: MultiPoly, var: str) -> list[list[MultiPoly]]:
    """Sylvester matrix of ``f`` and ``g`` with respect to ``var``; rows of ``f`` first."""
    U = f.universe
    a = f.as_univariate(var)[::-1]
    b = g.as_univariate(var)[::-1]
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    zero = MultiPoly.zero(U)
    rows = []
    for i in range(n):
        rows.append([zero] * i + a + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + b + [zero] * (size - n - 1 - i))
    return rows


def _check_resultant_args(f: MultiPoly, g: MultiPoly, var: str) -> tuple[int, int]:
    if not f or not g:
        raise ValueError("resultant of a zero polynomial")
    m, n = f.degree_in(var), g.degree_in(var)
    if m == 0 and n == 0:
        raise ValueError(f"both polynomials have degree 0 in {var}")
    return m, n


def resultant(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """``Res_var(f, g)``, the determinant of the Sylvester matrix."""
    m, n = _check_resultant_args(f, g, var)
    if m == 0:
        return f**n
    if n == 0:
        return g**m
    if min(m, n) <= 2:
        return resultant_prs(f, g, var)
    return resultant_bareiss(f, g, var)


def resultant_prs(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """Resultant by the subresultant pseudo-remainder sequence."""
    m, n = _check_resultant_args(f, g, var)
    if m == 0:
        return f**n
    if n == 0:
        return g**m
    U = f.universe
    one = MultiPoly.constant(1, U)
    A, B = f.as_univariate(var), g.as_univariate(var)
    s = 1
    if m < n:
        A, B = B, A
        if m % 2 and n % 2:
            s = -s
    g_, h = one, one
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        R = _prem(A, B)
        if not R:
            return MultiPoly.zero(U)
        A = B
        div = g_ * h**delta
        B = R if div == 1 else [r.exact_div(div) for r in R]
        g_ = A[-1]
        if delta == 1:
            h = g_
        elif delta > 1:
            h = (g_**delta).exact_div(h ** (delta - 1))
        if len(B) == 1:
            dA = len(A) - 1
            if dA == 1:
                h = B[0]
            else:
                h = (B[0] ** dA).exact_div(h ** (dA - 1))
            return h if s > 0 else -h


def determinant_bareiss(matrix: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Fraction-free (Bareiss) determinant; every division is exactness-checked."""
    M = [list(row) for row in matrix]
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    U = M[0][0].universe
    sign = 1
    prev = MultiPoly.constant(1, U)
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(U)
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n):
                v = pivot * row_i[j]
                if mik and row_k[j]:
                    v = v - mik * row_k[j]
                row_i[j] = v if prev == 1 else v.exact_div(prev)
        prev = pivot
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def resultant_bareiss(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    m, n = _check_resultant_args(f, g, var)
    return determinant_bareiss(sylvester_matrix(f, g, var))


def determinant_cofactor(matrix: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Laplace expansion along rows, memoized on the set of remaining columns."""
    n = len(matrix)
    U = matrix[0][0].universe

    @lru_cache(maxsize=None)
    def minor(row: int, cols: int) -> MultiPoly:
        if row == n:
            return MultiPoly.constant(1, U)
        total = MultiPoly.zero(U)
        sign = 1
        for j in range(n):
            if cols >> j & 1:
                entry = matrix[row][j]
                if entry:
                    term = entry * minor(row + 1, cols & ~(1 << j))
                    total = total + term if sign > 0 else total - term
                sign = -sign
        return total

    return minor(0, (1 << n) - 1)


def resultant_oracle(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """Independent resultant: cofactor expansion of the Sylvester matrix (dimension <= 8)."""
    m, n = _check_resultant_args(f, g, var)
    if m + n > ORACLE_MAX_DIMENSION:
        raise ValueError(f"Sylvester dimension {m + n} exceeds the oracle bound {ORACLE_MAX_DIMENSION}")
    return determinant_cofactor(sylvester_matrix(f, g, var))


def leading_coefficient_in(p: MultiPoly, var: str) -> MultiPoly:
    return p.as_univariate(var)[-1]


__all__ = [
    "content",
    "content_and_primitive",
    "determinant_bareiss",
    "determinant_cofactor",
    "gcd",
    "gcd_many",
    "gcd_prs",
    "leading_coefficient_in",
    "primitive_part",
    "resultant",
    "resultant_bareiss",
    "resultant_oracle",
    "resultant_prs",
    "sylvester_matrix",
]
