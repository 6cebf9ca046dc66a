"""Sparse multivariate polynomials with exact integer coefficients.

A polynomial is a map from monomials to nonzero Python integers over a fixed,
ordered :class:`Universe` of variable names.  Monomials are packed into a
single integer: one 16-bit field per variable, preceded (in the most
significant position) by a field holding the total degree.  With that layout
plain integer comparison of packed keys *is* graded lexicographic order in
universe order, monomial multiplication is integer addition, and divisibility
of monomials is a single masked subtraction.

Rational data enters through :func:`clear_denominators` and leaves through
:meth:`MultiPoly.substitute`, both of which use ``(integer polynomial,
positive denominator)`` pairs.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .errors import InexactDivision, UndefinedDegree, UniverseMismatch, UnknownVariable

FIELD_BITS = 16
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1
_FIELD_MASK = (1 << FIELD_BITS) - 1

DEFAULT_VARIABLES = ("t0", "t1", "t2", "d", "k1", "k2", "k3", "c1", "c2", "c3")


class Universe:
    """Ordered, immutable set of variable names shared by a family of polynomials."""

    __slots__ = ("names", "_index", "_shifts", "_total_shift", "_guard", "_unit")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise ValueError("a universe needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names!r}")
        n = len(names)
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}
        self._shifts = tuple(FIELD_BITS * (n - 1 - i) for i in range(n))
        self._total_shift = FIELD_BITS * n
        self._guard = sum(1 << (FIELD_BITS * j + FIELD_BITS - 1) for j in range(n + 1))
        # packed key of the monomial v_i^1
        self._unit = tuple((1 << s) | (1 << self._total_shift) for s in self._shifts)

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Universe) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Universe({list(self.names)!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r}; universe is {list(self.names)}") from None

    def indices(self, names: Iterable[str]) -> tuple[int, ...]:
        return tuple(sorted({self.index(v) for v in names}))

    def pack(self, exponents: Sequence[int]) -> int:
        if len(exponents) != len(self.names):
            raise ValueError(f"expected {len(self.names)} exponents, got {len(exponents)}")
        key = 0
        total = 0
        for e, shift in zip(exponents, self._shifts):
            if e < 0:
                raise ValueError("exponents must be nonnegative")
            key |= e << shift
            total += e
        if total > MAX_EXPONENT:
            raise OverflowError(f"total degree {total} exceeds {MAX_EXPONENT}")
        return key | (total << self._total_shift)

    def unpack(self, key: int) -> tuple[int, ...]:
        return tuple((key >> s) & _FIELD_MASK for s in self._shifts)

    def exponent(self, key: int, i: int) -> int:
        return (key >> self._shifts[i]) & _FIELD_MASK

    def total(self, key: int) -> int:
        return key >> self._total_shift

    def divides(self, small: int, big: int) -> bool:
        """True when monomial ``small`` divides monomial ``big``."""
        guard = self._guard
        return ((big | guard) - small) & guard == guard


DEFAULT_UNIVERSE = Universe(DEFAULT_VARIABLES)


def _same_universe(p: MultiPoly, q: MultiPoly) -> Universe:
    if p.universe is q.universe or p.universe == q.universe:
        return p.universe
    raise UniverseMismatch(f"cannot combine polynomials over {p.universe!r} and {q.universe!r}")


class MultiPoly:
    """Immutable sparse polynomial with integer coefficients.

    Supports ``+ - *`` and ``**`` with other polynomials of the same universe
    and with Python ints.  Exact division is :meth:`exact_div`; there is no
    ``/`` operator on purpose.
    """

    __slots__ = ("universe", "_terms", "_hash")

    def __init__(self, universe: Universe, terms: Mapping[int, int] | None = None):
        # ``terms`` maps packed keys to nonzero ints; callers inside this module
        # guarantee that, the public constructors below normalize.
        self.universe = universe
        self._terms: dict[int, int] = dict(terms) if terms else {}
        self._hash: int | None = None

    # -- construction -------------------------------------------------------------

    @classmethod
    def zero(cls, universe: Universe = DEFAULT_UNIVERSE) -> MultiPoly:
        return cls(universe)

    @classmethod
    def constant(cls, value: int, universe: Universe = DEFAULT_UNIVERSE) -> MultiPoly:
        value = int(value)
        return cls(universe, {0: value} if value else None)

    @classmethod
    def variable(cls, name: str, universe: Universe = DEFAULT_UNIVERSE) -> MultiPoly:
        return cls(universe, {universe._unit[universe.index(name)]: 1})

    @classmethod
    def monomial(
        cls, powers: Mapping[str, int], coeff: int = 1, universe: Universe = DEFAULT_UNIVERSE
    ) -> MultiPoly:
        exps = [0] * len(universe)
        for name, e in powers.items():
            exps[universe.index(name)] += e
        if not coeff:
            return cls(universe)
        return cls(universe, {universe.pack(exps): int(coeff)})

    @classmethod
    def from_dict(
        cls, data: Mapping[Sequence[int], int], universe: Universe = DEFAULT_UNIVERSE
    ) -> MultiPoly:
        """Build from ``{exponent tuple: coefficient}``; zero coefficients are dropped."""
        terms: dict[int, int] = {}
        for exps, c in data.items():
            key = universe.pack(exps)
            v = terms.get(key, 0) + int(c)
            if v:
                terms[key] = v
            else:
                terms.pop(key, None)
        return cls(universe, terms)

    def _new(self, terms: dict[int, int]) -> MultiPoly:
        p = MultiPoly.__new__(MultiPoly)
        p.universe = self.universe
        p._terms = terms
        p._hash = None
        return p

    def _coerce(self, other: object) -> MultiPoly:
        if isinstance(other, MultiPoly):
            _same_universe(self, other)
            return other
        if isinstance(other, int):
            return self._new({0: other} if other else {})
        return NotImplemented  # type: ignore[return-value]

    # -- inspection ---------------------------------------------------------------

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    @property
    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_value(self) -> int:
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return self._terms.get(0, 0)

    def term_dict(self) -> dict[int, int]:
        """Copy of the packed ``{key: coeff}`` map (for sibling modules)."""
        return dict(self._terms)

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms as ``(exponents, coeff)`` in descending graded-lex order."""
        unpack = self.universe.unpack
        return [(unpack(k), self._terms[k]) for k in sorted(self._terms, reverse=True)]

    def leading_key(self) -> int:
        if not self._terms:
            raise UndefinedDegree("the zero polynomial has no leading term")
        return max(self._terms)

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        k = self.leading_key()
        return self.universe.unpack(k), self._terms[k]

    def leading_coefficient(self) -> int:
        return self._terms[self.leading_key()]

    def total_degree(self) -> int:
        return self.universe.total(self.leading_key())

    def degree(self, variables: Iterable[str] | None = None) -> int:
        """Maximum over terms of the exponent sum restricted to ``variables``.

        ``None`` means all variables.  Raises :class:`UndefinedDegree` for 0.
        """
        if not self._terms:
            raise UndefinedDegree("degree of the zero polynomial is undefined")
        if variables is None:
            return self.total_degree()
        U = self.universe
        idx = U.indices(variables)
        shifts = [U._shifts[i] for i in idx]
        best = 0
        for k in self._terms:
            s = 0
            for sh in shifts:
                s += (k >> sh) & _FIELD_MASK
            if s > best:
                best = s
        return best

    def degree_in(self, name: str) -> int:
        return self.degree((name,))

    def min_degree_in(self, name: str) -> int:
        if not self._terms:
            raise UndefinedDegree("degree of the zero polynomial is undefined")
        sh = self.universe._shifts[self.universe.index(name)]
        return min((k >> sh) & _FIELD_MASK for k in self._terms)

    def variables(self) -> tuple[str, ...]:
        """Names of variables that actually occur, in universe order."""
        occurring = 0
        for k in self._terms:
            occurring |= k
        U = self.universe
        return tuple(n for n, s in zip(U.names, U._shifts) if (occurring >> s) & _FIELD_MASK)

    def depends_on(self, name: str) -> bool:
        sh = self.universe._shifts[self.universe.index(name)]
        return any((k >> sh) & _FIELD_MASK for k in self._terms)

    def is_homogeneous(self, variables: Iterable[str] | None = None) -> bool:
        if not self._terms:
            return True
        if variables is None:
            t = self.universe.total
            return len({t(k) for k in self._terms}) == 1
        variables = tuple(variables)
        U = self.universe
        shifts = [U._shifts[i] for i in U.indices(variables)]
        return len({sum((k >> s) & _FIELD_MASK for s in shifts) for k in self._terms}) == 1

    def content_int(self) -> int:
        """Nonnegative gcd of the integer coefficients (0 for the zero polynomial)."""
        return reduce(gcd, self._terms.values(), 0)

    # -- ring operations ----------------------------------------------------------

    def __neg__(self) -> MultiPoly:
        return self._new({k: -c for k, c in self._terms.items()})

    def __pos__(self) -> MultiPoly:
        return self

    def __add__(self, other: object) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for k, c in b.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return self._new(out)

    __radd__ = __add__

    def __sub__(self, other: object) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) - c
            if v:
                out[k] = v
            else:
                del out[k]
        return self._new(out)

    def __rsub__(self, other: object) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other: object) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return self._new({})
        U = self.universe
        if U.total(max(a)) + U.total(max(b)) > MAX_EXPONENT:
            raise OverflowError("product degree exceeds the packed exponent range")
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (kb, cb), = b.items()
            return self._new({ka + kb: ca * cb for ka, ca in a.items()})
        out: dict[int, int] = {}
        get = out.get
        a_items = list(a.items())
        for kb, cb in b.items():
            for ka, ca in a_items:
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return self._new({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiPoly:
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self._new({0: 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: int) -> MultiPoly:
        if not c:
            return self._new({})
        return self._new({k: v * c for k, v in self._terms.items()})

    def exact_div_int(self, c: int) -> MultiPoly:
        if c == 0:
            raise ZeroDivisionError("division by the zero integer")
        out = {}
        for k, v in self._terms.items():
            q, r = divmod(v, c)
            if r:
                raise InexactDivision(f"{self} is not divisible by the integer {c}")
            out[k] = q
        return self._new(out)

    def primitive_int(self) -> tuple[int, MultiPoly]:
        """Split off the integer content, signed so the result has a positive leading coefficient."""
        if not self._terms:
            return 0, self
        c = self.content_int()
        if self.leading_coefficient() < 0:
            c = -c
        return c, self.exact_div_int(c) if c != 1 else self

    def normalized(self) -> MultiPoly:
        """``self`` or ``-self``, whichever has a positive graded-lex leading coefficient."""
        if self._terms and self.leading_coefficient() < 0:
            return -self
        return self

    # -- division -----------------------------------------------------------------

    def _divide(self, divisor: MultiPoly) -> dict[int, int] | None:
        """Quotient terms of an exact division, or ``None`` if it is not exact."""
        _same_universe(self, divisor)
        dt = divisor._terms
        if not dt:
            raise ZeroDivisionError("polynomial division by zero")
        if not self._terms:
            return {}
        U = self.universe
        divides = U.divides
        if len(dt) == 1:
            (lk, lc), = dt.items()
            out = {}
            for k, c in self._terms.items():
                if not divides(lk, k):
                    return None
                q, r = divmod(c, lc)
                if r:
                    return None
                out[k - lk] = q
            return out
        dkeys = sorted(dt.items(), reverse=True)
        lk, lc = dkeys[0]
        tail = dkeys[1:]
        rem = dict(self._terms)
        heap = [-k for k in rem]
        heapq.heapify(heap)
        quot: dict[int, int] = {}
        pop, push = heapq.heappop, heapq.heappush
        while heap:
            k = -pop(heap)
            c = rem.pop(k, 0)
            if not c:
                continue
            if not divides(lk, k):
                return None
            qc, r = divmod(c, lc)
            if r:
                return None
            qk = k - lk
            quot[qk] = qc
            for dk, dc in tail:
                nk = qk + dk
                v = rem.get(nk)
                if v is None:
                    rem[nk] = -qc * dc
                    push(heap, -nk)
                else:
                    v -= qc * dc
                    if v:
                        rem[nk] = v
                    else:
                        del rem[nk]
        return quot

    def exact_div(self, divisor: MultiPoly) -> MultiPoly:
        """``self / divisor``; raises :class:`InexactDivision` on a nonzero remainder."""
        q = self._divide(divisor)
        if q is None:
            raise InexactDivision(f"polynomial division is not exact (divisor {_short(divisor)})")
        return self._new(q)

    def try_div(self, divisor: MultiPoly) -> MultiPoly | None:
        """Exact quotient, or ``None`` when ``divisor`` does not divide ``self``."""
        q = self._divide(divisor)
        return None if q is None else self._new(q)

    def divides(self, other: MultiPoly) -> bool:
        return other._divide(self) is not None

    # -- calculus and substitution ------------------------------------------------

    def partial_derivative(self, name: str) -> MultiPoly:
        U = self.universe
        i = U.index(name)
        sh = U._shifts[i]
        unit = U._unit[i]
        out = {}
        for k, c in self._terms.items():
            e = (k >> sh) & _FIELD_MASK
            if e:
                out[k - unit] = c * e
        return self._new(out)

    def evaluate(self, name: str, value: int) -> MultiPoly:
        """Substitute an integer for one variable."""
        U = self.universe
        i = U.index(name)
        sh, unit = U._shifts[i], U._unit[i]
        powers = [1]
        out: dict[int, int] = {}
        for k, c in self._terms.items():
            e = (k >> sh) & _FIELD_MASK
            while len(powers) <= e:
                powers.append(powers[-1] * value)
            nk = k - e * unit
            out[nk] = out.get(nk, 0) + c * powers[e]
        return self._new({k: c for k, c in out.items() if c})

    def substitute(self, bindings: Mapping[str, int | Fraction]) -> tuple[MultiPoly, int]:
        """Exact substitution of rationals for some variables.

        Returns ``(numerator, denominator)`` in lowest terms: the numerator is an
        integer polynomial in the remaining variables and the denominator a
        positive integer.
        """
        if not bindings:
            return self, 1
        U = self.universe
        plan = []
        den = 1
        for name, value in bindings.items():
            i = U.index(name)
            value = Fraction(value)
            top = self.degree_in(name) if self._terms else 0
            plan.append((U._shifts[i], U._unit[i], value.numerator, value.denominator, top))
            den *= value.denominator**top
        cache: dict[tuple[int, int], int] = {}

        def factor(j: int, e: int) -> int:
            f = cache.get((j, e))
            if f is None:
                _, _, a, b, top = plan[j]
                f = cache[(j, e)] = a**e * b ** (top - e)
            return f

        out: dict[int, int] = {}
        for k, c in self._terms.items():
            nk = k
            for j, (sh, unit, _, _, _) in enumerate(plan):
                e = (k >> sh) & _FIELD_MASK
                if e:
                    nk -= e * unit
                c *= factor(j, e)
            out[nk] = out.get(nk, 0) + c
        num = self._new({k: c for k, c in out.items() if c})
        g = gcd(num.content_int(), den)
        if not num:
            return num, 1
        if g > 1:
            num = num.exact_div_int(g)
            den //= g
        return num, den

    def homogenize(self, name: str, target_degree: int) -> MultiPoly:
        """Homogenize with respect to ``name`` to total degree ``target_degree``.

        ``name`` must not occur in ``self``; setting it to 1 recovers ``self``.
        """
        U = self.universe
        i = U.index(name)
        if self.depends_on(name):
            raise ValueError(f"{name} already occurs in the polynomial")
        unit = U._unit[i]
        out = {}
        for k, c in self._terms.items():
            gap = target_degree - U.total(k)
            if gap < 0:
                raise ValueError(
                    f"target degree {target_degree} is below the total degree {self.total_degree()}"
                )
            out[k + gap * unit] = c
        return self._new(out)

    # -- regrouping ---------------------------------------------------------------

    def coefficients(self, variables: Iterable[str]) -> dict[tuple[int, ...], MultiPoly]:
        """View ``self`` as a polynomial in ``variables``.

        Returns ``{exponents of variables: coefficient}`` where each coefficient
        is free of ``variables``.
        """
        U = self.universe
        idx = U.indices(variables)
        fields = [(U._shifts[i], U._unit[i]) for i in idx]
        groups: dict[tuple[int, ...], dict[int, int]] = {}
        for k, c in self._terms.items():
            exps = []
            rest = k
            for sh, unit in fields:
                e = (k >> sh) & _FIELD_MASK
                exps.append(e)
                if e:
                    rest -= e * unit
            groups.setdefault(tuple(exps), {})[rest] = c
        return {e: self._new(t) for e, t in groups.items()}

    def as_univariate(self, name: str) -> list[MultiPoly]:
        """Coefficients ``[a_0, a_1, ..., a_n]`` with ``self = sum a_i * name**i``."""
        U = self.universe
        i = U.index(name)
        sh, unit = U._shifts[i], U._unit[i]
        buckets: list[dict[int, int]] = []
        for k, c in self._terms.items():
            e = (k >> sh) & _FIELD_MASK
            while len(buckets) <= e:
                buckets.append({})
            buckets[e][k - e * unit] = c
        return [self._new(b) for b in buckets]

    @staticmethod
    def from_univariate(coeffs: Sequence[MultiPoly], name: str, universe: Universe) -> MultiPoly:
        unit = universe._unit[universe.index(name)]
        out: dict[int, int] = {}
        for e, a in enumerate(coeffs):
            shift = e * unit
            for k, c in a._terms.items():
                out[k + shift] = c
        return MultiPoly(universe, out)

    # -- comparison and rendering -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.universe == other.universe and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.universe, frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"MultiPoly({render(self)!r})"


def _short(p: MultiPoly, limit: int = 60) -> str:
    s = render(p)
    return s if len(s) <= limit else s[: limit - 3] + "..."


def render(p: MultiPoly, times: str = "*") -> str:
    """Canonical text: descending graded-lex terms, ``^`` exponents."""
    if not p._terms:
        return "0"
    names = p.universe.names
    parts = []
    for exps, c in p.terms():
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        mono = times.join(factors)
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}{times}{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def arith(p: MultiPoly, q: MultiPoly, kind: str) -> MultiPoly:
    """Ring operation by name: ``add``, ``sub`` or ``mul``."""
    _same_universe(p, q)
    if kind == "add":
        return p + q
    if kind == "sub":
        return p - q
    if kind == "mul":
        return p * q
    raise ValueError(f"unknown operation {kind!r}")


def partial_derivative(p: MultiPoly, name: str) -> MultiPoly:
    return p.partial_derivative(name)


def substitute(p: MultiPoly, bindings: Mapping[str, int | Fraction]) -> tuple[MultiPoly, int]:
    return p.substitute(bindings)


def homogenize(p: MultiPoly, name: str, target_degree: int) -> MultiPoly:
    return p.homogenize(name, target_degree)


def degree(p: MultiPoly, variables: Iterable[str] | None = None) -> int:
    return p.degree(variables)


def variables(names: Iterable[str], universe: Universe = DEFAULT_UNIVERSE) -> tuple[MultiPoly, ...]:
    """Convenience: the variables ``names`` as polynomials."""
    return tuple(MultiPoly.variable(n, universe) for n in names)


def clear_denominators(coeffs: Mapping[Sequence[int], Fraction], universe: Universe) -> tuple[MultiPoly, int]:
    """Turn rational coefficients into ``(integer polynomial, positive denominator)``."""
    den = reduce(lcm, (Fraction(c).denominator for c in coeffs.values()), 1)
    num = MultiPoly.from_dict({e: int(Fraction(c) * den) for e, c in coeffs.items()}, universe)
    g = gcd(num.content_int(), den) if num else den
    if g > 1:
        num = num.exact_div_int(g)
        den //= g
    return num, den
