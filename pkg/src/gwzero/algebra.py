"""Sparse supercommutative truncated series over the rationals.

A series lives in a :class:`SeriesSpace`: variables ``t_0..t_m`` with a
parity each (odd variables anticommute and square to zero) and Novikov
exponents ``q^beta`` on a free lattice, graded by ``beta . c1``.  Every sign
is taken relative to the canonical order in which variables are sorted by
index.

Coefficients are :class:`fractions.Fraction`; nothing here ever touches a
float.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence


class SeriesMonomial(NamedTuple):
    """``t^t * q^beta`` with exponent tuples in canonical variable order."""

    t: tuple
    beta: tuple


@dataclass(frozen=True)
class SignRule:
    """Parity bit of every deformation variable."""

    parities: tuple

    def __post_init__(self):
        object.__setattr__(self, "parities", tuple(int(p) & 1 for p in self.parities))

    @property
    def nvars(self) -> int:
        return len(self.parities)

    @property
    def odd_indices(self) -> tuple:
        return tuple(i for i, p in enumerate(self.parities) if p)

    def parity(self, texp: Sequence[int]) -> int:
        return sum(e for e, p in zip(texp, self.parities) if p) & 1


def _mul_sign(a: Sequence[int], b: Sequence[int], parities: Sequence[int]) -> int:
    # t^a t^b -> canonical order: every odd t_j of b moves left past every odd
    # t_k of a with k > j.
    count = 0
    seen = 0
    for j in range(len(parities) - 1, -1, -1):
        if parities[j]:
            if b[j]:
                count += seen
            if a[j]:
                seen += 1
    return -1 if count & 1 else 1


def monomial_mul(a: SeriesMonomial, b: SeriesMonomial, rule: SignRule):
    """Multiply two monomials; return ``(product, sign)``.

    ``sign`` is the Koszul sign picked up while restoring canonical order, or
    0 when an odd variable would be squared (the product monomial is then
    ``None``).
    """
    n = rule.nvars
    if len(a.t) != n or len(b.t) != n:
        raise ValueError("variable-count mismatch: expected %d t-exponents" % n)
    if len(a.beta) != len(b.beta):
        raise ValueError("Novikov lattice rank mismatch")
    exps = tuple(x + y for x, y in zip(a.t, b.t))
    for i in rule.odd_indices:
        if exps[i] > 1:
            return None, 0
    beta = tuple(x + y for x, y in zip(a.beta, b.beta))
    return SeriesMonomial(exps, beta), _mul_sign(a.t, b.t, rule.parities)


def epsilon_sign(a: Sequence[int], rule: SignRule) -> int:
    """Sign ``eps(a)`` with ``(t_0T_0)^a_0...(t_mT_m)^a_m = eps(a) T^a t^a``.

    ``t_i`` and ``T_i`` share the parity of variable ``i``.  Every odd ``t_k``
    has to travel past its own ``T_k`` and past every odd ``T_j`` with
    ``j > k``.
    """
    if len(a) != rule.nvars:
        raise ValueError("variable-count mismatch: expected %d exponents" % rule.nvars)
    count = 0
    odd_after = 0
    for k in range(len(a) - 1, -1, -1):
        if not rule.parities[k] or not a[k]:
            continue
        if a[k] > 1:
            raise ValueError("odd variable t_%d with exponent %d" % (k, a[k]))
        count += 1 + odd_after
        odd_after += 1
    return -1 if count & 1 else 1


def multi_factorial(a: Iterable[int]) -> int:
    out = 1
    for e in a:
        out *= factorial(e)
    return out


class SeriesCutoff(NamedTuple):
    """Inclusive bounds on weighted t-degree and Novikov degree (``None`` = none)."""

    t: Optional[Fraction] = None
    q: Optional[int] = None

    def meet(self, other: "SeriesCutoff") -> "SeriesCutoff":
        return SeriesCutoff(_min(self.t, other.t), _min(self.q, other.q))


def _min(x, y):
    if x is None:
        return y
    if y is None:
        return x
    return min(x, y)


@dataclass(frozen=True)
class SeriesSpace:
    """Variable set shared by a family of series.

    ``weights`` gives the t-degree of each variable used by truncation
    (all 1 when omitted); ``c1`` is the Novikov degree of each lattice
    generator.
    """

    rule: SignRule
    c1: tuple
    weights: Optional[tuple] = None

    def __post_init__(self):
        if self.weights is None:
            object.__setattr__(self, "weights", (Fraction(1),) * self.rule.nvars)
        else:
            w = tuple(Fraction(x) for x in self.weights)
            if len(w) != self.rule.nvars:
                raise ValueError("one weight per variable required")
            if any(x < 0 for x in w):
                raise ValueError("weights must be nonnegative")
            object.__setattr__(self, "weights", w)
        object.__setattr__(self, "c1", tuple(int(c) for c in self.c1))

    @property
    def nvars(self) -> int:
        return self.rule.nvars

    @property
    def rank(self) -> int:
        return len(self.c1)

    def t_degree(self, texp) -> Fraction:
        return sum((w * e for w, e in zip(self.weights, texp) if e), Fraction(0))

    def q_degree(self, beta) -> int:
        return sum(b * c for b, c in zip(beta, self.c1))

    def within(self, mono: SeriesMonomial, cutoff: SeriesCutoff) -> bool:
        if cutoff.q is not None and self.q_degree(mono.beta) > cutoff.q:
            return False
        if cutoff.t is not None and self.t_degree(mono.t) > cutoff.t:
            return False
        return True

    def check_monomial(self, mono: SeriesMonomial) -> None:
        if len(mono.t) != self.nvars:
            raise ValueError("variable-count mismatch in monomial %r" % (mono,))
        if len(mono.beta) != self.rank:
            raise ValueError("Novikov rank mismatch in monomial %r" % (mono,))
        if any(e < 0 for e in mono.t) or any(b < 0 for b in mono.beta):
            raise ValueError("negative exponent in monomial %r" % (mono,))
        for i in self.rule.odd_indices:
            if mono.t[i] > 1:
                raise ValueError("odd variable t_%d squared in %r" % (i, mono))


class TruncatedSeries:
    """Immutable sparse series ``sum c * t^a q^beta`` with an explicit cutoff."""

    __slots__ = ("space", "terms", "cutoff")

    def __init__(self, space: SeriesSpace, terms: Optional[Mapping] = None,
                 cutoff: SeriesCutoff = SeriesCutoff()):
        clean = {}
        for mono, c in (terms or {}).items():
            mono = SeriesMonomial(tuple(mono[0]), tuple(mono[1]))
            space.check_monomial(mono)
            c = Fraction(c)
            if c and space.within(mono, cutoff):
                clean[mono] = clean.get(mono, 0) + c
        self.space = space
        self.terms = {m: c for m, c in clean.items() if c}
        self.cutoff = cutoff

    @classmethod
    def _raw(cls, space, terms, cutoff):
        # trusted constructor: terms already canonical, nonzero and in range
        out = object.__new__(cls)
        out.space = space
        out.terms = terms
        out.cutoff = cutoff
        return out

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, space, cutoff=SeriesCutoff()):
        return cls._raw(space, {}, cutoff)

    @classmethod
    def constant(cls, space, c, cutoff=SeriesCutoff()):
        mono = SeriesMonomial((0,) * space.nvars, (0,) * space.rank)
        return cls(space, {mono: c}, cutoff)

    @classmethod
    def variable(cls, space, i, cutoff=SeriesCutoff()):
        t = [0] * space.nvars
        t[i] = 1
        return cls(space, {SeriesMonomial(tuple(t), (0,) * space.rank): 1}, cutoff)

    @classmethod
    def novikov(cls, space, beta, cutoff=SeriesCutoff()):
        return cls(space, {SeriesMonomial((0,) * space.nvars, tuple(beta)): 1}, cutoff)

    # inspection -----------------------------------------------------------

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, t, beta=None) -> Fraction:
        if beta is None:
            beta = (0,) * self.space.rank
        return self.terms.get(SeriesMonomial(tuple(t), tuple(beta)), Fraction(0))

    def parities(self) -> set:
        return {self.space.rule.parity(m.t) for m in self.terms}

    def parity(self) -> int:
        """Parity of a homogeneous series (0 for the zero series)."""
        ps = self.parities()
        if len(ps) > 1:
            raise ValueError("series is not homogeneous")
        return ps.pop() if ps else 0

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return (self.space == other.space and self.terms == other.terms
                    and self.cutoff == other.cutoff)
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.cutoff))

    def __repr__(self):
        return "TruncatedSeries(%s, cutoff=%s)" % (self.format(), tuple(self.cutoff))

    def format(self, tname="t", qname="q") -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items()):
            factors = []
            for i, e in enumerate(mono.t):
                if e:
                    factors.append("%s%d" % (tname, i) + ("^%d" % e if e > 1 else ""))
            if any(mono.beta):
                if len(mono.beta) == 1:
                    b = mono.beta[0]
                    factors.append(qname + ("^%d" % b if b > 1 else ""))
                else:
                    for k, b in enumerate(mono.beta):
                        if b:
                            factors.append("%s%d" % (qname, k + 1) + ("^%d" % b if b > 1 else ""))
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append("%s*%s" % (c, body))
        return " + ".join(parts).replace("+ -", "- ")

    # arithmetic -----------------------------------------------------------

    def _check(self, other):
        if self.space != other.space:
            raise ValueError("series over different variable sets")

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries.constant(self.space, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        cut = self.cutoff.meet(other.cutoff)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        space = self.space
        out = {m: c for m, c in out.items() if c and space.within(m, cut)}
        return TruncatedSeries._raw(space, out, cut)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw(self.space, {m: -c for m, c in self.terms.items()},
                                    self.cutoff)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncatedSeries":
        c = Fraction(c)
        if not c:
            return TruncatedSeries.zero(self.space, self.cutoff)
        return TruncatedSeries._raw(self.space, {m: c * v for m, v in self.terms.items()},
                                    self.cutoff)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        cut = self.cutoff.meet(other.cutoff)
        space = self.space
        parities = space.rule.parities
        odd = space.rule.odd_indices
        weights = space.weights
        c1 = space.c1
        out = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                t = tuple(x + y for x, y in zip(ma.t, mb.t))
                if any(t[i] > 1 for i in odd):
                    continue
                beta = tuple(x + y for x, y in zip(ma.beta, mb.beta))
                if cut.q is not None and sum(b * c for b, c in zip(beta, c1)) > cut.q:
                    continue
                if cut.t is not None and sum(w * e for w, e in zip(weights, t) if e) > cut.t:
                    continue
                v = ca * cb
                if odd and _mul_sign(ma.t, mb.t, parities) < 0:
                    v = -v
                m = SeriesMonomial(t, beta)
                out[m] = out.get(m, 0) + v
        return TruncatedSeries._raw(space, {m: c for m, c in out.items() if c}, cut)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def derivative(self, i: int) -> "TruncatedSeries":
        """Left derivative with respect to ``t_i``.

        The t-cutoff drops by the weight of ``t_i``: coefficients of the
        derivative beyond that are not determined by the truncated input.
        """
        space = self.space
        if not 0 <= i < space.nvars:
            raise IndexError("no variable t_%d" % i)
        parities = space.rule.parities
        out = {}
        for m, c in self.terms.items():
            e = m.t[i]
            if not e:
                continue
            v = c * e
            if parities[i] and sum(m.t[k] for k in range(i) if parities[k]) & 1:
                v = -v
            t = list(m.t)
            t[i] -= 1
            out[SeriesMonomial(tuple(t), m.beta)] = v
        cut = self.cutoff
        if cut.t is not None:
            cut = SeriesCutoff(cut.t - space.weights[i], cut.q)
        out = {m: c for m, c in out.items() if space.within(m, cut)}
        return TruncatedSeries._raw(space, out, cut)

    def truncate(self, cutoff: SeriesCutoff) -> "TruncatedSeries":
        cut = self.cutoff.meet(cutoff)
        return TruncatedSeries._raw(
            self.space, {m: c for m, c in self.terms.items() if self.space.within(m, cut)}, cut)

    def at_origin(self) -> "TruncatedSeries":
        """Set every ``t_i`` to zero, keeping the Novikov part."""
        return TruncatedSeries._raw(
            self.space, {m: c for m, c in self.terms.items() if not any(m.t)},
            SeriesCutoff(None, self.cutoff.q))

    def substitute(self, values: Mapping[int, Fraction]) -> "TruncatedSeries":
        """Evaluate even variables at rational points; the others are kept.

        The result is the evaluation of the truncated polynomial, so it is
        only an approximation of the full series.
        """
        for i in values:
            if self.space.rule.parities[i]:
                raise ValueError("cannot substitute a number for odd variable t_%d" % i)
        out = {}
        for m, c in self.terms.items():
            t = list(m.t)
            for i, x in values.items():
                if t[i]:
                    c = c * Fraction(x) ** t[i]
                    t[i] = 0
            if c:
                mono = SeriesMonomial(tuple(t), m.beta)
                out[mono] = out.get(mono, 0) + c
        return TruncatedSeries._raw(self.space, {m: c for m, c in out.items() if c},
                                    SeriesCutoff(None, self.cutoff.q))


def series_add(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    return x + y


def series_mul(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    return x * y


def partial_derivative(x: TruncatedSeries, i: int) -> TruncatedSeries:
    return x.derivative(i)
