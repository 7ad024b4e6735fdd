"""Truncated genus-zero potential, big quantum product and WDVV checks."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import (SeriesCutoff, SeriesMonomial, TruncatedSeries, epsilon_sign,
                      multi_factorial)
from .correlators import CorrelatorTable, correlator_value
from .target import Cutoff, GwTarget, effective_classes, format_rational, selection_degree


@dataclass(eq=False)
class Potential:
    """``Phi`` truncated at ``n <= cutoff.max_n`` insertions and ``beta.c1 <= cutoff.max_c1``.

    Each variable has t-weight 1, so the series cutoff counts insertions.
    """

    target: GwTarget
    series: TruncatedSeries
    cutoff: Cutoff
    _partials: dict = field(default_factory=dict, repr=False)

    @property
    def space(self):
        return self.series.space

    def third_partial(self, i: int, j: int, h: int) -> TruncatedSeries:
        key = (i, j, h)
        if key not in self._partials:
            self._partials[key] = self.series.derivative(h).derivative(j).derivative(i)
        return self._partials[key]

    def with_series(self, series: TruncatedSeries) -> "Potential":
        return Potential(self.target, series, self.cutoff)


def multisets_of_degree(t: GwTarget, n: int, total) -> list:
    """Sorted n-tuples of basis ids with st-degree sum ``total``."""
    degs = t.st_degrees
    out = []
    for combo in itertools.combinations_with_replacement(range(t.size), n):
        if sum(degs[c] for c in combo) == total:
            out.append(combo)
    return out


def exponent_vector(size: int, classes) -> tuple:
    a = [0] * size
    for c in classes:
        a[c] += 1
    return tuple(a)


def build_potential(t: GwTarget, table: CorrelatorTable, cutoff: Cutoff,
                    value=None) -> Potential:
    """Assemble ``Phi`` from the table (and the axioms) inside ``cutoff``.

    ``value(classes, beta)`` overrides the correlator source; by default any
    irreducible correlator missing from ``table`` raises
    :class:`~gwzero.correlators.UnknownCorrelator`.
    """
    if value is None:
        def value(classes, beta):
            return correlator_value(t, table, classes, beta)
    space = t.series_space()
    rule = space.rule
    scut = SeriesCutoff(Fraction(cutoff.max_n), cutoff.max_c1)
    terms = {}
    for beta in effective_classes(t, cutoff.max_c1):
        for n in range(3, cutoff.max_n + 1):
            total = selection_degree(t, n, beta)
            for combo in multisets_of_degree(t, n, total):
                a = exponent_vector(t.size, combo)
                if any(a[i] > 1 for i in rule.odd_indices):
                    continue
                v = value(combo, beta)
                if v:
                    c = epsilon_sign(a, rule) * Fraction(v) / multi_factorial(a)
                    terms[SeriesMonomial(a, tuple(beta))] = c
    return Potential(t, TruncatedSeries(space, terms, scut), cutoff)


def third_partial(p: Potential, i: int, j: int, h: int) -> TruncatedSeries:
    """``d_i d_j d_h Phi`` (left derivatives, ``h`` applied first)."""
    return p.third_partial(i, j, h)


def correlator_series(t: GwTarget, table: CorrelatorTable, cutoff: Cutoff, i: int, j: int, h: int,
                      value=None) -> TruncatedSeries:
    """``sum_{n,beta} (1/n!) <T_i, T_j, T_h, gamma^n>_beta q^beta`` built from correlators.

    The coefficient of ``t^a q^beta`` is ``eps(a) <T_i,T_j,T_h,T^a>_beta / a!``.
    """
    if value is None:
        def value(classes, beta):
            return correlator_value(t, table, classes, beta)
    space = t.series_space()
    rule = space.rule
    max_rest = cutoff.max_n - 3
    scut = SeriesCutoff(Fraction(max_rest), cutoff.max_c1)
    terms = {}
    head = (i, j, h)
    head_deg = sum(t.st_degrees[c] for c in head)
    for beta in effective_classes(t, cutoff.max_c1):
        for n in range(0, max_rest + 1):
            total = selection_degree(t, n + 3, beta) - head_deg
            for combo in multisets_of_degree(t, n, total):
                a = exponent_vector(t.size, combo)
                if any(a[k] > 1 for k in rule.odd_indices):
                    continue
                v = value(head + combo, beta)
                if v:
                    terms[SeriesMonomial(a, tuple(beta))] = (
                        epsilon_sign(a, rule) * Fraction(v) / multi_factorial(a))
    return TruncatedSeries(space, terms, scut)


# ---------------------------------------------------------------------------
# quantum product

class QuantumElement:
    """``sum_k c_k T_k`` with series coefficients written to the left of ``T_k``."""

    __slots__ = ("target", "coefficients")

    def __init__(self, target: GwTarget, coefficients):
        coefficients = tuple(coefficients)
        if len(coefficients) != target.size:
            raise ValueError("need one coefficient per basis class")
        self.target = target
        self.coefficients = coefficients

    @classmethod
    def basis(cls, p: Potential, k: int, c=1) -> "QuantumElement":
        space = p.space
        cut = SeriesCutoff(Fraction(p.cutoff.max_n - 3), p.cutoff.max_c1)
        coeffs = [TruncatedSeries.zero(space, cut) for _ in range(p.target.size)]
        coeffs[k] = TruncatedSeries.constant(space, c, cut)
        return cls(p.target, coeffs)

    def __getitem__(self, k):
        return self.coefficients[k]

    def __add__(self, other):
        return QuantumElement(self.target, [a + b for a, b in zip(self.coefficients, other.coefficients)])

    def __sub__(self, other):
        return QuantumElement(self.target, [a - b for a, b in zip(self.coefficients, other.coefficients)])

    def scale(self, c):
        return QuantumElement(self.target, [a.scale(c) for a in self.coefficients])

    def __eq__(self, other):
        if not isinstance(other, QuantumElement):
            return NotImplemented
        return all(a.terms == b.terms for a, b in zip(self.coefficients, other.coefficients))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefficients)

    def parity(self) -> int:
        """Total parity of a homogeneous element."""
        ps = set()
        for k, c in enumerate(self.coefficients):
            for p in c.parities():
                ps.add((p + self.target.parity(k)) & 1)
        if len(ps) > 1:
            raise ValueError("element is not homogeneous")
        return ps.pop() if ps else 0

    def at_origin(self) -> "QuantumElement":
        return QuantumElement(self.target, [c.at_origin() for c in self.coefficients])

    def substitute(self, values) -> "QuantumElement":
        return QuantumElement(self.target, [c.substitute(values) for c in self.coefficients])

    def format(self) -> str:
        parts = []
        for k, c in enumerate(self.coefficients):
            if c.is_zero():
                continue
            s = c.format()
            if s == "1":
                parts.append("T_%d" % k)
            elif len(c) == 1 and "+" not in s and " - " not in s:
                if s == "-1":
                    parts.append("-T_%d" % k)
                else:
                    parts.append("%s·T_%d" % (s.replace("*", "·"), k))
            else:
                parts.append("(%s)·T_%d" % (s.replace("*", "·"), k))
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __repr__(self):
        return "QuantumElement(%s)" % self.format()


def basis_product(p: Potential, i: int, j: int) -> QuantumElement:
    """``T_i * T_j = sum_{e,f} (d_i d_j d_e Phi) g^ef T_f``."""
    t = p.target
    space = p.space
    cut = SeriesCutoff(Fraction(p.cutoff.max_n - 3), p.cutoff.max_c1)
    coeffs = [TruncatedSeries.zero(space, cut) for _ in range(t.size)]
    for e, f, ginv in t.inverse_pairs:
        d3 = p.third_partial(i, j, e)
        if d3:
            coeffs[f] = coeffs[f] + d3.scale(ginv)
    return QuantumElement(t, coeffs)


def quantum_mul(p: Potential, x: QuantumElement, y: QuantumElement) -> QuantumElement:
    """Bilinear extension: ``(a T_i) * (b T_j) = (-1)^{|T_i||b|} a b (T_i * T_j)``."""
    t = p.target
    if x.target is not t or y.target is not t:
        raise ValueError("quantum elements over a different target")
    space = p.space
    for c in x.coefficients + y.coefficients:
        if c.space != space:
            raise ValueError("coefficient series over a different variable set")
        if c.cutoff.q is not None and c.cutoff.q != p.cutoff.max_c1:
            raise ValueError("cutoff mismatch: coefficient Novikov cutoff %s, potential %s"
                             % (c.cutoff.q, p.cutoff.max_c1))
    cut = SeriesCutoff(Fraction(p.cutoff.max_n - 3), p.cutoff.max_c1)
    out = [TruncatedSeries.zero(space, cut) for _ in range(t.size)]
    for i, a in enumerate(x.coefficients):
        if a.is_zero():
            continue
        for j, b in enumerate(y.coefficients):
            if b.is_zero():
                continue
            # b moves left past T_i
            ab = a * (_parity_twist(b) if t.parity(i) else b)
            prod = basis_product(p, i, j)
            for f, c in enumerate(prod.coefficients):
                if c:
                    out[f] = out[f] + ab * c
    return QuantumElement(t, out)


def _parity_twist(s: TruncatedSeries) -> TruncatedSeries:
    # s -> sum (-1)^{|m|} c m
    rule = s.space.rule
    return TruncatedSeries._raw(s.space, {m: (-c if rule.parity(m.t) else c)
                                          for m, c in s.terms.items()}, s.cutoff)


# ---------------------------------------------------------------------------
# WDVV

def wdvv_residual(p: Potential, i: int, j: int, h: int, l: int) -> TruncatedSeries:
    """LHS - sign * RHS of the WDVV equation for the quadruple ``(i, j, h, l)``."""
    t = p.target
    space = p.space
    cut = SeriesCutoff(Fraction(p.cutoff.max_n - 3), p.cutoff.max_c1)
    lhs = TruncatedSeries.zero(space, cut)
    rhs = TruncatedSeries.zero(space, cut)
    for e, f, ginv in t.inverse_pairs:
        a = p.third_partial(i, j, e)
        b = p.third_partial(f, h, l)
        if a and b:
            lhs = lhs + (a * b).scale(ginv)
        a = p.third_partial(j, h, e)
        b = p.third_partial(f, i, l)
        if a and b:
            rhs = rhs + (a * b).scale(ginv)
    if t.parity(i) and (t.parity(j) + t.parity(h)) & 1:
        rhs = -rhs
    return lhs - rhs


@dataclass
class WdvvReport:
    ok: bool
    checked: int
    witness: Optional[tuple] = None      # (i, j, h, l)
    monomial: Optional[SeriesMonomial] = None
    coefficient: Optional[Fraction] = None


def wdvv_check(p: Potential, stop_at_first: bool = True) -> WdvvReport:
    """Evaluate every residual; report the first nonzero one."""
    n = p.target.size
    checked = 0
    for quad in itertools.product(range(n), repeat=4):
        r = wdvv_residual(p, *quad)
        checked += 1
        if not r.is_zero():
            mono, c = min(r.terms.items())
            return WdvvReport(False, checked, quad, mono, c)
    return WdvvReport(True, checked)


@dataclass
class AssociativityReport:
    ok: bool
    checked: int
    witness: Optional[tuple] = None      # (i, j, h)


def associativity_check(p: Potential) -> AssociativityReport:
    """``(T_i*T_j)*T_h == T_i*(T_j*T_h)`` for every basis triple."""
    t = p.target
    n = t.size
    basis = [QuantumElement.basis(p, k) for k in range(n)]
    prods = {(i, j): basis_product(p, i, j) for i in range(n) for j in range(n)}
    checked = 0
    for i, j, h in itertools.product(range(n), repeat=3):
        left = quantum_mul(p, prods[i, j], basis[h])
        right = quantum_mul(p, basis[i], prods[j, h])
        checked += 1
        if not (left - right).is_zero():
            return AssociativityReport(False, checked, (i, j, h))
    return AssociativityReport(True, checked)


def homogeneity_violations(p: Potential) -> list:
    """Monomials of ``Phi`` whose degree is not ``2(3 - dim)``.

    ``t_i`` has degree ``2 - deg_st T_i`` and ``q^beta`` has degree ``2 beta.c1``.
    """
    t = p.target
    expected = Fraction(2 * (3 - t.dim))
    bad = []
    for m in p.series.terms:
        d = sum((e * (2 - t.st_degrees[k]) for k, e in enumerate(m.t)), Fraction(0))
        d += 2 * t.c1_degree(m.beta)
        if d != expected:
            bad.append(m)
    return bad


def drop_quantum_corrections(p: Potential) -> Potential:
    """The classical limit: keep only ``beta = 0`` terms."""
    s = p.series
    terms = {m: c for m, c in s.terms.items() if not any(m.beta)}
    return p.with_series(TruncatedSeries._raw(s.space, terms, s.cutoff))


def potential_to_json(p: Potential) -> str:
    rows = [{"t_exponents": list(m.t), "beta": list(m.beta), "coefficient": format_rational(c)}
            for m, c in sorted(p.series.terms.items())]
    return json.dumps(rows, indent=1) + "\n"
