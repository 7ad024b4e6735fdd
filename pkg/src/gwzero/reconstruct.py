"""Reconstruction of genus-zero invariants from three-point seeds by WDVV induction.

Cells ``(beta, n)`` are partially ordered: ``(beta, n) > (beta', n')`` when
``beta - beta'`` is effective and nonzero, or ``beta == beta'`` and ``n > n'``.
To compute an irreducible ``<g_1, ..., g_{n-1}, g_n>_beta`` we factor
``g_n = sum delta'_i cup delta_i`` through divisors and apply WDVV to
``(g_1, g_2 | delta', delta)`` with the remaining insertions spread over both
sides.  All terms are strictly lower except one same-cell term whose
factored insertion ``delta'`` has smaller degree, so the recursion runs on
``(cell, degree of the designated insertion)``.
"""
from __future__ import annotations

import itertools
import random
import warnings
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Optional

from .correlators import (CorrelatorKey, CorrelatorTable, canonicalize, format_key,
                          reduce_fully, seed_table)
from .target import (Cutoff, GwTarget, degree2_factorizations, format_rational, effective_classes,
                     factor_through_degree2, selection_degree, splittings, validate_target)


class ReconstructionError(RuntimeError):
    pass


class MissingSeeds(ReconstructionError):
    def __init__(self, keys, target=None):
        self.keys = sorted(keys)
        self.labels = [format_key(target, b, c) for b, c in self.keys]
        super().__init__("missing seed correlators: " + ", ".join(self.labels))


class OrderViolation(ReconstructionError):
    """A WDVV instance asked for a term that is not lower in the cell order."""


# ---------------------------------------------------------------------------
# cell order

def cell_less(a, b) -> bool:
    """``(beta, n) < (beta', n')`` in the reconstruction order."""
    (ba, na), (bb, nb) = a, b
    diff = [y - x for x, y in zip(ba, bb)]
    if all(d >= 0 for d in diff) and any(diff):
        return True
    return tuple(ba) == tuple(bb) and na < nb


class CellOrder:
    """Comparator on cells; ``CellOrder.less`` is :func:`cell_less`."""

    less = staticmethod(cell_less)

    @staticmethod
    def comparable(a, b) -> bool:
        return a == b or cell_less(a, b) or cell_less(b, a)


# ---------------------------------------------------------------------------
# choices inside one WDVV step

class Chooser:
    """Deterministic choices: highest-degree insertion, two lowest others, canonical factorization."""

    def designate(self, t: GwTarget, candidates):
        return max(candidates, key=lambda c: (t.st_degree(c), c))

    def pair(self, t: GwTarget, remaining):
        return remaining[0], remaining[1]

    def factorization(self, t: GwTarget, class_id: int):
        return factor_through_degree2(t, class_id)


class RandomChooser(Chooser):
    """Random valid choices; used to check that results do not depend on them."""

    def __init__(self, rng: random.Random):
        self.rng = rng

    def designate(self, t, candidates):
        return self.rng.choice(sorted(set(candidates)))

    def pair(self, t, remaining):
        i, j = self.rng.sample(range(len(remaining)), 2)
        return remaining[i], remaining[j]

    def factorization(self, t, class_id):
        return self.rng.choice(degree2_factorizations(t, class_id))


# ---------------------------------------------------------------------------
# records

@dataclass
class WdvvInstance:
    """One WDVV relation solved for ``<g1, g2, rest, delta' cup delta>_beta``."""

    beta: tuple
    gamma1: int
    gamma2: int
    rest: tuple
    delta_prime: int
    delta: int
    weight: Fraction                  # coefficient of this term in the factorization
    boundary: dict = field(default_factory=dict)   # "I_12" etc. -> value
    value: Fraction = Fraction(0)     # <g1, g2, rest, delta' cup delta>_beta

    def describe(self, t: GwTarget) -> str:
        lab = t.label
        ins = [lab(self.gamma1), lab(self.gamma2)] + [lab(c) for c in self.rest]
        return ("WDVV(%s,%s | %s,%s) rest=[%s] beta=%s weight=%s -> %s"
                % (lab(self.gamma1), lab(self.gamma2), lab(self.delta_prime), lab(self.delta),
                   ",".join(ins[2:]), self.beta, format_rational(self.weight),
                   format_rational(self.value)))


@dataclass
class Derivation:
    key: tuple                        # (beta, classes)
    kind: str                         # "seed" | "wdvv"
    value: Fraction
    designated: Optional[int] = None
    instances: list = field(default_factory=list)
    dependencies: set = field(default_factory=set)   # irreducible keys consulted
    rules: Counter = field(default_factory=Counter)  # axioms applied to reducible terms


@dataclass
class Trace:
    label: str
    kind: str
    value: Optional[Fraction]
    detail: list = field(default_factory=list)
    children: list = field(default_factory=list)

    def render(self) -> str:
        lines = []
        seen = set()

        def walk(node, depth):
            pad = "  " * depth
            if node.value is None:
                lines.append("%s%s  [%s]" % (pad, node.label, node.kind))
            else:
                lines.append("%s%s = %s  [%s]" % (pad, node.label, format_rational(node.value),
                                                  node.kind))
            if node.label in seen and node.children:
                lines[-1] += " (expanded above)"
                return
            seen.add(node.label)
            for d in node.detail:
                lines.append("%s  | %s" % (pad, d))
            for c in node.children:
                walk(c, depth + 1)

        walk(self, 0)
        return "\n".join(lines)

    def leaves(self) -> list:
        if not self.children:
            return [self]
        out = []
        for c in self.children:
            out.extend(c.leaves())
        return out


# ---------------------------------------------------------------------------
# engine

class Reconstructor:
    """Demand-driven evaluator of genus-zero correlators.

    Irreducible values are memoized in ``self.table`` (seeds first); each
    reconstructed entry keeps its :class:`Derivation` for :func:`explain`.
    """

    def __init__(self, target: GwTarget, seeds=None, cutoff: Optional[Cutoff] = None,
                 chooser: Optional[Chooser] = None, table: Optional[CorrelatorTable] = None,
                 validate: bool = True):
        if validate:
            rep = validate_target(target)
            if not rep.ok:
                raise ReconstructionError("invalid target: " + "; ".join(rep.errors))
        self.target = target
        self.cutoff = cutoff
        self.chooser = chooser or Chooser()
        self.table = table if table is not None else seed_table(target, seeds)
        self.table.target_name = target.name
        self.derivations = {}
        for key, e in self.table.items():
            if e.provenance == "seed":
                self.derivations[key] = Derivation(key, "seed", e.value)
        self._frames = []        # (cell, designated degree, Derivation)
        self._cache = {}

    # -- evaluation --------------------------------------------------------

    def value(self, classes, beta, designate: Optional[int] = None) -> Fraction:
        """Exact value of ``<classes>_beta`` (any order, any basis ids)."""
        t = self.target
        beta = tuple(beta)
        sorted_classes, sign, forced_zero = canonicalize(t, classes)
        if forced_zero:
            return Fraction(0)
        ck = (sorted_classes, beta)
        if designate is None and ck in self._cache:
            v, rules, dep = self._cache[ck]
            self._note(rules, dep)
            return sign * v
        mult, key, rules = reduce_fully(t, sorted_classes, beta)
        if key is None:
            self._cache[ck] = (mult, rules, None)
            self._note(rules, None)
            return sign * mult
        # reduce_fully already applied the canonical sign of the sorted input
        plain = (key.beta, key.classes)
        self._note(rules, plain)
        entry = self.table.get(plain)
        if entry is not None:
            v = mult * entry.value
        else:
            v = mult * self._solve(key, designate)
        if entry is not None or plain in self.table:
            self._cache[ck] = (v, rules, plain)
        return sign * v

    def _note(self, rules, dep):
        if self._frames:
            d = self._frames[-1][2]
            d.rules.update(rules)
            if dep is not None:
                d.dependencies.add(dep)

    def _is_seed_shape(self, key: CorrelatorKey) -> bool:
        t = self.target
        return key.n == 3 and any(key.beta) and any(t.st_degree(c) == 2 for c in key.classes)

    def _solve(self, key: CorrelatorKey, designate: Optional[int]) -> Fraction:
        t = self.target
        plain = (key.beta, key.classes)
        if t.has_odd_classes:
            raise ReconstructionError(
                "%s: WDVV reconstruction with odd-degree classes is not supported"
                % format_key(t, key.beta, key.classes))
        if self._is_seed_shape(key):
            raise MissingSeeds([plain], t)
        classes = list(key.classes)
        candidates = [c for c in classes if t.st_degree(c) > 2]
        if designate is None or designate not in classes or t.st_degree(designate) <= 2:
            if not candidates:
                raise ReconstructionError(
                    "%s: no insertion of degree > 2 to factor (twisted degree-2 classes "
                    "cannot be stripped)" % format_key(t, key.beta, key.classes))
            designate = self.chooser.designate(t, candidates)
        cell = (key.beta, key.n)
        ddeg = t.st_degree(designate)
        if self._frames:
            pcell, pdeg, _ = self._frames[-1]
            if not (cell_less(cell, pcell) or (cell == pcell and ddeg < pdeg)):
                raise OrderViolation(
                    "%s (designated degree %s) is not below its parent cell %s (degree %s)"
                    % (format_key(t, key.beta, key.classes), ddeg, pcell, pdeg))
        if self.cutoff is not None and not self.cutoff.covers(t.c1_degree(key.beta), key.n):
            raise ReconstructionError("%s lies outside the cutoff"
                                      % format_key(t, key.beta, key.classes))
        factorization = self.chooser.factorization(t, designate)
        if not factorization:
            raise ReconstructionError("class %s is not generated in degree 2" % t.label(designate))
        remaining = list(classes)
        remaining.remove(designate)
        g1, g2 = self.chooser.pair(t, remaining)
        rest = list(remaining)
        rest.remove(g1)
        rest.remove(g2)

        deriv = Derivation(plain, "wdvv", Fraction(0), designated=designate)
        self._frames.append((cell, ddeg, deriv))
        try:
            total = Fraction(0)
            for vec, d in factorization:
                for k, w in sorted(vec.items()):
                    inst = self._instance(key.beta, g1, g2, tuple(rest), k, d, w)
                    deriv.instances.append(inst)
                    total += w * inst.value
        finally:
            self._frames.pop()
        deriv.value = total
        existing = self.table.get(plain)
        if existing is not None:
            # solved meanwhile through a lower designation of the same key
            if existing.value != total:
                raise ReconstructionError(
                    "inconsistent values for %s: %s vs %s (seeds violate WDVV?)"
                    % (format_key(t, key.beta, key.classes), existing.value, total))
            return total
        self.table.add(key.beta, key.classes, total, "reconstructed")
        self.derivations[plain] = deriv
        return total

    def _instance(self, beta, g1, g2, rest, k, d, weight) -> WdvvInstance:
        """Solve WDVV(g1, g2 | T_k, T_d) for ``<g1, g2, rest, T_k cup T_d>_beta``."""
        t = self.target
        value = self.value
        pairs = t.inverse_pairs
        groups = sorted(Counter(rest).items())
        full_rest = tuple(rest)
        splits = []
        for counts in itertools.product(*(range(m + 1) for _, m in groups)):
            mult = 1
            A, B = [], []
            for (c, m), a in zip(groups, counts):
                mult *= comb(m, a)
                A += [c] * a
                B += [c] * (m - a)
            splits.append((tuple(A), tuple(B), mult))
        zero = tuple(0 for _ in beta)
        left = Fraction(0)       # every (ij|hl) term except the unknown one
        right = Fraction(0)
        for b1, b2 in splittings(t, beta):
            for A, B, mult in splits:
                unknown = b2 == zero and not B
                for e, f, ginv in pairs:
                    if not unknown:
                        v1 = value((g1, g2) + A + (e,), b1)
                        if v1:
                            v2 = value((f, k, d) + B, b2)
                            if v2:
                                left += mult * v1 * ginv * v2
                    same_cell = b2 == zero and not B
                    v1 = value((g2, k) + A + (e,), b1, designate=k if same_cell else None)
                    if v1:
                        v2 = value((f, g1, d) + B, b2)
                        if v2:
                            right += mult * v1 * ginv * v2
        x = right - left
        inst = WdvvInstance(beta, g1, g2, full_rest, k, d, Fraction(weight), value=x)
        inst.boundary = self._boundary_terms(beta, g1, g2, full_rest, k, d, x)
        return inst

    def _boundary_terms(self, beta, g1, g2, rest, k, d, x) -> dict:
        # the four top-order terms, each a correlator with one cup-product slot
        t = self.target

        def with_cup(a, b, others, designate=None):
            return sum((c * self.value(others + (m,), beta, designate)
                        for m, c in t.cup_vectors({a: 1}, {b: 1}).items()), Fraction(0))

        return {
            "I_12": with_cup(g1, g2, rest + (k, d)),
            "I_n,n+1": x,
            "I_2,n": with_cup(g2, k, (g1,) + rest + (d,)),
            "I_1,n+1": with_cup(g1, d, (g2,) + rest + (k,), designate=k),
        }

    # -- bulk --------------------------------------------------------------

    def irreducible_keys(self, cutoff: Cutoff) -> list:
        return irreducible_keys(self.target, cutoff)

    def fill(self, cutoff: Cutoff) -> CorrelatorTable:
        for beta, classes in self.irreducible_keys(cutoff):
            self.value(classes, beta)
        self.table.cutoff = cutoff
        return self.table


def irreducible_keys(t: GwTarget, cutoff: Cutoff) -> list:
    """Every ``(beta, classes)`` within the cutoff that no axiom reduces."""
    base = [c for c in range(1, t.size)]
    no_div = [c for c in base if not t.is_divisor(c)]
    degs = t.st_degrees
    out = []
    for beta in effective_classes(t, cutoff.max_c1):
        for n in range(3, cutoff.max_n + 1):
            if n == 3 and not any(beta):
                continue
            pool = base if n == 3 else no_div
            total = selection_degree(t, n, beta)
            for combo in itertools.combinations_with_replacement(pool, n):
                if sum(degs[c] for c in combo) != total:
                    continue
                _, _, forced_zero = canonicalize(t, combo)
                if not forced_zero:
                    out.append((beta, combo))
    return out


def required_seeds(t: GwTarget, max_c1: int) -> list:
    """Three-point keys with a degree-2 insertion that reconstruction takes as input."""
    bound = min(max_c1, t.dim + 1)
    return [(beta, classes) for beta, classes in irreducible_keys(t, Cutoff(bound, 3))
            if any(t.st_degree(c) == 2 for c in classes)]


def missing_seeds(t: GwTarget, table: CorrelatorTable, max_c1: int) -> list:
    return [k for k in required_seeds(t, max_c1) if k not in table]


def reconstruct_all(t: GwTarget, seeds=None, cutoff: Cutoff = Cutoff(0, 3),
                    chooser: Optional[Chooser] = None) -> CorrelatorTable:
    """Table of every irreducible correlator inside ``cutoff``.

    Raises :class:`MissingSeeds` naming every absent seed before doing any
    work.
    """
    rec = Reconstructor(t, seeds=seeds, cutoff=cutoff, chooser=chooser)
    if t.has_odd_classes:
        warnings.warn("target has odd-degree classes; seed sufficiency is not claimed for them")
    missing = missing_seeds(t, rec.table, cutoff.max_c1)
    if missing:
        raise MissingSeeds(missing, t)
    return rec.fill(cutoff)


def reconstructor_for(t: GwTarget, cutoff: Cutoff, seeds=None, chooser=None) -> Reconstructor:
    """Reconstructor with the seed check of :func:`reconstruct_all` but no bulk fill."""
    rec = Reconstructor(t, seeds=seeds, cutoff=cutoff, chooser=chooser)
    missing = missing_seeds(t, rec.table, cutoff.max_c1)
    if missing:
        raise MissingSeeds(missing, t)
    return rec


# ---------------------------------------------------------------------------
# explain

def explain(rec: Reconstructor, classes, beta) -> Trace:
    """Derivation tree of one correlator value."""
    t = rec.target
    value = rec.value(classes, beta)
    sorted_classes, _, forced_zero = canonicalize(t, classes)
    label = format_key(t, beta, sorted_classes)
    if forced_zero:
        return Trace(label, "odd square ⇒ 0", Fraction(0))
    mult, key, rules = reduce_fully(t, sorted_classes, beta)
    if key is None:
        kind = {"grading": "grading ⇒ 0", "effectivity": "effectivity ⇒ 0",
                "n<3": "n<3 ⇒ 0"}.get(rules[-1], rules[-1])
        if "divisor" in rules and kind not in ("grading ⇒ 0",):
            kind = "divisor ⇒ " + kind
        return Trace(label, kind, value)
    memo = {}

    def node(plain):
        if plain in memo:
            return memo[plain]
        d = rec.derivations.get(plain)
        lab = format_key(t, *plain)
        if d is None:
            n = Trace(lab, "table", rec.table.value(*plain))
        elif d.kind == "seed":
            n = Trace(lab, "seed", d.value)
        else:
            n = Trace(lab, "wdvv", d.value,
                      detail=[inst.describe(t) for inst in d.instances])
            memo[plain] = n
            for dep in sorted(d.dependencies):
                if dep != plain:
                    n.children.append(node(dep))
            if d.rules.get("classical") or d.rules.get("fundamental class"):
                uses = d.rules["classical"] + d.rules["fundamental class"]
                n.children.append(Trace("classical triples (%d uses)" % uses, "classical", None))
        memo[plain] = n
        return n

    root = node((key.beta, key.classes))
    if rules:
        return Trace(label, " ⇒ ".join(rules), value, children=[root])
    return root


# ---------------------------------------------------------------------------
# independent P^2 oracle

@lru_cache(maxsize=None)
def oracle_recursion_p2(d: int) -> Fraction:
    """Number of rational plane curves of degree ``d`` through ``3d - 1`` points.

    Two-term recursion from the WDVV relation with insertions
    ``(pt, pt | H, H)`` on P^2; ``N_1 = 1``.
    """
    if d < 1:
        raise ValueError("degree must be at least 1")
    if d == 1:
        return Fraction(1)
    total = 0
    for a in range(1, d):
        b = d - a
        na, nb = oracle_recursion_p2(a), oracle_recursion_p2(b)
        total += na * nb * (a * a * b * b * comb(3 * d - 4, 3 * a - 2)
                            - a ** 3 * b * comb(3 * d - 4, 3 * a - 1))
    return Fraction(total)
