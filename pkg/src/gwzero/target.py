"""Gromov-Witten targets: graded inertia cohomology, pairing, cup product, curve lattice.

Everything here is data supplied by the user (or by :mod:`gwzero.bundled`);
nothing is derived from a geometric description of the stack.  The on-disk
format is a single JSON document; rationals are always strings ``"p/q"``.
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional

import sympy

from .algebra import SeriesSpace, SignRule


class TargetError(ValueError):
    """A target cannot be used for the requested computation."""


class TargetParseError(TargetError):
    """The target file is malformed; the message carries its position."""


_RATIONAL = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text, where: str = "") -> Fraction:
    """Parse ``"p/q"`` (or a bare integer) exactly; reject floats and q = 0."""
    if isinstance(text, bool):
        raise TargetParseError("%s: expected a rational, got %r" % (where, text))
    if isinstance(text, int):
        return Fraction(text)
    m = _RATIONAL.match(text) if isinstance(text, str) else None
    if m is None:
        raise TargetParseError("%s: malformed rational %r" % (where, text))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise TargetParseError("%s: malformed rational %r (zero denominator)" % (where, text))
    return Fraction(int(m.group(1)), den)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return "%d/%d" % (x.numerator, x.denominator)


@dataclass(frozen=True)
class Cutoff:
    """Reconstruction and potential cutoff: ``beta . c1 <= max_c1`` and ``n <= max_n``."""

    max_c1: int
    max_n: int

    def __post_init__(self):
        if self.max_c1 < 0 or self.max_n < 0:
            raise ValueError("cutoff must be nonnegative")

    def covers(self, c1_degree: int, n: int) -> bool:
        return c1_degree <= self.max_c1 and n <= self.max_n


@dataclass(frozen=True)
class BasisClass:
    id: int
    classical_degree: int
    component: str = "0"
    age: Fraction = Fraction(0)
    r: int = 1
    name: Optional[str] = None

    @property
    def st_degree(self) -> Fraction:
        return self.classical_degree + 2 * Fraction(self.age)

    @property
    def parity(self) -> int:
        # Koszul signs follow the cohomological degree on the inertia stack;
        # the shifted degree may be fractional.
        return self.classical_degree & 1

    @property
    def label(self) -> str:
        return self.name if self.name else "T%d" % self.id


@dataclass(frozen=True)
class Seed:
    beta: tuple
    classes: tuple
    value: Fraction


@dataclass(frozen=True)
class CurveLattice:
    rank: int
    c1: tuple
    divisors: dict = field(default_factory=dict)   # basis id -> tuple of ints

    def c1_degree(self, beta) -> int:
        return sum(b * c for b, c in zip(beta, self.c1))

    def divisor_degree(self, beta, class_id: int) -> int:
        return sum(b * d for b, d in zip(beta, self.divisors[class_id]))


@dataclass(frozen=True, eq=False)
class GwTarget:
    """Complete description of a target, immutable once built.

    ``cup[(i, j)]`` maps ``k -> c_ij^k``; the degree-0 three-point invariants
    are ``<T_a, T_b, T_c>_0 = sum_k c_ab^k g_kc``, so for orbifolds the
    supplied product is the one whose Frobenius pairing is ``g``.
    """

    name: str
    dim: int
    basis: tuple
    involution: tuple
    pairing: tuple
    cup: dict
    lattice: CurveLattice
    degree2_generation: dict = field(default_factory=dict)   # id -> expression tree
    seeds: tuple = ()

    @property
    def size(self) -> int:
        return len(self.basis)

    def st_degree(self, i: int) -> Fraction:
        return self.basis[i].st_degree

    def parity(self, i: int) -> int:
        return self.basis[i].parity

    @cached_property
    def parities(self) -> tuple:
        return tuple(b.parity for b in self.basis)

    @cached_property
    def st_degrees(self) -> tuple:
        return tuple(b.st_degree for b in self.basis)

    @property
    def has_odd_classes(self) -> bool:
        return any(self.parities)

    def label(self, i: int) -> str:
        return self.basis[i].label

    def class_index(self, symbol: str) -> int:
        """Resolve ``"T2"``, ``"T_2"``, ``"2"`` or a basis name."""
        s = symbol.strip()
        for b in self.basis:
            if b.name is not None and b.name == s:
                return b.id
        m = re.match(r"^T_?(\d+)$", s) or re.match(r"^(\d+)$", s)
        if m and int(m.group(1)) < self.size:
            return int(m.group(1))
        raise KeyError("unknown basis symbol %r" % symbol)

    @cached_property
    def untwisted_component(self):
        return self.basis[0].component

    def is_divisor(self, i: int) -> bool:
        return i in self.lattice.divisors

    @cached_property
    def divisor_ids(self) -> frozenset:
        return frozenset(self.lattice.divisors)

    def c1_degree(self, beta) -> int:
        return self.lattice.c1_degree(beta)

    def series_space(self, weights=None) -> SeriesSpace:
        return SeriesSpace(SignRule(self.parities), self.lattice.c1, weights)

    # pairing ----------------------------------------------------------------

    def g(self, e: int, f: int) -> Fraction:
        return self.pairing[e][f]

    @cached_property
    def pairing_inverse(self) -> tuple:
        m = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row]
                          for row in self.pairing])
        if m.rank() < m.rows:
            raise TargetError("pairing degenerate")
        inv = m.inv()
        return tuple(tuple(Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(m.cols))
                     for i in range(m.rows))

    def g_inv(self, e: int, f: int) -> Fraction:
        return self.pairing_inverse[e][f]

    @cached_property
    def inverse_pairs(self) -> tuple:
        """Nonzero ``(e, f, g^ef)``."""
        n = self.size
        inv = self.pairing_inverse
        return tuple((e, f, inv[e][f]) for e in range(n) for f in range(n) if inv[e][f])

    # cup product ------------------------------------------------------------

    def cup_basis(self, i: int, j: int) -> dict:
        return self.cup.get((i, j), {})

    def cup_vectors(self, x: dict, y: dict) -> dict:
        """Cup product of two basis-indexed vectors (even classes commute freely)."""
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.cup_basis(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: v for k, v in out.items() if v}

    def classical_triple(self, a: int, b: int, c: int) -> Fraction:
        """``<T_a, T_b, T_c>_{0,3,0} = sum_k c_ab^k g_kc``."""
        return sum((v * self.pairing[k][c] for k, v in self.cup_basis(a, b).items()), Fraction(0))

    # degree-2 generation ----------------------------------------------------

    @cached_property
    def generation_polynomials(self) -> dict:
        """``id -> {sorted tuple of degree-2 ids: coefficient}``."""
        return {i: _expand_expression(expr, "degree2_generation[%d]" % i)
                for i, expr in self.degree2_generation.items()}

    def evaluate_monomial(self, factors) -> dict:
        vec = {0: Fraction(1)}
        for f in factors:
            vec = self.cup_vectors(vec, {f: Fraction(1)})
        return vec


# ---------------------------------------------------------------------------
# expression trees for degree2_generation

def _expand_expression(node, where: str) -> dict:
    """Expand an expression tree into ``{sorted factor tuple: coefficient}``.

    Nodes: an integer basis id, ``{"mul": [...]}``, ``{"add": [...]}``,
    ``{"scale": ["p/q", node]}`` or ``{"pow": [node, k]}``.
    """
    if isinstance(node, bool):
        raise TargetParseError("%s: bad expression node %r" % (where, node))
    if isinstance(node, int):
        return {(node,): Fraction(1)}
    if not isinstance(node, dict) or len(node) != 1:
        raise TargetParseError("%s: bad expression node %r" % (where, node))
    (op, args), = node.items()
    if op == "add":
        out = {}
        for k, a in enumerate(args):
            for m, c in _expand_expression(a, "%s.add[%d]" % (where, k)).items():
                out[m] = out.get(m, 0) + c
        return {m: c for m, c in out.items() if c}
    if op == "mul":
        out = {(): Fraction(1)}
        for k, a in enumerate(args):
            sub = _expand_expression(a, "%s.mul[%d]" % (where, k))
            nxt = {}
            for m1, c1 in out.items():
                for m2, c2 in sub.items():
                    m = tuple(sorted(m1 + m2))
                    nxt[m] = nxt.get(m, 0) + c1 * c2
            out = {m: c for m, c in nxt.items() if c}
        return out
    if op == "scale":
        c = parse_rational(args[0], where + ".scale")
        return {m: c * v for m, v in _expand_expression(args[1], where + ".scale").items() if c * v}
    if op == "pow":
        base, k = args
        return _expand_expression({"mul": [base] * int(k)}, where + ".pow")
    raise TargetParseError("%s: unknown operator %r" % (where, op))


# ---------------------------------------------------------------------------
# validation

@dataclass
class ValidationReport:
    errors: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def __bool__(self):
        return self.ok

    def lines(self) -> list:
        return ["error: " + e for e in self.errors] + ["warning: " + w for w in self.warnings]


def validate_target(t: GwTarget) -> ValidationReport:
    """Check every structural invariant of a target; never raises."""
    rep = ValidationReport()
    err, warn = rep.errors.append, rep.warnings.append
    n = t.size
    if n == 0:
        err("empty basis")
        return rep
    if t.dim < 0:
        err("negative dimension")

    for k, b in enumerate(t.basis):
        if b.id != k:
            err("basis entry %d has id %d" % (k, b.id))
        if b.classical_degree < 0:
            err("class %s has negative classical degree" % b.label)
        if b.r < 1:
            err("class %s has nonpositive banding order" % b.label)
        age = Fraction(b.age)
        if age < 0:
            err("class %s has negative age" % b.label)
        elif b.r >= 1 and b.r % age.denominator:
            err("class %s: age %s has denominator not dividing r=%d" % (b.label, age, b.r))
        if b.st_degree < 0:
            err("class %s has negative st-degree" % b.label)
        if b.st_degree > 2 * t.dim:
            err("class %s has st-degree above 2*dim" % b.label)
    b0 = t.basis[0]
    if b0.classical_degree != 0 or b0.age != 0 or b0.r != 1:
        err("T_0 must be the untwisted identity (degree 0, age 0, r 1)")
    by_comp = {}
    for b in t.basis:
        by_comp.setdefault(b.component, set()).add((Fraction(b.age), b.r))
    for comp, data in by_comp.items():
        if len(data) > 1:
            err("component %s carries inconsistent age or r" % comp)
    if any(b.age != 0 for b in t.basis if b.component == t.untwisted_component):
        err("untwisted component has nonzero age")
    if t.has_odd_classes:
        warn("odd-degree classes present: signs are handled, seed sufficiency is not claimed")

    # involution
    perm = tuple(t.involution)
    if sorted(perm) != list(range(n)):
        err("involution is not a permutation of the basis")
    else:
        if any(perm[perm[i]] != i for i in range(n)):
            err("involution not self-inverse")
        if perm[0] != 0:
            err("involution does not fix T_0")
        for i in range(n):
            # ages of inverse sectors are complementary, so only the classical degree is kept
            bi, bj = t.basis[i], t.basis[perm[i]]
            if bj.classical_degree != bi.classical_degree or bj.r != bi.r:
                err("involution does not preserve classical degree and r at %s" % t.label(i))
                break

    # pairing
    g = t.pairing
    if len(g) != n or any(len(row) != n for row in g):
        err("pairing is not a %dx%d matrix" % (n, n))
    else:
        try:
            inv = t.pairing_inverse
        except TargetError:
            err("pairing degenerate")
        else:
            for i in range(n):
                for j in range(n):
                    s = sum(g[i][k] * inv[k][j] for k in range(n))
                    if s != (1 if i == j else 0):
                        err("pairing inverse check failed")
                        break
                else:
                    continue
                break
        for e in range(n):
            for f in range(n):
                if g[e][f] and t.st_degree(e) + t.st_degree(f) != 2 * t.dim:
                    err("pairing entry (%d,%d) violates degree support" % (e, f))
                sgn = -1 if t.parity(e) and t.parity(f) else 1
                if g[e][f] != sgn * g[f][e]:
                    err("pairing not graded-symmetric at (%d,%d)" % (e, f))
                if sorted(perm) == list(range(n)):
                    if g[e][f] not in (g[perm[f]][perm[e]], -g[perm[f]][perm[e]]):
                        warn("pairing entry (%d,%d) not compatible with the involution" % (e, f))

    # cup product
    cup_ok = True
    for (i, j), row in t.cup.items():
        if not (0 <= i < n and 0 <= j < n) or any(not 0 <= k < n for k in row):
            err("cup constant index out of range at (%s,%s)" % (i, j))
            cup_ok = False
            continue
        for k, c in row.items():
            if c and t.st_degree(i) + t.st_degree(j) != t.st_degree(k):
                err("cup constant c_{%d,%d}^%d violates grading" % (i, j, k))
    if cup_ok:
        for j in range(n):
            if t.cup_basis(0, j) != {j: 1} or t.cup_basis(j, 0) != {j: 1}:
                err("T_0 is not a two-sided cup identity at %s" % t.label(j))
                break
        for i in range(n):
            for j in range(n):
                sgn = -1 if t.parity(i) and t.parity(j) else 1
                if t.cup_basis(i, j) != {k: sgn * c for k, c in t.cup_basis(j, i).items()}:
                    err("cup product not graded-commutative at (%d,%d)" % (i, j))
        # associativity and Frobenius property with the pairing (even part only
        # needs no signs; odd entries use the graded rule)
        if not t.has_odd_classes:
            for i, j, k in itertools.product(range(n), repeat=3):
                lhs = t.cup_vectors(t.cup_vectors({i: 1}, {j: 1}), {k: 1})
                rhs = t.cup_vectors({i: 1}, t.cup_vectors({j: 1}, {k: 1}))
                if lhs != rhs:
                    err("cup product not associative at (%d,%d,%d)" % (i, j, k))
                    break
            if len(g) == n:
                for a, b, c in itertools.product(range(n), repeat=3):
                    if t.classical_triple(a, b, c) != t.classical_triple(b, c, a):
                        err("cup product not compatible with the pairing at (%d,%d,%d)" % (a, b, c))
                        break

    # lattice
    lat = t.lattice
    if lat.rank < 1:
        err("curve lattice rank must be positive")
    if len(lat.c1) != lat.rank:
        err("c1 vector length differs from lattice rank")
    elif any(c < 0 for c in lat.c1):
        err("beta.c1 negative on an effective generator")
    for i, vec in lat.divisors.items():
        if not 0 <= i < n:
            err("divisor entry for unknown class %s" % i)
            continue
        if len(vec) != lat.rank:
            err("divisor vector of %s has wrong length" % t.label(i))
        if t.st_degree(i) != 2 or t.basis[i].component != t.untwisted_component:
            err("divisor pairing given for %s, which is not an untwisted degree-2 class" % t.label(i))
    for b in t.basis:
        if b.st_degree == 2 and b.component == t.untwisted_component and b.id not in lat.divisors:
            err("untwisted degree-2 class %s has no divisor pairing" % b.label)

    # degree-2 generation
    if cup_ok:
        for i in t.degree2_generation:
            if not 0 <= i < n:
                err("degree2_generation for unknown class %s" % i)
                continue
            try:
                poly = t.generation_polynomials[i]
            except TargetError as exc:
                err(str(exc))
                continue
            total = {}
            for mono, c in poly.items():
                if any(not 0 <= f < n or t.st_degree(f) != 2 for f in mono):
                    err("degree2_generation of %s uses a class that is not of degree 2" % t.label(i))
                    break
                for k, v in t.evaluate_monomial(mono).items():
                    total[k] = total.get(k, 0) + c * v
            else:
                total = {k: v for k, v in total.items() if v}
                if total != {i: 1}:
                    err("degree2_generation of %s does not evaluate to the class" % t.label(i))

    # seeds
    for s in t.seeds:
        if len(s.beta) != lat.rank or any(b < 0 for b in s.beta):
            err("seed %s: beta not an effective lattice vector" % (s,))
            continue
        if any(not 0 <= c < n for c in s.classes):
            err("seed %s: unknown class" % (s,))
            continue
        if len(s.classes) < 3:
            err("seed %s: fewer than three insertions" % (s,))
            continue
        if sum(t.st_degree(c) for c in s.classes) != selection_degree(t, len(s.classes), s.beta):
            err("seed %s violates the selection rule" % (s,))
    return rep


# ---------------------------------------------------------------------------
# small operations

def diagonal_class(t: GwTarget) -> list:
    """Nonzero entries ``(e, f, g^ef)`` of the diagonal class."""
    return list(t.inverse_pairs)


def splittings(t: GwTarget, beta) -> list:
    """Ordered pairs of effective classes summing to ``beta``."""
    beta = tuple(beta)
    if len(beta) != t.lattice.rank:
        raise TargetError("beta has rank %d, lattice has rank %d" % (len(beta), t.lattice.rank))
    if any(b < 0 for b in beta):
        raise TargetError("beta %s is not effective" % (beta,))
    out = []
    for b1 in itertools.product(*(range(b + 1) for b in beta)):
        out.append((b1, tuple(b - x for b, x in zip(beta, b1))))
    return out


def selection_degree(t: GwTarget, n: int, beta) -> Fraction:
    """Total st-degree an ``n``-point genus-zero correlator of class ``beta`` needs."""
    if n < 3:
        raise TargetError("selection rule needs n >= 3")
    return Fraction(2 * (t.dim + t.c1_degree(beta)) + 2 * (n - 3))


def effective_classes(t: GwTarget, max_c1: int) -> list:
    """All effective ``beta`` with ``beta . c1 <= max_c1``, sorted by degree."""
    c1 = t.lattice.c1
    if any(c <= 0 for c in c1):
        raise TargetError("enumerating curve classes by beta.c1 needs c1 > 0 on every generator")
    ranges = [range(max_c1 // c + 1) for c in c1]
    out = [b for b in itertools.product(*ranges) if t.c1_degree(b) <= max_c1]
    return sorted(out, key=lambda b: (t.c1_degree(b), b))


def degree2_factorizations(t: GwTarget, class_id: int) -> Optional[list]:
    """Every way to write ``T = sum delta'_i cup delta_i`` with ``delta_i`` a divisor.

    Each alternative is a list of ``(delta_prime_vector, delta_id)`` sorted by
    ``delta_id``; ``None`` if the class already has st-degree at most 2.
    """
    if t.st_degree(class_id) <= 2:
        return None
    poly = t.generation_polynomials.get(class_id)
    if poly is None:
        raise TargetError("class %s is not generated in degree 2" % t.label(class_id))
    per_monomial = []
    for mono, c in sorted(poly.items()):
        options = []
        for d in sorted(set(mono)):
            if not t.is_divisor(d):
                continue
            rest = list(mono)
            rest.remove(d)
            vec = {k: c * v for k, v in t.evaluate_monomial(rest).items()}
            options.append((d, vec))
        if not options:
            raise TargetError("class %s: monomial %s has no divisor factor" % (t.label(class_id), mono))
        per_monomial.append(options)
    out = []
    for combo in itertools.product(*per_monomial):
        merged = {}
        for d, vec in combo:
            acc = merged.setdefault(d, {})
            for k, v in vec.items():
                acc[k] = acc.get(k, 0) + v
        terms = []
        for d in sorted(merged):
            vec = {k: v for k, v in sorted(merged[d].items()) if v}
            if vec:
                terms.append((vec, d))
        out.append(terms)
    return out


def factor_through_degree2(t: GwTarget, class_id: int) -> Optional[list]:
    """Canonical factorization (smallest divisor index first); ``None`` if deg <= 2."""
    alts = degree2_factorizations(t, class_id)
    if alts is None:
        return None
    return min(alts, key=lambda terms: [(d, sorted(vec.items())) for vec, d in terms])


# ---------------------------------------------------------------------------
# JSON format

def target_from_dict(data: dict) -> GwTarget:
    def need(obj, key, where):
        if not isinstance(obj, dict) or key not in obj:
            raise TargetParseError("%s: missing key %r" % (where or "<root>", key))
        return obj[key]

    def as_int(x, where):
        if isinstance(x, bool) or not isinstance(x, int):
            raise TargetParseError("%s: expected an integer, got %r" % (where, x))
        return x

    name = str(need(data, "name", ""))
    dim = as_int(need(data, "dim", ""), "dim")
    basis = []
    for k, b in enumerate(need(data, "basis", "")):
        where = "basis[%d]" % k
        basis.append(BasisClass(
            id=as_int(need(b, "id", where), where + ".id"),
            classical_degree=as_int(need(b, "classical_degree", where), where + ".classical_degree"),
            component=str(b.get("component", "0")),
            age=parse_rational(b.get("age", "0"), where + ".age"),
            r=as_int(b.get("r", 1), where + ".r"),
            name=b.get("name"),
        ))
    n = len(basis)
    involution = tuple(as_int(x, "involution[%d]" % k)
                       for k, x in enumerate(data.get("involution", list(range(n)))))
    pairing = tuple(tuple(parse_rational(x, "pairing[%d][%d]" % (i, j)) for j, x in enumerate(row))
                    for i, row in enumerate(need(data, "pairing", "")))
    cup = {}
    for k, e in enumerate(need(data, "cup", "")):
        where = "cup[%d]" % k
        i = as_int(need(e, "i", where), where + ".i")
        j = as_int(need(e, "j", where), where + ".j")
        kk = as_int(need(e, "k", where), where + ".k")
        c = parse_rational(need(e, "c", where), where + ".c")
        if c:
            row = cup.setdefault((i, j), {})
            row[kk] = row.get(kk, 0) + c
    lat = need(data, "lattice", "")
    rank = as_int(need(lat, "rank", "lattice"), "lattice.rank")
    c1 = tuple(as_int(x, "lattice.c1[%d]" % k) for k, x in enumerate(need(lat, "c1", "lattice")))
    divisors = {}
    for key, vec in lat.get("divisors", {}).items():
        try:
            cid = int(key)
        except ValueError:
            raise TargetParseError("lattice.divisors: bad basis id %r" % key) from None
        divisors[cid] = tuple(as_int(x, "lattice.divisors[%s]" % key) for x in vec)
    gen = {}
    for key, expr in data.get("degree2_generation", {}).items():
        try:
            gen[int(key)] = expr
        except ValueError:
            raise TargetParseError("degree2_generation: bad basis id %r" % key) from None
    seeds = []
    for k, s in enumerate(data.get("seeds", [])):
        where = "seeds[%d]" % k
        seeds.append(Seed(
            beta=tuple(as_int(x, where + ".beta") for x in need(s, "beta", where)),
            classes=tuple(as_int(x, where + ".classes") for x in need(s, "classes", where)),
            value=parse_rational(need(s, "value", where), where + ".value"),
        ))
    t = GwTarget(name=name, dim=dim, basis=tuple(basis), involution=involution, pairing=pairing,
                 cup=cup, lattice=CurveLattice(rank, c1, divisors), degree2_generation=gen,
                 seeds=tuple(seeds))
    if gen:
        t.generation_polynomials  # noqa: B018 -- malformed trees fail at load time
    return t


def target_to_dict(t: GwTarget) -> dict:
    basis = []
    for b in t.basis:
        d = {"id": b.id, "classical_degree": b.classical_degree, "component": b.component,
             "age": format_rational(b.age), "r": b.r}
        if b.name is not None:
            d["name"] = b.name
        basis.append(d)
    cup = [{"i": i, "j": j, "k": k, "c": format_rational(c)}
           for (i, j), row in sorted(t.cup.items()) for k, c in sorted(row.items())]
    return {
        "name": t.name,
        "dim": t.dim,
        "basis": basis,
        "involution": list(t.involution),
        "pairing": [[format_rational(x) for x in row] for row in t.pairing],
        "cup": cup,
        "lattice": {"rank": t.lattice.rank, "c1": list(t.lattice.c1),
                    "divisors": {str(k): list(v) for k, v in sorted(t.lattice.divisors.items())}},
        "degree2_generation": {str(k): v for k, v in sorted(t.degree2_generation.items())},
        "seeds": [{"beta": list(s.beta), "classes": list(s.classes),
                   "value": format_rational(s.value)} for s in t.seeds],
    }


def loads_target(text: str) -> GwTarget:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TargetParseError("line %d, column %d: %s" % (exc.lineno, exc.colno, exc.msg)) from None
    if not isinstance(data, dict):
        raise TargetParseError("<root>: expected a JSON object")
    try:
        return target_from_dict(data)
    except (TypeError, AttributeError) as exc:
        raise TargetParseError("malformed target document: %s" % exc) from None


def load_target(path) -> GwTarget:
    with open(path, encoding="utf-8") as fh:
        return loads_target(fh.read())


def dumps_target(t: GwTarget) -> str:
    return json.dumps(target_to_dict(t), indent=1, sort_keys=False) + "\n"


def with_seeds(t: GwTarget, seeds) -> GwTarget:
    """Copy of ``t`` with a different seed list."""
    return GwTarget(name=t.name, dim=t.dim, basis=t.basis, involution=t.involution,
                    pairing=t.pairing, cup=t.cup, lattice=t.lattice,
                    degree2_generation=t.degree2_generation, seeds=tuple(seeds))
