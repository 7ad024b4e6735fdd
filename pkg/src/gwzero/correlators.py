"""Genus-zero correlators and the axioms that reduce them.

A correlator ``<T_c1, ..., T_cn>_beta`` is stored under its canonical key:
insertions sorted by basis id, with the Koszul sign of the sort applied to
the value.  :func:`reduce` applies effectivity, the selection rule, the
fundamental-class and divisor axioms; whatever survives is irreducible and
must come from a :class:`CorrelatorTable`.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .target import Cutoff, GwTarget, TargetParseError, format_rational, parse_rational, selection_degree

PROVENANCES = ("seed", "reduced", "reconstructed")


class UnknownCorrelator(KeyError):
    """An irreducible correlator is not in the table."""

    def __init__(self, beta, classes):
        super().__init__((tuple(beta), tuple(classes)))
        self.beta = tuple(beta)
        self.classes = tuple(classes)

    def __str__(self):
        return "unknown correlator beta=%s classes=%s" % (self.beta, self.classes)


@dataclass(frozen=True, order=True)
class CorrelatorKey:
    beta: tuple
    classes: tuple
    sign: int = 1

    @property
    def n(self) -> int:
        return len(self.classes)


def canonicalize(t: GwTarget, classes):
    """Sort insertions; return ``(sorted_classes, sign, forced_zero)``.

    ``sign`` is ``(-1)`` to the number of transposed odd pairs; a repeated odd
    class forces the correlator to vanish.
    """
    classes = tuple(classes)
    par = t.parities
    inversions = 0
    odd = [c for c in classes if par[c]]
    for a in range(len(odd)):
        for b in range(a + 1, len(odd)):
            if odd[a] > odd[b]:
                inversions += 1
    forced_zero = len(set(odd)) != len(odd)
    return tuple(sorted(classes)), (-1 if inversions & 1 else 1), forced_zero


def format_key(t: Optional[GwTarget], beta, classes) -> str:
    beta = tuple(beta)
    if t is None:
        labels = ["T%d" % c for c in classes]
    else:
        labels = [t.label(c) for c in classes]
    b = str(beta[0]) if len(beta) == 1 else "(" + ",".join(map(str, beta)) + ")"
    return "<%s>_%s" % (",".join(labels), b)


# ---------------------------------------------------------------------------
# reduction

@dataclass(frozen=True)
class Value:
    value: Fraction
    rule: str


@dataclass(frozen=True)
class Reduced:
    classes: tuple
    beta: tuple
    multiplier: Fraction
    rule: str = "divisor"


@dataclass(frozen=True)
class Irreducible:
    key: CorrelatorKey


def reduce(t: GwTarget, classes, beta):
    """One reduction step on canonically sorted ``classes``.

    Rules, in order: n < 3, effectivity, selection rule, identity insertion,
    classical three-point integral, divisor stripping (n > 3 only).
    """
    classes = tuple(classes)
    beta = tuple(beta)
    n = len(classes)
    if n < 3:
        return Value(Fraction(0), "n<3")
    if any(b < 0 for b in beta):
        return Value(Fraction(0), "effectivity")
    if sum(t.st_degrees[c] for c in classes) != selection_degree(t, n, beta):
        return Value(Fraction(0), "grading")
    zero_beta = not any(beta)
    if classes[0] == 0:
        if zero_beta and n == 3:
            return Value(t.g(classes[1], classes[2]), "fundamental class")
        return Value(Fraction(0), "fundamental class")
    if zero_beta and n == 3:
        return Value(t.classical_triple(*classes), "classical")
    if n > 3:
        divs = t.divisor_ids
        for k, c in enumerate(classes):
            if c in divs:
                rest = classes[:k] + classes[k + 1:]
                return Reduced(rest, beta, Fraction(t.lattice.divisor_degree(beta, c)))
    return Irreducible(CorrelatorKey(beta, classes))


def reduce_fully(t: GwTarget, classes, beta):
    """Canonicalize and reduce until a value or an irreducible key remains.

    Returns ``(multiplier, key_or_None, rules)``: the correlator equals
    ``multiplier`` when ``key`` is ``None`` and ``multiplier * <key>``
    otherwise.
    """
    classes, sign, forced_zero = canonicalize(t, classes)
    if forced_zero:
        return Fraction(0), None, ["odd square"]
    mult = Fraction(sign)
    beta = tuple(beta)
    rules = []
    while True:
        r = reduce(t, classes, beta)
        if isinstance(r, Value):
            rules.append(r.rule)
            return mult * r.value, None, rules
        if isinstance(r, Reduced):
            rules.append(r.rule)
            mult *= r.multiplier
            if not mult:
                return Fraction(0), None, rules
            classes, beta = r.classes, r.beta
            continue
        return mult, r.key, rules


# ---------------------------------------------------------------------------
# table

@dataclass(frozen=True)
class TableEntry:
    value: Fraction
    provenance: str


class CorrelatorTable:
    """Exact values of irreducible correlators, keyed by ``(beta, sorted classes)``.

    One writer fills the table in dependency order; readers only ever see
    completed entries.
    """

    def __init__(self, target_name: str = "", cutoff: Optional[Cutoff] = None):
        self.target_name = target_name
        self.cutoff = cutoff
        self._entries = {}

    def __len__(self):
        return len(self._entries)

    def __contains__(self, key):
        return _plain(key) in self._entries

    def __iter__(self) -> Iterator:
        return iter(sorted(self._entries, key=_sort_key))

    def items(self):
        for k in self:
            yield k, self._entries[k]

    def add(self, beta, classes, value, provenance: str = "reconstructed"):
        if provenance not in PROVENANCES:
            raise ValueError("unknown provenance %r" % provenance)
        key = (tuple(beta), tuple(classes))
        if list(key[1]) != sorted(key[1]):
            raise ValueError("table keys must have sorted classes")
        self._entries[key] = TableEntry(Fraction(value), provenance)

    def set_value(self, beta, classes, value):
        """Overwrite a value in place, keeping its provenance (test perturbations)."""
        key = (tuple(beta), tuple(classes))
        old = self._entries[key]
        self._entries[key] = TableEntry(Fraction(value), old.provenance)

    def get(self, key) -> Optional[TableEntry]:
        return self._entries.get(_plain(key))

    def value(self, beta, classes) -> Fraction:
        e = self._entries.get((tuple(beta), tuple(classes)))
        if e is None:
            raise UnknownCorrelator(beta, classes)
        return e.value

    def copy(self) -> "CorrelatorTable":
        out = CorrelatorTable(self.target_name, self.cutoff)
        out._entries = dict(self._entries)
        return out

    def __eq__(self, other):
        if not isinstance(other, CorrelatorTable):
            return NotImplemented
        return self._entries == other._entries


def _plain(key):
    if isinstance(key, CorrelatorKey):
        return key.beta, key.classes
    return tuple(key[0]), tuple(key[1])


def _sort_key(key):
    beta, classes = key
    return (sum(beta), beta, len(classes), classes)


def get_or_fail(table: CorrelatorTable, key: CorrelatorKey, forced_zero: bool = False) -> Fraction:
    """Stored value of an irreducible key times its sign."""
    if forced_zero:
        return Fraction(0)
    e = table.get(key)
    if e is None:
        raise UnknownCorrelator(key.beta, key.classes)
    return key.sign * e.value


def correlator_value(t: GwTarget, table: CorrelatorTable, classes, beta) -> Fraction:
    """Exact value of an arbitrary genus-zero correlator of basis insertions."""
    mult, key, _ = reduce_fully(t, classes, beta)
    if key is None:
        return mult
    return mult * get_or_fail(table, key)


def seed_table(t: GwTarget, seeds=None) -> CorrelatorTable:
    """Table holding the target's seeds (canonicalized)."""
    table = CorrelatorTable(t.name)
    for s in (t.seeds if seeds is None else seeds):
        classes, sign, forced_zero = canonicalize(t, s.classes)
        if forced_zero:
            continue
        table.add(s.beta, classes, sign * s.value, "seed")
    return table


def audit_selection(t: GwTarget, table: CorrelatorTable) -> list:
    """Keys holding a nonzero value although the selection rule forces zero."""
    bad = []
    for (beta, classes), e in table.items():
        if e.value and sum(t.st_degrees[c] for c in classes) != selection_degree(t, len(classes), beta):
            bad.append((beta, classes))
    return bad


# ---------------------------------------------------------------------------
# export / import

CSV_HEADER = ["beta", "classes", "value", "provenance"]


def table_to_csv(table: CorrelatorTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for (beta, classes), e in table.items():
        w.writerow([";".join(map(str, beta)), ";".join(map(str, classes)),
                    format_rational(e.value), e.provenance])
    return buf.getvalue()


def _int_list(text, where):
    try:
        return tuple(int(x) for x in text.split(";")) if text != "" else ()
    except ValueError:
        raise TargetParseError("%s: expected semicolon-joined integers, got %r" % (where, text)) from None


def table_from_csv(text: str, target_name: str = "") -> CorrelatorTable:
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows or rows[0] != CSV_HEADER:
        raise TargetParseError("line 1: expected header %s" % ",".join(CSV_HEADER))
    table = CorrelatorTable(target_name)
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 4:
            raise TargetParseError("line %d: expected 4 fields, got %d" % (lineno, len(row)))
        where = "line %d" % lineno
        beta = _int_list(row[0], where)
        classes = _int_list(row[1], where)
        value = parse_rational(row[2], where)
        if row[3] not in PROVENANCES:
            raise TargetParseError("%s: unknown provenance %r" % (where, row[3]))
        if list(classes) != sorted(classes):
            raise TargetParseError("%s: classes not sorted" % where)
        table.add(beta, classes, value, row[3])
    return table


def table_to_json(table: CorrelatorTable) -> str:
    doc = {
        "target": table.target_name,
        "cutoff": None if table.cutoff is None else
        {"max_c1": table.cutoff.max_c1, "max_n": table.cutoff.max_n},
        "entries": [{"beta": list(beta), "classes": list(classes),
                     "value": format_rational(e.value), "provenance": e.provenance}
                    for (beta, classes), e in table.items()],
    }
    return json.dumps(doc, indent=1) + "\n"


def table_from_json(text: str) -> CorrelatorTable:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TargetParseError("line %d, column %d: %s" % (exc.lineno, exc.colno, exc.msg)) from None
    cut = doc.get("cutoff")
    table = CorrelatorTable(doc.get("target", ""),
                            None if cut is None else Cutoff(cut["max_c1"], cut["max_n"]))
    for k, e in enumerate(doc.get("entries", [])):
        where = "entries[%d]" % k
        prov = e.get("provenance", "reconstructed")
        if prov not in PROVENANCES:
            raise TargetParseError("%s: unknown provenance %r" % (where, prov))
        table.add(tuple(e["beta"]), tuple(e["classes"]), parse_rational(e["value"], where), prov)
    return table


def write_table(table: CorrelatorTable, path, fmt: str = "csv") -> None:
    text = table_to_csv(table) if fmt == "csv" else table_to_json(table)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def read_table(path, fmt: Optional[str] = None) -> CorrelatorTable:
    with open(path, encoding="utf-8", newline="") as fh:
        text = fh.read()
    if fmt is None:
        fmt = "json" if str(path).endswith(".json") or text.lstrip().startswith("{") else "csv"
    return table_from_json(text) if fmt == "json" else table_from_csv(text)
