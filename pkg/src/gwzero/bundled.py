"""Builders for the targets shipped in ``gwzero/targets``.

The JSON files are generated from these builders (``python -m gwzero.bundled
DIR``) and a test checks that they agree.
"""
from __future__ import annotations

import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .target import BasisClass, CurveLattice, GwTarget, Seed, dumps_target, load_target, loads_target

BUNDLED = ("p1", "p2", "p3", "p1xp1", "orbifold_p13")


def _full_cup(n, products):
    """Cup table with the identity rows filled in; ``products`` maps (i, j) -> {k: c}."""
    cup = {}
    for j in range(n):
        cup[(0, j)] = {j: Fraction(1)}
        cup[(j, 0)] = {j: Fraction(1)}
    for (i, j), row in products.items():
        row = {k: Fraction(c) for k, c in row.items() if c}
        if row:
            cup[(i, j)] = row
    return cup


def projective_space(n: int) -> GwTarget:
    """P^n with basis ``1, H, ..., H^n``; one seed, the line through two points."""
    if n < 1:
        raise ValueError("need n >= 1")
    names = ["1", "H"] + ["H%d" % k for k in range(2, n + 1)]
    basis = tuple(BasisClass(k, 2 * k, name=names[k]) for k in range(n + 1))
    pairing = tuple(tuple(Fraction(1 if a + b == n else 0) for b in range(n + 1)) for a in range(n + 1))
    products = {(a, b): {a + b: 1} for a in range(1, n + 1) for b in range(1, n + 1) if a + b <= n}
    gen = {k: {"pow": [1, k]} for k in range(2, n + 1)}
    return GwTarget(
        name="p%d" % n, dim=n, basis=basis, involution=tuple(range(n + 1)), pairing=pairing,
        cup=_full_cup(n + 1, products), lattice=CurveLattice(1, (n + 1,), {1: (1,)}),
        degree2_generation=gen, seeds=(Seed((1,), (1, n, n), Fraction(1)),))


def p1xp1() -> GwTarget:
    """P^1 x P^1 with basis ``1, H1, H2, pt``; curve classes ``(a, b)``."""
    basis = (BasisClass(0, 0, name="1"), BasisClass(1, 2, name="H1"),
             BasisClass(2, 2, name="H2"), BasisClass(3, 4, name="pt"))
    g = [[0] * 4 for _ in range(4)]
    g[0][3] = g[3][0] = g[1][2] = g[2][1] = 1
    pairing = tuple(tuple(Fraction(x) for x in row) for row in g)
    products = {(1, 2): {3: 1}, (2, 1): {3: 1}}
    seeds = []
    for beta in ((1, 0), (0, 1)):
        for i, j in ((1, 1), (1, 2), (2, 2)):
            # divisor axiom applied twice to <pt>_beta = 1
            value = beta[i - 1] * beta[j - 1]
            seeds.append(Seed(beta, (i, j, 3), Fraction(value)))
    return GwTarget(
        name="p1xp1", dim=2, basis=basis, involution=(0, 1, 2, 3), pairing=pairing,
        cup=_full_cup(4, products), lattice=CurveLattice(2, (2, 2), {1: (1, 0), 2: (0, 1)}),
        degree2_generation={3: {"mul": [1, 2]}}, seeds=tuple(seeds))


def weighted_p13() -> GwTarget:
    """Data model of the weighted projective line P(1,3): one point with a mu_3 gerbe.

    Twisted sectors ``1_{1/3}`` and ``1_{2/3}`` are exchanged by the
    involution.  Only the classical structure is supplied; no invariants.
    """
    third = Fraction(1, 3)
    basis = (BasisClass(0, 0, "0", name="1"), BasisClass(1, 2, "0", name="pt"),
             BasisClass(2, 0, "1/3", Fraction(1, 3), 3, name="e13"),
             BasisClass(3, 0, "2/3", Fraction(2, 3), 3, name="e23"))
    g = [[Fraction(0)] * 4 for _ in range(4)]
    g[0][1] = g[1][0] = Fraction(1)
    g[2][3] = g[3][2] = third
    pairing = tuple(tuple(row) for row in g)
    products = {(2, 2): {3: 1}, (2, 3): {1: third}, (3, 2): {1: third}}
    return GwTarget(
        name="orbifold_p13", dim=1, basis=basis, involution=(0, 1, 3, 2), pairing=pairing,
        cup=_full_cup(4, products), lattice=CurveLattice(1, (4,), {1: (3,)}), seeds=())


BUILDERS = {
    "p1": lambda: projective_space(1),
    "p2": lambda: projective_space(2),
    "p3": lambda: projective_space(3),
    "p1xp1": p1xp1,
    "orbifold_p13": weighted_p13,
}


def bundled_text(name: str) -> str:
    if name not in BUNDLED:
        raise KeyError("no bundled target %r" % name)
    return resources.files("gwzero").joinpath("targets", name + ".json").read_text(encoding="utf-8")


def load_bundled(name: str) -> GwTarget:
    return loads_target(bundled_text(name))


def resolve_target(ref: str) -> GwTarget:
    """A bundled name (``p2``), ``targets/p2.json``, or a path to a target file."""
    p = Path(ref)
    if p.is_file():
        return load_target(p)
    stem = p.name[:-5] if p.name.endswith(".json") else p.name
    if stem in BUNDLED:
        return load_bundled(stem)
    raise FileNotFoundError("no such target file or bundled target: %s" % ref)


def write_bundled(directory) -> None:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    for name, build in BUILDERS.items():
        (d / (name + ".json")).write_text(dumps_target(build()), encoding="utf-8")


if __name__ == "__main__":
    write_bundled(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).parent / "targets")
