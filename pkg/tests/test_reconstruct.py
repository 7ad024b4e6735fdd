import random
import warnings
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gwzero.correlators import correlator_value
from gwzero.reconstruct import (CellOrder, Derivation, MissingSeeds, OrderViolation,
                                RandomChooser, ReconstructionError, Reconstructor, cell_less,
                                explain, irreducible_keys, missing_seeds, oracle_recursion_p2,
                                reconstruct_all, required_seeds)
from gwzero.target import Cutoff, with_seeds
from fixtures import odd_curve
from oracles import KONTSEVICH, P1XP1_COUNTS, P3_VALUES, kontsevich_by_hand

cells = st.tuples(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(3, 6))


def test_oracle_recursion_values():
    assert [oracle_recursion_p2(d) for d in range(1, 7)] == [KONTSEVICH[d] for d in range(1, 7)]
    assert kontsevich_by_hand(6) == KONTSEVICH
    with pytest.raises(ValueError):
        oracle_recursion_p2(0)


def test_oracle_d3_by_hand():
    # d=3: (a,b)=(1,2) gives 1*1*[4*1*C(5,1) - 1*2*C(5,2)] = 0, (2,1) gives [4*C(5,4) - 8*C(5,5)] = 12
    assert oracle_recursion_p2(3) == 0 + 12


def test_p2_matches_oracle_to_degree_six(p2):
    rec = Reconstructor(p2)
    for d in range(2, 7):
        assert rec.value((2,) * (3 * d - 1), (d,)) == oracle_recursion_p2(d)
    # degree one through the divisor axiom: <H,pt,pt>_1 = (H.beta) N_1
    assert rec.value((1, 2, 2), (1,)) == oracle_recursion_p2(1)


def test_p2_small_degrees(p2):
    table = reconstruct_all(p2, cutoff=Cutoff(15, 14))
    assert table.value((2,), (2,) * 5) == 1
    assert table.value((3,), (2,) * 8) == 12
    assert table.value((4,), (2,) * 11) == 620
    assert {e.provenance for _, e in table.items()} == {"seed", "reconstructed"}


def test_p1xp1_counts(p1xp1):
    rec = Reconstructor(p1xp1)
    for (a, b), n in P1XP1_COUNTS.items():
        k = 2 * a + 2 * b - 1
        if k >= 3:
            assert rec.value((3,) * k, (a, b)) == n
        else:
            # one point: lift by two divisor insertions, <H1,H1,pt>_(1,0) = 1 * 1 * N
            assert rec.value((1, 1, 3), (a, b)) == n


def test_p3_values(p3):
    rec = Reconstructor(p3)
    for (beta, classes), v in P3_VALUES.items():
        assert rec.value(classes, beta) == v


def test_p1_selection_and_line_count(p1):
    table = reconstruct_all(p1, cutoff=Cutoff(8, 7))
    rec = Reconstructor(p1)
    assert rec.value((1, 1, 1), (1,)) == 1
    for d in range(2, 5):
        for n in range(3, 8):
            assert correlator_value(p1, table, (1,) * n, (d,)) == 0
    # brute force over every three-point key: only <pt,pt,pt>_1 and classical ones survive
    for d in range(0, 4):
        for a in range(2):
            for b in range(2):
                for c in range(2):
                    v = correlator_value(p1, table, (a, b, c), (d,))
                    if d == 1:
                        assert v == (1 if (a, b, c) == (1, 1, 1) else 0)
                    elif d > 1:
                        assert v == 0


def test_p1_everything_above_degree_one_vanishes(p1):
    table = reconstruct_all(p1, cutoff=Cutoff(8, 7))
    assert all(e.value == 0 for (beta, _), e in table.items() if beta[0] >= 2)


def test_required_and_missing_seeds(p2, p1xp1):
    assert required_seeds(p2, 15) == [((1,), (1, 2, 2))]
    assert len(required_seeds(p1xp1, 8)) == 6
    bare = with_seeds(p2, [])
    with pytest.raises(MissingSeeds) as exc:
        reconstruct_all(bare, cutoff=Cutoff(6, 5))
    assert exc.value.labels == ["<H,H2,H2>_1"]
    assert missing_seeds(p2, Reconstructor(bare).table, 6) == [((1,), (1, 2, 2))]


def test_demand_driven_missing_seed(p2):
    rec = Reconstructor(with_seeds(p2, []))
    with pytest.raises(MissingSeeds):
        rec.value((2,) * 5, (2,))


def test_demand_and_exhaustive_agree(p1xp1):
    cut = Cutoff(8, 7)
    full = reconstruct_all(p1xp1, cutoff=cut)
    rec = Reconstructor(p1xp1)
    for beta, classes in reversed(irreducible_keys(p1xp1, cut)):
        assert rec.value(classes, beta) == full.value(beta, classes)


def test_factorization_independence_p1xp1(p1xp1):
    # pt = H1 cup H2 = H2 cup H1: genuinely different WDVV instances
    cut = Cutoff(10, 9)
    ref = reconstruct_all(p1xp1, cutoff=cut)
    for s in range(6):
        assert reconstruct_all(p1xp1, cutoff=cut, chooser=RandomChooser(random.Random(s))) == ref


def test_choice_independence_p3(p3):
    cut = Cutoff(12, 8)
    ref = reconstruct_all(p3, cutoff=cut)
    for s in range(6):
        assert reconstruct_all(p3, cutoff=cut, chooser=RandomChooser(random.Random(s))) == ref


def test_reconstructed_table_covers_cutoff(p1xp1):
    cut = Cutoff(6, 6)
    table = reconstruct_all(p1xp1, cutoff=cut)
    assert set(table) == set(irreducible_keys(p1xp1, cut))
    assert table.cutoff == cut


@given(cells, cells, cells)
def test_cell_order_is_a_strict_partial_order(a, b, c):
    assert not cell_less(a, a)
    if cell_less(a, b):
        assert not cell_less(b, a)
        if cell_less(b, c):
            assert cell_less(a, c)


def test_cell_order_examples():
    assert cell_less(((1,), 9), ((2,), 3))
    assert cell_less(((2,), 3), ((2,), 4))
    assert not cell_less(((1, 0), 3), ((0, 1), 3))
    assert not CellOrder.comparable(((1, 0), 3), ((0, 1), 3))


def test_order_violation_is_detected(p2):
    rec = Reconstructor(p2)
    rec._frames.append((((1,), 3), Fraction(2), Derivation(((1,), ()), "wdvv", Fraction(0))))
    with pytest.raises(OrderViolation):
        rec.value((2,) * 5, (2,))


def test_instances_recorded(p2):
    rec = Reconstructor(p2)
    rec.value((2,) * 5, (2,))
    d = rec.derivations[((2,), (2,) * 5)]
    assert d.kind == "wdvv" and d.designated == 2
    assert sum(i.weight * i.value for i in d.instances) == d.value == 1
    inst = d.instances[0]
    assert set(inst.boundary) == {"I_12", "I_n,n+1", "I_2,n", "I_1,n+1"}
    assert inst.boundary["I_n,n+1"] == inst.value
    # gamma_1 cup gamma_2 = pt cup pt = 0 on P^2
    assert inst.boundary["I_12"] == 0


def test_inconsistent_instances_are_reported(p1xp1):
    # a seed that breaks the symmetry between the two rulings makes WDVV
    # instances disagree or produce a table that fails WDVV
    from gwzero.quantum import build_potential, wdvv_check
    from gwzero.target import Seed
    seeds = [s if s.classes != (1, 2, 3) or s.beta != (1, 0) else Seed(s.beta, s.classes, Fraction(1))
             for s in p1xp1.seeds]
    bad = with_seeds(p1xp1, seeds)
    cut = Cutoff(6, 6)
    try:
        table = reconstruct_all(bad, cutoff=cut)
    except ReconstructionError:
        return
    assert not wdvv_check(build_potential(bad, table, cut)).ok


def test_odd_classes_refused():
    t = odd_curve()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        table = reconstruct_all(t, cutoff=Cutoff(0, 5))
    assert len(table) == 0 and caught
    rec = Reconstructor(t)
    with pytest.raises(ReconstructionError, match="odd"):
        rec.value((3, 3, 3), (2,))


def test_explain_n2(p2):
    rec = Reconstructor(p2)
    trace = explain(rec, (2,) * 5, (2,))
    assert trace.kind == "wdvv" and trace.value == 1
    leaves = {leaf.kind for leaf in trace.leaves()}
    assert leaves == {"seed", "classical"}
    assert any(leaf.label == "<H,H2,H2>_1" for leaf in trace.leaves())
    text = trace.render()
    assert "WDVV(H2,H2 | H,H)" in text


def test_explain_single_nodes(p2):
    rec = Reconstructor(p2)
    seed = explain(rec, (2, 1, 2), (1,))
    assert seed.kind == "seed" and not seed.children
    zero = explain(rec, (2, 2, 2), (1,))
    assert zero.kind == "grading ⇒ 0" and zero.value == 0 and not zero.children
    stripped = explain(rec, (1, 1, 2, 2), (1,))
    assert stripped.kind == "divisor" and stripped.children[0].kind == "seed"


def test_explain_nested_value(p2):
    rec = Reconstructor(p2)
    trace = explain(rec, (2,) * 8, (3,))
    assert trace.value == 12
    child = [c for c in trace.children if c.kind == "wdvv"]
    assert child and child[0].value == 1
