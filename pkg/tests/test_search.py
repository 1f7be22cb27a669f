"""Search engine tests; expected histograms frozen from the labeled oracle."""
from __future__ import annotations

import pytest

from greenseq.quiver import ExchangeMatrix, framed, opposite
from greenseq.search import (
    BudgetExceededError,
    NotAcyclicError,
    VerifyStatus,
    admissible_source_numbering,
    check_interval,
    count_mgs,
    enumerate_mgs,
    explore,
    full_exchange_graph,
    full_exchange_graph_size,
    opposition_map,
    reaches_all_red,
    source_numberings,
    verify_sequence,
)

from oracles import labeled_mgs_counts

A1 = ExchangeMatrix([[0]])
A2 = ExchangeMatrix([[0, 1], [-1, 0]])
A3 = ExchangeMatrix([[0, 1, 0], [-1, 0, 1], [0, -1, 0]])
A3_ALT = ExchangeMatrix([[0, -1, 0], [1, 0, 1], [0, -1, 0]])
CYCLE3 = ExchangeMatrix([[0, -1, 1], [1, 0, -1], [-1, 1, 0]])
KRONECKER = ExchangeMatrix([[0, 2], [-2, 0]])
MARKOV = ExchangeMatrix([[0, 2, -2], [-2, 0, 2], [2, -2, 0]])
ATILDE21 = ExchangeMatrix([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]])
WILD4 = ExchangeMatrix([[0, 1, 0, 0], [-1, 0, 1, 0], [0, -1, 0, 2], [0, 0, -2, 0]])
B2 = ExchangeMatrix([[0, 1], [-2, 0]], 0, (2, 1))
G2 = ExchangeMatrix([[0, 1], [-3, 0]], 0, (3, 1))


# -- histograms (values frozen from tests/oracles.py runs) -----------------


def test_count_a1():
    hist = count_mgs(A1, 3)
    assert hist.counts == {1: 1}
    assert hist.min_length == 1 and hist.empirical_max == 1


def test_count_a2():
    hist = count_mgs(A2, 5)
    assert hist.counts == {2: 1, 3: 1}
    assert (hist.min_length, hist.empirical_max, hist.total) == (2, 3, 2)
    assert check_interval(hist)


def test_pentagon_shape():
    dag = explore(A2, 5)
    assert len(dag.nodes) == 5
    sources = [k for k, nd in dag.nodes.items() if len(nd.green) == nd.matrix.n]
    sinks = [k for k, nd in dag.nodes.items() if not nd.green]
    assert sources == [dag.source_key]
    assert sinks == [dag.sink_key] and dag.sink_key == dag.coframed_key


def test_count_cycle3():
    hist = count_mgs(CYCLE3, 8)
    assert hist.counts == {4: 6, 5: 3}
    assert hist.min_length == 4


def test_count_a3_orientations():
    linear = count_mgs(A3, 7)
    assert linear.counts == {3: 1, 4: 4, 5: 2, 6: 2}
    assert (linear.min_length, linear.empirical_max, linear.total) == (3, 6, 9)
    alt = count_mgs(A3_ALT, 7)
    assert alt.counts == {3: 2, 4: 2, 5: 2, 6: 4}
    assert (alt.min_length, alt.empirical_max, alt.total) == (3, 6, 10)


def test_count_affine_a21():
    hist = count_mgs(ATILDE21, 6)
    assert hist.counts == {3: 1, 4: 2, 5: 2}
    assert (hist.empirical_max, hist.total) == (5, 5)


def test_count_wild4():
    hist = count_mgs(WILD4, 8)
    assert hist.counts == {4: 1, 5: 7, 6: 6, 7: 7}
    assert (hist.min_length, hist.empirical_max, hist.total) == (4, 7, 21)
    assert check_interval(hist)


def test_count_kronecker():
    hist = count_mgs(KRONECKER, 10)
    assert hist.counts == {2: 1}
    assert hist.empirical_max == 2
    assert check_interval(hist)


def test_count_valued_rank2():
    b2 = count_mgs(B2, 5)
    assert b2.counts == {2: 1, 4: 1}
    assert not check_interval(b2)
    assert b2.empirical_max == 2  # detection rule fires below the gap
    g2 = count_mgs(G2, 7)
    assert g2.counts == {2: 1, 6: 1}
    assert not check_interval(g2)


def test_count_markov_empty():
    hist = count_mgs(MARKOV, 6)
    assert hist.counts == {}
    assert hist.min_length is None and hist.total == 0
    with pytest.raises(ValueError):
        check_interval(hist)


def test_empirical_max_needs_headroom():
    # the zero level above must lie within the explored bound
    hist = count_mgs(KRONECKER, 2)
    assert hist.counts == {2: 1} and hist.empirical_max is None


def test_dedup_counts_equal_labeled_oracle():
    cases = [
        (A2, 6), (A3, 8), (A3_ALT, 8), (CYCLE3, 8),
        (ATILDE21, 7), (KRONECKER, 8), (B2, 6), (G2, 8), (MARKOV, 6),
    ]
    for base, bound in cases:
        ours = count_mgs(base, bound).counts
        oracle = labeled_mgs_counts([list(r) for r in base.entries], bound)
        assert ours == oracle, f"mismatch for {base.entries}"


# -- graph structure -------------------------------------------------------


def test_green_count_monotone_along_edges():
    for base in (A3, CYCLE3, WILD4):
        dag = explore(base, 7)
        for node in dag.nodes.values():
            for _, ckey in node.edges or ():
                assert len(dag.nodes[ckey].green) >= len(node.green) - 1


def test_explore_depth_zero():
    dag = explore(A3, 0)
    assert len(dag.nodes) == 1 and dag.sink_key is None


def test_explore_rejects_frozen_input():
    with pytest.raises(ValueError):
        explore(framed(A2), 4)


def test_budget_exceeded_carries_partial_stats():
    with pytest.raises(BudgetExceededError) as err:
        explore(A3, 7, node_budget=3)
    assert err.value.nodes_materialized > 3
    assert err.value.depth >= 1


def test_determinism_across_worker_counts():
    for base, bound in ((A3, 7), (WILD4, 8)):
        one = explore(base, bound, jobs=1)
        eight = explore(base, bound, jobs=8)
        assert list(one.nodes.keys()) == list(eight.nodes.keys())
        for key in one.nodes:
            a, b = one.nodes[key], eight.nodes[key]
            assert (a.index, a.counts, a.edges) == (b.index, b.counts, b.edges)


# -- enumeration -----------------------------------------------------------


def test_enumerate_a2():
    seqs = enumerate_mgs(A2, 5)
    assert [s.vertices for s in seqs] == [(1, 2), (2, 1, 2)]
    assert all(s.status is VerifyStatus.VALID_MAXIMAL_GREEN for s in seqs)
    assert seqs[0].terminal_perm == (1, 2)
    assert seqs[1].terminal_perm == (2, 1)


def test_enumerate_lexicographic_and_verified():
    seqs = enumerate_mgs(A3, 7)
    verts = [s.vertices for s in seqs]
    assert verts == sorted(verts)
    assert len(seqs) == 9
    assert {len(s) for s in seqs} == {3, 4, 5, 6}


def test_enumerate_prunes_unreachable_tails():
    seqs = enumerate_mgs(KRONECKER, 10)
    assert [s.vertices for s in seqs] == [(1, 2)]


def test_enumerate_empty_for_markov():
    assert enumerate_mgs(MARKOV, 6) == []


# -- verification ----------------------------------------------------------


def test_verify_valid_with_terminal_perm():
    checked = verify_sequence(CYCLE3, (1, 2, 3, 1))
    assert checked.status is VerifyStatus.VALID_MAXIMAL_GREEN
    assert checked.terminal_perm == (2, 1, 3)


def test_verify_premature_end():
    checked = verify_sequence(A2, (2, 1))
    assert checked.status is VerifyStatus.INVALID
    assert checked.failing_step == 2  # steps were green; end state not all-red


def test_verify_non_green_step():
    checked = verify_sequence(A2, (1, 1))
    assert checked.status is VerifyStatus.INVALID
    assert checked.failing_step == 2


def test_verify_empty_sequence():
    checked = verify_sequence(A2, ())
    assert checked.status is VerifyStatus.INVALID
    assert checked.failing_step == 0


def test_verify_out_of_range_is_input_error():
    with pytest.raises(ValueError):
        verify_sequence(A2, (1, 5))


# -- opposition ------------------------------------------------------------


def test_opposition_examples():
    checked = verify_sequence(A2, (2, 1, 2))
    image = opposition_map(A2, checked)
    assert image.vertices == (1, 2, 1)
    assert image.status is VerifyStatus.VALID_MAXIMAL_GREEN

    tri = verify_sequence(CYCLE3, (1, 2, 3, 1))
    image = opposition_map(CYCLE3, tri)
    assert image.vertices == (2, 3, 1, 2)


def test_opposition_is_length_preserving_bijection():
    ours = enumerate_mgs(A3_ALT, 7)
    theirs = enumerate_mgs(opposite(A3_ALT), 7)
    images = {opposition_map(A3_ALT, s).vertices for s in ours}
    assert images == {s.vertices for s in theirs}


def test_opposition_rejects_invalid():
    with pytest.raises(ValueError):
        opposition_map(A2, verify_sequence(A2, (2, 1)))


# -- acyclic numberings ----------------------------------------------------


def test_source_numbering_linear():
    assert admissible_source_numbering(A3).vertices == (1, 2, 3)
    assert list(source_numberings(A3)) == [(1, 2, 3)]


def test_source_numbering_alternating():
    assert admissible_source_numbering(A3_ALT).vertices == (2, 1, 3)
    assert set(source_numberings(A3_ALT)) == {(2, 1, 3), (2, 3, 1)}


def test_source_numbering_rejects_cycle():
    with pytest.raises(NotAcyclicError):
        admissible_source_numbering(CYCLE3)
    with pytest.raises(NotAcyclicError):
        list(source_numberings(MARKOV))


def test_all_source_numberings_are_minimum_length_mgs():
    for base in (A3, A3_ALT, WILD4, ATILDE21, B2):
        for order in source_numberings(base):
            checked = verify_sequence(base, order)
            assert checked.status is VerifyStatus.VALID_MAXIMAL_GREEN
            assert len(order) == base.n


# -- whole graph and lookahead ---------------------------------------------


def test_full_exchange_graph_sizes():
    # frozen from the n!-canonicalization oracle closure
    assert full_exchange_graph_size(A1, 10) == 2
    assert full_exchange_graph_size(A2, 10) == 5
    assert full_exchange_graph_size(A3, 50) == 14
    assert full_exchange_graph_size(CYCLE3, 50) == 14
    assert full_exchange_graph_size(B2, 50) == 6
    assert full_exchange_graph_size(G2, 50) == 8


def test_full_exchange_graph_structure():
    pentagon = full_exchange_graph(A2)
    assert len(pentagon.nodes) == 5
    edges = [e for nd in pentagon.nodes.values() for e in nd.edges]
    assert len(edges) == 5
    assert len(pentagon.nodes[pentagon.source_key].edges) == 2
    assert pentagon.sink_key == pentagon.coframed_key
    assert pentagon.nodes[pentagon.sink_key].edges == []
    # every class has one green side per adjacent pair: n*chi/2 edges
    a3 = full_exchange_graph(A3)
    assert sum(len(nd.edges) for nd in a3.nodes.values()) == 21


def test_full_exchange_graph_budget():
    with pytest.raises(BudgetExceededError):
        full_exchange_graph_size(KRONECKER, 10)


def test_reaches_all_red():
    assert reaches_all_red(framed(A2), 3)
    assert not reaches_all_red(framed(A2), 1)
    assert not reaches_all_red(framed(MARKOV), 5)
