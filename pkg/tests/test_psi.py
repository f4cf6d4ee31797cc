import time
from itertools import combinations

import pytest
from hypothesis import given, settings

from oracles import is_pseudocomplete_naive, naive_psi, set_partitions
from psilab.corpus import all_graphs
from psilab.errors import ContractViolation, Inconclusive
from psilab.graph import complete, cycle, empty, join, path
from psilab.psi import (
    Coloring,
    clique_coloring,
    edge_count_bound,
    feasible_coloring,
    is_pseudocomplete,
    iter_pseudocomplete_colorings,
    lemma2_bound,
    psi,
    psi_table,
    psi_upper_bound,
    psi_value,
    uncovered_pair,
)
from strategies import graphs


@pytest.mark.parametrize("g, expected", [
    (path(3), 2), (cycle(8), 4), (cycle(5), 3), (complete(4), 4), (empty(2), 1),
    (empty(0), 0), (cycle(4), 3), (cycle(6), 3), (path(5), 3),
])
def test_named_values(g, expected):
    r = psi(g)
    assert r.exact and r.value == expected
    assert r.witness.num_colors == expected
    assert is_pseudocomplete(g, r.witness)


def test_p3_c8_join_certified():
    g = join(path(3), cycle(8))
    start = time.perf_counter()
    assert feasible_coloring(g, 7) is None
    assert feasible_coloring(g, 6) is not None
    assert time.perf_counter() - start < 60


@given(graphs(max_n=6))
@settings(max_examples=60, deadline=None)
def test_matches_partition_oracle(g):
    r = psi(g)
    assert r.value == naive_psi(g.n, g.edges())
    assert is_pseudocomplete_naive(g.n, g.edges(), r.witness.colors)


@given(graphs(min_n=1, max_n=7))
@settings(max_examples=60, deadline=None)
def test_bounds_bracket_psi(g):
    p = psi_value(g)
    assert clique_coloring(g).num_colors <= p <= psi_upper_bound(g)
    assert psi_upper_bound(g) <= lemma2_bound(g)


@given(graphs(min_n=1, max_n=7))
@settings(max_examples=40, deadline=None)
def test_vertex_deletion_drops_at_most_one(g):
    p = psi_value(g)
    for v in range(g.n):
        q = psi_value(g.induced(g.full_mask & ~(1 << v)))
        assert q <= p <= q + 1


@given(graphs(min_n=1, max_n=6))
@settings(max_examples=30, deadline=None)
def test_psi_table_matches_direct(g):
    table = psi_table(g)
    for mask in range(1 << g.n):
        assert table[mask] == psi_value(g.induced(mask))


def test_enumeration_counts_match_oracle():
    for g in all_graphs(5)[::3]:
        t = psi_value(g)
        found = {c.colors for c in iter_pseudocomplete_colorings(g, t)}
        expected = 0
        for part in set_partitions(list(range(g.n))):
            if len(part) != t:
                continue
            colors = [0] * g.n
            for i, block in enumerate(part):
                for v in block:
                    colors[v] = i
            if is_pseudocomplete_naive(g.n, g.edges(), colors):
                expected += 1
        assert len(found) == expected, g


def test_class_size_cap():
    for c in iter_pseudocomplete_colorings(cycle(8), 4, max_class_size=2):
        assert max(c.colors.count(k) for k in range(1, 5)) <= 2


def test_edge_count_bound():
    for m in range(40):
        t = edge_count_bound(m)
        assert t * (t - 1) // 2 <= m < (t + 1) * t // 2


def test_budget_exhaustion_reports_bracket():
    g = join(cycle(8), cycle(8))
    r = psi(g, budget=50, seed=1)
    assert not r.exact and r.value is None
    assert r.lower <= 10 <= r.upper
    with pytest.raises(Inconclusive):
        r.require()


def test_hint_meeting_bound_skips_search():
    g = join(cycle(8), cycle(8))
    hint = Coloring.of([1, 2, 3, 4, 5, 6, 7, 8, 1, 2, 9, 10, 3, 4, 5, 6])
    assert is_pseudocomplete(g, hint)
    r = psi(g, hint=hint, seed=0)
    assert r.value == 10 and r.nodes == 0


def test_invalid_hint_rejected():
    with pytest.raises(ContractViolation):
        psi(path(3), hint=Coloring.of([1, 2, 3]))


def test_coloring_contracts():
    with pytest.raises(ContractViolation):
        Coloring.of([1, 3]).check(2)
    with pytest.raises(ContractViolation):
        Coloring.of([1]).check(2)
    assert Coloring.of([3, 3, 1]).normalized().colors == (1, 1, 2)
    assert uncovered_pair(path(3), Coloring.of([1, 2, 3])) == (1, 3)


def test_single_vertex_and_empty_graphs():
    assert psi_value(complete(1)) == 1
    assert psi_value(empty(5)) == 1
    for n in range(1, 7):
        assert psi_value(complete(n)) == n


def test_witness_is_surjective_and_total():
    for g in all_graphs(5):
        c = psi(g).witness
        c.check(g.n)
        pairs = set(combinations(range(1, c.num_colors + 1), 2))
        met = {tuple(sorted((c.colors[u], c.colors[v]))) for u, v in g.edges()}
        assert pairs <= met
