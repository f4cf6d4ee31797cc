import pytest
from hypothesis import given, settings

from oracles import join_edges, naive_mpd, naive_psi
from psilab.corpus import all_graphs
from psilab.criticality import (
    additivity_criterion,
    criticality,
    find_witness_not_critical,
    find_witness_not_weakly_critical,
    is_critical,
    is_weakly_critical,
    mpd,
    mpd_profile,
    removable_vertices,
    validate_witness,
)
from psilab.errors import DomainError, UnsupportedSize
from psilab.graph import complete, cycle, empty, join, path
from psilab.psi import Coloring
from strategies import graphs


@pytest.mark.parametrize("g, values", [
    (path(3), (0, 0, 1, 2)),
    (complete(3), (0, 1, 2, 3)),
    (empty(3), (0, 0, 0, 1)),
])
def test_known_profiles(g, values):
    assert mpd_profile(g).values == values


@given(graphs(min_n=1, max_n=5))
@settings(max_examples=40, deadline=None)
def test_mpd_matches_oracle(g):
    prof = mpd_profile(g)
    for k in range(g.n + 1):
        assert prof.values[k] == naive_mpd(g.n, g.edges(), k)
        value, realizer = mpd(g, k)
        assert len(realizer) == k
        rest = g.induced(g.full_mask & ~sum(1 << v for v in realizer))
        assert prof.psi - naive_psi(rest.n, rest.edges()) == value


def test_mpd_domain():
    with pytest.raises(DomainError):
        mpd(path(3), 4)
    with pytest.raises(DomainError):
        mpd(path(3), -1)


def test_p3_verdicts():
    rep = criticality(path(3))
    assert not rep.critical and rep.weakly_critical
    assert rep.failing_k_critical == 1
    assert rep.critical_by_mpd is False and rep.weakly_critical_by_mpd is True


def test_c8_not_weakly_critical():
    assert mpd(cycle(8), 1)[0] == 1
    assert not is_weakly_critical(cycle(8))


def test_complete_graphs_critical():
    for n in range(1, 7):
        assert is_critical(complete(n))


def test_p3_join_p3_critical():
    rep = criticality(join(path(3), path(3)))
    assert rep.psi == 5 and rep.critical and rep.critical_by_mpd


def test_routes_agree_on_small_graphs():
    for g in all_graphs(5):
        rep = criticality(g, mpd_route=True)
        assert rep.critical_by_mpd == rep.critical_by_formula
        assert rep.weakly_critical_by_mpd == rep.weakly_critical_by_formula


def test_additivity_p3_c8():
    rep = additivity_criterion(path(3), cycle(8))
    assert rep.psi_join == 6 and rep.additive and rep.holds


def test_additivity_c8_c8_fails_criterion():
    rep = additivity_criterion(cycle(8), cycle(8))
    assert rep.psi_join == 10 and not rep.additive and not rep.holds
    assert rep.failing_k is not None


@given(graphs(min_n=1, max_n=3), graphs(min_n=1, max_n=3))
@settings(max_examples=25, deadline=None)
def test_additivity_against_oracle(g, h):
    rep = additivity_criterion(g, h)
    n, edges = join_edges(g.n, g.edges(), h.n, h.edges())
    assert rep.psi_join == naive_psi(n, edges)
    assert rep.holds == rep.additive


def test_equality_clause_absent_for_two_vertices():
    # the additive pair (K1, K1) never meets mpd_G(k) + mpd_H(k) = k for k >= 1
    rep = additivity_criterion(complete(1), complete(1))
    assert rep.additive and rep.equality_k is None


def test_removable_vertices():
    assert removable_vertices(Coloring.of([1, 2, 1, 3, 2])) == [2, 4]


def test_witness_c8():
    w = find_witness_not_weakly_critical(cycle(8))
    assert w is not None
    assert validate_witness(cycle(8), w) == []
    assert len(w.m2) - len(w.m1) == 2
    assert w.psi_m1 == w.psi_m2


def test_no_witness_for_weakly_critical():
    assert find_witness_not_weakly_critical(path(3)) is None
    assert find_witness_not_critical(complete(4)) is None
    w = find_witness_not_critical(path(3))
    assert w is not None and validate_witness(path(3), w) == []


def test_literal_not_critical_conditions_hold_on_critical_graph():
    g = join(path(3), path(3))
    assert is_critical(g)
    assert find_witness_not_critical(g) is None
    assert find_witness_not_critical(g, parity_guard=False) is not None


def test_witness_iff_on_small_graphs():
    for g in all_graphs(5):
        rep = criticality(g)
        w1 = find_witness_not_weakly_critical(g)
        w2 = find_witness_not_critical(g)
        assert (w1 is None) == rep.weakly_critical
        assert (w2 is None) == rep.critical
        for w in (w1, w2):
            if w is not None:
                assert validate_witness(g, w) == []


def test_validate_witness_detects_tampering():
    g = cycle(8)
    w = find_witness_not_weakly_critical(g)
    from dataclasses import replace
    bad = replace(w, psi_m1=w.psi_m1 + 1)
    assert validate_witness(g, bad)
    bad = replace(w, removable_set=w.removable_set[:-1])
    assert validate_witness(g, bad)


def test_witness_size_limit():
    with pytest.raises(UnsupportedSize):
        find_witness_not_weakly_critical(empty(13))
