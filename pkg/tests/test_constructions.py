from fractions import Fraction

import pytest

from psilab.constructions import (
    boost_coloring,
    contract_classes,
    contraction_complete_check,
    join_coloring_lower,
    join_sum_coloring,
    multiplicity_profile,
    nabla_k_coloring,
    profile_kind,
    psi_of_join,
    labeling_p3_join_c8,
    labeling_p3_join_p3,
    structure_coloring,
)
from psilab.corpus import all_graphs, pairs
from psilab.criticality import criticality, find_witness_not_critical, find_witness_not_weakly_critical
from psilab.errors import ContractViolation, DomainError
from psilab.graph import complete, cycle, empty, join, nabla_k, omega, path
from psilab.psi import Coloring, is_pseudocomplete, psi_value


def test_small_join_labelings_valid():
    assert is_pseudocomplete(join(path(3), path(3)), labeling_p3_join_p3())
    assert labeling_p3_join_p3().num_colors == 5
    lab = labeling_p3_join_c8()
    assert is_pseudocomplete(join(path(3), cycle(8)), lab) and lab.num_colors == 6


def test_join_colorings():
    g, h = path(3), cycle(8)
    assert join_sum_coloring(g, h).num_colors == 6
    assert join_coloring_lower(g, h).num_colors == min(2 + 8, 2 + 3)
    assert psi_of_join(g, h).value == 6


def test_join_lower_needs_vertices():
    with pytest.raises(DomainError):
        join_coloring_lower(empty(0), path(3))


@pytest.mark.parametrize("g", [path(3), cycle(5), complete(3), empty(2), cycle(4), complete(1)])
@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_nabla_coloring_size(g, k):
    c = nabla_k_coloring(g, k)
    assert c.num_colors == k * (omega(g) + g.n) // 2
    assert is_pseudocomplete(nabla_k(g, k), c)


def test_nabla_k_domain():
    with pytest.raises(DomainError):
        nabla_k_coloring(path(3), 1)


def test_profile_and_kind():
    c = Coloring.of([1, 2, 3, 1, 4, 5])
    prof = multiplicity_profile(join(path(3), path(3)), c)
    assert prof.n_k(1) == 4 and prof.n_k(2) == 1
    assert profile_kind(join(path(3), path(3)), c) == "critical"


def test_structure_k4_and_p3():
    s = structure_coloring(complete(4))
    assert s.kind == "critical" and s.edge_bound_satisfied
    s = structure_coloring(path(3))
    assert s.kind == "weakly-type-2"
    assert s.edge_bound == Fraction((3 + 2 - 1) * (3 + 2 - 3), 8) == 1
    assert structure_coloring(cycle(8)).kind == "none"


def test_structure_p3_p3():
    g = join(path(3), path(3))
    s = structure_coloring(g)
    assert s.kind == "critical"
    assert contraction_complete_check(g, s.coloring)
    assert contract_classes(g, s.coloring).is_complete()


def test_contraction_requires_critical_pattern():
    with pytest.raises(ContractViolation):
        contraction_complete_check(path(3), Coloring.of([1, 2, 1]))


def test_boost_c8_c8():
    c8 = cycle(8)
    w = find_witness_not_weakly_critical(c8)
    c = boost_coloring(c8, c8, w, w)
    assert c.num_colors == 9
    assert is_pseudocomplete(join(c8, c8), c)


def test_boost_rejects_bad_witness():
    c8 = cycle(8)
    w = find_witness_not_weakly_critical(c8)
    with pytest.raises(ContractViolation):
        boost_coloring(c8, c8, w, None)
    with pytest.raises(ContractViolation):
        boost_coloring(c8, c8, w, find_witness_not_critical(c8))


def test_boost_on_small_non_weakly_critical_pairs():
    bad = [g for g in all_graphs(6) if not criticality(g, mpd_route=False).weakly_critical]
    assert bad
    witnesses = {g: find_witness_not_weakly_critical(g) for g in bad}
    for g, h in pairs(bad)[::7]:
        c = boost_coloring(g, h, witnesses[g], witnesses[h])
        assert c.num_colors == psi_value(g) + psi_value(h) + 1
        assert is_pseudocomplete(join(g, h), c)
