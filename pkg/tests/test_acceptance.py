"""Acceptance criteria 1-10, one test each.

Every test records a single PASS/FAIL line; the lines are printed in the
terminal summary by ``conftest.py`` and also when this file is run directly.
"""

import time

import pytest

from oracles import join_edges, naive_psi
from psilab import psi as psi_mod
from psilab.constructions import (
    boost_coloring,
    contraction_complete_check,
    nabla_k_coloring,
    psi_of_join,
    structure_coloring,
)
from psilab.corpus import all_graphs, embedded_corpus, named_instances, pairs
from psilab.criticality import (
    additivity_criterion,
    criticality,
    find_witness_not_critical,
    find_witness_not_weakly_critical,
    mpd_profile,
    validate_witness,
)
from psilab.graph import complete, cycle, emit_graph6, empty, join, nabla_k, omega, path
from psilab.psi import feasible_coloring, is_pseudocomplete, psi
from psilab.verify import run_check

RESULTS: dict[int, str] = {}


def record(number: int, ok: bool, detail: str, elapsed: float) -> None:
    RESULTS[number] = f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {detail} ({elapsed:.1f} s)"
    print(RESULTS[number])
    assert ok, RESULTS[number]


def test_criterion_01_golden_values():
    start = time.perf_counter()
    psi_mod.clear_cache()
    problems = []
    timings = {}
    for name, g, want in (("P3", path(3), 2), ("C8", cycle(8), 4)):
        t0 = time.perf_counter()
        rep = criticality(g)
        timings[name] = time.perf_counter() - t0
        if rep.psi != want or rep.critical or timings[name] >= 1:
            problems.append(f"{name}: Ψ={rep.psi} critical={rep.critical} in {timings[name]:.2f}s")
    t0 = time.perf_counter()
    pc = join(path(3), cycle(8))
    no7 = feasible_coloring(pc, 7) is None
    r = psi(pc)
    timings["P3∇C8"] = time.perf_counter() - t0
    if not (no7 and r.value == 6 and timings["P3∇C8"] < 60):
        problems.append(f"P3∇C8: Ψ={r.value}, t=7 infeasible={no7}")
    t0 = time.perf_counter()
    pp = criticality(join(path(3), path(3)))
    timings["P3∇P3"] = time.perf_counter() - t0
    if pp.psi != 5 or not pp.critical or timings["P3∇P3"] >= 1:
        problems.append(f"P3∇P3: Ψ={pp.psi} critical={pp.critical}")
    detail = ("Ψ(P3)=2, Ψ(C8)=4, neither critical; Ψ(P3∇C8)=6 with t=7 exhaustively infeasible; "
              "Ψ(P3∇P3)=5 critical" if not problems else "; ".join(problems))
    record(1, not problems, detail, time.perf_counter() - start)


def test_criterion_02_equivalence_sweep():
    start = time.perf_counter()
    bad = []
    corpus = all_graphs(6)
    for g in corpus:
        prof = mpd_profile(g)
        w = omega(g)
        crit_def = all(m >= (k + 1) // 2 for k, m in enumerate(prof.values))
        weak_def = all(m >= k // 2 for k, m in enumerate(prof.values))
        if crit_def != (2 * prof.psi == w + g.n) or weak_def != (prof.psi == (w + g.n) // 2):
            bad.append(emit_graph6(g))
    record(2, not bad, f"{len(corpus)} graphs on <= 6 vertices, {len(bad)} disagreements {bad[:5]}",
           time.perf_counter() - start)


def test_criterion_03_additivity_criterion():
    start = time.perf_counter()
    corpus = all_graphs(8)
    inconsistent, no_equality = [], []
    n_pairs = n_additive = 0
    for g, h in pairs(corpus, 9):
        n_pairs += 1
        rep = additivity_criterion(g, h)
        if not rep.consistent:
            inconsistent.append((emit_graph6(g), emit_graph6(h)))
        if rep.additive:
            n_additive += 1
            if rep.equality_k is None:
                no_equality.append((emit_graph6(g), emit_graph6(h)))
    elapsed = time.perf_counter() - start
    ok = not inconsistent and not no_equality and elapsed < 1800
    detail = (f"{n_pairs} pairs with n_g+n_h <= 9: criterion vs direct Ψ disagreements {len(inconsistent)}; "
              f"equality-k clause missing on {len(no_equality)} of {n_additive} additive pairs, "
              f"e.g. {no_equality[:3]}")
    record(3, ok, detail, elapsed)


def test_criterion_04_gjoing():
    start = time.perf_counter()
    bad = []
    corpus = all_graphs(5)
    for g in corpus:
        gg = join(g, g)
        rep = criticality(gg, mpd_route=True)
        if rep.psi != omega(g) + g.n or not rep.critical or not rep.critical_by_mpd:
            bad.append(emit_graph6(g))
    record(4, not bad, f"Ψ(G∇G)=ω+n and G∇G critical on {len(corpus)} graphs, {len(bad)} violations {bad[:5]}",
           time.perf_counter() - start)


def test_criterion_05_nabla_battery():
    start = time.perf_counter()
    psi_mod.clear_cache()
    bad = []
    searched = 0
    instances = (("P3", path(3)), ("C5", cycle(5)), ("K3", complete(3)), ("K1∪K1", empty(2)))
    for name, g in instances:
        w = omega(g)
        base = criticality(g)
        for k in (2, 3, 4, 5):
            c = nabla_k_coloring(g, k)
            gk = nabla_k(g, k)
            expected = k * (w + g.n) // 2
            r = psi(gk, hint=c)
            searched += r.nodes
            rep = criticality(gk, mpd_route=False, psi_hint=c)
            even = k * (w + g.n) % 2 == 0
            ok = c.num_colors == expected and is_pseudocomplete(gk, c) and r.value == expected
            if expected == psi_mod.lemma2_bound(gk):
                ok &= r.nodes == 0
            ok &= rep.critical == even and rep.weakly_critical
            if even:
                ok &= base.critical == (k * base.psi == r.value)
            elif k >= 3:
                ok &= base.weakly_critical == (k * base.psi + k // 2 == r.value)
            if not ok:
                bad.append(f"{name} k={k}")
    record(5, not bad, f"16 instances, {len(bad)} failures {bad}, search nodes {searched}",
           time.perf_counter() - start)


def test_criterion_06_witness_iff():
    start = time.perf_counter()
    bad = []
    corpus = all_graphs(6)
    found = [0, 0]
    for g in corpus:
        rep = criticality(g, mpd_route=False)
        for i, (w, target) in enumerate(((find_witness_not_weakly_critical(g), not rep.weakly_critical),
                                         (find_witness_not_critical(g), not rep.critical))):
            if (w is not None) != target or (w is not None and validate_witness(g, w)):
                bad.append((emit_graph6(g), i))
            found[i] += w is not None
    record(6, not bad, f"{len(corpus)} graphs: {found[0]} not-weakly-critical and {found[1]} not-critical "
                       f"witnesses validated, {len(bad)} mismatches {bad[:5]}", time.perf_counter() - start)


def test_criterion_07_structure():
    start = time.perf_counter()
    bad = []
    n_crit = n_weak = 0
    for g in all_graphs(7):
        rep = criticality(g, mpd_route=False)
        if not rep.weakly_critical:
            continue
        s = structure_coloring(g)
        if rep.critical:
            n_crit += 1
            ok = s.kind == "critical" and contraction_complete_check(g, s.coloring)
            ok &= 8 * g.num_edges >= (g.n + rep.omega) * (g.n + rep.omega - 2)
        else:
            n_weak += 1
            ok = s.kind in ("weakly-type-1", "weakly-type-2")
            ok &= 8 * g.num_edges >= (g.n + rep.omega - 1) * (g.n + rep.omega - 3)
        if not ok:
            bad.append(emit_graph6(g))
    record(7, not bad, f"{n_crit} critical and {n_weak} weakly-critical-not-critical graphs on <= 7 vertices, "
                       f"{len(bad)} failures {bad[:5]}", time.perf_counter() - start)


def test_criterion_08_boost():
    start = time.perf_counter()
    named = named_instances()
    weak = {g: criticality(g, mpd_route=False).weakly_critical for g in named}
    c8 = cycle(8)
    todo = [(g, h) for g, h in pairs(named)
            if not weak[g] and not weak[h] and (g.n + h.n <= 12 or g == h == c8)]
    bad = []
    for g, h in todo:
        c = boost_coloring(g, h, find_witness_not_weakly_critical(g), find_witness_not_weakly_critical(h))
        want = psi(g).value + psi(h).value + 1
        if c.num_colors != want or not is_pseudocomplete(join(g, h), c) or psi_of_join(g, h).value < want:
            bad.append((emit_graph6(g), emit_graph6(h)))
    names = [f"({g.label},{h.label})" for g, h in todo]
    record(8, bool(todo) and not bad, f"pairs {names}: boost coloring with Ψ(G)+Ψ(H)+1 colors, "
                                      f"{len(bad)} failures", time.perf_counter() - start)


def test_criterion_09_oracle():
    start = time.perf_counter()
    corpus = all_graphs(5)
    bad = [emit_graph6(g) for g in corpus if psi(g).value != naive_psi(g.n, g.edges())]
    # joins of the smallest graphs as well, still within oracle reach
    small = all_graphs(3)
    for g, h in pairs(small, 6):
        n, edges = join_edges(g.n, g.edges(), h.n, h.edges())
        if psi_of_join(g, h).value != naive_psi(n, edges):
            bad.append(f"{emit_graph6(g)}∇{emit_graph6(h)}")
    record(9, not bad, f"{len(corpus)} graphs on <= 5 vertices match the set-partition oracle, "
                       f"{len(bad)} mismatches {bad[:5]}", time.perf_counter() - start)


def test_criterion_10_negative_path(monkeypatch):
    start = time.perf_counter()
    clean = run_check("lemma-2-upper-bound", embedded_corpus())
    real = psi_mod.lemma2_bound
    monkeypatch.setattr(psi_mod, "lemma2_bound", lambda g: real(g) + 1)
    broken = run_check("lemma-2-upper-bound", embedded_corpus())
    payload = broken.failures[0] if broken.failures else None
    ok = clean.passed and not broken.passed and payload is not None and payload["graphs"] and payload["observed"]
    detail = (f"clean run passed={clean.passed}; with bound+1 passed={broken.passed}, "
              f"first payload {payload['graphs'] if payload else None} {payload['observed'] if payload else None}")
    record(10, ok, detail, time.perf_counter() - start)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
