"""Replay harness: every claim about Ψ, mpd and the join as an executable check.

Each check is a predicate evaluated over the graphs (or unordered graph pairs)
of a corpus. A failing item produces a payload with the graph6 strings, the
observed values and the relation that was expected, enough to replay it with
``psi-lab verify --check <id> <graph6>...``.

Three checks are kept out of the default catalog because they test literal
readings that are known to be false on small graphs; they must be requested
by name (see ``EXTRA_CHECKS``).
"""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from psilab import psi as psi_mod
from psilab.constructions import (
    boost_coloring,
    contraction_complete_check,
    join_coloring_lower,
    nabla_k_coloring,
    psi_of_join,
    labeling_p3_join_c8,
    labeling_p3_join_p3,
    structure_coloring,
)
from psilab.corpus import embedded_corpus, pairs
from psilab.criticality import (
    MAX_WITNESS_ORDER,
    additivity_criterion,
    criticality,
    find_witness_not_critical,
    find_witness_not_weakly_critical,
    mpd_profile,
    validate_witness,
)
from psilab.errors import (
    ContractViolation,
    DomainError,
    Inconclusive,
    SolverDisagreement,
    UnsupportedSize,
)
from psilab.graph import Graph, cycle, emit_graph6, join, nabla_k, omega, path
from psilab.psi import DEFAULT_BUDGET, is_pseudocomplete

REPORT_SCHEMA = "psilab.verify/1"
DEFAULT_MAX_PAIR_ORDER = 10
MAX_STRUCTURE_ORDER = 8
NABLA_KS = (2, 3, 4, 5)


@dataclass
class CheckResult:
    check_id: str
    scope: str
    passed: bool
    failures: list[dict] = field(default_factory=list)
    runtime_ms: float = 0.0
    checked: int = 0
    skipped: int = 0
    inconclusive: int = 0
    details: dict | None = None  # observed values of a fixed-instance check

    @property
    def status(self) -> str:
        if self.failures:
            return "failed"
        return "inconclusive" if self.inconclusive else "passed"

    def to_json(self) -> dict:
        return {
            "check_id": self.check_id,
            "scope": self.scope,
            "passed": self.passed,
            "status": self.status,
            "failures": self.failures,
            "runtime_ms": round(self.runtime_ms, 3),
            "checked": self.checked,
            "skipped": self.skipped,
            "inconclusive": self.inconclusive,
            "details": self.details,
        }


class _Fail(Exception):
    """Raised inside a predicate to report an observed violation."""

    def __init__(self, observed: dict, expected: str):
        super().__init__(expected)
        self.observed = observed
        self.expected = expected


class _Skip(Exception):
    pass


def _require(cond: bool, observed: dict, expected: str) -> None:
    if not cond:
        raise _Fail(observed, expected)


def _psi(g: Graph, budget: int) -> int:
    # looked up on the module at call time so tests can substitute a broken solver
    return psi_mod.psi(g, budget=budget).require()


def _crit(g: Graph, budget: int):
    return criticality(g, budget, mpd_route=False)


# -- single-graph predicates ---------------------------------------------------

def _lemma2(g: Graph, budget: int) -> dict:
    p = _psi(g, budget)
    bound = psi_mod.lemma2_bound(g)
    upper = psi_mod.psi_upper_bound(g)
    obs = {"psi": p, "lemma2_bound": bound, "psi_upper_bound": upper, "omega": omega(g), "n": g.n}
    _require(p <= upper <= bound, obs, "Ψ <= psi_upper_bound <= floor((ω + n)/2)")
    if g.is_complete():
        _require(p == bound, obs, "bound is attained by complete graphs")
    return obs


def _criticality_formula(g: Graph, budget: int) -> dict:
    if g.n > MAX_WITNESS_ORDER:
        raise _Skip
    prof = mpd_profile(g, budget)
    w = omega(g)
    by_def = all(m >= (k + 1) // 2 for k, m in enumerate(prof.values))
    by_formula = 2 * prof.psi == w + g.n
    obs = {"mpd": list(prof.values), "psi": prof.psi, "omega": w, "n": g.n,
           "critical_by_definition": by_def, "critical_by_formula": by_formula}
    _require(by_def == by_formula, obs, "mpd >= ceil(k/2) for all k  <=>  2Ψ = ω + n")
    return obs


def _weak_equivalence(g: Graph, budget: int) -> dict:
    if g.n > MAX_WITNESS_ORDER:
        raise _Skip
    prof = mpd_profile(g, budget)
    w = omega(g)
    by_def = all(m >= k // 2 for k, m in enumerate(prof.values))
    by_formula = prof.psi == (w + g.n) // 2
    obs = {"mpd": list(prof.values), "psi": prof.psi, "omega": w, "n": g.n,
           "weakly_critical_by_definition": by_def, "weakly_critical_by_formula": by_formula}
    _require(by_def == by_formula, obs, "mpd >= floor(k/2) for all k  <=>  Ψ = floor((ω + n)/2)")
    return obs


def _critical_structure(g: Graph, budget: int) -> dict:
    if g.n > MAX_STRUCTURE_ORDER:
        raise _Skip
    rep = _crit(g, budget)
    if not rep.critical:
        raise _Skip
    s = structure_coloring(g, budget)
    obs = {"kind": s.kind, "coloring": str(s.coloring), "profile": s.profile.to_json(),
           "edges": g.num_edges, "edge_bound": str(s.edge_bound)}
    _require(s.kind == "critical", obs, "a maximum coloring with ω singletons and all other colors doubled")
    complete_quotient = contraction_complete_check(g, s.coloring)
    obs["contraction_complete"] = complete_quotient
    _require(complete_quotient, obs, "contracting color classes gives a complete graph")
    _require(bool(s.edge_bound_satisfied), obs, "|E| >= (n + ω)(n + ω - 2)/8")
    return obs


def _weak_structure(g: Graph, budget: int) -> dict:
    if g.n > MAX_STRUCTURE_ORDER:
        raise _Skip
    rep = _crit(g, budget)
    if rep.critical or not rep.weakly_critical:
        raise _Skip
    s = structure_coloring(g, budget)
    obs = {"kind": s.kind, "types_found": list(s.types_found), "coloring": str(s.coloring),
           "profile": s.profile.to_json(), "edges": g.num_edges, "edge_bound": str(s.edge_bound)}
    _require(s.kind in ("weakly-type-1", "weakly-type-2"), obs,
             "a maximum coloring of type (1) or type (2)")
    _require(bool(s.edge_bound_satisfied), obs, "|E| >= (n + ω - 1)(n + ω - 3)/8")
    return obs


def _witness_iff(kind: str, parity_guard: bool = True):
    def check(g: Graph, budget: int) -> dict:
        if g.n > MAX_WITNESS_ORDER:
            raise _Skip
        rep = _crit(g, budget)
        if kind == "not-weakly-critical":
            w = find_witness_not_weakly_critical(g, budget)
            target = not rep.weakly_critical
        else:
            w = find_witness_not_critical(g, budget, parity_guard=parity_guard)
            target = not rep.critical
        obs = {"psi": rep.psi, "omega": rep.omega, "n": g.n, "target": target,
               "witness": None if w is None else w.to_json()}
        _require((w is not None) == target, obs, f"witness exists  <=>  graph is {kind}")
        if w is not None:
            problems = validate_witness(g, w, budget)
            obs["problems"] = problems
            _require(not problems, obs, "witness invariants hold")
        return obs
    return check


def _gjoing_iff(g: Graph, budget: int) -> dict:
    rep = _crit(g, budget)
    pj = psi_of_join(g, g, budget).require()
    obs = {"psi": rep.psi, "psi_join": pj, "critical": rep.critical}
    _require((pj == 2 * rep.psi) == rep.critical, obs, "Ψ(G∇G) = 2Ψ(G)  <=>  G critical")
    return obs


def _gjoing_formula(g: Graph, budget: int) -> dict:
    gg = join(g, g)
    pj = psi_of_join(g, g, budget).require()
    w = omega(g)
    jrep = criticality(gg, budget, mpd_route=False, psi_hint=join_coloring_lower(g, g))
    obs = {"psi_join": pj, "omega": w, "n": g.n, "join_critical": jrep.critical}
    _require(pj == w + g.n, obs, "Ψ(G∇G) = ω + n")
    _require(jrep.critical, obs, "G∇G is critical")
    return obs


def _nabla_data(g: Graph, k: int, budget: int) -> tuple[int, int, bool, bool]:
    c = nabla_k_coloring(g, k)
    gk = nabla_k(g, k)
    rep = criticality(gk, budget, mpd_route=False, psi_hint=c)
    return c.num_colors, rep.psi, rep.critical, rep.weakly_critical


def _nabla_check(mode: str):
    def check(g: Graph, budget: int) -> dict:
        w = omega(g)
        base = _crit(g, budget)
        obs: dict = {"omega": w, "n": g.n, "psi": base.psi, "k": {}}
        for k in NABLA_KS:
            built, pk, crit_k, weak_k = _nabla_data(g, k, budget)
            row = {"constructed": built, "psi": pk, "critical": crit_k, "weakly_critical": weak_k}
            obs["k"][k] = row
            even = k * (w + g.n) % 2 == 0
            _require(built == k * (w + g.n) // 2, obs, "construction has floor(k(ω + n)/2) colors")
            if mode == "parity":
                _require(crit_k == even, obs, "∇^k G critical  <=>  k(ω + n) even")
            elif mode == "weak":
                _require(weak_k, obs, "∇^k G is weakly critical")
            elif mode == "even" and even:
                _require(base.critical == (k * base.psi == pk), obs,
                         "k(ω + n) even: G critical  <=>  Ψ(∇^k G) = kΨ(G)")
            elif mode == "odd" and not even and k >= 3:
                _require(base.weakly_critical == (k * base.psi + k // 2 == pk), obs,
                         "k(ω + n) odd: G weakly critical  <=>  Ψ(∇^k G) = kΨ(G) + floor(k/2)")
        return obs
    return check


# -- pair predicates --------------------------------------------------------

def _superadditive(g: Graph, h: Graph, budget: int) -> dict:
    pg, ph = _psi(g, budget), _psi(h, budget)
    pj = psi_of_join(g, h, budget).require()
    obs = {"psi_g": pg, "psi_h": ph, "psi_join": pj}
    _require(pg + ph <= pj, obs, "Ψ(G) + Ψ(H) <= Ψ(G∇H)")
    return obs


def _join_bracket(g: Graph, h: Graph, budget: int) -> dict:
    wg, wh = omega(g), omega(h)
    lower = min(wg + h.n, wh + g.n)
    upper = (wg + wh + g.n + h.n) // 2
    c = join_coloring_lower(g, h)
    pj = psi_of_join(g, h, budget).require()
    obs = {"psi_join": pj, "lower": lower, "upper": upper, "lower_coloring": str(c)}
    _require(c.num_colors == lower and is_pseudocomplete(join(g, h), c), obs,
             "explicit coloring with min(ω(G) + |V_H|, ω(H) + |V_G|) colors")
    _require(lower <= pj <= upper, obs, "min(ω_G + n_H, ω_H + n_G) <= Ψ(G∇H) <= floor((ω_G + ω_H + n_G + n_H)/2)")
    return obs


def _additivity(g: Graph, h: Graph, budget: int) -> dict:
    if max(g.n, h.n) > MAX_WITNESS_ORDER:
        raise _Skip
    rep = additivity_criterion(g, h, budget)
    obs = rep.to_json()
    _require(rep.consistent, obs, "mpd_G(k) + mpd_H(k) >= k for all k  <=>  Ψ(G∇H) = Ψ(G) + Ψ(H)")
    return obs


def _additivity_equality(g: Graph, h: Graph, budget: int) -> dict:
    if max(g.n, h.n) > MAX_WITNESS_ORDER:
        raise _Skip
    rep = additivity_criterion(g, h, budget)
    if not rep.additive:
        raise _Skip
    obs = rep.to_json()
    _require(rep.equality_k is not None, obs, "additive pair has some k >= 1 with mpd_G(k) + mpd_H(k) = k")
    return obs


def _additive_when(g_pred: Callable, h_pred: Callable, expected: str):
    def check(g: Graph, h: Graph, budget: int) -> dict:
        rg, rh = _crit(g, budget), _crit(h, budget)
        if not ((g_pred(rg) and h_pred(rh)) or (g_pred(rh) and h_pred(rg))):
            raise _Skip
        pj = psi_of_join(g, h, budget).require()
        obs = {"psi_g": rg.psi, "psi_h": rh.psi, "psi_join": pj,
               "critical": [rg.critical, rh.critical], "weakly_critical": [rg.weakly_critical, rh.weakly_critical]}
        _require(pj == rg.psi + rh.psi, obs, expected)
        return obs
    return check


def _crit_join_crit(g: Graph, h: Graph, budget: int) -> dict:
    rg, rh = _crit(g, budget), _crit(h, budget)
    if not (rg.critical and rh.critical):
        raise _Skip
    gh = join(g, h)
    pj = psi_of_join(g, h, budget).require()
    w = omega(gh)
    obs = {"psi_join": pj, "omega_join": w, "n_join": gh.n}
    _require(2 * pj == w + gh.n, obs, "G, H critical  =>  G∇H critical")
    return obs


def _additive_one_weak(g: Graph, h: Graph, budget: int) -> dict:
    rg, rh = _crit(g, budget), _crit(h, budget)
    pj = psi_of_join(g, h, budget).require()
    additive = pj == rg.psi + rh.psi
    obs = {"psi_g": rg.psi, "psi_h": rh.psi, "psi_join": pj,
           "weakly_critical": [rg.weakly_critical, rh.weakly_critical]}
    if additive:
        _require(rg.weakly_critical or rh.weakly_critical, obs,
                 "additive  =>  at least one operand weakly critical")
    if not rg.weakly_critical and not rh.weakly_critical and max(g.n, h.n) <= MAX_WITNESS_ORDER:
        wg = find_witness_not_weakly_critical(g, budget)
        wh = find_witness_not_weakly_critical(h, budget)
        c = boost_coloring(g, h, wg, wh, budget)
        obs["boost_coloring"] = str(c)
        _require(c.num_colors == rg.psi + rh.psi + 1, obs, "boost coloring has Ψ(G) + Ψ(H) + 1 colors")
    return obs


def _type1_refinement(g: Graph, h: Graph, budget: int) -> dict:
    if max(g.n, h.n) > MAX_STRUCTURE_ORDER:
        raise _Skip
    rg, rh = _crit(g, budget), _crit(h, budget)
    pj = psi_of_join(g, h, budget).require()
    if pj != rg.psi + rh.psi:
        raise _Skip
    obs: dict = {"psi_g": rg.psi, "psi_h": rh.psi, "psi_join": pj}
    for a, ra, b, rb in ((g, rg, h, rh), (h, rh, g, rg)):
        if not ra.weakly_critical or ra.critical:
            continue
        if "weakly-type-1" not in structure_coloring(a, budget).types_found:
            continue
        other_types = structure_coloring(b, budget).types_found if rb.weakly_critical else ()
        obs["type1_operand"] = emit_graph6(a)
        obs["other_weakly_critical"] = rb.weakly_critical
        obs["other_types"] = list(other_types)
        _require(rb.weakly_critical and "weakly-type-1" not in other_types, obs,
                 "other operand weakly critical without a type-(1) coloring")
    return obs


# -- fixed-instance predicates ----------------------------------------------

def _p3_c8_values(budget: int) -> tuple[list[Graph], dict]:
    p3, c8 = path(3), cycle(8)
    a, b = _crit(p3, budget), _crit(c8, budget)
    pj = psi_of_join(p3, c8, budget).require()
    lab = labeling_p3_join_c8()
    lab_ok = is_pseudocomplete(join(p3, c8), lab)
    obs = {"psi_p3": a.psi, "psi_c8": b.psi, "p3_critical": a.critical, "c8_critical": b.critical,
           "psi_join": pj, "labeling": str(lab), "labeling_colors": lab.num_colors,
           "labeling_pseudocomplete": lab_ok}
    ok = (a.psi, b.psi, pj) == (2, 4, 6) and not a.critical and not b.critical
    _require(ok and lab_ok and lab.num_colors == 6, obs,
             "Ψ(P3)=2, Ψ(C8)=4, neither critical, Ψ(P3∇C8)=6 with the explicit 6-coloring valid")
    return [p3, c8], obs


def _p3_p3_values(budget: int) -> tuple[list[Graph], dict]:
    p3 = path(3)
    gg = join(p3, p3)
    lab = labeling_p3_join_p3()
    rep = criticality(gg, budget, mpd_route=True)
    obs = {"psi_join": rep.psi, "join_critical": rep.critical, "labeling": str(lab),
           "labeling_pseudocomplete": is_pseudocomplete(gg, lab)}
    _require(rep.psi == 5 and rep.critical and obs["labeling_pseudocomplete"], obs,
             "Ψ(P3∇P3)=5 and P3∇P3 critical")
    return [p3, p3], obs


# -- catalog -------------------------------------------------------------------

@dataclass(frozen=True)
class CheckSpec:
    kind: str  # graph, pair or fixed
    fn: Callable
    description: str


def _critical(r) -> bool:
    return r.critical


def _weak(r) -> bool:
    return r.weakly_critical


CATALOG: dict[str, CheckSpec] = {
    "lemma-2-upper-bound": CheckSpec("graph", _lemma2, "Ψ <= floor((ω + n)/2), attained on complete graphs"),
    "corollary-4-join-superadditivity": CheckSpec("pair", _superadditive, "Ψ(G) + Ψ(H) <= Ψ(G∇H)"),
    "lemma-10-criticality-formula": CheckSpec("graph", _criticality_formula, "critical by mpd <=> 2Ψ = ω + n"),
    "thm-join-bracket": CheckSpec("pair", _join_bracket, "lower and upper bounds for Ψ of a join"),
    "thm-mpd-additivity-criterion": CheckSpec("pair", _additivity, "mpd sum criterion <=> additive"),
    "thm-additive-when-critical": CheckSpec(
        "pair", _additive_when(_critical, _critical, "G, H critical  =>  additive"), "both critical => additive"),
    "remark-p3-c8": CheckSpec("fixed", _p3_c8_values, "P3 and C8: values of Ψ and the 6-coloring of the join"),
    "thm-crit-join-crit": CheckSpec("pair", _crit_join_crit, "join of critical graphs is critical"),
    "remark-p3-p3": CheckSpec("fixed", _p3_p3_values, "Ψ(P3∇P3) = 5 and the join is critical"),
    "thm-critical-structure+edge-bound": CheckSpec("graph", _critical_structure, "critical coloring pattern and edge bound"),
    "def-weak-crit-equivalence": CheckSpec("graph", _weak_equivalence, "weakly critical by mpd <=> formula"),
    "cor-wc-plus-c": CheckSpec(
        "pair", _additive_when(_critical, _weak, "G critical, H weakly critical  =>  additive"),
        "critical plus weakly critical => additive"),
    "thm-weakly-critical-structure+edge-bound": CheckSpec("graph", _weak_structure, "type (1)/(2) pattern and edge bound"),
    "thm-witness-iff-not-weakly-critical": CheckSpec("graph", _witness_iff("not-weakly-critical"),
                                                     "witness pair exists <=> not weakly critical"),
    "thm-witness-iff-not-critical": CheckSpec("graph", _witness_iff("not-critical"),
                                              "witness pair exists <=> not critical"),
    "thm-additive-implies-one-weakly-critical": CheckSpec("pair", _additive_one_weak,
                                                          "additive => one operand weakly critical; boost coloring"),
    "thm-gjoing-2psi-iff-critical": CheckSpec("graph", _gjoing_iff, "Ψ(G∇G) = 2Ψ(G) <=> critical"),
    "eqn-psi-gjoing-omega-plus-n": CheckSpec("graph", _gjoing_formula, "Ψ(G∇G) = ω + n and G∇G critical"),
    "thm-nablak-critical-parity": CheckSpec("graph", _nabla_check("parity"), "∇^k G critical <=> k(ω + n) even"),
    "thm-nablak-always-weakly-critical": CheckSpec("graph", _nabla_check("weak"), "∇^k G weakly critical"),
    "thm-nablak-kpsi-even": CheckSpec("graph", _nabla_check("even"), "kΨ formula, even parity"),
    "thm-nablak-kpsi-odd": CheckSpec("graph", _nabla_check("odd"), "kΨ formula, odd parity"),
}

# Literal readings that fail on small graphs; run only when named explicitly.
EXTRA_CHECKS: dict[str, CheckSpec] = {
    "thm-mpd-additivity-equality-k": CheckSpec("pair", _additivity_equality,
                                               "additive => equality mpd_G(k) + mpd_H(k) = k for some k >= 1"),
    "thm-witness-iff-not-critical-literal": CheckSpec(
        "graph", _witness_iff("not-critical", parity_guard=False),
        "witness conditions without the parity guard <=> not critical"),
    "thm-additive-type1-refinement": CheckSpec("pair", _type1_refinement,
                                               "type-(1) operand of an additive pair forces the other to be weakly critical without type (1)"),
}

ALL_CHECKS = {**CATALOG, **EXTRA_CHECKS}

FIXED_INSTANCES: dict[str, Callable[[], list[Graph]]] = {
    "remark-p3-c8": lambda: [path(3), cycle(8)],
    "remark-p3-p3": lambda: [path(3), path(3)],
}


def check_ids(include_extra: bool = False) -> list[str]:
    return sorted(ALL_CHECKS if include_extra else CATALOG)


# -- running -----------------------------------------------------------------

def _scope(kind: str, corpus: list[Graph], n_items: int, max_pair_order: int | None) -> str:
    if not corpus or kind == "fixed":
        return "fixed named instances" if kind == "fixed" else "empty corpus"
    orders = sorted({g.n for g in corpus})
    base = f"{len(corpus)} graphs, orders {orders[0]}..{orders[-1]}"
    if kind == "pair":
        cap = "" if max_pair_order is None else f" with n_g + n_h <= {max_pair_order}"
        return f"{n_items} unordered pairs{cap} from {base}"
    return base


def _failure(check_id: str, graphs: list[Graph], observed: dict, expected: str) -> dict:
    g6 = [emit_graph6(g) for g in graphs]
    return {
        "graphs": g6,
        "observed": observed,
        "expected": expected,
        "replay": " ".join(["psi-lab", "verify", "--check", check_id] + [repr(s) for s in g6]),
    }


def run_check(check_id: str, corpus: list[Graph], budget: int = DEFAULT_BUDGET, *,
              max_pair_order: int | None = DEFAULT_MAX_PAIR_ORDER, max_failures: int = 20) -> CheckResult:
    """Evaluate one check over the applicable graphs or pairs of ``corpus``.

    At most ``max_failures`` payloads are kept; ``checked`` still counts all.
    """
    if check_id not in ALL_CHECKS:
        raise DomainError(f"unknown check_id {check_id!r}; known: {', '.join(check_ids(True))}")
    spec = ALL_CHECKS[check_id]
    start = time.perf_counter()
    if spec.kind == "graph":
        items: list[tuple[Graph, ...]] = [(g,) for g in corpus]
    elif spec.kind == "pair":
        items = list(pairs(list(corpus), max_pair_order))
    else:
        items = [tuple(FIXED_INSTANCES[check_id]())]
    result = CheckResult(check_id, _scope(spec.kind, list(corpus), len(items), max_pair_order), True)
    n_failed = 0
    for item in items:
        graphs = list(item)
        try:
            if spec.kind == "fixed":
                graphs, result.details = spec.fn(budget)
            else:
                spec.fn(*item, budget)
        except _Skip:
            result.skipped += 1
            continue
        except _Fail as exc:
            n_failed += 1
            if len(result.failures) < max_failures:
                result.failures.append(_failure(check_id, graphs, exc.observed, exc.expected))
        except Inconclusive:
            result.inconclusive += 1
            result.checked += 1
            continue
        except (SolverDisagreement, ContractViolation, UnsupportedSize) as exc:
            n_failed += 1
            if len(result.failures) < max_failures:
                result.failures.append(_failure(check_id, graphs, {"error": type(exc).__name__,
                                                                   "message": str(exc)}, spec.description))
        result.checked += 1
    if n_failed > len(result.failures):
        result.scope += f"; {n_failed} failures, first {len(result.failures)} kept"
    if result.inconclusive:
        result.scope += f"; {result.inconclusive} items inconclusive within budget {budget}"
    result.passed = not result.failures
    result.runtime_ms = (time.perf_counter() - start) * 1000
    return result


def _run_one(args: tuple) -> CheckResult:
    check_id, corpus, budget, max_pair_order = args
    return run_check(check_id, corpus, budget, max_pair_order=max_pair_order)


def run_checks(ids: list[str] | None = None, corpus: list[Graph] | None = None,
               budget: int = DEFAULT_BUDGET, *, max_pair_order: int | None = DEFAULT_MAX_PAIR_ORDER,
               workers: int = 1) -> list[CheckResult]:
    """Run several checks, concurrently when ``workers > 1``; results sorted by check_id."""
    ids = check_ids() if ids is None else list(ids)
    for cid in ids:
        if cid not in ALL_CHECKS:
            raise DomainError(f"unknown check_id {cid!r}")
    corpus = embedded_corpus() if corpus is None else list(corpus)
    jobs = [(cid, corpus, budget, max_pair_order) for cid in ids]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    return sorted(results, key=lambda r: r.check_id)


def report(results: list[CheckResult], **meta) -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "passed": all(r.passed for r in results),
        "inconclusive": any(r.inconclusive for r in results),
        **meta,
        "checks": [r.to_json() for r in results],
    }


# -- additive pair scan ----------------------------------------------------------

def weak_class(g: Graph, budget: int = DEFAULT_BUDGET) -> str:
    r = _crit(g, budget)
    if r.critical:
        return "critical"
    return "weakly-critical" if r.weakly_critical else "not-weakly-critical"


def scan_additive_pairs(corpus: list[Graph], budget: int = DEFAULT_BUDGET, *,
                        max_pair_order: int | None = None) -> dict:
    """Classify every unordered pair by additivity and the classes of its operands.

    A violation is an additive pair whose operands are both not weakly
    critical. Pairs the budget cannot decide are listed separately.
    """
    rows, violations, undecided = [], [], []
    combos: Counter = Counter()
    for g, h in pairs(list(corpus), max_pair_order):
        try:
            cg, ch = weak_class(g, budget), weak_class(h, budget)
            pj = psi_of_join(g, h, budget).require()
            additive = pj == _psi(g, budget) + _psi(h, budget)
        except Inconclusive:
            undecided.append([emit_graph6(g), emit_graph6(h)])
            continue
        row = {"g": emit_graph6(g), "h": emit_graph6(h), "additive": additive,
               "class_g": cg, "class_h": ch, "psi_join": pj}
        rows.append(row)
        combos[(*sorted((cg, ch)), additive)] += 1
        if additive and cg == ch == "not-weakly-critical":
            violations.append(row)
    return {
        "schema": "psilab.additive-scan/1",
        "pairs": rows,
        "violations": violations,
        "undecided": undecided,
        "partial": bool(undecided),
        "combinations": [{"classes": [a, b], "additive": add, "count": n}
                         for (a, b, add), n in sorted(combos.items())],
    }


__all__ = [
    "CATALOG", "EXTRA_CHECKS", "CheckResult", "check_ids", "report", "run_check", "run_checks",
    "scan_additive_pairs", "weak_class",
]
