"""Minimal psi-drop, criticality, weak criticality and their witnesses.

``mpd_G(k)`` is the least amount Ψ can fall when k vertices are deleted.
A graph is critical when ``mpd_G(k) >= ceil(k/2)`` for every k and weakly
critical when ``mpd_G(k) >= floor(k/2)``. Both verdicts are also available in
closed form from ω, Ψ and n; the report computes each route separately and
refuses to answer if they disagree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from psilab.errors import ContractViolation, DomainError, SolverDisagreement, UnsupportedSize
from psilab.graph import Graph, bits, clique_number
from psilab.psi import DEFAULT_BUDGET, Coloring, is_pseudocomplete, psi, psi_table, psi_value

MAX_WITNESS_ORDER = 12


def _ceil_half(k: int) -> int:
    return (k + 1) // 2


@dataclass(frozen=True)
class MpdProfile:
    """``values[k]`` is mpd_G(k); ``realizers[k]`` is the lexicographically least set attaining it."""

    psi: int
    values: tuple[int, ...]
    realizers: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "psi": self.psi,
            "mpd": list(self.values),
            "realizers": [list(x) for x in self.realizers],
        }


@lru_cache(maxsize=8192)
def _table(g: Graph, budget: int) -> tuple[int, ...]:
    table = psi_table(g, budget)
    direct = psi_value(g, budget)
    if table[g.full_mask] != direct:
        raise SolverDisagreement(f"subset table gives Ψ={table[g.full_mask]}, solver gives {direct}")
    return tuple(table)


def subset_psi(g: Graph, budget: int = DEFAULT_BUDGET) -> tuple[int, ...]:
    """Ψ of every induced subgraph of ``g`` indexed by vertex bitmask (cached)."""
    if g.n > MAX_WITNESS_ORDER + 4:
        raise UnsupportedSize(f"subset enumeration limited to n <= {MAX_WITNESS_ORDER + 4}")
    return _table(g.with_label(None), budget)


@lru_cache(maxsize=8192)
def _profile(g: Graph, budget: int) -> MpdProfile:
    table = subset_psi(g, budget)
    full = g.full_mask
    top = table[full]
    values = []
    realizers = []
    for k in range(g.n + 1):
        best = None
        best_x: tuple[int, ...] = ()
        for x in combinations(range(g.n), k):
            m = 0
            for v in x:
                m |= 1 << v
            drop = top - table[full ^ m]
            if best is None or drop < best:
                best, best_x = drop, x
                if drop == 0:
                    break
        values.append(best)
        realizers.append(best_x)
    return MpdProfile(top, tuple(values), tuple(realizers))


def mpd_profile(g: Graph, budget: int = DEFAULT_BUDGET) -> MpdProfile:
    return _profile(g.with_label(None), budget)


def mpd(g: Graph, k: int, budget: int = DEFAULT_BUDGET) -> tuple[int, tuple[int, ...]]:
    """mpd_G(k) and a lexicographically least realizing vertex set."""
    if not 0 <= k <= g.n:
        raise DomainError(f"k must lie in 0..{g.n}, got {k}")
    prof = mpd_profile(g, budget)
    return prof.values[k], prof.realizers[k]


# -- criticality -------------------------------------------------------------

@dataclass(frozen=True)
class CriticalityReport:
    omega: int
    psi: int
    n: int
    critical_by_formula: bool
    weakly_critical_by_formula: bool
    critical_by_mpd: bool | None = None
    weakly_critical_by_mpd: bool | None = None
    failing_k_critical: int | None = None
    failing_k_weak: int | None = None
    mpd: tuple[int, ...] | None = None

    @property
    def critical(self) -> bool:
        return self.critical_by_formula

    @property
    def weakly_critical(self) -> bool:
        return self.weakly_critical_by_formula

    def to_json(self) -> dict:
        return {
            "omega": self.omega,
            "psi": self.psi,
            "n": self.n,
            "critical": self.critical,
            "weakly_critical": self.weakly_critical,
            "critical_by_formula": self.critical_by_formula,
            "critical_by_mpd": self.critical_by_mpd,
            "weakly_critical_by_formula": self.weakly_critical_by_formula,
            "weakly_critical_by_mpd": self.weakly_critical_by_mpd,
            "failing_k_critical": self.failing_k_critical,
            "failing_k_weak": self.failing_k_weak,
            "mpd": None if self.mpd is None else list(self.mpd),
        }


def criticality(g: Graph, budget: int = DEFAULT_BUDGET, *, mpd_route: bool | None = None,
                psi_hint: Coloring | None = None) -> CriticalityReport:
    """Critical and weakly-critical verdicts by formula and, for small graphs, by mpd.

    ``mpd_route`` defaults to on for n <= 12. When both routes run they must
    agree; a disagreement raises SolverDisagreement.
    """
    if mpd_route is None:
        mpd_route = g.n <= MAX_WITNESS_ORDER
    w = clique_number(g)[0]
    p = psi(g, hint=psi_hint, budget=budget).require()
    crit_f = 2 * p == w + g.n
    weak_f = p == (w + g.n) // 2
    if not mpd_route:
        return CriticalityReport(w, p, g.n, crit_f, weak_f)
    values = mpd_profile(g, budget).values
    fail_c = next((k for k, m in enumerate(values) if m < _ceil_half(k)), None)
    fail_w = next((k for k, m in enumerate(values) if m < k // 2), None)
    report = CriticalityReport(w, p, g.n, crit_f, weak_f, fail_c is None, fail_w is None,
                               fail_c, fail_w, values)
    if report.critical_by_mpd != crit_f or report.weakly_critical_by_mpd != weak_f:
        raise SolverDisagreement(f"criticality routes disagree: {report}")
    return report


def is_critical(g: Graph, budget: int = DEFAULT_BUDGET) -> bool:
    return criticality(g, budget).critical


def is_weakly_critical(g: Graph, budget: int = DEFAULT_BUDGET) -> bool:
    return criticality(g, budget).weakly_critical


# -- additivity over the join ------------------------------------------------

@dataclass(frozen=True)
class AdditivityReport:
    """mpd sums per k and, when requested, the directly computed Ψ of the join."""

    holds: bool
    table: tuple[tuple[int, int, int], ...]  # (k, mpd_G(k), mpd_H(k))
    failing_k: int | None
    equality_k: int | None
    psi_g: int
    psi_h: int
    psi_join: int | None = None

    @property
    def additive(self) -> bool | None:
        if self.psi_join is None:
            return None
        return self.psi_join == self.psi_g + self.psi_h

    @property
    def consistent(self) -> bool | None:
        """Whether the mpd criterion and the direct computation agree."""
        return None if self.psi_join is None else self.holds == self.additive

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "table": [{"k": k, "mpd_g": a, "mpd_h": b, "sum": a + b} for k, a, b in self.table],
            "failing_k": self.failing_k,
            "equality_k": self.equality_k,
            "psi_g": self.psi_g,
            "psi_h": self.psi_h,
            "psi_join": self.psi_join,
            "additive": self.additive,
        }


def additivity_criterion(g: Graph, h: Graph, budget: int = DEFAULT_BUDGET, *,
                         direct: bool = True) -> AdditivityReport:
    """Test mpd_G(k) + mpd_H(k) >= k for 0 <= k <= min(n_G, n_H).

    ``equality_k`` is the least k >= 1 with equality, if any. With ``direct``
    the join's Ψ is also computed by search for comparison.
    """
    pg, ph = mpd_profile(g, budget), mpd_profile(h, budget)
    rows = tuple((k, pg.values[k], ph.values[k]) for k in range(min(g.n, h.n) + 1))
    failing = next((k for k, a, b in rows if a + b < k), None)
    equality = next((k for k, a, b in rows if k >= 1 and a + b == k), None)
    psi_join = None
    if direct:
        from psilab.constructions import psi_of_join

        psi_join = psi_of_join(g, h, budget).require()
    return AdditivityReport(failing is None, rows, failing, equality, pg.psi, ph.psi, psi_join)


# -- witnesses -----------------------------------------------------------

@dataclass(frozen=True)
class WitnessPair:
    """Nested induced subgraphs M1 ⊆ M2 certifying that G is not (weakly) critical.

    ``coloring`` is a maximum pseudocomplete coloring of G that still uses
    every color after ``removable_set`` is deleted.
    """

    kind: str  # "not-weakly-critical" or "not-critical"
    m1: tuple[int, ...]
    m2: tuple[int, ...]
    psi_m1: int
    psi_m2: int
    psi_g: int
    n: int
    xi: int
    removable_set: tuple[int, ...]
    coloring: Coloring = field(repr=False)

    @property
    def outside_m1(self) -> tuple[int, ...]:
        inside = set(self.m1)
        return tuple(v for v in range(self.n) if v not in inside)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "m1": list(self.m1),
            "m2": list(self.m2),
            "psi_m1": self.psi_m1,
            "psi_m2": self.psi_m2,
            "psi": self.psi_g,
            "xi": self.xi,
            "removable_set": list(self.removable_set),
            "coloring": self.coloring.to_json(),
        }


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def removable_vertices(c: Coloring) -> list[int]:
    """Vertices whose deletion keeps every color: all but the first vertex of each color."""
    seen = set()
    out = []
    for v, col in enumerate(c.colors):
        if col in seen:
            out.append(v)
        else:
            seen.add(col)
    return out


def _build_witness(g: Graph, kind: str, m1: int, m2: int, table, size: int,
                   budget: int) -> WitnessPair:
    result = psi(g, budget=budget)
    spare = removable_vertices(result.witness)
    if len(spare) < size:
        raise SolverDisagreement(f"only {len(spare)} removable vertices, need {size}")
    n_out = g.n - m1.bit_count()
    return WitnessPair(kind, tuple(bits(m1)), tuple(bits(m2)), table[m1], table[m2], result.value,
                       g.n, n_out // 2, tuple(spare[:size]), result.witness)


def _check_size(g: Graph) -> None:
    if g.n > MAX_WITNESS_ORDER:
        raise UnsupportedSize(f"witness search limited to n <= {MAX_WITNESS_ORDER}, got {g.n}")


def find_witness_not_weakly_critical(g: Graph, budget: int = DEFAULT_BUDGET) -> WitnessPair | None:
    """M1 ⊆ M2 with |M2 - M1| = 2, Ψ(M1) = Ψ(M2) and Ψ(G) = Ψ(M2) + floor(|V - M2| / 2).

    Such a pair exists exactly when G is not weakly critical. M1 is scanned
    from the largest size down, then M2 in lexicographic order.
    """
    _check_size(g)
    table = subset_psi(g, budget)
    n, full = g.n, g.full_mask
    top = table[full]
    for s in range(n - 2, -1, -1):
        for m1_vs in combinations(range(n), s):
            m1 = _mask(m1_vs)
            p1 = table[m1]
            rest = list(bits(full & ~m1))
            for a, b in combinations(rest, 2):
                m2 = m1 | 1 << a | 1 << b
                if table[m2] == p1 and top == table[m2] + (n - s - 2) // 2:
                    xi = (n - s) // 2
                    return _build_witness(g, "not-weakly-critical", m1, m2, table, xi + 1, budget)
    return None


def find_witness_not_critical(g: Graph, budget: int = DEFAULT_BUDGET, *,
                              parity_guard: bool = True) -> WitnessPair | None:
    """M1 ⊆ M2 with 0 < |M2 - M1| <= 2, Ψ(M1) = Ψ(M2) and Ψ(G) = Ψ(M2) + ceil(|V - M2| / 2).

    With ``parity_guard`` (the default) a one-vertex step is only accepted
    when |V - M2| is even. Without it, critical graphs such as P3∇P3 also
    admit pairs, so the conditions alone do not certify non-criticality.
    """
    _check_size(g)
    table = subset_psi(g, budget)
    n, full = g.n, g.full_mask
    top = table[full]
    for s in range(n - 1, -1, -1):
        for m1_vs in combinations(range(n), s):
            m1 = _mask(m1_vs)
            p1 = table[m1]
            rest = list(bits(full & ~m1))
            steps = [(a,) for a in rest] + list(combinations(rest, 2))
            steps.sort()
            for step in steps:
                delta = len(step)
                m2 = m1 | _mask(step)
                outside = n - s - delta
                if table[m2] != p1 or top != table[m2] + _ceil_half(outside):
                    continue
                if parity_guard and delta == 1 and outside % 2:
                    continue
                size = _ceil_half(outside) + delta - 1
                return _build_witness(g, "not-critical", m1, m2, table, size, budget)
    return None


def validate_witness(g: Graph, w: WitnessPair, budget: int = DEFAULT_BUDGET) -> list[str]:
    """Re-check a witness by direct Ψ computations; returns the violated conditions."""
    problems = []
    m1, m2 = set(w.m1), set(w.m2)
    if not m1 <= m2:
        problems.append("m1 is not contained in m2")
    delta = len(m2 - m1)
    p_g = psi_value(g, budget)
    p1 = psi_value(g.induced(_mask(w.m1)), budget)
    p2 = psi_value(g.induced(_mask(w.m2)), budget)
    if (p1, p2, p_g) != (w.psi_m1, w.psi_m2, w.psi_g):
        problems.append(f"recorded Ψ values {(w.psi_m1, w.psi_m2, w.psi_g)} != {(p1, p2, p_g)}")
    if p1 != p2:
        problems.append(f"Ψ(M1)={p1} differs from Ψ(M2)={p2}")
    outside = g.n - len(m2)
    xi = (g.n - len(m1)) // 2
    if w.xi != xi:
        problems.append(f"xi={w.xi}, expected {xi}")
    if w.kind == "not-weakly-critical":
        if delta != 2:
            problems.append(f"|M2 - M1| = {delta}, expected 2")
        if p_g != p2 + outside // 2:
            problems.append("Ψ(G) != Ψ(M2) + floor(|V - M2|/2)")
        want = xi + 1
        if want < 2:
            problems.append("removable set smaller than 2")
    elif w.kind == "not-critical":
        if not 0 < delta <= 2:
            problems.append(f"|M2 - M1| = {delta} outside 1..2")
        if p_g != p2 + _ceil_half(outside):
            problems.append("Ψ(G) != Ψ(M2) + ceil(|V - M2|/2)")
        want = _ceil_half(outside) + delta - 1
    else:
        raise ContractViolation(f"unknown witness kind {w.kind!r}")
    if len(set(w.removable_set)) != want:
        problems.append(f"|removable set| = {len(set(w.removable_set))}, expected {want}")
    if w.coloring.num_colors != p_g or not is_pseudocomplete(g, w.coloring):
        problems.append("coloring is not a maximum pseudocomplete coloring")
    else:
        kept = {c for v, c in enumerate(w.coloring.colors) if v not in set(w.removable_set)}
        if len(kept) != p_g:
            problems.append("deleting the removable set loses a color")
    return problems

