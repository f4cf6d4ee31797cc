"""Explicit pseudocomplete colorings for joins, k-fold joins and critical graphs.

Every function that returns a coloring checks it with ``is_pseudocomplete``
and the expected color count before handing it back.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from psilab.criticality import WitnessPair, criticality, validate_witness
from psilab.errors import ContractViolation, DomainError, Inconclusive, SolverDisagreement
from psilab.graph import Graph, bits, clique_number, join, nabla_k, omega
from psilab.psi import (
    DEFAULT_BUDGET,
    Coloring,
    PsiResult,
    iter_pseudocomplete_colorings,
    psi,
    uncovered_pair,
)

MAX_ENUMERATION_ORDER = 8


def _checked(g: Graph, colors: list[int], expected: int, what: str) -> Coloring:
    c = Coloring(tuple(colors))
    c.check(g.n)
    missing = uncovered_pair(g, c)
    if missing is not None or c.num_colors != expected:
        raise SolverDisagreement(
            f"{what}: built {c.num_colors} colors (expected {expected}), uncovered pair {missing}")
    return c


# -- joins -------------------------------------------------------------------

def join_sum_coloring(g: Graph, h: Graph, budget: int = DEFAULT_BUDGET) -> Coloring:
    """Maximum colorings of g and h on disjoint palettes, giving Ψ(G) + Ψ(H) colors on g∇h."""
    cg = psi(g, budget=budget).witness
    ch = psi(h, budget=budget).witness
    shift = cg.num_colors
    colors = list(cg.colors) + [c + shift for c in ch.colors]
    return _checked(join(g, h), colors, cg.num_colors + ch.num_colors, "sum coloring")


def join_coloring_lower(g: Graph, h: Graph) -> Coloring:
    """Coloring of g∇h with min(ω(G) + |V_H|, ω(H) + |V_G|) colors.

    Both maximum cliques get distinct colors; the smaller clique complement is
    then matched into the larger one, each matched pair sharing a fresh color.
    Unmatched vertices of the larger complement reuse an existing color.
    """
    if g.n == 0 or h.n == 0:
        raise DomainError("both operands need at least one vertex")
    wg, kg = clique_number(g)
    wh, kh = clique_number(h)
    xg = [v for v in range(g.n) if v not in set(kg)]
    xh = [g.n + v for v in range(h.n) if v not in set(kh)]
    colors = [0] * (g.n + h.n)
    nxt = 1
    for v in kg:
        colors[v] = nxt
        nxt += 1
    for v in kh:
        colors[g.n + v] = nxt
        nxt += 1
    small, large = (xg, xh) if len(xg) <= len(xh) else (xh, xg)
    for a, b in zip(small, large):
        colors[a] = colors[b] = nxt
        nxt += 1
    filler = colors[small[0]] if small else 1
    for b in large[len(small):]:
        colors[b] = filler
    expected = min(wg + h.n, wh + g.n)
    return _checked(join(g, h), colors, expected, "join lower-bound coloring")


def psi_of_join(g: Graph, h: Graph, budget: int = DEFAULT_BUDGET) -> PsiResult:
    """Ψ(G∇H) by search, seeded with the better of the two join colorings."""
    seeds = [join_sum_coloring(g, h, budget)]
    if g.n and h.n:
        seeds.append(join_coloring_lower(g, h))
    hint = max(seeds, key=lambda c: c.num_colors)
    return psi(join(g, h), hint=hint, budget=budget)


def nabla_k_coloring(g: Graph, k: int) -> Coloring:
    """Pseudocomplete coloring of ∇^k G with floor(k(ω + n)/2) colors."""
    if k < 2:
        raise DomainError(f"k must be at least 2, got {k}")
    if g.n == 0:
        raise DomainError("graph must have at least one vertex")
    w, clique = clique_number(g)
    n = g.n
    if (w + n) % 2 and k % 2 == 0:
        # ∇^k G = ∇^{k/2}(G∇G), and ω + n of G∇G is even
        if k == 2:
            return join_coloring_lower(g, g)
        return nabla_k_coloring(join(g, g), k // 2)

    rest = [v for v in range(n) if v not in set(clique)]
    q = len(rest) // 2
    x1, x2 = rest[:q], rest[q:2 * q]
    v0 = rest[-1] if len(rest) % 2 else None
    colors = [0] * (k * n)
    nxt = 1
    for i in range(k):
        for v in clique:
            colors[i * n + v] = nxt
            nxt += 1
    for i in range(k):
        for j, v in enumerate(x1):
            colors[i * n + v] = nxt
            colors[((i + 1) % k) * n + x2[j]] = nxt
            nxt += 1
    if v0 is not None:
        # copies 2j and 2j+1 share extra color j; the last copy reuses extra color 0
        base = nxt
        for i in range(k):
            colors[i * n + v0] = base + i // 2 if i < k - 1 else base
        nxt = base + (k - 1) // 2
    expected = k * (w + n) // 2
    return _checked(nabla_k(g, k), colors, expected, f"nabla^{k} coloring")


# -- multiplicity profiles and structure -----------------------------------

@dataclass(frozen=True)
class MultiplicityProfile:
    counts: dict[int, int]  # k -> number of colors used exactly k times
    clique_colors: tuple[int, ...]  # colors used exactly once

    def n_k(self, k: int) -> int:
        return self.counts.get(k, 0)

    def to_json(self) -> dict:
        return {"counts": {str(k): v for k, v in sorted(self.counts.items())},
                "clique_colors": list(self.clique_colors)}


def multiplicity_profile(g: Graph, c: Coloring) -> MultiplicityProfile:
    c.check(g.n)
    usage = Counter(c.colors)
    counts = Counter(usage.values())
    if sum(counts.values()) != c.num_colors or sum(k * m for k, m in counts.items()) != g.n:
        raise SolverDisagreement("multiplicity counts do not add up")
    once = tuple(sorted(col for col, m in usage.items() if m == 1))
    return MultiplicityProfile(dict(sorted(counts.items())), once)


def singleton_vertices(c: Coloring, profile: MultiplicityProfile) -> list[int]:
    once = set(profile.clique_colors)
    return [v for v, col in enumerate(c.colors) if col in once]


def profile_kind(g: Graph, c: Coloring, w: int | None = None) -> str | None:
    """Which structural pattern a maximum coloring follows, if any."""
    if w is None:
        w = omega(g)
    p = multiplicity_profile(g, c)
    n = g.n
    big = any(k > 3 and m for k, m in p.counts.items())
    if big:
        return None
    n1, n2, n3 = p.n_k(1), p.n_k(2), p.n_k(3)
    if n3 == 0 and n1 == w and 2 * n2 == n - w:
        return "critical"
    if n3 == 1 and n1 == w and 2 * n2 == n - w - 3:
        return "weakly-type-1"
    if n3 == 0 and n1 == w - 1 and 2 * n2 == n - w + 1:
        return "weakly-type-2"
    return None


@dataclass(frozen=True)
class StructureReport:
    kind: str  # critical, weakly-type-1, weakly-type-2 or none
    coloring: Coloring
    profile: MultiplicityProfile
    edge_bound: Fraction | None
    edge_bound_satisfied: bool | None
    types_found: tuple[str, ...] = field(default=())
    clique: tuple[int, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "coloring": self.coloring.to_json(),
            "profile": self.profile.to_json(),
            "clique": list(self.clique),
            "edge_bound": None if self.edge_bound is None else str(self.edge_bound),
            "edge_bound_satisfied": self.edge_bound_satisfied,
            "types_found": list(self.types_found),
        }


def structure_coloring(g: Graph, budget: int = DEFAULT_BUDGET) -> StructureReport:
    """Find a maximum coloring with the multiplicity pattern forced by (weak) criticality.

    The search is restricted to colorings whose classes have at most 2
    vertices (critical) or 3 vertices (weakly critical), which covers every
    target pattern. For weakly critical graphs all patterns met are listed in
    ``types_found``.
    """
    rep = criticality(g, budget, mpd_route=False)
    w, p, n = rep.omega, rep.psi, g.n
    e = g.num_edges
    if not rep.weakly_critical:
        c = psi(g, budget=budget).witness
        return StructureReport("none", c, multiplicity_profile(g, c), None, None)
    if rep.critical:
        bound = Fraction((n + w) * (n + w - 2), 8)
        targets = ("critical",)
        cap = 2
    else:
        bound = Fraction((n + w - 1) * (n + w - 3), 8)
        targets = ("weakly-type-1", "weakly-type-2")
        cap = 3
    found: dict[str, Coloring] = {}
    for c in iter_pseudocomplete_colorings(g, p, max_class_size=cap, budget=budget):
        kind = profile_kind(g, c, w)
        if kind in targets and kind not in found:
            found[kind] = c
            if len(found) == len(targets):
                break
    if not found:
        if n > MAX_ENUMERATION_ORDER:
            raise Inconclusive(f"no structured coloring with classes <= {cap}; full enumeration "
                               f"limited to n <= {MAX_ENUMERATION_ORDER}")
        c = psi(g, budget=budget).witness
        return StructureReport("none", c, multiplicity_profile(g, c), bound, e >= bound)
    kind = next(t for t in targets if t in found)
    c = found[kind]
    prof = multiplicity_profile(g, c)
    return StructureReport(kind, c, prof, bound, e >= bound, tuple(t for t in targets if t in found),
                           tuple(singleton_vertices(c, prof)))


def contract_classes(g: Graph, c: Coloring) -> Graph:
    """Quotient graph with one vertex per color class (color i becomes vertex i-1)."""
    c.check(g.n)
    t = c.num_colors
    adj = [0] * t
    for u, v in g.edges():
        a, b = c.colors[u] - 1, c.colors[v] - 1
        if a != b:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
    return Graph(t, tuple(adj))


def contraction_complete_check(g: Graph, c: Coloring) -> bool:
    """Whether identifying same-colored vertices yields K_{ω + (n-ω)/2}.

    ``c`` must follow the critical pattern: ω colors once, all others twice.
    """
    w = omega(g)
    prof = multiplicity_profile(g, c)
    if prof.n_k(1) != w or any(k not in (1, 2) for k in prof.counts) or (g.n - w) % 2:
        raise ContractViolation(f"coloring profile {prof.counts} is not the critical pattern for ω={w}")
    quotient = contract_classes(g, c)
    return quotient.n == w + (g.n - w) // 2 and quotient.is_complete()


# -- boost coloring -------------------------------------------------------

def boost_coloring(g: Graph, h: Graph, wg: WitnessPair | None, wh: WitnessPair | None,
                   budget: int = DEFAULT_BUDGET) -> Coloring:
    """Pseudocomplete coloring of g∇h with Ψ(G) + Ψ(H) + 1 colors.

    Needs a not-weakly-critical witness for each operand. The operand whose
    witness leaves fewer vertices outside M1 plays the donor: its outside
    vertices are split into halves P0, P1 sharing fresh paired colors, P0
    then swaps colors with a removable set of the other operand, and M1 gets
    its own palette.
    """
    for graph, w, name in ((g, wg, "first"), (h, wh, "second")):
        if w is None or w.kind != "not-weakly-critical":
            raise ContractViolation(f"{name} operand needs a not-weakly-critical witness")
        problems = validate_witness(graph, w, budget)
        if problems:
            raise ContractViolation(f"{name} witness invalid: {'; '.join(problems)}")
    if wg.xi <= wh.xi:
        donor, donor_w, donor_off, other_w, other_off = g, wg, 0, wh, g.n
    else:
        donor, donor_w, donor_off, other_w, other_off = h, wh, g.n, wg, 0
    xi = donor_w.xi
    colors = [0] * (g.n + h.n)
    base = other_w.coloring
    for v, col in enumerate(base.colors):
        colors[other_off + v] = col
    t_other = base.num_colors
    swap = other_w.removable_set[:xi]
    outside = donor_w.outside_m1
    p0, p1 = outside[:xi], outside[xi:]
    for j in range(xi):
        fresh = t_other + 1 + j
        colors[donor_off + p0[j]] = base.colors[swap[j]]
        colors[other_off + swap[j]] = fresh
        colors[donor_off + p1[j]] = fresh
    for v in p1[xi:]:
        colors[donor_off + v] = t_other + 1
    m1 = 0
    for v in donor_w.m1:
        m1 |= 1 << v
    inner = psi(donor.induced(m1), budget=budget).witness
    for v, col in zip(bits(m1), inner.colors):
        colors[donor_off + v] = t_other + xi + col
    expected = wg.psi_g + wh.psi_g + 1
    return _checked(join(g, h), colors, expected, "boost coloring")


# -- explicit colorings of the two small joins ------------------------------

def labeling_p3_join_p3() -> Coloring:
    """Colors {1,2,3} and {1,4,5} along the two paths of P3∇P3."""
    return Coloring((1, 2, 3, 1, 4, 5))


def labeling_p3_join_c8() -> Coloring:
    """Colors {1,2,3} on P3 and 1,4,5,6,4,4,4,4 around C8."""
    return Coloring((1, 2, 3, 1, 4, 5, 6, 4, 4, 4, 4))
