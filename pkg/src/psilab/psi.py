"""Pseudocomplete colorings and the exact pseudoachromatic number.

A coloring is pseudocomplete when every pair of distinct colors meets along
at least one edge; Ψ(G) is the largest number of colors such a coloring can
use. The solver decides, for a fixed number of colors ``t``, whether a
pseudocomplete coloring exists by branching over set partitions of the
vertices, then scans ``t`` downward from an upper bound.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from math import comb, isqrt
from typing import Callable, Iterator

from psilab.errors import ContractViolation, Inconclusive, UnsupportedSize
from psilab.graph import Graph, bits, clique_number

DEFAULT_BUDGET = int(os.environ.get("PSILAB_BUDGET", 10**8))
MAX_TABLE_ORDER = 16


@dataclass(frozen=True)
class Coloring:
    """Colors ``1..t`` listed in vertex order."""

    colors: tuple[int, ...]

    @classmethod
    def of(cls, colors) -> Coloring:
        return cls(tuple(int(c) for c in colors))

    @property
    def num_colors(self) -> int:
        return max(self.colors, default=0)

    def __len__(self) -> int:
        return len(self.colors)

    def __str__(self) -> str:
        return " ".join(map(str, self.colors))

    def check(self, n: int) -> None:
        """Raise ContractViolation unless this is a total surjective coloring of n vertices."""
        if len(self.colors) != n:
            raise ContractViolation(f"coloring covers {len(self.colors)} of {n} vertices")
        used = set(self.colors)
        t = self.num_colors
        if used != set(range(1, t + 1)):
            missing = sorted(set(range(1, t + 1)) - used)
            bad = sorted(c for c in used if not 1 <= c <= t)
            raise ContractViolation(f"coloring is not onto 1..{t} (missing {missing}, invalid {bad})")

    def classes(self) -> list[int]:
        """Vertex bitmask of each color class, index ``c - 1`` for color ``c``."""
        out = [0] * self.num_colors
        for v, c in enumerate(self.colors):
            out[c - 1] |= 1 << v
        return out

    def normalized(self) -> Coloring:
        """Relabel colors in order of first appearance."""
        relabel: dict[int, int] = {}
        return Coloring(tuple(relabel.setdefault(c, len(relabel) + 1) for c in self.colors))

    def to_json(self) -> dict:
        return {"colors": str(self), "num_colors": self.num_colors}


def clique_coloring(g: Graph) -> Coloring:
    """Distinct colors on a maximum clique, color 1 everywhere else."""
    if g.n == 0:
        return Coloring(())
    _, clique = clique_number(g)
    colors = [1] * g.n
    for i, v in enumerate(clique):
        colors[v] = i + 1
    return Coloring(tuple(colors))


def uncovered_pair(g: Graph, c: Coloring) -> tuple[int, int] | None:
    """Lexicographically least color pair not met by any edge, or None."""
    c.check(g.n)
    t = c.num_colors
    seen = [0] * (t + 1)
    for u, v in g.edges():
        a, b = c.colors[u], c.colors[v]
        if a != b:
            seen[a] |= 1 << b
            seen[b] |= 1 << a
    for i in range(1, t + 1):
        want = ((1 << (t + 1)) - 1) & ~1 & ~(1 << i)
        missing = want & ~seen[i]
        if missing:
            j = (missing & -missing).bit_length() - 1
            return (i, j) if i < j else (j, i)
    return None


def is_pseudocomplete(g: Graph, c: Coloring) -> bool:
    return uncovered_pair(g, c) is None


# -- bounds ----------------------------------------------------------------

def lemma2_bound(g: Graph) -> int:
    """floor((ω + n) / 2)."""
    return (clique_number(g)[0] + g.n) // 2


def edge_count_bound(num_edges: int) -> int:
    """Largest t with C(t, 2) <= |E|, i.e. floor((1 + sqrt(1 + 8|E|)) / 2)."""
    return (1 + isqrt(1 + 8 * num_edges)) // 2


def psi_upper_bound(g: Graph) -> int:
    if g.n == 0:
        return 0
    return min(lemma2_bound(g), edge_count_bound(g.num_edges))


# -- feasibility search --------------------------------------------------

def _search_order(g: Graph, seed: int | None) -> list[int]:
    """Greedy vertex order that keeps each new vertex adjacent to many earlier ones."""
    n = g.n
    tiebreak = list(range(n))
    if seed is not None:
        random.Random(seed).shuffle(tiebreak)
    rank = {v: i for i, v in enumerate(tiebreak)}
    placed = 0
    order = []
    remaining = set(range(n))
    while remaining:
        v = max(remaining, key=lambda u: ((g.adj[u] & placed).bit_count(), g.degree(u), -rank[u]))
        order.append(v)
        placed |= 1 << v
        remaining.remove(v)
    return order


class _Counter:
    __slots__ = ("nodes", "budget")

    def __init__(self, budget: int):
        self.nodes = 0
        self.budget = budget


class _PartitionSearch:
    """Depth-first search over partitions of V into exactly ``t`` classes.

    Each vertex joins an existing class or opens the next unused one, so every
    unordered partition is visited once. Two counting bounds prune: every
    uncovered color pair needs its own edge with an unassigned endpoint, and
    the unassigned vertices must be able to open every class not yet used.
    """

    def __init__(self, g: Graph, t: int, counter: _Counter, max_class_size: int | None = None,
                 seed: int | None = None):
        self.g = g
        self.t = t
        self.counter = counter
        self.cap = max_class_size
        n = g.n
        order = _search_order(g, seed)
        pos = [0] * n
        for i, v in enumerate(order):
            pos[v] = i
        self.order = order
        self.prev_nbrs = [[u for u in bits(g.adj[v]) if pos[u] < i] for i, v in enumerate(order)]
        # edges with at least one endpoint at position >= i
        self.rem_edges = [0] * (n + 1)
        total = g.num_edges
        inside = 0
        for i in range(n + 1):
            self.rem_edges[i] = total - inside
            if i < n:
                inside += len(self.prev_nbrs[i])

    def run(self, visit: Callable[[list[int]], bool]) -> bool:
        """Call ``visit`` with the vertex->class list of each solution; stop when it returns True."""
        g, t = self.g, self.t
        n = g.n
        if t > n or comb(t, 2) > g.num_edges or (t == 0) != (n == 0):
            return False
        self.col = [-1] * n
        self.cov = [0] * t
        self.size = [0] * t
        self.opened = 0
        self.covered = 0
        self.total_pairs = comb(t, 2)
        self.visit = visit
        return self._branch(0)

    def _branch(self, i: int) -> bool:
        n, t = self.g.n, self.t
        if i == n:
            if self.opened == t and self.covered == self.total_pairs:
                return self.visit(self.col)
            return False
        counter = self.counter
        v = self.order[i]
        col, cov, size = self.col, self.cov, self.size
        prev = self.prev_nbrs[i]
        nbc = 0
        for u in prev:
            nbc |= 1 << col[u]
        rem_after = self.rem_edges[i + 1]
        opened = self.opened
        limit = opened + 1 if opened < t else t
        left_after = n - i - 1
        for c in range(limit):
            if self.cap is not None and size[c] >= self.cap:
                continue
            new_opened = opened + 1 if c == opened else opened
            if left_after < t - new_opened:
                continue
            counter.nodes += 1
            if counter.nodes > counter.budget:
                raise Inconclusive(f"node budget {counter.budget} exhausted")
            gain = nbc & ~cov[c] & ~(1 << c)
            cnt = gain.bit_count()
            if self.total_pairs - self.covered - cnt > rem_after:
                continue
            # apply
            col[v] = c
            size[c] += 1
            cov[c] |= gain
            for j in bits(gain):
                cov[j] |= 1 << c
            self.covered += cnt
            self.opened = new_opened
            if self._branch(i + 1):
                return True
            # undo
            self.opened = opened
            self.covered -= cnt
            for j in bits(gain):
                cov[j] &= ~(1 << c)
            cov[c] &= ~gain
            size[c] -= 1
            col[v] = -1
        return False


def _to_coloring(classes: list[int]) -> Coloring:
    return Coloring(tuple(c + 1 for c in classes)).normalized()


def feasible_coloring(g: Graph, t: int, budget: int = DEFAULT_BUDGET, *, seed: int | None = None,
                      _counter: _Counter | None = None) -> Coloring | None:
    """A pseudocomplete coloring of ``g`` with exactly ``t`` colors, or None if none exists.

    Raises Inconclusive when the node budget runs out first.
    """
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    counter = _counter or _Counter(budget)
    found: list[Coloring] = []

    def visit(classes: list[int]) -> bool:
        found.append(_to_coloring(classes))
        return True

    _PartitionSearch(g, t, counter, seed=seed).run(visit)
    return found[0] if found else None


def iter_pseudocomplete_colorings(g: Graph, t: int, *, max_class_size: int | None = None,
                                  budget: int = DEFAULT_BUDGET) -> Iterator[Coloring]:
    """Every pseudocomplete coloring with exactly ``t`` colors, up to color renaming."""
    counter = _Counter(budget)
    found: list[Coloring] = []

    def visit(classes: list[int]) -> bool:
        found.append(_to_coloring(classes))
        return False

    _PartitionSearch(g, t, counter, max_class_size=max_class_size).run(visit)
    yield from found


# -- Ψ ---------------------------------------------------------------------

@dataclass(frozen=True)
class PsiResult:
    """Outcome of :func:`psi`.

    When ``exact`` is False the search ran out of budget and only
    ``lower <= Ψ <= upper`` is known; ``witness`` then realises ``lower``.
    """

    value: int | None
    witness: Coloring
    lower: int
    upper: int
    exact: bool = True
    bound_trace: tuple[tuple[str, int], ...] = field(default=())
    nodes: int = 0

    def require(self) -> int:
        if not self.exact:
            raise Inconclusive(f"Ψ only bracketed in [{self.lower}, {self.upper}]", self.lower, self.upper)
        return self.value


_PSI_CACHE: dict[tuple[int, tuple[int, ...]], PsiResult] = {}


def clear_cache() -> None:
    _PSI_CACHE.clear()


def psi(g: Graph, hint: Coloring | None = None, budget: int = DEFAULT_BUDGET, *,
        seed: int | None = None) -> PsiResult:
    """Exact pseudoachromatic number with a witness coloring.

    ``hint`` must be pseudocomplete and seeds the lower bound; when it already
    meets the upper bound no search is run.
    """
    if hint is not None and not is_pseudocomplete(g, hint):
        raise ContractViolation(f"hint coloring misses color pair {uncovered_pair(g, hint)}")
    key = (g.n, g.adj)
    if seed is None and key in _PSI_CACHE:
        return _PSI_CACHE[key]
    if g.n == 0:
        return PsiResult(0, Coloring(()), 0, 0, bound_trace=(("empty-graph", 0),))

    omega_val = clique_number(g)[0]
    lemma2 = lemma2_bound(g)
    ebound = edge_count_bound(g.num_edges)
    upper = min(lemma2, ebound)
    trace = [("lemma2", lemma2), ("edge-count", ebound), ("clique", omega_val)]
    best = clique_coloring(g)
    if hint is not None and hint.num_colors > best.num_colors:
        best = hint.normalized()
        trace.append(("hint", hint.num_colors))
    lower = best.num_colors

    counter = _Counter(budget)
    t = upper
    try:
        while t > lower:
            found = feasible_coloring(g, t, seed=seed, _counter=counter)
            if found is not None:
                best = found
                lower = t
                trace.append(("search-feasible", t))
                break
            trace.append(("search-infeasible", t))
            t -= 1
    except Inconclusive:
        return PsiResult(None, best, lower, t, exact=False, bound_trace=tuple(trace), nodes=counter.nodes)
    result = PsiResult(lower, best, lower, lower, bound_trace=tuple(trace), nodes=counter.nodes)
    if seed is None:
        _PSI_CACHE[key] = result
    return result


def psi_value(g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    """Ψ(g), raising Inconclusive instead of returning a bracketed result."""
    return psi(g, budget=budget).require()


def psi_table(g: Graph, budget: int = DEFAULT_BUDGET) -> list[int]:
    """Ψ of every induced subgraph, indexed by vertex bitmask.

    Uses Ψ(S - v) <= Ψ(S) <= Ψ(S - v) + 1, so at most one feasibility test
    is needed per subset, and usually none.
    """
    n = g.n
    if n > MAX_TABLE_ORDER:
        raise UnsupportedSize(f"subset table limited to n <= {MAX_TABLE_ORDER}, got {n}")
    adj = g.adj
    table = [0] * (1 << n)
    counter = _Counter(budget)
    for mask in range(1, 1 << n):
        lo = -1
        hi = n + 1
        e2 = 0
        for v in bits(mask):
            val = table[mask ^ (1 << v)]
            if val > lo:
                lo = val
            if val < hi:
                hi = val
            e2 += (adj[v] & mask).bit_count()
        if lo > hi:
            table[mask] = lo
            continue
        if lo + 1 > edge_count_bound(e2 // 2):
            table[mask] = lo
            continue
        sub = g.induced(mask)
        if lo + 1 > lemma2_bound(sub):
            table[mask] = lo
            continue
        cached = _PSI_CACHE.get((sub.n, sub.adj))
        if cached is not None:
            table[mask] = cached.value
            continue
        try:
            found = feasible_coloring(sub, lo + 1, _counter=counter)
        except Inconclusive as exc:
            raise Inconclusive(f"Ψ of induced subgraph {mask:#b} undecided: {exc}", lo, lo + 1) from None
        table[mask] = lo + 1 if found is not None else lo
    return table
