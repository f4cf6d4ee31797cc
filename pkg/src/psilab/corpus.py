"""Test corpora: every graph up to a given order, plus named instances.

Graphs of order n are produced by adding one vertex to each graph of order
n - 1. Only neighbourhoods that leave the new vertex with minimum degree are
tried, which still reaches every isomorphism class because deleting a
minimum-degree vertex of any graph lands in the previous order. Candidates
are bucketed by a colour-refinement invariant and deduplicated with an exact
isomorphism test inside each bucket.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable

import networkx as nx

from psilab.graph import Graph, bits, complete, cycle, emit_graph6, empty, path

# number of isomorphism classes of graphs on n vertices (OEIS A000088)
KNOWN_COUNTS = {0: 1, 1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346}


def refinement_invariant(g: Graph, rounds: int = 3) -> tuple:
    colors = [g.degree(v) for v in range(g.n)]
    for _ in range(rounds):
        sigs = [(colors[v], tuple(sorted(colors[u] for u in bits(g.adj[v])))) for v in range(g.n)]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [palette[s] for s in sigs]
    tri = tuple(sorted(
        (colors[v], sum((g.adj[u] & g.adj[v]).bit_count() for u in bits(g.adj[v])) // 2)
        for v in range(g.n)))
    return (g.n, g.num_edges, tuple(sorted(sigs)), tri)


def _to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    return nx.is_isomorphic(_to_nx(g), _to_nx(h))


def dedup(graphs: Iterable[Graph]) -> list[Graph]:
    """Keep the first graph of each isomorphism class, preserving order."""
    buckets: dict[tuple, list[tuple[Graph, nx.Graph]]] = {}
    out = []
    for g in graphs:
        key = refinement_invariant(g)
        bucket = buckets.setdefault(key, [])
        gx = _to_nx(g)
        if any(nx.is_isomorphic(gx, hx) for _, hx in bucket):
            continue
        bucket.append((g, gx))
        out.append(g)
    return out


@lru_cache(maxsize=None)
def graphs_of_order(n: int) -> tuple[Graph, ...]:
    """One representative of every isomorphism class of graphs on n vertices."""
    if n == 0:
        return (Graph(0, ()),)
    if n == 1:
        return (Graph(1, (0,)),)
    candidates = []
    for base in graphs_of_order(n - 1):
        degs = [base.degree(v) for v in range(base.n)]
        for d in range(n):
            for nbrs in combinations(range(n - 1), d):
                mask = 0
                for u in nbrs:
                    mask |= 1 << u
                if any(degs[u] + (mask >> u & 1) < d for u in range(n - 1)):
                    continue
                adj = [row | ((mask >> v & 1) << (n - 1)) for v, row in enumerate(base.adj)]
                adj.append(mask)
                candidates.append(Graph(n, tuple(adj)))
    return tuple(dedup(candidates))


def all_graphs(max_order: int, min_order: int = 1) -> list[Graph]:
    return [g for n in range(min_order, max_order + 1) for g in graphs_of_order(n)]


def named_instances() -> list[Graph]:
    named = [path(3), cycle(5), cycle(8)]
    named += [complete(k) for k in range(1, 7)]
    named.append(empty(2).with_label("2K1"))
    return named


def embedded_corpus(max_order: int = 6) -> list[Graph]:
    """All graphs on 1..max_order vertices followed by the named instances."""
    return all_graphs(max_order) + named_instances()


def pairs(corpus: list[Graph], max_total_order: int | None = None) -> list[tuple[Graph, Graph]]:
    """Unordered pairs (including a graph with itself) under a combined-order cap."""
    out = []
    for i, g in enumerate(corpus):
        for h in corpus[i:]:
            if max_total_order is None or g.n + h.n <= max_total_order:
                out.append((g, h))
    return out


def describe(g: Graph) -> str:
    return g.label or emit_graph6(g)
