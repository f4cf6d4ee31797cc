"""Simple finite graphs on vertices 0..n-1 stored as adjacency bitmasks."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from psilab.errors import DomainError, GraphFormatError

MAX_GRAPH6_ORDER = 62


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.

    ``adj[v]`` is the bitmask of neighbours of ``v``. The optional label is
    carried for reporting only and does not take part in equality.
    """

    n: int
    adj: tuple[int, ...]
    label: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adj) != self.n:
            raise DomainError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise DomainError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise DomainError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise DomainError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], label: str | None = None) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), label)

    def with_label(self, label: str | None) -> Graph:
        return Graph(self.n, self.adj, label)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def is_complete(self) -> bool:
        return self.num_edges == self.n * (self.n - 1) // 2

    def induced(self, mask: int) -> Graph:
        """Induced subgraph on the vertices in ``mask``, relabelled in order."""
        keep = list(bits(mask & self.full_mask))
        pos = {v: i for i, v in enumerate(keep)}
        adj = []
        for v in keep:
            row = 0
            for u in bits(self.adj[v] & mask):
                row |= 1 << pos[u]
            adj.append(row)
        return Graph(len(keep), tuple(adj))

    def __str__(self) -> str:
        return self.label or emit_graph6(self)


# -- named families -------------------------------------------------------

def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2), label=f"K{n}")


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n, label=f"E{n}")


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)), label=f"P{n}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise DomainError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)), label=f"C{n}")


# -- operations -----------------------------------------------------------

def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union of ``g`` and ``h`` plus every edge between them.

    Vertices of ``g`` keep their indices; vertex ``v`` of ``h`` becomes
    ``g.n + v``.
    """
    shift = g.n
    g_all = g.full_mask
    h_all = h.full_mask << shift
    adj = [row | h_all for row in g.adj]
    adj += [(row << shift) | g_all for row in h.adj]
    label = None
    if g.label and h.label:
        label = f"{g.label}+{h.label}"
    return Graph(g.n + h.n, tuple(adj), label)


def nabla_k(g: Graph, k: int) -> Graph:
    """Join of ``k`` copies of ``g``; copy ``i`` occupies vertices ``i*n .. (i+1)*n - 1``."""
    if k < 1:
        raise DomainError(f"k must be a positive integer, got {k}")
    out = g
    for _ in range(k - 1):
        out = join(out, g)
    label = None if g.label is None else (g.label if k == 1 else f"nabla^{k}({g.label})")
    return out.with_label(label)


def delete_vertices(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Remove the vertices in ``s``.

    Returns the induced subgraph on the remaining vertices together with the
    map from old to new vertex indices.
    """
    removed = 0
    for v in s:
        if not 0 <= v < g.n:
            raise DomainError(f"vertex {v} out of range for n={g.n}")
        removed |= 1 << v
    keep = g.full_mask & ~removed
    relabel = {v: i for i, v in enumerate(bits(keep))}
    return g.induced(keep), relabel


def clique_number(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Exact clique number with a lexicographically early maximum clique.

    Branch and bound, pruning with a greedy colouring bound on the candidate set.
    """
    if g.n == 0:
        return 0, ()
    adj = g.adj
    best: list[int] = []

    def color_bound(cand: int) -> int:
        count = 0
        while cand:
            count += 1
            q = cand
            while q:
                low = q & -q
                cand &= ~low
                q &= ~low & ~adj[low.bit_length() - 1]
        return count

    def expand(current: list[int], cand: int) -> None:
        nonlocal best
        if not cand:
            if len(current) > len(best):
                best = list(current)
            return
        if len(current) + color_bound(cand) <= len(best):
            return
        for v in bits(cand):
            if len(current) + (cand >> v).bit_count() <= len(best):
                return
            current.append(v)
            expand(current, cand & adj[v] & ~((2 << v) - 1))
            current.pop()
            cand &= ~(1 << v)

    expand([], g.full_mask)
    return len(best), tuple(best)


def omega(g: Graph) -> int:
    return clique_number(g)[0]


# -- graph6 ---------------------------------------------------------------

def emit_graph6(g: Graph) -> str:
    """Encode ``g`` in graph6 short form (no canonical relabelling)."""
    if g.n > MAX_GRAPH6_ORDER:
        raise DomainError(f"graph6 short form supports n <= {MAX_GRAPH6_ORDER}, got {g.n}")
    out = [chr(63 + g.n)]
    value = 0
    nbits = 0
    for v in range(1, g.n):
        row = g.adj[v]
        for u in range(v):
            value = (value << 1) | (row >> u & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + value))
                value = nbits = 0
    if nbits:
        out.append(chr(63 + (value << (6 - nbits))))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """Decode a graph6 short-form line.

    A leading ``>>graph6<<`` header is accepted. Errors carry the byte offset
    of the offending character.
    """
    s = text.strip()
    offset = 0
    if s.startswith(">>graph6<<"):
        offset = len(">>graph6<<")
        s = s[offset:]
    if not s:
        raise GraphFormatError("empty graph6 string", offset)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"character {ch!r} outside 63..126", offset + i)
    n = ord(s[0]) - 63
    if n == 63:
        raise GraphFormatError("long-form header (n > 62) is not supported", offset)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(s) - 1 < need:
        raise GraphFormatError(f"truncated bit field: expected {need} data bytes, got {len(s) - 1}",
                               offset + len(s))
    if len(s) - 1 > need:
        raise GraphFormatError(f"trailing data: expected {need} data bytes, got {len(s) - 1}",
                               offset + 1 + need)
    adj = [0] * n
    k = 0
    for v in range(1, n):
        for u in range(v):
            byte = ord(s[1 + k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            k += 1
    if nbits % 6 and (ord(s[-1]) - 63) & ((1 << (6 - nbits % 6)) - 1):
        raise GraphFormatError("nonzero padding bits", offset + len(s) - 1)
    return Graph(n, tuple(adj))


def read_graph6_lines(lines: Iterable[str]) -> list[Graph]:
    """Parse one graph per line, skipping blank lines and ``>>`` format headers."""
    graphs = []
    for raw in lines:
        line = raw.strip()
        if not line or (line.startswith(">>") and line.endswith("<<")):
            continue
        graphs.append(parse_graph6(line))
    return graphs


def vertex_set(g: Graph, members: Sequence[int]) -> tuple[int, ...]:
    """Validate and normalise a vertex set of ``g`` to a sorted tuple."""
    for v in members:
        if not 0 <= v < g.n:
            raise DomainError(f"vertex {v} out of range for n={g.n}")
    return tuple(sorted(set(members)))
