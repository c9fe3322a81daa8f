"""Bipartite graph substrate: representation, coverage queries, generators, file I/O.

Vertices of each color class are indexed 0..n-1.  Edge sets are manipulated
as integer bitmasks over the canonical (lexicographically sorted) edge list,
which makes coverage counting a popcount.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MIXED = 0  # VertexSet.side value for sets drawing from both classes

__all__ = [
    "MIXED",
    "BipartiteGraph",
    "VertexSet",
    "GraphParseError",
    "covered_edges",
    "best_k",
    "generate",
    "generate_random",
    "generate_semiregular",
    "parse",
    "serialize",
]


class GraphParseError(ValueError):
    """Raised on malformed graph files; the message names the offending line."""


@dataclass(frozen=True)
class VertexSet:
    """A set of vertices of one color class, or a mixed set.

    side 1 or 2: members are indices into that class.
    side MIXED (0): members are global indices, V1 first (0..n1-1),
    then V2 shifted by n1.
    """

    side: int
    members: tuple[int, ...]

    def __post_init__(self):
        if self.side not in (MIXED, 1, 2):
            raise ValueError(f"bad side {self.side!r}")
        ms = self.members
        if any(ms[i] >= ms[i + 1] for i in range(len(ms) - 1)):
            raise ValueError("members must be strictly increasing")
        if ms and ms[0] < 0:
            raise ValueError("negative vertex index")

    def __len__(self):
        return len(self.members)

    @classmethod
    def on_side(cls, side: int, members) -> "VertexSet":
        return cls(side, tuple(sorted(members)))

    @classmethod
    def mixed(cls, graph: "BipartiteGraph", v1=(), v2=()) -> "VertexSet":
        globals_ = sorted(list(v1) + [graph.n1 + v for v in v2])
        return cls(MIXED, tuple(globals_))

    def split(self, graph: "BipartiteGraph") -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Per-class index tuples (v1_members, v2_members)."""
        if self.side == 1:
            return self.members, ()
        if self.side == 2:
            return (), self.members
        v1 = tuple(m for m in self.members if m < graph.n1)
        v2 = tuple(m - graph.n1 for m in self.members if m >= graph.n1)
        return v1, v2


class BipartiteGraph:
    """Immutable bipartite graph with per-vertex incidence bitmasks.

    Edges are (u, v) pairs, u in V1, v in V2, deduplicated is an error.
    The edge list is stored sorted; bit i of a mask refers to edges[i].
    """

    __slots__ = ("n1", "n2", "edges", "m", "inc1", "inc2", "deg1", "deg2")

    def __init__(self, n1: int, n2: int, edges):
        if n1 < 0 or n2 < 0:
            raise ValueError("class sizes must be nonnegative")
        edges = sorted(edges)
        for u, v in edges:
            if not (0 <= u < n1 and 0 <= v < n2):
                raise ValueError(f"edge ({u},{v}) out of range for {n1}x{n2}")
        for i in range(len(edges) - 1):
            if edges[i] == edges[i + 1]:
                raise ValueError(f"duplicate edge {edges[i]}")
        self.n1 = n1
        self.n2 = n2
        self.edges = tuple(edges)
        self.m = len(edges)
        inc1 = [0] * n1
        inc2 = [0] * n2
        for i, (u, v) in enumerate(edges):
            inc1[u] |= 1 << i
            inc2[v] |= 1 << i
        self.inc1 = tuple(inc1)
        self.inc2 = tuple(inc2)
        self.deg1 = tuple(x.bit_count() for x in inc1)
        self.deg2 = tuple(x.bit_count() for x in inc2)

    def __eq__(self, other):
        return (
            isinstance(other, BipartiteGraph)
            and (self.n1, self.n2, self.edges) == (other.n1, other.n2, other.edges)
        )

    def __hash__(self):
        return hash((self.n1, self.n2, self.edges))

    def __repr__(self):
        return f"BipartiteGraph(n1={self.n1}, n2={self.n2}, m={self.m})"

    def incidence(self, side: int, v: int) -> int:
        return self.inc1[v] if side == 1 else self.inc2[v]

    def degree(self, side: int, v: int) -> int:
        return self.deg1[v] if side == 1 else self.deg2[v]

    def side_size(self, side: int) -> int:
        return self.n1 if side == 1 else self.n2

    def mirror(self) -> "BipartiteGraph":
        """The same graph with the two color classes exchanged."""
        return BipartiteGraph(self.n2, self.n1, [(v, u) for u, v in self.edges])

    def edge_mask(self, vset: VertexSet) -> int:
        """Bitmask of edges with at least one endpoint in `vset`."""
        mask = 0
        if vset.side == 1:
            for u in vset.members:
                mask |= self.inc1[u]
        elif vset.side == 2:
            for v in vset.members:
                mask |= self.inc2[v]
        else:
            for g in vset.members:
                if g < self.n1:
                    mask |= self.inc1[g]
                else:
                    if g - self.n1 >= self.n2:
                        raise ValueError(f"global index {g} out of range")
                    mask |= self.inc2[g - self.n1]
        return mask

    def cut_size(self, set1: VertexSet, set2: VertexSet) -> int:
        """Number of edges with one endpoint in each of two single-side sets."""
        if set1.side != 1 or set2.side != 2:
            raise ValueError("cut_size expects a side-1 and a side-2 set")
        return (self.edge_mask(set1) & self.edge_mask(set2)).bit_count()


def covered_edges(graph: BipartiteGraph, vset: VertexSet) -> int:
    """Count edges covered by `vset`; each edge counts once."""
    if vset.side in (1, 2):
        n = graph.side_size(vset.side)
        if vset.members and vset.members[-1] >= n:
            raise ValueError(f"vertex {vset.members[-1]} out of range for side {vset.side}")
    return graph.edge_mask(vset).bit_count()


def best_k(
    graph: BipartiteGraph,
    side: int,
    k: int,
    forbidden: VertexSet | None = None,
    precovered: int = 0,
) -> VertexSet:
    """The k vertices of one class covering the most edges outside `precovered`.

    `precovered` is an edge bitmask (see BipartiteGraph.edge_mask).  Ties break
    toward the smaller index.  k is clamped to the number of available
    vertices, so the result may be smaller than requested.
    """
    if side not in (1, 2):
        raise ValueError("side must be 1 or 2")
    banned = set(forbidden.members) if forbidden is not None else ()
    if forbidden is not None and forbidden.side != side:
        raise ValueError("forbidden set must live on the same side")
    n = graph.side_size(side)
    avail = [v for v in range(n) if v not in banned]
    k = max(0, min(k, len(avail)))
    avail.sort(key=lambda v: (-(graph.incidence(side, v) & ~precovered).bit_count(), v))
    return VertexSet.on_side(side, avail[:k])


def generate_random(n1: int, n2: int, p: float, seed: int) -> BipartiteGraph:
    """Each of the n1*n2 possible edges is present independently with probability p."""
    if n1 <= 0 or n2 <= 0:
        raise ValueError("class sizes must be positive")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0, 1]")
    rng = np.random.default_rng(seed)
    draws = rng.random((n1, n2))
    edges = [(u, v) for u in range(n1) for v in range(n2) if draws[u, v] < p]
    return BipartiteGraph(n1, n2, edges)


def generate_semiregular(n1: int, n2: int, d1: int, d2: int, seed: int) -> BipartiteGraph:
    """A graph where every V1 vertex has degree d1 and every V2 vertex degree d2.

    Needs n1*d1 == n2*d2 and d1 <= n2, d2 <= n1.  Built from a circulant
    pattern with a seeded relabeling of V2, so distinct seeds give distinct
    but isomorphic graphs.
    """
    if min(n1, n2, d1, d2) <= 0:
        raise ValueError("parameters must be positive")
    if n1 * d1 != n2 * d2:
        raise ValueError(f"infeasible degrees: n1*d1={n1 * d1} != n2*d2={n2 * d2}")
    if d1 > n2 or d2 > n1:
        raise ValueError("degree exceeds opposite class size")
    rng = np.random.default_rng(seed)
    relabel = rng.permutation(n2)
    edges = [
        (u, int(relabel[(u * d1 + j) % n2]))
        for u in range(n1)
        for j in range(d1)
    ]
    return BipartiteGraph(n1, n2, edges)


def generate(kind: str, **params) -> BipartiteGraph:
    """Dispatch on kind: 'random'(n1,n2,p,seed) or 'semiregular'(n1,n2,d1,d2,seed)."""
    if kind == "random":
        return generate_random(**params)
    if kind == "semiregular":
        return generate_semiregular(**params)
    raise ValueError(f"unknown generator kind {kind!r}")


def parse(text: str) -> BipartiteGraph:
    """Parse the line-oriented graph format.

    Header `p bkvc <n1> <n2> <m>`, then m lines `e <u> <v>` (0-based);
    `c ...` lines are comments.  Errors name the offending line.
    """
    n1 = n2 = m = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n1 is not None:
                raise GraphParseError(f"line {lineno}: duplicate header")
            if len(parts) != 5 or parts[1] != "bkvc":
                raise GraphParseError(f"line {lineno}: malformed header {line!r}")
            try:
                n1, n2, m = int(parts[2]), int(parts[3]), int(parts[4])
            except ValueError:
                raise GraphParseError(f"line {lineno}: malformed header {line!r}") from None
            if n1 < 0 or n2 < 0 or m < 0:
                raise GraphParseError(f"line {lineno}: negative size in header")
        elif parts[0] == "e":
            if n1 is None:
                raise GraphParseError(f"line {lineno}: edge before header")
            if len(parts) != 3:
                raise GraphParseError(f"line {lineno}: malformed edge {line!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphParseError(f"line {lineno}: malformed edge {line!r}") from None
            if not (0 <= u < n1 and 0 <= v < n2):
                raise GraphParseError(f"line {lineno}: endpoint ({u},{v}) out of range")
            if (u, v) in seen:
                raise GraphParseError(f"line {lineno}: duplicate edge ({u},{v})")
            seen.add((u, v))
            edges.append((u, v))
        else:
            raise GraphParseError(f"line {lineno}: unknown record {parts[0]!r}")
    if n1 is None:
        raise GraphParseError("line 1: missing header")
    if len(edges) != m:
        raise GraphParseError(f"header declares {m} edges, found {len(edges)}")
    return BipartiteGraph(n1, n2, edges)


def serialize(graph: BipartiteGraph) -> str:
    """Canonical text form: header plus lexicographically sorted edge lines."""
    lines = [f"p bkvc {graph.n1} {graph.n2} {graph.m}"]
    lines.extend(f"e {u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"
