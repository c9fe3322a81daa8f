"""Approximation algorithms producing concrete covers on bipartite graphs.

All completions pick "best" vertices by residual degree: the number of
incident edges not yet covered.  Within one color class a batch of picks is
exactly optimal (no two same-side vertices share an edge), so every
completion here dominates the specific candidate sets used by the analytic
lower bounds.  Ties always break toward the smaller index, V1 before V2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bigraph import BipartiteGraph, VertexSet, best_k, covered_edges

__all__ = [
    "CoverSolution",
    "PartitionLayout",
    "make_layout",
    "greedy",
    "two_thirds",
    "nu_xi_zero",
    "build_solution",
    "kvc_algorithm",
    "vertical_separation",
]


@dataclass(frozen=True)
class CoverSolution:
    """A chosen vertex set of size <= k with its covered-edge count."""

    chosen: VertexSet
    value: int
    algorithm: str
    guess: tuple[int, int, int, int] | None = None
    sol_index: int | None = None


@dataclass(frozen=True)
class PartitionLayout:
    """The S/X sets for one guess (k1, k2, k1', k2') on a concrete graph.

    O1/O2 are oracle-provided and test-only; algorithm mode leaves them None.
    `swapped` records that the color classes were exchanged to obtain k1 <= k2.
    """

    k1: int
    k2: int
    k1p: int
    k2p: int
    S1: VertexSet
    S2: VertexSet
    X1: VertexSet
    X2: VertexSet
    O1: VertexSet | None = None
    O2: VertexSet | None = None
    swapped: bool = False


def make_layout(
    graph: BipartiteGraph,
    k1: int,
    k2: int,
    k1p: int,
    k2p: int,
    oracle: tuple[VertexSet, VertexSet] | None = None,
    swapped: bool = False,
) -> PartitionLayout:
    """S_i = top k_i by raw degree; X_i = next k_i - k_i' best outside S_i."""
    if not (0 <= k1p <= k1 and 0 <= k2p <= k2):
        raise ValueError("intersection guesses must satisfy 0 <= k_i' <= k_i")
    s1 = best_k(graph, 1, k1)
    s2 = best_k(graph, 2, k2)
    x1 = best_k(graph, 1, k1 - k1p, forbidden=s1)
    x2 = best_k(graph, 2, k2 - k2p, forbidden=s2)
    o1, o2 = oracle if oracle is not None else (None, None)
    return PartitionLayout(k1, k2, k1p, k2p, s1, s2, x1, x2, o1, o2, swapped)


def _top_residual(graph, side, candidates, budget, covered):
    """The `budget` candidates covering the most uncovered edges, by index on ties."""
    if budget <= 0:
        return []
    ranked = sorted(
        candidates,
        key=lambda v: (-(graph.incidence(side, v) & ~covered).bit_count(), v),
    )
    return ranked[:budget]


def _complete(graph, v1, v2, covered, budget, side):
    """Spend `budget` on the best unchosen vertices of `side`, spilling over.

    Mutates nothing: returns (v1, v2, covered) with the picks added.  The
    spill to the opposite class only triggers once `side` is exhausted, at
    which point every edge incident to that class is covered.
    """
    v1, v2 = set(v1), set(v2)
    for s in (side, 3 - side):
        chosen = v1 if s == 1 else v2
        pool = [v for v in range(graph.side_size(s)) if v not in chosen]
        picks = _top_residual(graph, s, pool, budget, covered)
        for v in picks:
            chosen.add(v)
            covered |= graph.incidence(s, v)
        budget -= len(picks)
        if budget <= 0:
            break
    return v1, v2, covered


def _mixed_greedy(graph, v1, v2, covered, budget):
    """One-at-a-time greedy over both classes; V1 wins ties, then lower index."""
    v1, v2 = set(v1), set(v2)
    for _ in range(budget):
        best = None
        for s in (1, 2):
            chosen = v1 if s == 1 else v2
            for v in range(graph.side_size(s)):
                if v in chosen:
                    continue
                gain = (graph.incidence(s, v) & ~covered).bit_count()
                if best is None or gain > best[0]:
                    best = (gain, s, v)
        if best is None:
            break
        _, s, v = best
        (v1 if s == 1 else v2).add(v)
        covered |= graph.incidence(s, v)
    return v1, v2, covered


def _solution(graph, v1, v2, covered, algorithm, guess=None, sol_index=None):
    return CoverSolution(
        chosen=VertexSet.mixed(graph, v1, v2),
        value=covered.bit_count(),
        algorithm=algorithm,
        guess=guess,
        sol_index=sol_index,
    )


def greedy(graph: BipartiteGraph, k: int) -> CoverSolution:
    """Repeatedly take the vertex covering the most uncovered edges, k times."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    v1, v2, covered = _mixed_greedy(graph, (), (), 0, min(k, graph.n1 + graph.n2))
    return _solution(graph, v1, v2, covered, "greedy")


def two_thirds(graph: BipartiteGraph, k: int) -> CoverSolution:
    """Best of three covers per split k1+k2=k: S1+best, S2+best, S1 u S2."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    best: CoverSolution | None = None
    for k1 in range(k + 1):
        k2 = k - k1
        s1 = best_k(graph, 1, k1)
        s2 = best_k(graph, 2, k2)
        cands = []
        cov1 = graph.edge_mask(s1)
        a, b, cov = _complete(graph, s1.members, (), cov1, k - len(s1), side=2)
        cands.append((a, b, cov, 1))
        cov2 = graph.edge_mask(s2)
        a, b, cov = _complete(graph, (), s2.members, cov2, k - len(s2), side=1)
        cands.append((a, b, cov, 2))
        cands.append((set(s1.members), set(s2.members), cov1 | graph.edge_mask(s2), 3))
        for a, b, cov, idx in cands:
            val = cov.bit_count()
            if best is None or val > best.value:
                best = _solution(graph, a, b, cov, "two-thirds",
                                 guess=(k1, k2, 0, 0), sol_index=idx)
    assert best is not None
    return best


def nu_xi_zero(graph: BipartiteGraph, k: int) -> CoverSolution:
    """Sweep i=0..k over top-i-one-class-first pairs, both orders, keep the best."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    best: CoverSolution | None = None
    for i in range(k + 1):
        a_i = best_k(graph, 1, i)
        a_rest = best_k(graph, 2, k - i, precovered=graph.edge_mask(a_i))
        cov = graph.edge_mask(a_i) | graph.edge_mask(a_rest)
        if best is None or cov.bit_count() > best.value:
            best = _solution(graph, a_i.members, a_rest.members, cov,
                             "nu-xi-zero", guess=(i, k - i, 0, 0), sol_index=1)
        b_rest = best_k(graph, 2, k - i)
        b_i = best_k(graph, 1, i, precovered=graph.edge_mask(b_rest))
        cov = graph.edge_mask(b_i) | graph.edge_mask(b_rest)
        if cov.bit_count() > best.value:
            best = _solution(graph, b_i.members, b_rest.members, cov,
                             "nu-xi-zero", guess=(i, k - i, 0, 0), sol_index=2)
    assert best is not None
    return best


def _ceil_take(frac: float, size: int) -> int:
    return min(size, math.ceil(frac * size)) if size > 0 else 0


def vertical_separation(
    graph: BipartiteGraph, layout: PartitionLayout, side: int, frac: float
) -> VertexSet:
    """The ceil(frac*|S|) + ceil(frac*|X|) highest-degree vertices of S_i and X_i."""
    if frac <= 0:
        raise ValueError("separation fraction must be positive")
    if side == 1:
        s_set, x_set = layout.S1, layout.X1
    elif side == 2:
        s_set, x_set = layout.S2, layout.X2
    else:
        raise ValueError("side must be 1 or 2")
    picks = []
    for part in (s_set, x_set):
        t = _ceil_take(frac, len(part))
        ranked = sorted(part.members, key=lambda v: (-graph.degree(side, v), v))
        picks.extend(ranked[:t])
    return VertexSet.on_side(side, picks)


def build_solution(
    graph: BipartiteGraph,
    layout: PartitionLayout,
    which: int,
    pi: float = 1e-5,
    lam: float = 1e-5,
) -> CoverSolution:
    """Construct one of the six candidate covers for the layout's guess.

    1: S1 plus the best remaining-budget vertices of V2.
    2: S2 plus the best remaining-budget vertices of V1.
    3: S1 u X1, completed from V2.
    4: S2, completed inside V2, or by X2 and then V2, V1, or anything.
    5: a pi-fraction of the best of S1 and X1, completed from V2.
    6: a lambda-fraction of the best of S2 and X2, completed from V1.
    """
    k = layout.k1 + layout.k2
    guess = (layout.k1, layout.k2, layout.k1p, layout.k2p)

    def done(v1, v2, cov):
        sol = _solution(graph, v1, v2, cov, "kvc", guess=guess, sol_index=which)
        assert len(sol.chosen) <= k
        return sol

    if which == 1:
        cov = graph.edge_mask(layout.S1)
        v1, v2, cov = _complete(graph, layout.S1.members, (), cov, k - len(layout.S1), side=2)
        return done(v1, v2, cov)
    if which == 2:
        cov = graph.edge_mask(layout.S2)
        v1, v2, cov = _complete(graph, (), layout.S2.members, cov, k - len(layout.S2), side=1)
        return done(v1, v2, cov)
    if which == 3:
        base1 = set(layout.S1.members) | set(layout.X1.members)
        cov = graph.edge_mask(layout.S1) | graph.edge_mask(layout.X1)
        v1, v2, cov = _complete(graph, base1, (), cov, k - len(base1), side=2)
        return done(v1, v2, cov)
    if which == 4:
        s2 = set(layout.S2.members)
        cov0 = graph.edge_mask(layout.S2)
        budget0 = k - len(s2)
        variants = []
        variants.append(_complete(graph, (), s2, cov0, budget0, side=2))
        x2_trim = _top_residual(graph, 2, layout.X2.members, budget0, cov0)
        with_x2 = s2 | set(x2_trim)
        cov_x2 = cov0
        for v in x2_trim:
            cov_x2 |= graph.inc2[v]
        budget = k - len(with_x2)
        variants.append(_complete(graph, (), with_x2, cov_x2, budget, side=2))
        variants.append(_complete(graph, (), with_x2, cov_x2, budget, side=1))
        variants.append(_mixed_greedy(graph, (), with_x2, cov_x2, budget))
        v1, v2, cov = max(variants, key=lambda t: t[2].bit_count())
        return done(v1, v2, cov)
    if which == 5:
        sep = vertical_separation(graph, layout, 1, pi)
        cov = graph.edge_mask(sep)
        v1, v2, cov = _complete(graph, sep.members, (), cov, k - len(sep), side=2)
        return done(v1, v2, cov)
    if which == 6:
        sep = vertical_separation(graph, layout, 2, lam)
        cov = graph.edge_mask(sep)
        v1, v2, cov = _complete(graph, (), sep.members, cov, k - len(sep), side=1)
        return done(v1, v2, cov)
    raise ValueError(f"solution index must be 1..6, got {which}")


def _smaller_class(graph: BipartiteGraph) -> CoverSolution:
    if graph.n1 <= graph.n2:
        v1, v2 = set(range(graph.n1)), set()
    else:
        v1, v2 = set(), set(range(graph.n2))
    cov = (1 << graph.m) - 1
    return _solution(graph, v1, v2, cov, "kvc", sol_index=None)


def _unmirror(graph: BipartiteGraph, mirrored: BipartiteGraph, sol: CoverSolution) -> CoverSolution:
    mv1, mv2 = sol.chosen.split(mirrored)
    return CoverSolution(
        chosen=VertexSet.mixed(graph, v1=mv2, v2=mv1),
        value=sol.value,
        algorithm=sol.algorithm,
        guess=sol.guess,
        sol_index=sol.sol_index,
    )


def kvc_algorithm(
    graph: BipartiteGraph, k: int, pi: float = 1e-5, lam: float = 1e-5
) -> CoverSolution:
    """Enumerate guesses (k1, k2, k1', k2'), build the six covers each, keep the best.

    Splits with more budget on V1 than V2 run against the mirrored graph, so
    the builders can always assume k1 <= k2.  When k saturates the smaller
    class, that class is also proposed outright (it covers every edge).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    best: CoverSolution | None = None
    if k >= min(graph.n1, graph.n2):
        best = _smaller_class(graph)
    for a in range(k + 1):
        b = k - a
        if a <= b:
            g, k1, k2, mirrored = graph, a, b, False
        else:
            g, k1, k2, mirrored = graph.mirror(), b, a, True
        if k1 > g.n1 or k2 > g.n2:
            continue
        sols_12 = [build_solution(g, make_layout(g, k1, k2, 0, 0), w, pi, lam)
                   for w in (1, 2)]
        sols_3 = {}
        sols_5 = {}
        for k1p in range(k1 + 1):
            lay = make_layout(g, k1, k2, k1p, 0)
            sols_3[k1p] = build_solution(g, lay, 3, pi, lam)
            sols_5[k1p] = build_solution(g, lay, 5, pi, lam)
        sols_4 = {}
        sols_6 = {}
        for k2p in range(k2 + 1):
            lay = make_layout(g, k1, k2, 0, k2p)
            sols_4[k2p] = build_solution(g, lay, 4, pi, lam)
            sols_6[k2p] = build_solution(g, lay, 6, pi, lam)
        for k1p in range(k1 + 1):
            for k2p in range(k2 + 1):
                guess = (k1, k2, k1p, k2p)
                for sol in (*sols_12, sols_3[k1p], sols_4[k2p], sols_5[k1p], sols_6[k2p]):
                    if best is None or sol.value > best.value:
                        resolved = CoverSolution(sol.chosen, sol.value, "kvc",
                                                 guess=guess, sol_index=sol.sol_index)
                        best = _unmirror(graph, g, resolved) if mirrored else resolved
    assert best is not None
    return best
