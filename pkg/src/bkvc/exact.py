"""Brute-force optimum oracle for desk-scale instances."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .bigraph import MIXED, BipartiteGraph, VertexSet

__all__ = ["ExactResult", "InstanceTooLarge", "brute_force_opt"]

DEFAULT_GUARD = 24  # refuse n1+n2 above this unless overridden


class InstanceTooLarge(ValueError):
    """Raised when an instance exceeds the enumeration guard."""


@dataclass(frozen=True)
class ExactResult:
    """Optimal value plus the canonical (lexicographically smallest) optimal set.

    k1 and k2 are the sizes of the optimum's intersections with V1 and V2.
    """

    opt_value: int
    opt_set: VertexSet
    k1: int
    k2: int


def brute_force_opt(graph: BipartiteGraph, k: int, max_vertices: int = DEFAULT_GUARD) -> ExactResult:
    """Maximize covered edges over all k-subsets of V1 union V2.

    Subsets are enumerated in lexicographic order over global indices
    (V1 first), and only strict improvements are kept, so the reported
    optimum is the lexicographically smallest maximizer.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    n = graph.n1 + graph.n2
    if n > max_vertices:
        raise InstanceTooLarge(
            f"n1+n2={n} exceeds guard {max_vertices}; pass a larger max_vertices to override"
        )
    k = min(k, n)
    masks = list(graph.inc1) + list(graph.inc2)
    best_val = -1
    best_subset: tuple[int, ...] = ()
    for subset in combinations(range(n), k):
        cov = 0
        for g in subset:
            cov |= masks[g]
        val = cov.bit_count()
        if val > best_val:
            best_val = val
            best_subset = subset
            if val == graph.m:
                break  # saturating subset found first in lex order is canonical
    chosen = VertexSet(MIXED, best_subset)
    k1 = sum(1 for g in best_subset if g < graph.n1)
    return ExactResult(best_val, chosen, k1, len(best_subset) - k1)
