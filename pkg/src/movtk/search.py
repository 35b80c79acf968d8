"""Best-first search over reversal sets, shared by the exact margin solvers."""

from __future__ import annotations

import heapq
from typing import Callable

from .core import BudgetExceededError, ReversalSet, Tournament, Weighting, apply_reversals

DEFAULT_BUDGET = 1 << 22


def cheapest_reversal_set(
    t: Tournament,
    w: Weighting,
    predicate: Callable[[Tournament], bool],
    *,
    max_cardinality: int | None = None,
    cost_cap: float | None = None,
    budget: int = DEFAULT_BUDGET,
) -> ReversalSet | None:
    """Cheapest edge set whose reversal satisfies ``predicate``.

    States are expanded in nondecreasing total weight (ties: lexicographically
    smallest edge-index tuple first), so the first hit is optimal.  Each edge
    set is generated exactly once by only appending edges after the largest
    index already chosen.  ``None`` means nothing within the caps satisfies
    the predicate; exceeding ``budget`` examined states raises.
    """
    edges = list(t.edges())
    costs = [w.weight(i, j) for (i, j) in edges]
    m = len(edges)
    heap: list[tuple[float, tuple[int, ...]]] = [(0, ())]
    examined = 0
    while heap:
        cost, idxs = heapq.heappop(heap)
        examined += 1
        if examined > budget:
            raise BudgetExceededError(f"exceeded {budget} examined reversal sets")
        if idxs:
            chosen = frozenset(edges[i] for i in idxs)
            if predicate(apply_reversals(t, chosen)):
                return ReversalSet(chosen, cost)
        if max_cardinality is not None and len(idxs) >= max_cardinality:
            continue
        last = idxs[-1] if idxs else -1
        for j in range(last + 1, m):
            nxt = cost + costs[j]
            if cost_cap is not None and nxt > cost_cap:
                continue
            heapq.heappush(heap, (nxt, idxs + (j,)))
    return None
