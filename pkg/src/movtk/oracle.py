"""Brute-force ground truth: margins by exhaustive reversal-set enumeration."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from itertools import combinations

from .core import BudgetExceededError, ReversalSet, Tournament, Weighting, apply_reversals
from .solutions import SolutionId, is_member

DEFAULT_ORACLE_BUDGET = 1 << 24


@dataclass(frozen=True)
class OracleReport:
    """Exact margin plus every minimum-cost witness and their count."""

    mov: float
    witnesses: tuple[ReversalSet, ...]
    count: int


def brute_force_mov(
    t: Tournament,
    x: int,
    sol: SolutionId,
    w: Weighting | None = None,
    *,
    budget: int = DEFAULT_ORACLE_BUDGET,
) -> OracleReport:
    """Margin of ``x`` by enumerating reversal sets in order of increasing cost.

    Unit weights enumerate by cardinality (lexicographic within a level) and
    collect every witness at the first successful level; general weights run
    a best-first expansion and collect every witness at the optimal cost.
    Intended as the independent check for the specialized algorithms; the
    ``budget`` caps examined subsets.
    """
    if t.n < 2:
        raise ValueError("margins need at least two alternatives")
    if w is None:
        w = Weighting.ones(t)
    member = is_member(t, sol, x)

    def flips(tt: Tournament) -> bool:
        return is_member(tt, sol, x) != member

    edges = list(t.edges())
    m = len(edges)
    examined = 0

    if w.is_unit_for(t):
        for size in range(1, m + 1):
            hits: list[ReversalSet] = []
            for combo in combinations(range(m), size):
                examined += 1
                if examined > budget:
                    raise BudgetExceededError(f"oracle exceeded {budget} examined subsets")
                chosen = frozenset(edges[i] for i in combo)
                if flips(apply_reversals(t, chosen)):
                    hits.append(ReversalSet(chosen, size))
            if hits:
                value = size if member else -size
                return OracleReport(value, tuple(hits), len(hits))
        raise AssertionError("some reversal set always flips membership for n >= 2")

    costs = [w.weight(i, j) for (i, j) in edges]
    heap: list[tuple[float, tuple[int, ...]]] = [(0, ())]
    best_cost: float | None = None
    hits = []
    while heap:
        cost, idxs = heapq.heappop(heap)
        if best_cost is not None and cost > best_cost:
            break
        examined += 1
        if examined > budget:
            raise BudgetExceededError(f"oracle exceeded {budget} examined subsets")
        if idxs:
            chosen = frozenset(edges[i] for i in idxs)
            if flips(apply_reversals(t, chosen)):
                best_cost = cost
                hits.append(ReversalSet(chosen, cost))
                continue  # supersets only cost more
        last = idxs[-1] if idxs else -1
        for j in range(last + 1, m):
            nxt = cost + costs[j]
            if best_cost is None or nxt <= best_cost:
                heapq.heappush(heap, (nxt, idxs + (j,)))
    assert best_cost is not None, "some reversal set always flips membership for n >= 2"
    value = best_cost if member else -best_cost
    return OracleReport(value, tuple(hits), len(hits))


def count_min_reversal_sets(
    t: Tournament,
    x: int,
    sol: SolutionId,
    w: Weighting | None = None,
    *,
    budget: int = DEFAULT_ORACLE_BUDGET,
) -> int:
    """Number of distinct minimum-cost reversal sets for ``x``."""
    return brute_force_mov(t, x, sol, w, budget=budget).count


def mov_bound(n: int, sol: SolutionId, winner: bool) -> float:
    """Worst-case unit-weight margin for the given solution and side.

    Winners of every supported solution stay within ``n // 2`` reversals;
    non-winners need at most one reversal for the top cycle and k-kings with
    k >= 3, up to ``n - 2`` for Copeland, and a logarithmic number for the
    uncovered and Banks sets.
    """
    if winner:
        return n // 2
    if sol.kind == "copeland":
        return -(n - 2)
    if sol.kind == "topcycle" or (sol.kind == "kkings" and sol.k >= 3):
        return -1
    if sol.kind in ("uncovered", "banks") or (sol.kind == "kkings" and sol.k == 2):
        return -math.ceil(math.log2(n))
    raise ValueError(f"no margin bound for {sol} on this side")


def relative_mov(t: Tournament, x: int, sol: SolutionId, value: float) -> float:
    """Unit-weight margin normalized by its worst-case bound; lies in (0, 1].

    Lets alternatives be compared across tournaments of different sizes.
    """
    if value == 0:
        raise ValueError("margins are never zero")
    bound = mov_bound(t.n, sol, winner=value > 0)
    if bound == 0:
        raise ValueError(f"the bound for {sol} degenerates at n={t.n}")
    return value / bound
