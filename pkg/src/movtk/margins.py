"""Single entry point choosing the right margin algorithm per solution and side."""

from __future__ import annotations

from .constructive import (
    exact_mov_nonwinner,
    mov_copeland_nonwinner,
    mov_kkings_nonwinner_unweighted,
    mov_tc_nonwinner,
    mov_uc_nonwinner_unweighted,
)
from .core import MovResult, Tournament, Weighting
from .destructive import exact_mov_winner, mov_banks_winner, mov_copeland_winner, mov_kkings_winner
from .search import DEFAULT_BUDGET
from .solutions import SolutionId, is_member

__all__ = ["margin", "DEFAULT_BUDGET"]


def margin(
    t: Tournament,
    x: int,
    sol: SolutionId,
    w: Weighting | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
) -> MovResult:
    """Signed margin of victory of ``x`` with a validated witness reversal set.

    Polynomial routes: greedy and flow for Copeland, bounded cuts for the
    uncovered set and the top cycle, condensation shortest path for top-cycle
    non-winners, single reversals for non-k-kings with unit weights, and the
    dominating augmentation for uncovered-set non-winners with unit weights.
    Everything else (Banks, middle k-kings, weighted non-winner variants) runs
    through the exact best-first solvers, which honor ``budget``.
    """
    if t.n < 2:
        raise ValueError("margins need at least two alternatives")
    if w is None:
        w = Weighting.ones(t)
    else:
        w.validate_for(t)
    unit = w.is_unit_for(t)
    if is_member(t, sol, x):
        if sol.kind == "copeland":
            return mov_copeland_winner(t, w, x)
        if sol.kind == "uncovered":
            return mov_kkings_winner(t, w, x, 2)
        if sol.kind == "topcycle":
            return mov_kkings_winner(t, w, x, max(2, t.n - 1))
        if sol.kind == "kkings":
            return mov_kkings_winner(t, w, x, sol.k)
        return mov_banks_winner(t, w, x, budget=budget)
    if sol.kind == "copeland":
        return mov_copeland_nonwinner(t, w, x)
    if sol.kind == "topcycle":
        return mov_tc_nonwinner(t, w, x)
    if sol.kind == "uncovered" or (sol.kind == "kkings" and sol.k == 2):
        if unit:
            return mov_uc_nonwinner_unweighted(t, x)
        return exact_mov_nonwinner(t, w, x, SolutionId("uncovered"), budget=budget)
    if sol.kind == "kkings":
        if unit:
            return mov_kkings_nonwinner_unweighted(t, x, sol.k)
        return exact_mov_nonwinner(t, w, x, sol, budget=budget)
    return exact_mov_nonwinner(t, w, x, sol, budget=budget)
