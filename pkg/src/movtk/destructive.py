"""Margins for winners: cheapest destructive reversal sets per solution concept."""

from __future__ import annotations

from .core import (
    MovResult,
    ReversalSet,
    Tournament,
    Weighting,
    apply_reversals,
    bits,
    dominator_mask,
)
from .optim import BoundedCutProblem, bounded_x_cut
from .search import DEFAULT_BUDGET, cheapest_reversal_set
from .solutions import SolutionId, copeland_scores, is_k_king, is_member

__all__ = [
    "mov_copeland_winner",
    "mov_kkings_winner",
    "mov_banks_winner",
    "exact_mov_winner",
]


def mov_copeland_winner(t: Tournament, w: Weighting, x: int) -> MovResult:
    """Greedy margin of a Copeland winner.

    For each rival ``y``, a cheapest reversal set that lifts ``y`` strictly
    above ``x`` uses only outgoing edges of ``x`` and incoming edges of ``y``;
    each such reversal closes the score gap by one, while reversing the edge
    ``(x, y)`` itself closes it by two.  The overall margin is the minimum
    over rivals and over whether ``(x, y)`` is reversed.
    """
    scores = copeland_scores(t)
    if scores[x] != max(scores):
        raise ValueError(f"alternative {x} is not a Copeland winner")
    best: tuple[float, list[tuple[int, int]]] | None = None
    for y in range(t.n):
        if y == x:
            continue
        gap = scores[x] - scores[y]
        pool = [(x, z) for z in bits(t.rows[x]) if z != y]
        pool += [(z, y) for z in bits(dominator_mask(t, y)) if z != x]
        pool.sort(key=lambda e: (w.weight(*e), e))
        cases = [(gap + 1, [])]
        if t.rows[x] >> y & 1:
            cases.append((gap - 1, [(x, y)]))
        for needed, base in cases:
            needed = max(0, needed)
            if needed > len(pool):
                continue  # this rival cannot be lifted this way
            chosen = base + pool[:needed]
            cost = w.cost(chosen)
            if best is None or cost < best[0]:
                best = (cost, chosen)
    assert best is not None, "a destructive reversal set always exists for n >= 2"
    witness = ReversalSet.of(best[1], w)
    result = MovResult(best[0], witness, "copeland-greedy")
    assert not is_member(apply_reversals(t, witness), SolutionId("copeland"), x)
    return result


def mov_kkings_winner(t: Tournament, w: Weighting, x: int, k: int) -> MovResult:
    """Margin of a k-king via a minimum length-bounded cut rooted at ``x``.

    A cheapest destructive reversal set coincides with a minimum cut that
    leaves some alternative farther than ``k`` steps away; minimality of the
    cut matters, because non-minimal bounded cuts can stop being destructive
    once reversals create new short paths.  ``k = 2`` covers the uncovered
    set and ``k = n - 1`` the top cycle.
    """
    if not is_k_king(t, x, k):
        raise ValueError(f"alternative {x} is not a {k}-king")
    bound = min(k, t.n - 1)
    succ = tuple(tuple(bits(row)) for row in t.rows)
    weights = {(i, j): w.weight(i, j) for (i, j) in t.edges()}
    weight, cut, _sink = bounded_x_cut(BoundedCutProblem(succ, weights, x, bound))
    witness = ReversalSet(cut, weight)
    if bound == 2:
        method = "bounded-cut-closed-form"
    elif bound >= t.n - 1:
        method = "bounded-cut-max-flow"
    else:
        method = "bounded-cut-exact"
    assert not is_k_king(apply_reversals(t, witness), x, k)
    return MovResult(weight, witness, method)


def _condorcet_makeover_cap(t: Tournament, w: Weighting, x: int) -> float:
    """Cost of the cheapest 'make some rival a Condorcet winner' reversal set.

    Valid upper bound on any winner margin for Condorcet-consistent solutions.
    """
    best = None
    for y in range(t.n):
        if y == x:
            continue
        cost = sum(w.weight(z, y) for z in bits(dominator_mask(t, y)))
        if best is None or cost < best:
            best = cost
    assert best is not None
    return best


def exact_mov_winner(
    t: Tournament, w: Weighting, x: int, sol: SolutionId, *, budget: int = DEFAULT_BUDGET
) -> MovResult:
    """Provably optimal winner margin by best-first search over reversal sets.

    Backs the NP-hard regimes (Banks winners, k-kings for 4 <= k <= n - 2)
    and doubles as a cross-check for the specialized algorithms.  In the
    unweighted setting no winner ever needs more than ``n // 2`` reversals,
    which caps the search depth.
    """
    if t.n < 2:
        raise ValueError("margins need at least two alternatives")
    if not is_member(t, sol, x):
        raise ValueError(f"alternative {x} is not a winner under {sol}")
    max_card = t.n // 2 if w.is_unit_for(t) else None
    witness = cheapest_reversal_set(
        t,
        w,
        lambda tt: not is_member(tt, sol, x),
        max_cardinality=max_card,
        cost_cap=_condorcet_makeover_cap(t, w, x),
        budget=budget,
    )
    assert witness is not None, "making a rival Condorcet winner is always destructive"
    return MovResult(witness.cost, witness, "exact-best-first")


def mov_banks_winner(
    t: Tournament, w: Weighting, x: int, *, budget: int = DEFAULT_BUDGET
) -> MovResult:
    """Margin of a Banks winner (exact search; the problem is NP-hard)."""
    return exact_mov_winner(t, w, x, SolutionId("banks"), budget=budget)
