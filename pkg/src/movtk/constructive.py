"""Margins for non-winners: cheapest constructive reversal sets per solution concept."""

from __future__ import annotations

import math

from .core import (
    MovResult,
    ReversalSet,
    Tournament,
    Weighting,
    apply_reversals,
    bits,
    dominator_mask,
    restrict,
)
from .optim import FlowNetwork, min_cost_bflow, shortest_path
from .search import DEFAULT_BUDGET, cheapest_reversal_set
from .solutions import (
    SolutionId,
    banks_member,
    copeland_scores,
    is_k_king,
    is_member,
    scc_condensation,
    uncovered_set,
)

__all__ = [
    "mov_copeland_nonwinner",
    "mov_uc_nonwinner_unweighted",
    "mov_tc_nonwinner",
    "mov_kkings_nonwinner_unweighted",
    "banks_log_crs",
    "exact_mov_nonwinner",
]


def _outdegree_flow(t: Tournament, w: Weighting, x: int, c: int) -> tuple[float, list[tuple[int, int]]] | None:
    """Cheapest reversal set giving ``x`` outdegree exactly ``c`` and everyone else at most ``c``.

    One unit of flow per tournament edge picks its winner: routing the unit to
    the edge's tail keeps the orientation for free, routing it to the head
    pays the reversal cost.  ``x`` absorbs exactly ``c`` units while all other
    alternatives forward at most ``c`` to the sink, so a feasible integral
    flow is exactly an orientation in which ``x`` tops the Copeland scores.
    """
    n = t.n
    total = n * (n - 1) // 2
    net = FlowNetwork()
    net.balances["s"] = -total
    net.balances[("v", x)] = c
    net.balances["t"] = total - c
    for (u, v) in t.edges():
        e = ("e", u, v)
        net.add_arc("s", e, 1, 0)
        net.add_arc(e, ("v", u), 1, 0)
        net.add_arc(e, ("v", v), 1, w.weight(u, v))
    for v in range(n):
        if v != x:
            net.add_arc(("v", v), "t", c, 0)
    solved = min_cost_bflow(net)
    if solved is None:
        return None
    flows, cost = solved
    reversed_edges = [
        (u, v)
        for flow, (tail, head, _, _) in zip(flows, net.arcs)
        if flow and tail[0] == "e" and head == ("v", tail[2])
        for (u, v) in [(tail[1], tail[2])]
    ]
    return cost, reversed_edges


def mov_copeland_nonwinner(t: Tournament, w: Weighting, x: int) -> MovResult:
    """Margin of a Copeland non-winner via a minimum-cost flow per target score.

    Tries every achievable winning outdegree ``c`` from ``ceil((n-1)/2)`` up
    to ``n - 1`` (an outdegree can never reach ``n``) and keeps the cheapest
    feasible reversal set.
    """
    scores = copeland_scores(t)
    if scores[x] == max(scores):
        raise ValueError(f"alternative {x} is already a Copeland winner")
    n = t.n
    best: tuple[float, list[tuple[int, int]]] | None = None
    for c in range((n - 1 + 1) // 2, n):
        solved = _outdegree_flow(t, w, x, c)
        if solved is not None and (best is None or solved[0] < best[0]):
            best = solved
    assert best is not None, "c = n - 1 (make x a Condorcet winner) is always feasible"
    witness = ReversalSet.of(best[1], w)
    assert is_member(apply_reversals(t, witness), SolutionId("copeland"), x)
    return MovResult(-best[0], witness, "copeland-bflow")


def mov_uc_nonwinner_unweighted(t: Tournament, x: int) -> MovResult:
    """Margin of an uncovered-set non-winner, unit weights.

    Some minimum constructive reversal set only flips edges pointing at ``x``,
    so it suffices to find the fewest dominators of ``x`` whose addition to
    its dominion dominates the rest of the tournament.  Subset sizes up to
    ``ceil(log2 n)`` always contain a solution.
    """
    if is_k_king(t, x, 2):
        raise ValueError(f"alternative {x} is already in the uncovered set")
    n = t.n
    others = t.full_mask & ~(1 << x)
    dom_x = t.rows[x]
    cands = sorted(bits(dominator_mask(t, x)))
    reach = {y: t.rows[y] & ~(1 << x) for y in range(n)}
    for size in range(1, math.ceil(math.log2(n)) + 1):
        for combo in _colex_combinations(len(cands), size):
            ys = [cands[i] for i in combo]
            dominated = dom_x
            for y in ys:
                dominated |= 1 << y
            probe = dominated
            for v in bits(dominated):
                probe |= reach[v]
            if probe & others == others:
                witness = ReversalSet(frozenset((y, x) for y in ys), size)
                assert is_k_king(apply_reversals(t, witness), x, 2)
                return MovResult(-size, witness, "uc-dominating-augmentation")
    raise AssertionError("a dominating augmentation of logarithmic size always exists")


def _colex_combinations(m: int, size: int):
    """Index combinations of ``range(m)`` in colexicographic order."""
    if size == 0:
        yield ()
        return
    for top in range(size - 1, m):
        for rest in _colex_combinations(top, size - 1):
            yield rest + (top,)


def mov_tc_nonwinner(t: Tournament, w: Weighting, x: int) -> MovResult:
    """Margin of a top-cycle non-winner via a shortest path over components.

    Between strongly connected components all edges point the same way, so
    one reversal per hop lets ``x``'s component climb towards the top; the
    cheapest climb is a shortest path in a small auxiliary digraph whose arc
    costs are the cheapest reversible edges between component groups.
    """
    cond = scc_condensation(t)
    r = cond.component_of[x]
    if r == 0:
        raise ValueError(f"alternative {x} is already in the top cycle")
    comps = cond.components
    tail_mask = 0  # everything from x's component downwards
    for comp in comps[r:]:
        for v in comp:
            tail_mask |= 1 << v
    costs: dict[tuple[int, int], float] = {}
    realizer: dict[tuple[int, int], tuple[int, int]] = {}
    for i in range(r):
        for j in range(i + 1, r + 1):
            # Sources in component j (or the whole tail when j = r) gain an
            # edge into component i by reversing the cheapest i -> j edge.
            targets = tail_mask if j == r else sum(1 << v for v in comps[j])
            best_edge = None
            for a in comps[i]:
                for b in bits(t.rows[a] & targets):
                    if best_edge is None or w.weight(a, b) < costs[(j, i)]:
                        costs[(j, i)] = w.weight(a, b)
                        best_edge = (a, b)
                        realizer[(j, i)] = best_edge
            assert best_edge is not None  # earlier components beat later ones
    found = shortest_path(costs, r, 0)
    assert found is not None, "the direct arc to the top component always exists"
    dist, path = found
    edges = [realizer[(u, v)] for u, v in zip(path, path[1:])]
    witness = ReversalSet.of(edges, w)
    assert is_member(apply_reversals(t, witness), SolutionId("topcycle"), x)
    return MovResult(-dist, witness, "tc-condensation-dijkstra")


def mov_kkings_nonwinner_unweighted(t: Tournament, x: int, k: int) -> MovResult:
    """Margin of a non-k-king for k >= 3, unit weights: always one reversal.

    Beating any uncovered alternative of the tournament without ``x`` lets
    ``x`` reach everyone in at most three steps.
    """
    if k < 3:
        raise ValueError("single-reversal route needs k >= 3; use the uncovered-set routine for k = 2")
    if is_k_king(t, x, k):
        raise ValueError(f"alternative {x} is already a {k}-king")
    sub, kept = restrict(t, [v for v in range(t.n) if v != x])
    y = kept[min(uncovered_set(sub))]
    assert t.rows[y] >> x & 1, "non-k-kings are beaten by the reduced uncovered set"
    witness = ReversalSet(frozenset([(y, x)]), 1)
    assert is_k_king(apply_reversals(t, witness), x, k)
    return MovResult(-1, witness, "kkings-single-reversal")


def banks_log_crs(t: Tournament, x: int) -> ReversalSet:
    """A constructive reversal set for Banks of at most ``ceil(log2 n)`` edges.

    Grows a transitive chain below ``x``: repeatedly reverse the edge from a
    Copeland winner of the remaining common dominators, which at least halves
    that set.  The result is valid but not necessarily minimum.
    """
    crs, _ = _banks_log_crs_trace(t, x)
    return crs


def _banks_log_crs_trace(t: Tournament, x: int) -> tuple[ReversalSet, list[int]]:
    """Also reports the common-dominator set sizes after each reversal."""
    if banks_member(t, x):
        return ReversalSet.empty(), []
    b = dominator_mask(t, x)
    chosen: list[tuple[int, int]] = []
    sizes: list[int] = []
    while b:
        members = list(bits(b))
        best_y = max(members, key=lambda y: ((t.rows[y] & b).bit_count(), -y))
        chosen.append((best_y, x))
        b &= dominator_mask(t, best_y)
        sizes.append(b.bit_count())
    witness = ReversalSet(frozenset(chosen), len(chosen))
    assert len(chosen) <= math.ceil(math.log2(t.n))
    assert banks_member(apply_reversals(t, witness), x)
    return witness, sizes


def exact_mov_nonwinner(
    t: Tournament, w: Weighting, x: int, sol: SolutionId, *, budget: int = DEFAULT_BUDGET
) -> MovResult:
    """Provably optimal non-winner margin by best-first search over reversal sets.

    Backs the NP-hard regimes (Banks, weighted uncovered set and k-kings) and
    cross-checks the specialized algorithms.  Reversing every incoming edge
    of ``x`` makes it a Condorcet winner, which caps the search cost; for the
    uncovered and Banks sets with unit weights the known logarithmic bound
    caps the cardinality as well, with the iterative Banks construction
    tightening the cost cap further.
    """
    if t.n < 2:
        raise ValueError("margins need at least two alternatives")
    if is_member(t, sol, x):
        raise ValueError(f"alternative {x} is already a winner under {sol}")
    cap = sum(w.weight(y, x) for y in bits(dominator_mask(t, x)))
    max_card = None
    if w.is_unit_for(t):
        if sol.kind in ("uncovered", "banks") or (sol.kind == "kkings" and sol.k == 2):
            max_card = math.ceil(math.log2(t.n))
    if sol.kind == "banks":
        cap = min(cap, banks_log_crs(t, x).cost)
    witness = cheapest_reversal_set(
        t,
        w,
        lambda tt: is_member(tt, sol, x),
        max_cardinality=max_card,
        cost_cap=cap,
        budget=budget,
    )
    assert witness is not None, "becoming a Condorcet winner is always constructive"
    return MovResult(-witness.cost, witness, "exact-best-first")
