"""Optimization kernels: min-cost b-flow, max-flow/min-cut, bounded cuts, Dijkstra."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

INF = float("inf")


@dataclass
class FlowNetwork:
    """Node balances plus capacitated, costed arcs.

    A negative balance supplies flow, a positive one absorbs it; balances must
    sum to zero.  Capacities are positive integers (``None`` for unbounded),
    costs are nonnegative.  Parallel arcs are allowed.
    """

    balances: dict[Hashable, float] = field(default_factory=dict)
    arcs: list[tuple[Hashable, Hashable, int | None, float]] = field(default_factory=list)

    def add_arc(self, tail: Hashable, head: Hashable, capacity: int | None, cost: float) -> None:
        self.arcs.append((tail, head, capacity, cost))


def min_cost_bflow(net: FlowNetwork) -> tuple[list[float], float] | None:
    """Minimum-cost flow meeting all node balances, or ``None`` if infeasible.

    Returns per-arc flow values aligned with ``net.arcs`` and the total cost.
    Uses successive shortest augmenting paths with node potentials; flows are
    integral whenever balances and capacities are integral.
    """
    if sum(net.balances.values()) != 0:
        raise ValueError("node balances must sum to zero")
    for (_, _, cap, cost) in net.arcs:
        if cap is not None and cap <= 0:
            raise ValueError("arc capacities must be positive (or None for unbounded)")
        if cost < 0:
            raise ValueError("arc costs must be nonnegative")

    ids: dict[Hashable, int] = {}
    for v in net.balances:
        ids.setdefault(v, len(ids))
    for (u, v, _, _) in net.arcs:
        ids.setdefault(u, len(ids))
        ids.setdefault(v, len(ids))
    src = len(ids)
    snk = src + 1
    n = snk + 1

    supply = sum(-b for b in net.balances.values() if b < 0)
    unbounded = supply if supply > 0 else 1

    to: list[int] = []
    cap: list[float] = []
    cost: list[float] = []
    adj: list[list[int]] = [[] for _ in range(n)]

    def add(u: int, v: int, c: float, w: float) -> int:
        aid = len(to)
        to.append(v)
        cap.append(c)
        cost.append(w)
        adj[u].append(aid)
        to.append(u)
        cap.append(0)
        cost.append(-w)
        adj[v].append(aid + 1)
        return aid

    arc_ids = [add(ids[u], ids[v], unbounded if c is None else c, w) for (u, v, c, w) in net.arcs]
    for v, b in net.balances.items():
        if b < 0:
            add(src, ids[v], -b, 0)
        elif b > 0:
            add(ids[v], snk, b, 0)

    potential = [0.0] * n
    pushed = 0
    while pushed < supply:
        dist = [INF] * n
        parent_arc = [-1] * n
        dist[src] = 0
        heap: list[tuple[float, int]] = [(0, src)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            for aid in adj[u]:
                if cap[aid] <= 0:
                    continue
                v = to[aid]
                nd = d + cost[aid] + potential[u] - potential[v]
                if nd < dist[v]:
                    dist[v] = nd
                    parent_arc[v] = aid
                    heapq.heappush(heap, (nd, v))
        if dist[snk] == INF:
            return None  # remaining supply cannot reach any demand
        for v in range(n):
            potential[v] += min(dist[v], dist[snk])
        bottleneck = supply - pushed
        v = snk
        while v != src:
            aid = parent_arc[v]
            bottleneck = min(bottleneck, cap[aid])
            v = to[aid ^ 1]
        v = snk
        while v != src:
            aid = parent_arc[v]
            cap[aid] -= bottleneck
            cap[aid ^ 1] += bottleneck
            v = to[aid ^ 1]
        pushed += bottleneck

    flows = [cap[aid ^ 1] for aid in arc_ids]  # backward residual equals flow
    total = sum(f * w for f, (_, _, _, w) in zip(flows, net.arcs))
    return flows, total


def max_flow_min_cut(
    capacities: Mapping[tuple[Hashable, Hashable], float], s: Hashable, t: Hashable
) -> tuple[float, frozenset[tuple[Hashable, Hashable]]]:
    """Edmonds-Karp max flow; returns the cut value and a minimum s-t edge cut."""
    if s == t:
        raise ValueError("source and sink must differ")
    residual: dict[Hashable, dict[Hashable, float]] = {}
    for (u, v), c in capacities.items():
        if c <= 0:
            raise ValueError(f"capacity of ({u}, {v}) must be positive")
        residual.setdefault(u, {})[v] = residual.setdefault(u, {}).get(v, 0) + c
        residual.setdefault(v, {}).setdefault(u, 0)

    def bfs_path() -> list[Hashable] | None:
        parent = {s: None}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v, r in residual.get(u, {}).items():
                if r > 1e-12 and v not in parent:
                    parent[v] = u
                    if v == t:
                        path = [v]
                        while parent[path[-1]] is not None:
                            path.append(parent[path[-1]])
                        return path[::-1]
                    queue.append(v)
        return None

    while True:
        path = bfs_path()
        if path is None:
            break
        bottleneck = min(residual[u][v] for u, v in zip(path, path[1:]))
        for u, v in zip(path, path[1:]):
            residual[u][v] -= bottleneck
            residual[v][u] += bottleneck

    reachable = {s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for v, r in residual.get(u, {}).items():
            if r > 1e-12 and v not in reachable:
                reachable.add(v)
                queue.append(v)
    cut = frozenset((u, v) for (u, v) in capacities if u in reachable and v not in reachable)
    return sum(capacities[e] for e in cut), cut


def shortest_path(
    costs: Mapping[tuple[Hashable, Hashable], float], s: Hashable, t: Hashable
) -> tuple[float, tuple[Hashable, ...]] | None:
    """Dijkstra with nonnegative arc costs; ``None`` when ``t`` is unreachable.

    Ties between equal-cost paths break towards the lexicographically smallest
    node sequence, so nodes must be mutually orderable.
    """
    adj: dict[Hashable, list[tuple[Hashable, float]]] = {}
    for (u, v), c in costs.items():
        if c < 0:
            raise ValueError(f"cost of ({u}, {v}) must be nonnegative")
        adj.setdefault(u, []).append((v, c))
    heap: list[tuple[float, tuple[Hashable, ...]]] = [(0, (s,))]
    done: set[Hashable] = set()
    while heap:
        d, path = heapq.heappop(heap)
        u = path[-1]
        if u == t:
            return d, path
        if u in done:
            continue
        done.add(u)
        for v, c in adj.get(u, []):
            if v not in done:
                heapq.heappush(heap, (d + c, path + (v,)))
    return None


# ---------------------------------------------------------------------------
# Length-bounded cuts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundedCutProblem:
    """Find a cheapest edge set meeting every short source-sink path.

    ``succ[v]`` lists the successors of node ``v``; ``weights`` assigns each
    directed edge a positive cost.  A solution makes every path from
    ``source`` to the sink longer than ``bound`` edges.  Without a sink the
    cut may disconnect any single other node (the cheapest choice wins).
    """

    succ: tuple[tuple[int, ...], ...]
    weights: Mapping[tuple[int, int], float]
    source: int
    bound: int
    sink: int | None = None

    def __post_init__(self) -> None:
        if self.bound < 1:
            raise ValueError("length bound must be at least 1")
        if self.sink is not None and self.sink == self.source:
            raise ValueError("source and sink must differ")


def _has_short_path(
    succ: Sequence[Sequence[int]], x: int, t: int, bound: int, blocked: frozenset[tuple[int, int]]
) -> bool:
    """BFS check: does some x-t path of at most ``bound`` edges avoid ``blocked``?"""
    if x == t:
        return True
    dist = {x: 0}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        if dist[u] == bound:
            continue
        for v in succ[u]:
            if (u, v) in blocked or v in dist:
                continue
            if v == t:
                return True
            dist[v] = dist[u] + 1
            queue.append(v)
    return False


def _prune_to_minimal(
    cut: frozenset[tuple[int, int]],
    succ: Sequence[Sequence[int]],
    weights: Mapping[tuple[int, int], float],
    x: int,
    t: int,
    bound: int,
) -> frozenset[tuple[int, int]]:
    # Greedy redundancy pass, heaviest edges first; a minimum-weight cut never
    # shrinks here, but minimality is load-bearing for reversal-set witnesses.
    kept = set(cut)
    for e in sorted(cut, key=lambda e: (-weights[e], e)):
        kept.discard(e)
        if _has_short_path(succ, x, t, bound, frozenset(kept)):
            kept.add(e)
    return frozenset(kept)


def _bounded_paths(
    succ: Sequence[Sequence[int]], x: int, t: int, bound: int
) -> list[tuple[tuple[int, int], ...]]:
    """All simple x-t paths of at most ``bound`` edges, as edge tuples."""
    n = len(succ)
    rdist = [INF] * n  # distance to t, for pruning
    rdist[t] = 0
    pred: list[list[int]] = [[] for _ in range(n)]
    for u in range(n):
        for v in succ[u]:
            pred[v].append(u)
    queue = deque([t])
    while queue:
        v = queue.popleft()
        for u in pred[v]:
            if rdist[u] == INF:
                rdist[u] = rdist[v] + 1
                queue.append(u)

    paths: list[tuple[tuple[int, int], ...]] = []
    path_nodes = [x]
    path_edges: list[tuple[int, int]] = []

    def walk(u: int) -> None:
        if u == t:
            paths.append(tuple(path_edges))
            return
        if len(path_edges) >= bound:
            return
        budget = bound - len(path_edges) - 1
        for v in succ[u]:
            if v in path_nodes or rdist[v] > budget:
                continue
            path_nodes.append(v)
            path_edges.append((u, v))
            walk(v)
            path_nodes.pop()
            path_edges.pop()

    if rdist[x] <= bound:
        walk(x)
    return paths


def _min_hitting_set(
    paths: list[tuple[tuple[int, int], ...]], weights: Mapping[tuple[int, int], float]
) -> tuple[float, frozenset[tuple[int, int]]]:
    """Exact minimum-weight edge set meeting every path (branch and bound)."""
    path_sets = [frozenset(p) for p in paths]
    universe = sorted(set().union(*path_sets))

    def greedy_incumbent() -> tuple[float, frozenset[tuple[int, int]]]:
        uncovered = list(range(len(path_sets)))
        chosen: set[tuple[int, int]] = set()
        while uncovered:
            best_e = min(
                universe,
                key=lambda e: (-sum(1 for i in uncovered if e in path_sets[i]) / weights[e], e),
            )
            chosen.add(best_e)
            uncovered = [i for i in uncovered if best_e not in path_sets[i]]
        return sum(weights[e] for e in chosen), frozenset(chosen)

    def packing_bound(uncovered: list[int]) -> float:
        # Edge-disjoint paths each force one cut edge: sum their cheapest edges.
        used: set[tuple[int, int]] = set()
        bound = 0.0
        for i in uncovered:
            if not path_sets[i] & used:
                bound += min(weights[e] for e in path_sets[i])
                used |= path_sets[i]
        return bound

    best_cost, best_set = greedy_incumbent()

    def dfs(uncovered: list[int], chosen: set[tuple[int, int]], cost: float) -> None:
        nonlocal best_cost, best_set
        if not uncovered:
            if cost < best_cost:
                best_cost, best_set = cost, frozenset(chosen)
            return
        if cost + packing_bound(uncovered) >= best_cost:
            return
        branch = min(uncovered, key=lambda i: (len(path_sets[i]), paths[i]))
        for e in sorted(path_sets[branch], key=lambda e: (weights[e], e)):
            chosen.add(e)
            dfs([i for i in uncovered if e not in path_sets[i]], chosen, cost + weights[e])
            chosen.remove(e)

    dfs(list(range(len(path_sets))), set(), 0.0)
    return best_cost, best_set


def bounded_cut(p: BoundedCutProblem) -> tuple[float, frozenset[tuple[int, int]]]:
    """Minimum-weight edge set meeting every source-sink path of length <= bound.

    Dispatches on the bound: the single direct edge for 1, a closed form for
    2, plain max-flow/min-cut once the bound covers all simple paths, and an
    exact branch-and-bound over path hitting sets in between (that middle
    regime is NP-hard in general).  The returned cut is inclusion-minimal.
    """
    if p.sink is None:
        raise ValueError("bounded_cut needs a sink; use bounded_x_cut otherwise")
    succ, weights, x, t, bound = p.succ, p.weights, p.source, p.sink, p.bound
    n = len(succ)

    if bound == 1:
        cut = frozenset([(x, t)]) if t in succ[x] else frozenset()
    elif bound == 2:
        edges = set()
        if t in succ[x]:
            edges.add((x, t))
        for v in succ[x]:
            if v != t and t in succ[v]:
                edges.add((x, v) if weights[(x, v)] <= weights[(v, t)] else ((v, t)))
        cut = frozenset(edges)
    elif bound >= n - 1:
        reachable_caps = {(u, v): weights[(u, v)] for u in range(n) for v in succ[u]}
        _, cut = max_flow_min_cut(reachable_caps, x, t)
    else:
        paths = _bounded_paths(succ, x, t, bound)
        if not paths:
            cut = frozenset()
        else:
            _, cut = _min_hitting_set(paths, weights)

    cut = _prune_to_minimal(cut, succ, weights, x, t, bound)
    assert not _has_short_path(succ, x, t, bound, cut)
    return sum(weights[e] for e in cut), cut


def bounded_x_cut(
    p: BoundedCutProblem,
) -> tuple[float, frozenset[tuple[int, int]], int]:
    """Cheapest bounded cut over all possible sinks; ties pick the lowest sink."""
    n = len(p.succ)
    if n < 2:
        raise ValueError("need at least two nodes")
    best: tuple[float, frozenset[tuple[int, int]], int] | None = None
    for t in range(n):
        if t == p.source:
            continue
        weight, cut = bounded_cut(
            BoundedCutProblem(p.succ, p.weights, p.source, p.bound, sink=t)
        )
        if best is None or weight < best[0]:
            best = (weight, cut, t)
    assert best is not None
    return best
