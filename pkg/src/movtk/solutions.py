"""Choice sets: Copeland, top cycle, uncovered set, k-kings, and Banks."""

from __future__ import annotations

from dataclasses import dataclass

from .core import Tournament, bits, dominator_mask


@dataclass(frozen=True)
class SolutionId:
    """Identifier for a tournament solution; ``k`` is set only for k-kings."""

    kind: str  # one of "copeland", "topcycle", "uncovered", "kkings", "banks"
    k: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("copeland", "topcycle", "uncovered", "kkings", "banks"):
            raise ValueError(f"unknown solution kind {self.kind!r}")
        if self.kind == "kkings":
            if self.k is None or self.k < 2:
                raise ValueError("k-kings requires k >= 2")
        elif self.k is not None:
            raise ValueError(f"{self.kind} takes no k parameter")

    def __str__(self) -> str:
        return f"{self.k}-kings" if self.kind == "kkings" else self.kind


COPELAND = SolutionId("copeland")
TOP_CYCLE = SolutionId("topcycle")
UNCOVERED = SolutionId("uncovered")
BANKS = SolutionId("banks")


def kings(k: int) -> SolutionId:
    return SolutionId("kkings", k)


@dataclass(frozen=True)
class SccCondensation:
    """Strongly connected components in their unique dominance order.

    ``components[0]`` is the top component (the top cycle); every member of an
    earlier component beats every member of a later one.
    """

    components: tuple[tuple[int, ...], ...]
    component_of: tuple[int, ...]


def copeland_scores(t: Tournament) -> list[int]:
    return [row.bit_count() for row in t.rows]


def copeland_set(t: Tournament) -> frozenset[int]:
    """Alternatives with the largest dominion."""
    scores = copeland_scores(t)
    best = max(scores)
    return frozenset(i for i, s in enumerate(scores) if s == best)


def reach_mask(t: Tournament, x: int, limit: int) -> int:
    """Vertices reachable from ``x`` along at most ``limit`` edges, ``x`` included."""
    reached = 1 << x
    frontier = t.rows[x] & ~reached
    depth = 0
    while frontier and depth < limit:
        reached |= frontier
        depth += 1
        if depth == limit:
            break
        nxt = 0
        for v in bits(frontier):
            nxt |= t.rows[v]
        frontier = nxt & ~reached
    return reached


def scc_condensation(t: Tournament) -> SccCondensation:
    """Tarjan's algorithm (iterative); components come out top component first."""
    n, rows = t.n, t.rows
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[tuple[int, ...]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work: list[tuple[int, int]] = [(root, 0)]
        succ = {root: list(bits(rows[root]))}
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            children = succ[v]
            while pi < len(children):
                u = children[pi]
                pi += 1
                if index[u] == -1:
                    work[-1] = (v, pi)
                    work.append((u, 0))
                    succ[u] = list(bits(rows[u]))
                    advanced = True
                    break
                if on_stack[u]:
                    low[v] = min(low[v], index[u])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    u = stack.pop()
                    on_stack[u] = False
                    comp.append(u)
                    if u == v:
                        break
                comps.append(tuple(sorted(comp)))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    comps.reverse()  # Tarjan emits sinks first; the top component must lead
    component_of = [0] * n
    for ci, comp in enumerate(comps):
        for v in comp:
            component_of[v] = ci
    return SccCondensation(tuple(comps), tuple(component_of))


def top_cycle(t: Tournament) -> frozenset[int]:
    """Smallest set beating its complement: the top strongly connected component."""
    return frozenset(scc_condensation(t).components[0])


def is_k_king(t: Tournament, x: int, k: int) -> bool:
    if k < 2:
        raise ValueError("k-kings requires k >= 2")
    return reach_mask(t, x, min(k, t.n - 1)) == t.full_mask


def k_kings(t: Tournament, k: int) -> frozenset[int]:
    """Alternatives that reach every other alternative in at most ``k`` steps.

    ``k = 2`` is the uncovered set; any ``k >= n - 1`` coincides with the top
    cycle since distances in a tournament never need to exceed ``n - 1``.
    """
    if k < 2:
        raise ValueError("k-kings requires k >= 2")
    limit = min(k, t.n - 1)
    full = t.full_mask
    return frozenset(x for x in range(t.n) if reach_mask(t, x, limit) == full)


def uncovered_set(t: Tournament) -> frozenset[int]:
    """Alternatives reaching all others in at most two steps (the 2-kings)."""
    return k_kings(t, 2)


def covers(t: Tournament, x: int, y: int) -> bool:
    """Whether ``x`` covers ``y``, i.e. the dominion of ``y`` is contained in ``x``'s."""
    if x == y:
        raise ValueError("covering is defined for distinct alternatives")
    return t.rows[y] & ~t.rows[x] == 0


def banks_member(t: Tournament, x: int) -> bool:
    """Whether ``x`` tops some transitive subtournament that nobody extends.

    Exact backtracking over chains inside the dominion of ``x``; worst-case
    exponential (the membership question is NP-complete), fine at desk scale.
    """
    n, rows = t.n, t.rows
    cols = [dominator_mask(t, v) for v in range(n)]
    dx = rows[x]
    seen: set[int] = set()

    def insert_pos(chain: tuple[int, ...], y: int) -> int | None:
        # A chain is kept in dominance order; y fits iff it beats a suffix.
        pos = len(chain)
        for idx, c in enumerate(chain):
            if rows[y] >> c & 1:
                pos = idx
                break
        for idx in range(pos, len(chain)):
            if not rows[y] >> chain[idx] & 1:
                return None
        return pos

    def search(chain: tuple[int, ...], chain_mask: int, b: int) -> bool:
        if b == 0:
            return True
        if chain_mask in seen:
            return False
        seen.add(chain_mask)
        # Pick the common dominator with the fewest candidate killers; if one
        # is unkillable now it stays unkillable, since insertability only
        # shrinks as the chain grows.
        best: tuple[int, int, list[tuple[int, int]]] | None = None
        for z in bits(b):
            options: list[tuple[int, int]] = []
            for y in bits(dx & cols[z] & ~chain_mask):
                pos = insert_pos(chain, y)
                if pos is not None:
                    options.append((y, pos))
            if not options:
                return False
            if best is None or len(options) < best[0]:
                best = (len(options), z, options)
        assert best is not None
        options = best[2]
        options.sort(key=lambda yp: -((b & rows[yp[0]]).bit_count()))
        for y, pos in options:
            if search(chain[:pos] + (y,) + chain[pos:], chain_mask | 1 << y, b & cols[y]):
                return True
        return False

    return search((), 0, cols[x])


def banks_set(t: Tournament) -> frozenset[int]:
    return frozenset(x for x in range(t.n) if banks_member(t, x))


def is_member(t: Tournament, sol: SolutionId, x: int) -> bool:
    """Membership of ``x`` in the choice set of ``sol``."""
    if sol.kind == "copeland":
        scores = copeland_scores(t)
        return scores[x] == max(scores)
    if sol.kind == "topcycle":
        return reach_mask(t, x, t.n - 1) == t.full_mask
    if sol.kind == "uncovered":
        return is_k_king(t, x, 2)
    if sol.kind == "kkings":
        return is_k_king(t, x, sol.k)
    return banks_member(t, x)


def choice_set(t: Tournament, sol: SolutionId) -> frozenset[int]:
    if sol.kind == "copeland":
        return copeland_set(t)
    if sol.kind == "topcycle":
        return top_cycle(t)
    if sol.kind == "uncovered":
        return uncovered_set(t)
    if sol.kind == "kkings":
        return k_kings(t, sol.k)
    return banks_set(t)
