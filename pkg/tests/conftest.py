"""Shared fixtures and independent reference implementations for cross-checks."""

from __future__ import annotations

import itertools

import pytest

from movtk.core import Tournament, bits, parse_tournament

SAMPLE6_TEXT = (
    "6\n"
    "0 0 0 0 0 0\n"
    "1 0 0 0 1 0\n"
    "1 1 0 0 0 1\n"
    "1 1 1 0 0 0\n"
    "1 0 1 1 0 0\n"
    "1 1 0 1 1 0\n"
    "labels: a b c d e f\n"
)


@pytest.fixture
def sample6() -> Tournament:
    """Six alternatives a..f; f tops Copeland, a is a Condorcet loser."""
    return parse_tournament(SAMPLE6_TEXT)


@pytest.fixture
def caveat4() -> Tournament:
    """Four-node instance whose non-minimal bounded cuts are not all destructive.

    x=0 beats 1 and 2, both beat y=3, 2 beats 1, and y beats x.
    """
    return Tournament(4, (0b0110, 0b1000, 0b1010, 0b0001))


def chain(n: int) -> Tournament:
    """Transitive tournament: i beats j iff i < j."""
    rows = tuple(((1 << n) - 1) >> (i + 1) << (i + 1) for i in range(n))
    return Tournament(n, rows)


def cycle3() -> Tournament:
    return Tournament(3, (0b010, 0b100, 0b001))


def all_tournaments(n: int):
    """Every orientation of the complete graph on n nodes."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for choice in itertools.product((0, 1), repeat=len(pairs)):
        rows = [0] * n
        for bit, (i, j) in zip(choice, pairs):
            if bit:
                rows[i] |= 1 << j
            else:
                rows[j] |= 1 << i
        yield Tournament._from_rows(n, tuple(rows), None)


# ---------------------------------------------------------------------------
# Independent reference implementations (kept deliberately naive).
# ---------------------------------------------------------------------------


def ref_distances(t: Tournament, x: int) -> list[float]:
    """Plain BFS distances from x."""
    dist: list[float] = [float("inf")] * t.n
    dist[x] = 0
    queue = [x]
    while queue:
        u = queue.pop(0)
        for v in bits(t.rows[u]):
            if dist[v] == float("inf"):
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def ref_k_kings(t: Tournament, k: int) -> frozenset[int]:
    return frozenset(x for x in range(t.n) if max(ref_distances(t, x)) <= k)


def ref_uncovered_by_covering(t: Tournament) -> frozenset[int]:
    """Uncovered set straight from the covering relation.

    y covers x iff the dominion of x is contained in the dominion of y (which
    forces y to beat x in a tournament).
    """
    return frozenset(
        x
        for x in range(t.n)
        if not any(y != x and t.rows[x] & ~t.rows[y] == 0 for y in range(t.n))
    )


def ref_is_transitive(t: Tournament, subset: tuple[int, ...]) -> bool:
    for a, b, c in itertools.permutations(subset, 3):
        if t.dominates(a, b) and t.dominates(b, c) and not t.dominates(a, c):
            return False
    return True


def ref_banks_set(t: Tournament) -> frozenset[int]:
    """Banks set by exhausting all subsets: tops of inclusion-maximal transitive ones."""
    transitive = [
        s
        for r in range(1, t.n + 1)
        for s in itertools.combinations(range(t.n), r)
        if ref_is_transitive(t, s)
    ]
    tops = set()
    for s in transitive:
        if any(set(s) < set(bigger) for bigger in transitive):
            continue
        top = next(v for v in s if all(v == u or t.dominates(v, u) for u in s))
        tops.add(top)
    return frozenset(tops)
