"""Tournament data model, edge reversals, text formats, and instance generators."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator


class FormatError(ValueError):
    """Text input violates the .trn/.wts format or a tournament invariant."""


class InvalidReversalError(ValueError):
    """A reversal set references an edge that is absent from the tournament."""


class BudgetExceededError(RuntimeError):
    """An exact search exceeded its configured state budget."""


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Tournament:
    """Complete asymmetric digraph on alternatives ``0..n-1``.

    ``rows[i]`` is the bitmask of the dominion of ``i``: bit ``j`` is set iff
    ``i`` beats ``j``.  Instances are immutable; every operation returns a new
    tournament, so shared instances are safe to use concurrently.
    """

    n: int
    rows: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("a tournament needs at least one alternative")
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {i} references alternatives outside 0..{self.n - 1}")
            if row >> i & 1:
                raise ValueError(f"alternative {i} cannot beat itself")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if (self.rows[i] >> j & 1) == (self.rows[j] >> i & 1):
                    raise ValueError(f"pair ({i}, {j}) needs exactly one direction")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("label count does not match n")

    @classmethod
    def _from_rows(cls, n: int, rows: tuple[int, ...], labels: tuple[str, ...] | None) -> "Tournament":
        # Fast path for internally constructed rows; skips invariant re-checks.
        t = object.__new__(cls)
        object.__setattr__(t, "n", n)
        object.__setattr__(t, "rows", rows)
        object.__setattr__(t, "labels", labels)
        return t

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def dominates(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def out_degree(self, i: int) -> int:
        return self.rows[i].bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        """All directed edges in a fixed order (by tail, then head)."""
        for i in range(self.n):
            for j in bits(self.rows[i]):
                yield (i, j)

    def label_of(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)


def dominion(t: Tournament, x: int) -> set[int]:
    """Alternatives beaten by ``x``."""
    _check_alt(t, x)
    return set(bits(t.rows[x]))


def dominators(t: Tournament, x: int) -> set[int]:
    """Alternatives that beat ``x``."""
    _check_alt(t, x)
    return set(bits(dominator_mask(t, x)))


def dominator_mask(t: Tournament, x: int) -> int:
    mask = 0
    for i in range(t.n):
        if i != x and t.rows[i] >> x & 1:
            mask |= 1 << i
    return mask


def _check_alt(t: Tournament, x: int) -> None:
    if not 0 <= x < t.n:
        raise ValueError(f"alternative {x} out of range for n={t.n}")


@dataclass(frozen=True)
class Weighting:
    """Positive reversal cost per directed edge, stored as a dense matrix.

    ``matrix[i][j]`` is meaningful exactly where ``i`` beats ``j``; all other
    cells are zero.  The unweighted setting is a weighting of all ones.
    """

    matrix: tuple[tuple[float, ...], ...]

    @classmethod
    def ones(cls, t: Tournament) -> "Weighting":
        return cls(tuple(tuple(1 if t.rows[i] >> j & 1 else 0 for j in range(t.n)) for i in range(t.n)))

    @classmethod
    def from_matrix(cls, t: Tournament, matrix: Iterable[Iterable[float]]) -> "Weighting":
        rows = tuple(tuple(row) for row in matrix)
        w = cls(rows)
        w.validate_for(t)
        return w

    def weight(self, i: int, j: int) -> float:
        return self.matrix[i][j]

    def cost(self, edges: Iterable[tuple[int, int]]) -> float:
        return sum(self.matrix[i][j] for i, j in edges)

    def is_unit_for(self, t: Tournament) -> bool:
        return all(self.matrix[i][j] == 1 for (i, j) in t.edges())

    def validate_for(self, t: Tournament) -> None:
        if len(self.matrix) != t.n or any(len(row) != t.n for row in self.matrix):
            raise ValueError(f"weight matrix must be {t.n}x{t.n}")
        for i in range(t.n):
            for j in range(t.n):
                v = self.matrix[i][j]
                if t.rows[i] >> j & 1:
                    if not v > 0:
                        raise ValueError(f"row {i}, column {j}: edge weight must be positive, got {v}")
                elif v != 0:
                    raise ValueError(f"row {i}, column {j}: weight on absent edge must be zero, got {v}")


@dataclass(frozen=True)
class ReversalSet:
    """A set of tournament edges together with its total reversal cost."""

    edges: frozenset[tuple[int, int]]
    cost: float

    def __post_init__(self) -> None:
        for (i, j) in self.edges:
            if (j, i) in self.edges:
                raise InvalidReversalError(f"reversal set contains both ({i}, {j}) and ({j}, {i})")

    @classmethod
    def of(cls, edges: Iterable[tuple[int, int]], w: Weighting) -> "ReversalSet":
        es = frozenset((int(i), int(j)) for (i, j) in edges)
        return cls(es, w.cost(es))

    @classmethod
    def empty(cls) -> "ReversalSet":
        return cls(frozenset(), 0)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def reversed_set(self, w: Weighting) -> "ReversalSet":
        """The set of reversed counterparts, costed in the tournament after reversal."""
        return ReversalSet.of(((j, i) for (i, j) in self.edges), w)


@dataclass(frozen=True)
class MovResult:
    """Signed margin of victory with a witness reversal set.

    ``value`` is positive for winners (cheapest destructive reversal set) and
    negative for non-winners (cheapest constructive reversal set); ``|value|``
    equals ``witness.cost``.  ``method`` names the algorithm that produced it.
    """

    value: float
    witness: ReversalSet
    method: str


def apply_reversals(t: Tournament, r: ReversalSet | Iterable[tuple[int, int]]) -> Tournament:
    """Return the tournament with every edge of ``r`` flipped."""
    edges = r.edges if isinstance(r, ReversalSet) else frozenset(r)
    rows = list(t.rows)
    for (i, j) in edges:
        if not 0 <= i < t.n or not 0 <= j < t.n or not rows[i] >> j & 1:
            raise InvalidReversalError(f"edge ({i}, {j}) is not present in the tournament")
        rows[i] &= ~(1 << j)
        rows[j] |= 1 << i
    return Tournament._from_rows(t.n, tuple(rows), t.labels)


def restrict(t: Tournament, keep: Iterable[int]) -> tuple[Tournament, tuple[int, ...]]:
    """Induced subtournament on ``keep``.

    Returns the subtournament and the kept original indices in ascending
    order; new index ``i`` corresponds to original ``kept[i]``.
    """
    kept = tuple(sorted(set(keep)))
    if not kept:
        raise ValueError("cannot restrict to an empty set of alternatives")
    for v in kept:
        _check_alt(t, v)
    rows = []
    for a in kept:
        row = 0
        for new_j, b in enumerate(kept):
            if t.rows[a] >> b & 1:
                row |= 1 << new_j
        rows.append(row)
    labels = tuple(t.labels[a] for a in kept) if t.labels is not None else None
    return Tournament._from_rows(len(kept), tuple(rows), labels), kept


# ---------------------------------------------------------------------------
# Text formats
#
# .trn: line 1 is n, lines 2..n+1 are space-separated 0/1 rows of the
# orientation matrix, optionally followed by "labels: a b c ...".
# .wts: n lines of n space-separated decimal reals, zero off-edge.
# ---------------------------------------------------------------------------


def parse_tournament(text: str) -> Tournament:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty input")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise FormatError(f"first line must be the number of alternatives, got {lines[0]!r}") from None
    if n < 1:
        raise FormatError("number of alternatives must be at least 1")
    labels: tuple[str, ...] | None = None
    body = lines[1:]
    if len(body) == n + 1 and body[-1].strip().startswith("labels:"):
        toks = body[-1].strip()[len("labels:"):].split()
        if len(toks) != n:
            raise FormatError(f"labels line has {len(toks)} names, expected {n}")
        labels = tuple(toks)
        body = body[:-1]
    if len(body) != n:
        raise FormatError(f"expected {n} matrix rows, got {len(body)}")
    rows = []
    for i, ln in enumerate(body):
        toks = ln.split()
        if len(toks) != n:
            raise FormatError(f"row {i}: expected {n} entries, got {len(toks)}")
        row = 0
        for j, tok in enumerate(toks):
            if tok == "1":
                row |= 1 << j
            elif tok != "0":
                raise FormatError(f"row {i}, column {j}: entry must be 0 or 1, got {tok!r}")
        rows.append(row)
    for i in range(n):
        if rows[i] >> i & 1:
            raise FormatError(f"row {i}, column {i}: diagonal must be 0")
    for i in range(n):
        for j in range(i + 1, n):
            ij = rows[i] >> j & 1
            ji = rows[j] >> i & 1
            if ij and ji:
                raise FormatError(f"rows {i} and {j}: both orientations set for pair ({i}, {j})")
            if not ij and not ji:
                raise FormatError(f"rows {i} and {j}: no orientation set for pair ({i}, {j})")
    return Tournament(n, tuple(rows), labels)


def serialize_tournament(t: Tournament) -> str:
    out = [str(t.n)]
    for i in range(t.n):
        out.append(" ".join("1" if t.rows[i] >> j & 1 else "0" for j in range(t.n)))
    if t.labels is not None:
        out.append("labels: " + " ".join(t.labels))
    return "\n".join(out) + "\n"


def _format_weight(v: float) -> str:
    if isinstance(v, int) or (isinstance(v, float) and v.is_integer()):
        return str(int(v))
    return repr(v)


def parse_weights(text: str, t: Tournament) -> Weighting:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != t.n:
        raise FormatError(f"expected {t.n} weight rows, got {len(lines)}")
    matrix = []
    for i, ln in enumerate(lines):
        toks = ln.split()
        if len(toks) != t.n:
            raise FormatError(f"row {i}: expected {t.n} entries, got {len(toks)}")
        row = []
        for j, tok in enumerate(toks):
            try:
                v = float(tok)
            except ValueError:
                raise FormatError(f"row {i}, column {j}: not a number: {tok!r}") from None
            if v.is_integer():
                v = int(v)
            row.append(v)
        matrix.append(tuple(row))
    w = Weighting(tuple(matrix))
    try:
        w.validate_for(t)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return w


def serialize_weights(w: Weighting) -> str:
    return "\n".join(" ".join(_format_weight(v) for v in row) for row in w.matrix) + "\n"


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def generate_uniform(n: int, seed: int) -> Tournament:
    """Uniformly random tournament from a fixed, documented procedure.

    A ``random.Random(seed)`` (Mersenne Twister) draws one bit per unordered
    pair, taken in row-major order ``(0,1), (0,2), ..., (n-2,n-1)``; a set bit
    orients the pair ``i -> j``.  Identical ``(n, seed)`` always produce the
    identical tournament.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(seed)
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.getrandbits(1):
                rows[i] |= 1 << j
            else:
                rows[j] |= 1 << i
    return Tournament._from_rows(n, tuple(rows), None)


def generate_uniform_weights(t: Tournament, seed: int, lo: int = 1, hi: int = 9) -> Weighting:
    """Integer edge weights uniform in ``[lo, hi]``, seeded like :func:`generate_uniform`.

    One draw per unordered pair in row-major order, assigned to whichever
    orientation is present.
    """
    if lo < 1 or hi < lo:
        raise ValueError("need 1 <= lo <= hi")
    rng = random.Random(seed)
    matrix = [[0] * t.n for _ in range(t.n)]
    for i in range(t.n):
        for j in range(i + 1, t.n):
            v = rng.randint(lo, hi)
            if t.rows[i] >> j & 1:
                matrix[i][j] = v
            else:
                matrix[j][i] = v
    return Weighting(tuple(tuple(row) for row in matrix))


def generate_tight_destructive(n: int) -> tuple[Tournament, int]:
    """Worst-case family for winners: alternative 0 needs ``n // 2`` reversals.

    Alternative 0 beats everyone; the remaining alternatives sit on a circle
    where each beats the following ``l - 1`` in clockwise order.  For odd
    ``n`` the even instance on ``n + 1`` alternatives is built and the last
    circle alternative dropped.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    even_n = n if n % 2 == 0 else n + 1
    half = even_n // 2
    m_full = even_n - 1  # circle size before any removal
    keep = n - 1  # circle alternatives actually kept
    rows = [0] * n
    rows[0] = ((1 << n) - 1) & ~1
    for ci in range(keep):
        for step in range(1, half):
            cj = (ci + step) % m_full
            if cj < keep:
                rows[1 + ci] |= 1 << (1 + cj)
    t = Tournament(n, tuple(rows), None)
    return t, 0


def generate_tight_co_constructive(n: int) -> tuple[Tournament, int]:
    """Worst-case family for Copeland non-winners: transitive order, x last.

    Alternative 0 is a Condorcet winner and ``n - 1`` a Condorcet loser, so
    promoting the loser into the Copeland set costs ``n - 2`` reversals.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    rows = tuple(((1 << n) - 1) >> (i + 1) << (i + 1) for i in range(n))
    return Tournament(n, rows, None), n - 1
