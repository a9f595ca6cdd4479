"""Exchange matrices and ice quivers with mutation.

Conventions used throughout the package:

* Vertices are numbered 1..n.  Entry ``b[i][j] > 0`` (0-based access
  ``entries[i-1][j-1]``) means there are exactly ``b[i][j]`` arrows i -> j.
  Skew-symmetry rules out loops and 2-cycles.
* An ice quiver is an m x n integer matrix whose first n rows form a
  skew-symmetric block (the mutable part).  Row n+j is the frozen vertex j*,
  and its entry in column i counts arrows i -> j* (negative values count
  arrows j* -> i).  Arrows between frozen vertices are never stored.
* The framed quiver of B is the 2n x n ice quiver [B; I]: one frozen
  companion j* per vertex with a single arrow j -> j*.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

Matrix = tuple[tuple[int, ...], ...]


class SignCoherenceViolation(RuntimeError):
    """A frozen column carries both positive and negative entries.

    Along mutation sequences of a framed quiver this never happens; seeing it
    signals a bug or an input that is not reachable from a framed quiver.
    """


class ResourceLimitError(RuntimeError):
    """A configured size or depth cap was exceeded."""

    def __init__(self, message: str, depth_reached: int | None = None):
        super().__init__(message)
        self.depth_reached = depth_reached


def _freeze(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def _check_skew(entries: Matrix, n: int) -> None:
    for i in range(n):
        if entries[i][i] != 0:
            raise ValueError(f"diagonal entry ({i + 1},{i + 1}) must be 0")
        for j in range(i + 1, n):
            if entries[i][j] != -entries[j][i]:
                raise ValueError(
                    f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) violate skew-symmetry"
                )


@dataclass(frozen=True)
class ExchangeMatrix:
    """Skew-symmetric integer matrix encoding a quiver."""

    entries: Matrix

    def __post_init__(self):
        entries = _freeze(self.entries)
        object.__setattr__(self, "entries", entries)
        n = len(entries)
        if any(len(row) != n for row in entries):
            raise ValueError("exchange matrix must be square")
        _check_skew(entries, n)

    @property
    def n(self) -> int:
        return len(self.entries)

    def arrows(self) -> list[tuple[int, int, int]]:
        """All arrows as (source, target, multiplicity), 1-based."""
        out = []
        for i in range(self.n):
            for j in range(self.n):
                if self.entries[i][j] > 0:
                    out.append((i + 1, j + 1, self.entries[i][j]))
        return out

    def permuted(self, perm: tuple[int, ...]) -> "ExchangeMatrix":
        """Relabel vertices: position a of the result is vertex perm[a] (1-based)."""
        p = [v - 1 for v in perm]
        return ExchangeMatrix(
            tuple(tuple(self.entries[p[a]][p[b]] for b in range(self.n)) for a in range(self.n))
        )


@dataclass(frozen=True)
class IceQuiver:
    """Extended m x n matrix: skew-symmetric principal block plus frozen rows."""

    n: int
    entries: Matrix

    def __post_init__(self):
        entries = _freeze(self.entries)
        object.__setattr__(self, "entries", entries)
        if self.n < 0:
            raise ValueError("mutable vertex count must be nonnegative")
        if len(entries) < self.n:
            raise ValueError("ice quiver must contain its principal block")
        if any(len(row) != self.n for row in entries):
            raise ValueError(f"every row must have length {self.n}")
        _check_skew(entries, self.n)

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def frozen_rows(self) -> Matrix:
        return self.entries[self.n:]

    def principal(self) -> ExchangeMatrix:
        return ExchangeMatrix(self.entries[: self.n])

    @classmethod
    def from_exchange(cls, b: ExchangeMatrix) -> "IceQuiver":
        return cls(n=b.n, entries=b.entries)


class VertexStatus(Enum):
    GREEN = "green"
    RED = "red"


def _mutate_entries(entries: Matrix, n: int, k: int) -> Matrix:
    """Mutation of raw entries at 1-based mutable vertex k.

    Principal rows follow the skew-symmetric matrix rule.  Frozen rows use the
    sign-adjusted form of the same rule, which keeps each frozen entry equal
    to the arrow count between a mutable vertex and a frozen one; the uniform
    rule would instead track a different object and break the replay and
    Laurent invariants (see tests for the two-vertex counterexample).
    """
    k0 = k - 1
    m = len(entries)
    new_rows = []
    for i in range(m):
        row_i = entries[i]
        b_ik = row_i[k0]
        if i < n:
            row_k = entries[k0]
            new_rows.append(
                tuple(
                    -row_i[j]
                    if i == k0 or j == k0
                    else row_i[j] + (abs(b_ik) * row_k[j] + b_ik * abs(row_k[j])) // 2
                    for j in range(n)
                )
            )
        else:
            row_k = entries[k0]
            new_row = []
            for j in range(n):
                if j == k0:
                    new_row.append(-row_i[j])
                else:
                    b_kj = row_k[j]
                    delta = max(b_ik, 0) * max(-b_kj, 0) - max(-b_ik, 0) * max(b_kj, 0)
                    new_row.append(row_i[j] + delta)
            new_rows.append(tuple(new_row))
    return tuple(new_rows)


def mutate(matrix, k: int):
    """Mutate an ExchangeMatrix or IceQuiver at mutable vertex k (1-based).

    Returns a new value of the same type; mutation is an involution.
    """
    if isinstance(matrix, ExchangeMatrix):
        if not 1 <= k <= matrix.n:
            raise IndexError(f"vertex {k} out of range 1..{matrix.n}")
        return ExchangeMatrix(_mutate_entries(matrix.entries, matrix.n, k))
    if isinstance(matrix, IceQuiver):
        if not 1 <= k <= matrix.n:
            raise IndexError(f"vertex {k} is not a mutable vertex (1..{matrix.n})")
        return IceQuiver(matrix.n, _mutate_entries(matrix.entries, matrix.n, k))
    raise TypeError(f"cannot mutate {type(matrix).__name__}")


def frame(b: ExchangeMatrix) -> IceQuiver:
    """Attach one frozen companion j* per vertex, with a single arrow j -> j*."""
    n = b.n
    identity = tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
    return IceQuiver(n, b.entries + identity)


def vertex_status(quiver: IceQuiver, i: int) -> VertexStatus:
    """Classify mutable vertex i as green or red from its frozen column sign."""
    if not 1 <= i <= quiver.n:
        raise IndexError(f"vertex {i} is not a mutable vertex (1..{quiver.n})")
    has_pos = False
    has_neg = False
    for row in quiver.frozen_rows:
        x = row[i - 1]
        if x > 0:
            has_pos = True
        elif x < 0:
            has_neg = True
    if has_pos and has_neg:
        raise SignCoherenceViolation(
            f"frozen column {i} carries both signs; input is outside the framed mutation class"
        )
    return VertexStatus.RED if has_neg else VertexStatus.GREEN


def statuses(quiver: IceQuiver) -> tuple[VertexStatus, ...]:
    return tuple(vertex_status(quiver, i) for i in range(1, quiver.n + 1))


def freeze(quiver: IceQuiver, vertices: Iterable[int]) -> IceQuiver:
    """Turn the given mutable vertices into frozen rows.

    Remaining mutable vertices keep their relative order and are renumbered
    1..n-|S|.  Newly frozen rows are placed before previously frozen ones.
    Arrows among frozen vertices disappear with the deleted columns.
    """
    chosen = sorted(set(vertices))
    if not chosen:
        raise ValueError("no vertices to freeze")
    for v in chosen:
        if not 1 <= v <= quiver.n:
            raise ValueError(f"vertex {v} is not a mutable vertex (1..{quiver.n})")
    kept = [v for v in range(1, quiver.n + 1) if v not in chosen]
    cols = [v - 1 for v in kept]

    def restrict(row):
        return tuple(row[c] for c in cols)

    principal = [restrict(quiver.entries[v - 1]) for v in kept]
    newly_frozen = [restrict(quiver.entries[v - 1]) for v in chosen]
    old_frozen = [restrict(row) for row in quiver.frozen_rows]
    return IceQuiver(len(kept), tuple(principal + newly_frozen + old_frozen))


def is_acyclic(matrix) -> bool:
    """True iff the digraph with an arc i -> j whenever b[i][j] > 0 has no cycle.

    Ice quivers are judged by their mutable part.
    """
    if isinstance(matrix, IceQuiver):
        entries = matrix.entries[: matrix.n]
        n = matrix.n
    else:
        entries = matrix.entries
        n = matrix.n
    indegree = [0] * n
    for i in range(n):
        for j in range(n):
            if entries[i][j] > 0:
                indegree[j] += 1
    queue = [v for v in range(n) if indegree[v] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for j in range(n):
            if entries[v][j] > 0:
                indegree[j] -= 1
                if indegree[j] == 0:
                    queue.append(j)
    return seen == n


def induced_subquiver(b: ExchangeMatrix, vertices: Iterable[int]) -> ExchangeMatrix:
    """Principal minor of b on the given vertex subset (order preserved, 1-based)."""
    chosen = sorted(set(vertices))
    if not chosen:
        raise ValueError("vertex subset must be nonempty")
    for v in chosen:
        if not 1 <= v <= b.n:
            raise ValueError(f"vertex {v} out of range 1..{b.n}")
    idx = [v - 1 for v in chosen]
    return ExchangeMatrix(tuple(tuple(b.entries[i][j] for j in idx) for i in idx))


def column_gcds(matrix) -> tuple[int, ...]:
    """Per-column gcd of absolute entries; 0 for an all-zero column.

    Invariant under mutation, for plain exchange matrices and ice quivers
    alike.  Shared primitive; re-exported by the class-explorer module.
    """
    entries = matrix.entries
    n = matrix.n
    out = []
    for j in range(n):
        g = 0
        for row in entries:
            g = math.gcd(g, abs(row[j]))
        out.append(g)
    return tuple(out)


def connected_components(b: ExchangeMatrix) -> list[tuple[int, ...]]:
    """Vertex sets of the underlying undirected graph's components (1-based)."""
    n = b.n
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v + 1)
            for w in range(n):
                if not seen[w] and (b.entries[v][w] != 0 or b.entries[w][v] != 0):
                    seen[w] = True
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return comps
