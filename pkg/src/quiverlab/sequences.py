"""Replay, verification, and search of green / green-to-red mutation sequences.

All sequences act on the framed quiver of the given exchange matrix; a vertex
is green while no frozen row is negative in its column and red once none is
positive.  Searches deduplicate states by exact matrix equality: frozen rows
are labeled, so quotienting by isomorphism would change the semantics.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import (
    ExchangeMatrix,
    IceQuiver,
    Matrix,
    ResourceLimitError,
    VertexStatus,
    _mutate_entries,
    frame,
    mutate,
    statuses,
)
from .obstructions import MultipleArrowCycle, no_mgs_certificate


@dataclass(frozen=True)
class ReplayTrace:
    """Full record of a sequence replay from the framed quiver."""

    steps: tuple[int, ...]
    states: tuple[IceQuiver, ...]
    statuses: tuple[tuple[VertexStatus, ...], ...]
    green_steps: tuple[bool, ...]
    multiple_head_steps: tuple[bool, ...]

    @property
    def final_statuses(self) -> tuple[VertexStatus, ...]:
        return self.statuses[-1]

    def all_red(self) -> bool:
        return all(s is VertexStatus.RED for s in self.final_statuses)


def is_multiple_arrow_head(quiver: IceQuiver, v: int, count_frozen: bool = True) -> bool:
    """True when some arrow of multiplicity >= 2 points at mutable vertex v."""
    col = v - 1
    n = quiver.n
    for i in range(n):
        if quiver.entries[i][col] >= 2:
            return True
    if count_frozen:
        for row in quiver.frozen_rows:
            if row[col] <= -2:
                return True
    return False


def replay(b: ExchangeMatrix, steps: tuple[int, ...]) -> ReplayTrace:
    """Replay a mutation sequence from frame(b), recording states and colors."""
    state = frame(b)
    states = [state]
    status_list = [statuses(state)]
    green_flags = []
    head_flags = []
    for k in steps:
        green_flags.append(status_list[-1][k - 1] is VertexStatus.GREEN)
        head_flags.append(is_multiple_arrow_head(state, k))
        state = mutate(state, k)
        states.append(state)
        status_list.append(statuses(state))
    return ReplayTrace(
        steps=tuple(steps),
        states=tuple(states),
        statuses=tuple(status_list),
        green_steps=tuple(green_flags),
        multiple_head_steps=tuple(head_flags),
    )


def verify_green(b: ExchangeMatrix, steps: tuple[int, ...]) -> bool:
    """Every step mutates a currently green vertex."""
    return all(replay(b, steps).green_steps)


def verify_maximal_green(b: ExchangeMatrix, steps: tuple[int, ...]) -> bool:
    """Green at every step and all vertices red at the end."""
    trace = replay(b, steps)
    return all(trace.green_steps) and trace.all_red()


def verify_green_to_red(b: ExchangeMatrix, steps: tuple[int, ...]) -> bool:
    """All vertices red at the end; intermediate colors are unconstrained."""
    return replay(b, steps).all_red()


@dataclass(frozen=True)
class Found:
    sequence: tuple[int, ...]


@dataclass(frozen=True)
class ExhaustedToDepth:
    depth: int


@dataclass(frozen=True)
class Obstructed:
    certificate: MultipleArrowCycle


SearchOutcome = Found | ExhaustedToDepth | Obstructed


def _column_flags(entries: Matrix, n: int) -> tuple[list[bool], list[bool]]:
    """Per mutable vertex: (is green, is head of a multiple arrow)."""
    green = [True] * n
    bad_head = [False] * n
    for i, row in enumerate(entries):
        if i < n:
            for j in range(n):
                if row[j] >= 2:
                    bad_head[j] = True
        else:
            for j in range(n):
                x = row[j]
                if x < 0:
                    green[j] = False
                    if x <= -2:
                        bad_head[j] = True
    return green, bad_head


def _all_red(entries: Matrix, n: int) -> bool:
    for row in entries[n:]:
        for x in row:
            if x > 0:
                return False
    return True


def search_mgs(
    b: ExchangeMatrix,
    max_depth: int,
    *,
    prune_multiple_arrow_heads: bool = True,
    check_obstructions: bool = True,
    state_cap: int = 200_000,
    iterative_deepening: bool = False,
) -> SearchOutcome:
    """Search for a maximal green sequence up to the given length.

    Breadth-first over framed states, expanding green vertices only, so any
    result is a shortest maximal green sequence.  With pruning enabled, green
    vertices that are heads of a multiple arrow are skipped (no maximal green
    sequence ever mutates one).  When obstruction checking is on and the
    quiver carries an all-multiple oriented cycle, the search is skipped and
    the certificate returned; exhaustion alone never proves nonexistence.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be nonnegative")
    if check_obstructions:
        certificate = no_mgs_certificate(b)
        if certificate is not None:
            return Obstructed(certificate)
    if iterative_deepening:
        return _search_mgs_iterative(b, max_depth, prune_multiple_arrow_heads)
    n = b.n
    start = frame(b).entries
    if _all_red(start, n):
        return Found(())
    visited = {start}
    frontier: deque[tuple[Matrix, tuple[int, ...]]] = deque([(start, ())])
    depth = 0
    while frontier and depth < max_depth:
        depth += 1
        next_frontier: deque[tuple[Matrix, tuple[int, ...]]] = deque()
        for entries, path in frontier:
            green, bad_head = _column_flags(entries, n)
            for k in range(1, n + 1):
                if not green[k - 1]:
                    continue
                if prune_multiple_arrow_heads and bad_head[k - 1]:
                    continue
                child = _mutate_raw(entries, n, k)
                if child in visited:
                    continue
                if _all_red(child, n):
                    return Found(path + (k,))
                if len(visited) >= state_cap:
                    raise ResourceLimitError(
                        f"state cap {state_cap} exceeded", depth_reached=depth - 1
                    )
                visited.add(child)
                next_frontier.append((child, path + (k,)))
        frontier = next_frontier
    return ExhaustedToDepth(max_depth)


def _search_mgs_iterative(b: ExchangeMatrix, max_depth: int, prune: bool) -> SearchOutcome:
    # Depth-limited DFS with increasing limit: trades revisits for memory.
    n = b.n
    start = frame(b).entries
    if _all_red(start, n):
        return Found(())

    def bounded(entries: Matrix, path: tuple[int, ...], limit: int):
        if limit == 0:
            return None
        green, bad_head = _column_flags(entries, n)
        for k in range(1, n + 1):
            if not green[k - 1] or (prune and bad_head[k - 1]):
                continue
            if path and path[-1] == k:
                continue
            child = _mutate_raw(entries, n, k)
            if _all_red(child, n):
                return path + (k,)
            deeper = bounded(child, path + (k,), limit - 1)
            if deeper is not None:
                return deeper
        return None

    for limit in range(1, max_depth + 1):
        found = bounded(start, (), limit)
        if found is not None:
            return Found(found)
    return ExhaustedToDepth(max_depth)


def search_g2r(
    b: ExchangeMatrix,
    max_depth: int,
    *,
    state_cap: int = 500_000,
) -> SearchOutcome:
    """Breadth-first search for a green-to-red sequence.

    Every mutable vertex is expanded regardless of color; only the final
    all-red condition matters.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be nonnegative")
    n = b.n
    start = frame(b).entries
    if _all_red(start, n):
        return Found(())
    visited = {start}
    frontier: deque[tuple[Matrix, tuple[int, ...]]] = deque([(start, ())])
    depth = 0
    while frontier and depth < max_depth:
        depth += 1
        next_frontier: deque[tuple[Matrix, tuple[int, ...]]] = deque()
        for entries, path in frontier:
            for k in range(1, n + 1):
                if path and path[-1] == k:
                    continue
                child = _mutate_raw(entries, n, k)
                if child in visited:
                    continue
                if _all_red(child, n):
                    return Found(path + (k,))
                if len(visited) >= state_cap:
                    raise ResourceLimitError(
                        f"state cap {state_cap} exceeded", depth_reached=depth - 1
                    )
                visited.add(child)
                next_frontier.append((child, path + (k,)))
        frontier = next_frontier
    return ExhaustedToDepth(max_depth)


_mutate_raw = _mutate_entries
