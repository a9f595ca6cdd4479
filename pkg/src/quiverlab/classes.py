"""Mutation-class enumeration, mutation-finiteness, and class invariants."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import obstructions
from .canonical import canonical_form
from .core import (
    ExchangeMatrix,
    ResourceLimitError,
    column_gcds,
    connected_components,
    induced_subquiver,
    is_acyclic,
    mutate,
)

__all__ = [
    "MutationClass",
    "FoundAcyclic",
    "NotWithinCap",
    "ImpossibleByColoring",
    "enumerate_class",
    "is_mutation_finite",
    "class_contains_acyclic",
    "column_gcds",
]

DEFAULT_MAX_QUIVERS = 10_000
DEFAULT_MAX_MULTIPLICITY = 32


@dataclass(frozen=True)
class MutationClass:
    """Mutation class up to vertex relabeling.

    ``representatives`` are canonical matrices in discovery order, the first
    being the canonical form of the seed.  ``edges`` holds triples
    (rep_index, vertex, rep_index) recording which mutation connects which
    representatives; indices are 0-based positions in ``representatives``,
    vertices are 1-based.  ``complete`` is False when a cap was hit.
    """

    representatives: tuple[ExchangeMatrix, ...]
    complete: bool
    edges: frozenset[tuple[int, int, int]]


def enumerate_class(
    b: ExchangeMatrix,
    max_quivers: int = DEFAULT_MAX_QUIVERS,
    max_multiplicity: int = DEFAULT_MAX_MULTIPLICITY,
) -> MutationClass:
    """Breadth-first closure of the seed's canonical form under mutation."""
    if max_quivers <= 0 or max_multiplicity <= 0:
        raise ValueError("caps must be positive")
    seed = canonical_form(b).matrix
    index = {seed.entries: 0}
    reps = [seed]
    edges: set[tuple[int, int, int]] = set()
    queue = deque([0])
    complete = True
    while queue:
        a = queue.popleft()
        rep = reps[a]
        for k in range(1, rep.n + 1):
            neighbor = mutate(rep, k)
            if any(abs(x) > max_multiplicity for row in neighbor.entries for x in row):
                complete = False
                continue
            key = canonical_form(neighbor).matrix.entries
            if key not in index:
                if len(reps) >= max_quivers:
                    complete = False
                    continue
                index[key] = len(reps)
                reps.append(ExchangeMatrix(key))
                queue.append(index[key])
            edges.add((a, k, index[key]))
    return MutationClass(tuple(reps), complete, frozenset(edges))


def _component_is_mutation_finite(b: ExchangeMatrix, max_states: int) -> bool:
    if b.n <= 2:
        return True
    if any(abs(x) >= 3 for row in b.entries for x in row):
        return False
    seen = {canonical_form(b).matrix.entries}
    queue = deque([ExchangeMatrix(next(iter(seen)))])
    while queue:
        rep = queue.popleft()
        for k in range(1, rep.n + 1):
            neighbor = mutate(rep, k)
            if any(abs(x) >= 3 for row in neighbor.entries for x in row):
                return False
            key = canonical_form(neighbor).matrix.entries
            if key not in seen:
                if len(seen) >= max_states:
                    raise ResourceLimitError(
                        f"mutation-finiteness closure exceeded {max_states} states"
                    )
                seen.add(key)
                queue.append(ExchangeMatrix(key))
    return True


def is_mutation_finite(b: ExchangeMatrix, max_states: int = 1_000_000) -> bool:
    """Decide mutation-finiteness.

    Rank <= 2 components are always finite.  A connected component of rank
    >= 3 is mutation-infinite exactly when some member of its class carries
    an arrow of multiplicity >= 3, so the closure over members with all
    multiplicities <= 2 terminates.  Disconnected inputs are treated
    componentwise.  ``max_states`` is a safety valve only; it is far beyond
    the size of any class this criterion needs to walk.
    """
    for component in connected_components(b):
        if not _component_is_mutation_finite(induced_subquiver(b, component), max_states):
            return False
    return True


@dataclass(frozen=True)
class FoundAcyclic:
    """A mutation sequence from the seed whose endpoint is acyclic."""

    sequence: tuple[int, ...]


@dataclass(frozen=True)
class NotWithinCap:
    """No acyclic member found; `exhausted` is True when the whole class was
    walked (rather than the cap being hit)."""

    explored: int
    exhausted: bool = False


@dataclass(frozen=True)
class ImpossibleByColoring:
    """No acyclic quiver exists anywhere in the class: the admissibility
    system over GF(2) is unsatisfiable."""

    refutation: "obstructions.Unsatisfiable"


def class_contains_acyclic(
    b: ExchangeMatrix, max_quivers: int = DEFAULT_MAX_QUIVERS
) -> FoundAcyclic | NotWithinCap | ImpossibleByColoring:
    """Search the class for an acyclic member, or refute via coloring."""
    if is_acyclic(b):
        return FoundAcyclic(())
    coloring = obstructions.admissible_coloring(b)
    if isinstance(coloring, obstructions.Unsatisfiable):
        return ImpossibleByColoring(coloring)
    seen = {canonical_form(b).matrix.entries}
    queue = deque([(b, ())])
    while queue:
        state, path = queue.popleft()
        for k in range(1, state.n + 1):
            neighbor = mutate(state, k)
            key = canonical_form(neighbor).matrix.entries
            if key in seen:
                continue
            if is_acyclic(neighbor):
                return FoundAcyclic(path + (k,))
            if len(seen) >= max_quivers:
                return NotWithinCap(len(seen), exhausted=False)
            seen.add(key)
            queue.append((neighbor, path + (k,)))
    return NotWithinCap(len(seen), exhausted=True)
