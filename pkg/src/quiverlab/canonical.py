"""Canonical forms of exchange matrices under simultaneous vertex relabeling.

The canonical form is the row-major lexicographically smallest matrix over
all simultaneous row/column permutations.  Two matrices have equal canonical
forms exactly when one is a vertex relabeling of the other, which realizes
mutation classes as finite sets of representatives.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import ExchangeMatrix, Matrix, ResourceLimitError

DEFAULT_MAX_VERTICES = 12


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical matrix together with a relabeling that achieves it.

    ``permutation`` is 1-based: canonical position a holds original vertex
    ``permutation[a-1]``, i.e. ``matrix == original.permuted(permutation)``.
    """

    matrix: ExchangeMatrix
    permutation: tuple[int, ...]


def _twins(entries: Matrix, u: int, w: int, n: int) -> bool:
    # True when swapping u and w is an automorphism, so one branch suffices.
    if entries[u][w] != 0:
        return False
    for x in range(n):
        if x == u or x == w:
            continue
        if entries[u][x] != entries[w][x] or entries[x][u] != entries[x][w]:
            return False
    return True


def _compare_bound(entries: Matrix, placed: list[int], remaining: list[int], best: tuple[int, ...], n: int) -> int:
    """Compare an optimistic completion of `placed` against `best`.

    Returns -1 when the branch can still beat `best`, +1 when it provably
    cannot, 0 on a tie over everything the partial assignment constrains.
    Row r of the bound uses the known prefix followed by the sorted multiset
    of the row's unplaced entries, which lower-bounds any true completion.
    """
    k = len(placed)
    for r in range(k):
        base = r * n
        row = entries[placed[r]]
        for c in range(k):
            v = row[placed[c]]
            bv = best[base + c]
            if v != bv:
                return -1 if v < bv else 1
        rest = sorted(row[u] for u in remaining)
        for idx, v in enumerate(rest):
            bv = best[base + k + idx]
            if v != bv:
                return -1 if v < bv else 1
    return 0


def canonical_form(b: ExchangeMatrix, max_vertices: int = DEFAULT_MAX_VERTICES) -> CanonicalForm:
    """Deterministic canonical form by pruned search over permutations."""
    n = b.n
    if n > max_vertices:
        raise ResourceLimitError(
            f"canonical form limited to {max_vertices} vertices, got {n}"
        )
    if n == 0:
        return CanonicalForm(b, ())
    entries = b.entries

    def flatten(perm: list[int]) -> tuple[int, ...]:
        return tuple(entries[r][c] for r in perm for c in perm)

    identity = list(range(n))
    best_flat = flatten(identity)
    best_perm = identity[:]

    def descend(placed: list[int], remaining: list[int]) -> None:
        nonlocal best_flat, best_perm
        if not remaining:
            cand = flatten(placed)
            if cand < best_flat:
                best_flat = cand
                best_perm = placed[:]
            return
        if _compare_bound(entries, placed, remaining, best_flat, n) > 0:
            return
        reps: list[int] = []
        for u in remaining:
            if any(_twins(entries, u, w, n) for w in reps):
                continue
            reps.append(u)
        k = len(placed)
        reps.sort(
            key=lambda u: (
                tuple(entries[u][p] for p in placed),
                tuple(sorted(entries[u][x] for x in remaining if x != u)),
            )
        )
        for u in reps:
            descend(placed + [u], [x for x in remaining if x != u])

    descend([], identity)
    matrix = ExchangeMatrix(
        tuple(tuple(best_flat[r * n + c] for c in range(n)) for r in range(n))
    )
    return CanonicalForm(matrix, tuple(v + 1 for v in best_perm))


def canonical_key(b: ExchangeMatrix, max_vertices: int = DEFAULT_MAX_VERTICES) -> Matrix:
    """Hashable canonical entries, for deduplication sets."""
    return canonical_form(b, max_vertices).matrix.entries
