"""Independent re-validation of serialized certificates.

This module deliberately avoids the generator's code: acyclicity and
bi-infinite-path checks run on a boolean transitive closure, chordless
cycles are re-derived by brute subset enumeration, and the GF(2) refutation
is checked as a single parity identity.  Only the core matrix type, mutation,
freezing, and the document format are shared.
"""

from __future__ import annotations

import math
from typing import Any

from .core import ExchangeMatrix, IceQuiver, freeze, mutate
from .docio import DocumentError, as_ice, parse_quiver


def _closure(entries, n: int) -> list[list[bool]]:
    """Reachability by paths of length >= 1 (Floyd-Warshall)."""
    reach = [[entries[i][j] > 0 for j in range(n)] for i in range(n)]
    for mid in range(n):
        row_mid = reach[mid]
        for i in range(n):
            if reach[i][mid]:
                row_i = reach[i]
                for j in range(n):
                    if row_mid[j]:
                        row_i[j] = True
    return reach


def _mutable_part_acyclic(q: IceQuiver) -> bool:
    reach = _closure(q.entries, q.n)
    return not any(reach[v][v] for v in range(q.n))


def _arrow_on_biinfinite_path(q: IceQuiver, i: int, j: int) -> bool:
    n = q.n
    reach = _closure(q.entries, n)
    on_cycle = [reach[v][v] for v in range(n)]
    upstream = any(on_cycle[u] and (u == i - 1 or reach[u][i - 1]) for u in range(n))
    downstream = any(on_cycle[u] and (u == j - 1 or reach[j - 1][u]) for u in range(n))
    return upstream and downstream


def _undirected(b: ExchangeMatrix) -> list[set[int]]:
    n = b.n
    adj = [set() for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if b.entries[i][j] != 0:
                adj[i].add(j)
    return adj


def _is_induced_cycle(b: ExchangeMatrix, vertices: list[int]) -> bool:
    """The listed vertices, in order, form a chordless cycle of the
    underlying simple graph: consecutive pairs adjacent, all others not."""
    length = len(vertices)
    if length < 3 or len(set(vertices)) != length:
        return False
    adj = _undirected(b)
    for s in range(length):
        for t in range(s + 1, length):
            u, v = vertices[s] - 1, vertices[t] - 1
            consecutive = t - s == 1 or (s == 0 and t == length - 1)
            if consecutive != (v in adj[u]):
                return False
    return True


def _cycle_direction_arcs(b: ExchangeMatrix, vertices: list[int]) -> tuple[list[tuple[int, int]], bool]:
    """Arcs used by the cycle (as stored in the diagram) and orientedness."""
    length = len(vertices)
    arcs = []
    forward = 0
    for t in range(length):
        u, v = vertices[t], vertices[(t + 1) % length]
        if b.entries[u - 1][v - 1] > 0:
            forward += 1
            arcs.append((u, v))
        else:
            arcs.append((v, u))
    return arcs, forward in (0, length)


def _check_multiple_arrow_cycle(doc: dict) -> list[str]:
    problems = []
    b = as_ice(parse_quiver(doc["quiver"])).principal()
    cycle = [int(v) for v in doc["cycle"]]
    if len(cycle) < 2 or len(set(cycle)) != len(cycle):
        return [f"not a simple cycle: {cycle}"]
    for v in cycle:
        if not 1 <= v <= b.n:
            return [f"vertex {v} out of range"]
    for t in range(len(cycle)):
        u, v = cycle[t], cycle[(t + 1) % len(cycle)]
        mult = b.entries[u - 1][v - 1]
        if mult < 2:
            problems.append(f"arrow {u}->{v} has multiplicity {mult} < 2")
    return problems


def _check_class_no_mgs(doc: dict) -> list[str]:
    problems = []
    b = as_ice(parse_quiver(doc["quiver"])).principal()
    claimed = [int(g) for g in doc["column_gcds"]]
    actual = [
        math.gcd(*(abs(b.entries[i][j]) for i in range(b.n)))
        for j in range(b.n)
    ]
    if claimed != actual:
        problems.append(f"column gcds are {actual}, certificate claims {claimed}")
    if any(g < 2 for g in actual):
        problems.append("some column gcd is below 2; single arrows are not excluded")

    arc_parity: dict[tuple[int, int], int] = {}
    oriented_count = 0
    for record in doc["witness_cycles"]:
        vertices = [int(v) for v in record["vertices"]]
        if not _is_induced_cycle(b, vertices):
            problems.append(f"witness {vertices} is not a chordless cycle")
            continue
        arcs, oriented = _cycle_direction_arcs(b, vertices)
        if oriented != bool(record["oriented"]):
            problems.append(f"witness {vertices} misclassified as oriented={record['oriented']}")
        if oriented:
            oriented_count += 1
        for arc in arcs:
            arc_parity[arc] = arc_parity.get(arc, 0) ^ 1
    leftover = sorted(a for a, p in arc_parity.items() if p)
    if leftover:
        problems.append(f"cycle constraints do not cancel; arcs {leftover} remain")
    if oriented_count % 2 == 0:
        problems.append("an even number of oriented cycles cannot yield a contradiction")
    return problems


def _replay(start: IceQuiver, sequence: list[int]) -> IceQuiver:
    state = start
    for k in sequence:
        state = mutate(state, int(k))
    return state


def _check_tree(node: dict, quiver: IceQuiver, problems: list[str], path: str) -> None:
    state = _replay(quiver, node.get("sequence", []))
    if node["type"] == "leaf":
        witness = as_ice(parse_quiver(node["witness"]))
        if witness.entries != state.entries or witness.n != state.n:
            problems.append(f"{path}: witness does not match the replayed state")
        if not _mutable_part_acyclic(state):
            problems.append(f"{path}: leaf state is not acyclic")
        return
    if node["type"] != "split":
        problems.append(f"{path}: unknown node type {node['type']!r}")
        return
    seed = as_ice(parse_quiver(node["seed"]))
    if seed.entries != state.entries or seed.n != state.n:
        problems.append(f"{path}: seed snapshot does not match the replayed state")
    i, j = (int(v) for v in node["arrow"])
    if not (1 <= i <= state.n and 1 <= j <= state.n) or state.entries[i - 1][j - 1] <= 0:
        problems.append(f"{path}: ({i},{j}) is not an arrow of the mutable part")
        return
    if _arrow_on_biinfinite_path(state, i, j):
        problems.append(f"{path}: arrow ({i},{j}) lies on a bi-infinite path")
    _check_tree(node["freeze_source"], freeze(state, {i}), problems, path + ".source")
    _check_tree(node["freeze_target"], freeze(state, {j}), problems, path + ".target")


def _check_local_acyclicity(doc: dict) -> list[str]:
    problems: list[str] = []
    quiver = as_ice(parse_quiver(doc["quiver"]))
    _check_tree(doc["tree"], quiver, problems, "root")
    return problems


def _check_coloring(doc: dict) -> list[str]:
    b = as_ice(parse_quiver(doc["quiver"])).principal()
    values = {
        (int(a[0]), int(a[1])): int(v)
        for a, v in zip(doc["arcs"], doc["values"])
    }
    problems = []
    for i in range(b.n):
        for j in range(b.n):
            if b.entries[i][j] > 0 and (i + 1, j + 1) not in values:
                problems.append(f"arc ({i + 1},{j + 1}) has no color")
    n = b.n
    adj = _undirected(b)
    # brute force every induced cycle: subsets whose induced graph is a cycle
    for mask in range(1, 1 << n):
        subset = [v for v in range(n) if mask >> v & 1]
        if len(subset) < 3:
            continue
        degrees = [len(adj[v] & set(subset)) for v in subset]
        if any(d != 2 for d in degrees):
            continue
        order = _trace_cycle(adj, subset)
        if order is None:
            continue
        arcs, oriented = _cycle_direction_arcs(b, [v + 1 for v in order])
        total = sum(values.get(arc, 0) for arc in arcs) % 2
        if total != (1 if oriented else 0):
            problems.append(
                f"cycle {[v + 1 for v in order]} sums to {total}, expected {1 if oriented else 0}"
            )
    return problems


def _trace_cycle(adj: list[set[int]], subset: list[int]) -> list[int] | None:
    """Order the subset along its unique cycle, or None if disconnected."""
    members = set(subset)
    start = subset[0]
    order = [start]
    prev = None
    current = start
    while True:
        next_options = [w for w in adj[current] & members if w != prev]
        if not next_options:
            return None
        nxt = next_options[0]
        if nxt == start:
            break
        if nxt in order:
            return None
        order.append(nxt)
        prev, current = current, nxt
    return order if len(order) == len(subset) else None


def check_certificate(doc: dict[str, Any]) -> list[str]:
    """Return a list of problems; an empty list means the certificate holds."""
    try:
        kind = doc["kind"]
        if kind == "multiple_arrow_cycle":
            return _check_multiple_arrow_cycle(doc)
        if kind == "class_no_mgs":
            return _check_class_no_mgs(doc)
        if kind == "local_acyclicity":
            return _check_local_acyclicity(doc)
        if kind == "admissible_coloring":
            return _check_coloring(doc)
        return [f"unknown certificate kind {kind!r}"]
    except (KeyError, TypeError, ValueError, DocumentError) as exc:
        return [f"malformed certificate: {exc}"]
