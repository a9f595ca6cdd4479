"""Machine-checkable obstruction and local-acyclicity certificates.

Everything returned here is a structured value that an independent checker
(see ``certcheck``) can re-validate from its serialized form alone:

* admissible colorings over GF(2), or a minimal inconsistent set of cycles;
* oriented cycles made entirely of multiple arrows (no maximal green
  sequence for this quiver);
* class-level certificates (column gcds >= 2 plus an unsatisfiable coloring
  system) ruling out maximal green sequences across the whole mutation class;
* covering pairs, and binary certificate trees witnessing local acyclicity.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import (
    ExchangeMatrix,
    IceQuiver,
    ResourceLimitError,
    column_gcds,
    freeze,
    is_acyclic,
    mutate,
)
from .docio import quiver_document

DEFAULT_MAX_CYCLES = 10_000


# -- diagrams and chordless cycles ------------------------------------------

@dataclass(frozen=True)
class Diagram:
    """Directed simple graph underlying a quiver: one arc per multiple arrow."""

    n: int
    arcs: tuple[tuple[int, int], ...]

    @classmethod
    def from_matrix(cls, b: ExchangeMatrix) -> "Diagram":
        arcs = tuple(
            (i + 1, j + 1)
            for i in range(b.n)
            for j in range(b.n)
            if b.entries[i][j] > 0
        )
        return cls(b.n, arcs)

    def undirected_adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in range(1, self.n + 1)}
        for i, j in self.arcs:
            adj[i].add(j)
            adj[j].add(i)
        return adj


def chordless_cycles(adj: dict[int, set[int]], max_cycles: int = DEFAULT_MAX_CYCLES) -> list[tuple[int, ...]]:
    """Chordless cycles of a simple undirected graph, as vertex tuples.

    Each cycle appears once, rotated so its smallest vertex comes first and
    its second vertex is smaller than its last.  Paths are grown through
    vertices larger than the starting vertex, rejecting any extension
    adjacent to an earlier path vertex, so exactly the induced cycles are
    produced.
    """
    cycles: list[tuple[int, ...]] = []
    vertices = sorted(adj)
    for start in vertices:
        # depth-first over induced paths anchored at `start`
        work = [[start, u] for u in sorted(adj[start], reverse=True) if u > start]
        while work:
            path = work.pop()
            last = path[-1]
            interior = path[1:-1]
            for w in sorted(adj[last], reverse=True):
                if w <= start or w in path:
                    continue
                if any(w in adj[v] for v in interior):
                    continue
                if w in adj[start]:
                    if len(path) >= 2 and path[1] < w:
                        cycles.append(tuple(path + [w]))
                        if len(cycles) > max_cycles:
                            raise ResourceLimitError(
                                f"more than {max_cycles} chordless cycles"
                            )
                else:
                    work.append(path + [w])
    return cycles


@dataclass(frozen=True)
class CycleWitness:
    """A chordless cycle of the diagram with its orientation class."""

    vertices: tuple[int, ...]
    oriented: bool


def _classify(diagram_arcs: frozenset[tuple[int, int]], cycle: tuple[int, ...]) -> CycleWitness:
    length = len(cycle)
    forward = 0
    for t in range(length):
        a, b = cycle[t], cycle[(t + 1) % length]
        if (a, b) in diagram_arcs:
            forward += 1
    oriented = forward == length or forward == 0
    return CycleWitness(cycle, oriented)


def _cycle_arcs(diagram_arcs: frozenset[tuple[int, int]], cycle: tuple[int, ...]) -> list[tuple[int, int]]:
    out = []
    length = len(cycle)
    for t in range(length):
        a, b = cycle[t], cycle[(t + 1) % length]
        out.append((a, b) if (a, b) in diagram_arcs else (b, a))
    return out


# -- admissible colorings over GF(2) ----------------------------------------

@dataclass(frozen=True)
class Coloring:
    """Arc labels in {0,1}: oriented chordless cycles sum to 1, others to 0."""

    arcs: tuple[tuple[int, int], ...]
    values: tuple[int, ...]

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(zip(self.arcs, self.values))


@dataclass(frozen=True)
class Unsatisfiable:
    """A minimal set of cycle constraints with no GF(2) solution."""

    cycles: tuple[CycleWitness, ...]


def _eliminate(equations: list[tuple[int, int]]) -> tuple[list[tuple[int, int, int]], int | None]:
    """Gaussian elimination over GF(2) on (mask, rhs) rows with provenance.

    Returns (echelon rows as (mask, rhs, provenance), witness provenance mask)
    where the witness is present iff some combination reduces to 0 = 1.  Rows
    are kept sorted by pivot (lowest set bit), so one ascending sweep fully
    reduces each incoming row: clearing pivot p only touches bits >= p.
    """
    rows: list[tuple[int, int, int]] = []
    for idx, (mask, rhs) in enumerate(equations):
        prov = 1 << idx
        for pivot_mask, pivot_rhs, pivot_prov in rows:
            if mask & (pivot_mask & -pivot_mask):
                mask ^= pivot_mask
                rhs ^= pivot_rhs
                prov ^= pivot_prov
        if mask == 0:
            if rhs == 1:
                return rows, prov
        else:
            pivot = mask & -mask
            pos = 0
            while pos < len(rows) and (rows[pos][0] & -rows[pos][0]) < pivot:
                pos += 1
            rows.insert(pos, (mask, rhs, prov))
    return rows, None


def _system(b: ExchangeMatrix, max_cycles: int):
    diagram = Diagram.from_matrix(b)
    arcs = sorted(diagram.arcs)
    arc_index = {arc: i for i, arc in enumerate(arcs)}
    arc_set = frozenset(diagram.arcs)
    witnesses = [
        _classify(arc_set, cyc)
        for cyc in chordless_cycles(diagram.undirected_adjacency(), max_cycles)
    ]
    equations = []
    for wit in witnesses:
        mask = 0
        for arc in _cycle_arcs(arc_set, wit.vertices):
            mask |= 1 << arc_index[arc]
        equations.append((mask, 1 if wit.oriented else 0))
    return arcs, witnesses, equations


def admissible_coloring(
    b: ExchangeMatrix, max_cycles: int = DEFAULT_MAX_CYCLES
) -> Coloring | Unsatisfiable:
    """Solve the cycle conditions over GF(2), or exhibit a minimal refutation."""
    arcs, witnesses, equations = _system(b, max_cycles)
    rows, witness_prov = _eliminate(equations)
    if witness_prov is not None:
        involved = _minimize_refutation(equations, witnesses, witness_prov)
        return Unsatisfiable(tuple(involved))
    # particular solution: free variables 0, pivots by back-substitution
    values = [0] * len(arcs)
    for mask, rhs, _ in sorted(rows, key=lambda r: (r[0] & -r[0]), reverse=True):
        pivot = (mask & -mask).bit_length() - 1
        acc = rhs
        rest = mask & ~(1 << pivot)
        while rest:
            low = rest & -rest
            acc ^= values[low.bit_length() - 1]
            rest ^= low
        values[pivot] = acc
    coloring = Coloring(tuple(arcs), tuple(values))
    assert _satisfies(coloring, witnesses, frozenset(arcs)), "solver produced a bad coloring"
    return coloring


def _satisfies(coloring: Coloring, witnesses: list[CycleWitness], arc_set: frozenset) -> bool:
    lookup = coloring.as_dict()
    for wit in witnesses:
        total = sum(lookup[arc] for arc in _cycle_arcs(arc_set, wit.vertices)) % 2
        if total != (1 if wit.oriented else 0):
            return False
    return True


def _minimize_refutation(equations, witnesses, witness_prov) -> list[CycleWitness]:
    chosen = [i for i in range(len(equations)) if witness_prov >> i & 1]

    def inconsistent(indices: list[int]) -> bool:
        _, prov = _eliminate([equations[i] for i in indices])
        return prov is not None

    changed = True
    while changed:
        changed = False
        for i in list(chosen):
            trial = [j for j in chosen if j != i]
            if inconsistent(trial):
                chosen = trial
                changed = True
                break
    return [witnesses[i] for i in chosen]


# -- no-MGS certificates -----------------------------------------------------

@dataclass(frozen=True)
class MultipleArrowCycle:
    """Oriented cycle whose arrows all have multiplicity >= 2."""

    vertices: tuple[int, ...]
    quiver: ExchangeMatrix


@dataclass(frozen=True)
class ClassLevelNoMgs:
    """Certificate that no member of the mutation class has a maximal green
    sequence: all column gcds are >= 2 (so no class member has a single
    arrow) and no admissible coloring exists (so no class member is acyclic);
    every member therefore contains an all-multiple oriented cycle."""

    gcds: tuple[int, ...]
    refutation: Unsatisfiable
    quiver: ExchangeMatrix


def multiple_arrow_cycle(b: ExchangeMatrix) -> tuple[int, ...] | None:
    """A directed cycle in the subgraph of arrows with multiplicity >= 2."""
    n = b.n
    succ = [
        [j for j in range(n) if b.entries[i][j] >= 2]
        for i in range(n)
    ]
    color = [0] * n  # 0 new, 1 on stack, 2 done
    parent = [-1] * n
    for root in range(n):
        if color[root]:
            continue
        stack = [(root, iter(succ[root]))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if color[w] == 0:
                    color[w] = 1
                    parent[w] = v
                    stack.append((w, iter(succ[w])))
                    advanced = True
                    break
                if color[w] == 1:
                    cycle = [w]
                    x = v
                    while x != w:
                        cycle.append(x)
                        x = parent[x]
                    cycle.reverse()
                    cycle = [c + 1 for c in cycle]
                    pivot = cycle.index(min(cycle))
                    return tuple(cycle[pivot:] + cycle[:pivot])
            if not advanced:
                color[v] = 2
                stack.pop()
    return None


def no_mgs_certificate(b: ExchangeMatrix) -> MultipleArrowCycle | None:
    """Obstruction to any maximal green sequence for this quiver.

    A cycle of multiple arrows obstructs the induced subquiver on its
    vertices, and obstructions lift from induced subquivers to the whole
    quiver.
    """
    cycle = multiple_arrow_cycle(b)
    if cycle is None:
        return None
    return MultipleArrowCycle(cycle, b)


def class_no_mgs_certificate(b: ExchangeMatrix) -> ClassLevelNoMgs | None:
    """Class-wide obstruction from gcds plus coloring unsatisfiability."""
    gcds = column_gcds(b)
    if any(g < 2 for g in gcds):
        return None
    refutation = admissible_coloring(b)
    if not isinstance(refutation, Unsatisfiable):
        return None
    return ClassLevelNoMgs(gcds, refutation, b)


# -- covering pairs ----------------------------------------------------------

def _tarjan_scc(succ: list[list[int]]) -> list[int]:
    """Iterative Tarjan; returns component id per vertex."""
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    comp = [-1] * n
    on_stack = [False] * n
    stack: list[int] = []
    counter = 0
    comp_count = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pos = work[-1]
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            while pos < len(succ[v]):
                w = succ[v][pos]
                pos += 1
                if index[w] == -1:
                    work[-1] = (v, pos)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = comp_count
                    if w == v:
                        break
                comp_count += 1
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    return comp


def covering_pairs(quiver: IceQuiver) -> tuple[tuple[int, int], ...]:
    """Arrows of the mutable part that lie on no bi-infinite path.

    An arrow lies on a bi-infinite path exactly when a cycle sits upstream of
    its source and a cycle sits downstream of its target; both sides are
    decided through strongly connected components of the mutable part.
    """
    n = quiver.n
    entries = quiver.entries
    succ = [[j for j in range(n) if entries[i][j] > 0] for i in range(n)]
    pred = [[i for i in range(n) if entries[i][j] > 0] for j in range(n)]
    comp = _tarjan_scc(succ)
    size: dict[int, int] = {}
    for c in comp:
        size[c] = size.get(c, 0) + 1
    cyclic = [v for v in range(n) if size[comp[v]] >= 2]

    def closure(seeds: list[int], neighbors: list[list[int]]) -> set[int]:
        seen = set(seeds)
        work = list(seeds)
        while work:
            v = work.pop()
            for w in neighbors[v]:
                if w not in seen:
                    seen.add(w)
                    work.append(w)
        return seen

    below_cycle = closure(cyclic, succ)   # vertices some cycle can reach
    above_cycle = closure(cyclic, pred)   # vertices that can reach some cycle
    out = []
    for i in range(n):
        for j in succ[i]:
            if not (i in below_cycle and j in above_cycle):
                out.append((i + 1, j + 1))
    return tuple(sorted(out))


# -- local-acyclicity certificates -------------------------------------------

@dataclass(frozen=True)
class AcyclicLeaf:
    """Mutation sequence from the node's seed to an acyclic quiver."""

    sequence: tuple[int, ...]
    witness: IceQuiver


@dataclass(frozen=True)
class CoverSplit:
    """Covering-pair split: mutate to ``seed``, pick ``arrow`` = (i, j) not on
    any bi-infinite path, then certify the freezings at i and at j."""

    sequence: tuple[int, ...]
    arrow: tuple[int, int]
    seed: IceQuiver
    freeze_source: "AcyclicLeaf | CoverSplit"
    freeze_target: "AcyclicLeaf | CoverSplit"


@dataclass(frozen=True)
class LocalAcyclicityCertificate:
    quiver: IceQuiver
    root: AcyclicLeaf | CoverSplit


@dataclass(frozen=True)
class Unknown:
    """Caps exhausted without a certificate; proves nothing."""

    reason: str


def _seed_walk(quiver: IceQuiver, mutation_depth: int, max_states: int):
    """Seeds within mutation_depth of the given one, in breadth-first order."""
    seen = {quiver.entries}
    frontier = [((), quiver)]
    yield (), quiver
    for _ in range(mutation_depth):
        new_frontier = []
        for path, state in frontier:
            for k in range(1, state.n + 1):
                child = mutate(state, k)
                if child.entries in seen:
                    continue
                if len(seen) >= max_states:
                    return
                seen.add(child.entries)
                item = (path + (k,), child)
                new_frontier.append(item)
                yield item
        frontier = new_frontier


def local_acyclicity_certificate(
    quiver: IceQuiver,
    mutation_depth: int = 2,
    recursion_depth: int | None = None,
    max_states: int = 2_000,
) -> LocalAcyclicityCertificate | Unknown:
    """Build a certificate tree by leaf checks and covering-pair splits.

    At each node: search seeds within ``mutation_depth`` for an acyclic
    mutable part (leaf); otherwise, at each seed in turn, split on a
    covering-pair arrow and recurse on both freezings.  Freezing removes a
    mutable vertex, so ``recursion_depth`` defaults to the rank.
    """
    if mutation_depth < 0 or max_states <= 0:
        raise ValueError("caps must be positive")
    if recursion_depth is None:
        recursion_depth = quiver.n

    def build(node: IceQuiver, depth_left: int) -> AcyclicLeaf | CoverSplit | None:
        seeds = list(_seed_walk(node, mutation_depth, max_states))
        for path, state in seeds:
            if is_acyclic(state):
                return AcyclicLeaf(path, state)
        if depth_left <= 0:
            return None
        for path, state in seeds:
            for arrow in covering_pairs(state):
                i, j = arrow
                source_child = build(freeze(state, {i}), depth_left - 1)
                if source_child is None:
                    continue
                target_child = build(freeze(state, {j}), depth_left - 1)
                if target_child is not None:
                    return CoverSplit(path, arrow, state, source_child, target_child)
        return None

    root = build(quiver, recursion_depth)
    if root is None:
        return Unknown(
            f"no certificate within mutation_depth={mutation_depth}, "
            f"recursion_depth={recursion_depth}"
        )
    return LocalAcyclicityCertificate(quiver, root)


# -- serialization -----------------------------------------------------------

def _tree_document(node: AcyclicLeaf | CoverSplit) -> dict:
    if isinstance(node, AcyclicLeaf):
        return {
            "type": "leaf",
            "sequence": list(node.sequence),
            "witness": quiver_document(node.witness),
        }
    return {
        "type": "split",
        "sequence": list(node.sequence),
        "arrow": list(node.arrow),
        "seed": quiver_document(node.seed),
        "freeze_source": _tree_document(node.freeze_source),
        "freeze_target": _tree_document(node.freeze_target),
    }


def certificate_document(cert) -> dict:
    """Serialize any certificate to a self-contained JSON document."""
    if isinstance(cert, MultipleArrowCycle):
        return {
            "kind": "multiple_arrow_cycle",
            "cycle": list(cert.vertices),
            "quiver": quiver_document(cert.quiver),
        }
    if isinstance(cert, ClassLevelNoMgs):
        return {
            "kind": "class_no_mgs",
            "column_gcds": list(cert.gcds),
            "witness_cycles": [
                {"vertices": list(w.vertices), "oriented": w.oriented}
                for w in cert.refutation.cycles
            ],
            "quiver": quiver_document(cert.quiver),
        }
    if isinstance(cert, LocalAcyclicityCertificate):
        return {
            "kind": "local_acyclicity",
            "quiver": quiver_document(cert.quiver),
            "tree": _tree_document(cert.root),
        }
    if isinstance(cert, Coloring):
        return {
            "kind": "admissible_coloring",
            "arcs": [list(a) for a in cert.arcs],
            "values": list(cert.values),
        }
    if isinstance(cert, Unsatisfiable):
        return {
            "kind": "coloring_refutation",
            "witness_cycles": [
                {"vertices": list(w.vertices), "oriented": w.oriented}
                for w in cert.cycles
            ],
        }
    raise TypeError(f"cannot serialize {type(cert).__name__}")
