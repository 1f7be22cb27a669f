"""Oriented exchange graph search and maximal green sequences.

The graph is explored forward from the framed quiver, one depth level at a
time, mutating only at green vertices.  Nodes are isomorphism classes keyed by
canonical form; per-node, per-depth path counts are propagated level by level
(count(v, d+1) += count(u, d) over edges u -> v), so histograms of maximal
green sequence lengths come out of the same pass that builds the graph.
Counts are plain Python ints and never overflow.

Determinism: children are generated in increasing vertex label of the node's
canonical representative, nodes are registered in frontier order, and level
results are merged in a fixed order regardless of worker count, so identical
inputs give bit-identical graphs, histograms, and enumerations for any
``jobs`` value.  ``jobs=1`` bypasses the thread pool entirely and is the
reference semantics.

Several statements that are theorems for this construction are re-checked at
runtime and raise SearchInvariantError when violated (which would point to an
implementation bug, never bad user input): the green count drops by at most
one along an edge, the only all-green class is the framed source, the only
all-red class is the coframed sink, reachable classes have pairwise distinct
c-rows (rigidity), and the materialized graph is acyclic.
"""
from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from greenseq.canonical import apply_vertex_permutation, canonical_key, find_isomorphism
from greenseq.quiver import ExchangeMatrix, VertexColor, coframed, framed, opposite

__all__ = [
    "BudgetExceededError",
    "LengthHistogram",
    "MutationSequence",
    "NotAcyclicError",
    "SearchDag",
    "SearchInvariantError",
    "VerifyStatus",
    "admissible_source_numbering",
    "check_interval",
    "count_mgs",
    "enumerate_mgs",
    "explore",
    "full_exchange_graph",
    "full_exchange_graph_size",
    "opposition_map",
    "reaches_all_red",
    "source_numberings",
    "verify_sequence",
]


class SearchInvariantError(RuntimeError):
    """A structural theorem failed at runtime; indicates a bug, not bad input."""


class NotAcyclicError(ValueError):
    """Raised when a source numbering is requested for a cyclic quiver."""


class BudgetExceededError(Exception):
    """Node budget hit; carries partial statistics for diagnostics."""

    def __init__(self, nodes_materialized: int, depth: int, partial_counts=None):
        self.nodes_materialized = nodes_materialized
        self.depth = depth
        self.partial_counts = dict(partial_counts or {})
        super().__init__(
            f"node budget exceeded: {nodes_materialized} classes materialized "
            f"at depth {depth}"
        )


class VerifyStatus(enum.Enum):
    UNCHECKED = "unchecked"
    VALID_MAXIMAL_GREEN = "valid-maximal-green"
    INVALID = "invalid"


@dataclass(frozen=True)
class MutationSequence:
    """A candidate maximal green sequence with its verification verdict.

    failing_step is 1-based: the first non-green step, or len(vertices) when
    every step was green but the end state is not all-red.  terminal_perm is
    the permutation matching the end state against the coframed quiver.
    """

    vertices: tuple[int, ...]
    status: VerifyStatus = VerifyStatus.UNCHECKED
    failing_step: int | None = None
    terminal_perm: tuple[int, ...] | None = None

    def __len__(self):
        return len(self.vertices)


@dataclass
class Node:
    """One isomorphism class of the oriented exchange graph."""

    matrix: ExchangeMatrix  # canonical representative
    green: tuple[int, ...]  # green vertices of the representative
    index: int  # registration order
    counts: dict[int, int] = field(default_factory=dict)  # depth -> path count
    edges: list[tuple[int, bytes]] | None = None  # (vertex, child key)


@dataclass
class SearchDag:
    base: ExchangeMatrix
    max_length: int
    source_key: bytes
    coframed_key: bytes
    nodes: dict[bytes, Node]
    sink_key: bytes | None = None

    def sink_counts(self) -> dict[int, int]:
        if self.sink_key is None:
            return {}
        return dict(self.nodes[self.sink_key].counts)


@dataclass(frozen=True)
class LengthHistogram:
    """Counts of maximal green sequences by length, explored up to a bound.

    empirical_max is the detection-rule value: the smallest l with a sequence
    of length l but none of length l+1 (only meaningful when l+1 was within
    the explored bound).  It assumes lengths form an interval; realized
    lengths above it remain visible in counts.
    """

    counts: dict[int, int]
    explored_to: int

    @property
    def min_length(self):
        return min(self.counts) if self.counts else None

    @property
    def max_realized(self):
        return max(self.counts) if self.counts else None

    @property
    def empirical_max(self):
        if not self.counts:
            return None
        for l in range(self.min_length, self.explored_to):
            if self.counts.get(l, 0) > 0 and self.counts.get(l + 1, 0) == 0:
                return l
        return None

    @property
    def total(self):
        return sum(self.counts.values())


def check_interval(hist: LengthHistogram) -> bool:
    """True iff realized lengths have no gaps between min and max."""
    if hist.min_length is None:
        raise ValueError("no sequences found; interval check is undefined")
    return all(
        hist.counts.get(l, 0) > 0
        for l in range(hist.min_length, hist.max_realized + 1)
    )


# -- forward exploration ---------------------------------------------------


def _register(matrix: ExchangeMatrix):
    """Canonical representative, its key bytes, and its green vertices."""
    key = canonical_key(matrix)
    rep = apply_vertex_permutation(matrix, key.perm)
    return key.data, rep, rep.green_vertices()


def _check_new_node(dag: SearchDag, key: bytes, rep: ExchangeMatrix, green):
    n = rep.n
    c_rows = rep.c_matrix()
    if len(set(c_rows)) != n:
        raise SearchInvariantError("rigidity violated: repeated c-rows in a class")
    g = len(green)
    if g == n and key != dag.source_key:
        raise SearchInvariantError("all-green class differs from the framed source")
    if g == 0:
        if key != dag.coframed_key:
            raise SearchInvariantError("all-red class differs from the coframed quiver")
        if dag.sink_key is not None and dag.sink_key != key:
            raise SearchInvariantError("two distinct all-red classes")
        dag.sink_key = key


def _assert_acyclic(dag: SearchDag):
    indeg = {key: 0 for key in dag.nodes}
    for node in dag.nodes.values():
        for _, child in node.edges or ():
            indeg[child] += 1
    ready = [k for k, d in indeg.items() if d == 0]
    seen = 0
    while ready:
        key = ready.pop()
        seen += 1
        for _, child in dag.nodes[key].edges or ():
            indeg[child] -= 1
            if indeg[child] == 0:
                ready.append(child)
    if seen != len(dag.nodes):
        raise SearchInvariantError("materialized search graph contains a cycle")


def _expand(node: Node):
    out = []
    for k in node.green:
        child = node.matrix.mutate(k)
        out.append((k, _register(child)))
    return out


def explore(
    base: ExchangeMatrix,
    max_length: int,
    jobs: int = 1,
    node_budget: int | None = None,
) -> SearchDag:
    """Build the green-mutation graph from framed(base) out to depth max_length.

    base must have no frozen vertices.  Raises SignIncoherentError if a
    c-vector loses sign coherence (possible for valued inputs, where
    coherence is conjectural), and BudgetExceededError past node_budget.
    """
    if base.m != 0:
        raise ValueError("explore() expects a quiver without frozen vertices")
    if max_length < 0:
        raise ValueError("max_length must be >= 0")
    source_key, source_rep, source_green = _register(framed(base))
    coframed_key = canonical_key(coframed(base)).data

    dag = SearchDag(
        base=base,
        max_length=max_length,
        source_key=source_key,
        coframed_key=coframed_key,
        nodes={source_key: Node(source_rep, source_green, 0, {0: 1})},
    )
    _check_new_node(dag, source_key, source_rep, source_green)

    pool = ThreadPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for depth in range(max_length):
            active = [nd for nd in dag.nodes.values() if nd.counts.get(depth)]
            if not active:
                break
            fresh = [nd for nd in active if nd.edges is None and nd.green]
            if pool is not None:
                expansions = list(pool.map(_expand, fresh))
            else:
                expansions = [_expand(nd) for nd in fresh]
            for nd, expansion in zip(fresh, expansions):
                edges = []
                for k, (ckey, rep, green) in expansion:
                    child = dag.nodes.get(ckey)
                    if child is None:
                        if len(green) < len(nd.green) - 1:
                            raise SearchInvariantError(
                                "green count dropped by more than one along an edge"
                            )
                        child = Node(rep, green, len(dag.nodes))
                        dag.nodes[ckey] = child
                        _check_new_node(dag, ckey, rep, green)
                    edges.append((k, ckey))
                nd.edges = edges
            if node_budget is not None and len(dag.nodes) > node_budget:
                raise BudgetExceededError(
                    len(dag.nodes), depth + 1, dag.sink_counts()
                )
            for nd in active:
                here = nd.counts[depth]
                for _, ckey in nd.edges or ():
                    child = dag.nodes[ckey]
                    child.counts[depth + 1] = child.counts.get(depth + 1, 0) + here
    finally:
        if pool is not None:
            pool.shutdown(wait=False)

    _assert_acyclic(dag)
    return dag


def count_mgs(
    base: ExchangeMatrix,
    max_length: int,
    jobs: int = 1,
    node_budget: int | None = None,
) -> LengthHistogram:
    """Histogram of maximal green sequence lengths found up to max_length."""
    dag = explore(base, max_length, jobs=jobs, node_budget=node_budget)
    return LengthHistogram(dag.sink_counts(), max_length)


# -- enumeration -----------------------------------------------------------


def _distances_to_sink(dag: SearchDag) -> dict[bytes, int]:
    if dag.sink_key is None:
        return {}
    back: dict[bytes, list[bytes]] = {}
    for key, node in dag.nodes.items():
        for _, child in node.edges or ():
            back.setdefault(child, []).append(key)
    dist = {dag.sink_key: 0}
    frontier = [dag.sink_key]
    while frontier:
        nxt = []
        for key in frontier:
            for parent in back.get(key, ()):
                if parent not in dist:
                    dist[parent] = dist[key] + 1
                    nxt.append(parent)
        frontier = nxt
    return dist


def enumerate_mgs(
    base: ExchangeMatrix,
    max_length: int,
    jobs: int = 1,
    node_budget: int | None = None,
) -> list[MutationSequence]:
    """All maximal green sequences up to max_length, lexicographically ordered.

    Depth-first unwinding of the deduplicated graph, tracking the concrete
    matrix so emitted labels are in the input quiver's own labeling.  Every
    emitted sequence is re-verified from scratch.
    """
    dag = explore(base, max_length, jobs=jobs, node_budget=node_budget)
    dist = _distances_to_sink(dag)
    if dag.source_key not in dist:
        return []
    out: list[MutationSequence] = []

    def walk(state: ExchangeMatrix, key: bytes, depth: int, prefix: list[int]):
        if not dag.nodes[key].green:
            checked = verify_sequence(base, tuple(prefix))
            if checked.status is not VerifyStatus.VALID_MAXIMAL_GREEN:
                raise SearchInvariantError(
                    f"enumerated sequence failed re-verification: {prefix}"
                )
            out.append(checked)
            return
        if depth == max_length:
            return
        for k in state.green_vertices():
            child = state.mutate(k)
            ckey = canonical_key(child).data
            residual = dist.get(ckey)
            if residual is None or depth + 1 + residual > max_length:
                continue
            walk(child, ckey, depth + 1, prefix + [k])

    walk(framed(base), dag.source_key, 0, [])
    return out


# -- verification ----------------------------------------------------------


def verify_sequence(base: ExchangeMatrix, vertices) -> MutationSequence:
    """Check that vertices is a maximal green sequence for base.

    Each step must mutate a green vertex of the running framed state and the
    end state must be all-red.  Raises ValueError for out-of-range labels
    (malformed input rather than a failed verification).
    """
    if base.m != 0:
        raise ValueError("verify_sequence() expects a quiver without frozen vertices")
    seq = tuple(int(k) for k in vertices)
    for k in seq:
        if not 1 <= k <= base.n:
            raise ValueError(f"vertex {k} out of range 1..{base.n}")
    state = framed(base)
    for step, k in enumerate(seq, 1):
        if state.vertex_color(k) is not VertexColor.GREEN:
            return MutationSequence(seq, VerifyStatus.INVALID, failing_step=step)
        state = state.mutate(k)
    if not state.is_all_red():
        return MutationSequence(seq, VerifyStatus.INVALID, failing_step=len(seq))
    perm = find_isomorphism(coframed(base), state)
    if perm is None:
        raise SearchInvariantError("all-red end state is not a coframed relabeling")
    return MutationSequence(
        seq, VerifyStatus.VALID_MAXIMAL_GREEN, terminal_perm=perm
    )


def opposition_map(base: ExchangeMatrix, ms: MutationSequence) -> MutationSequence:
    """The reversed, relabeled sequence for the opposite quiver.

    With terminal permutation pi, (i_1..i_l) maps to
    (pi^-1(i_l), .., pi^-1(i_1)), a maximal green sequence for opposite(base)
    of the same length; the result is re-verified before being returned.
    """
    if ms.status is VerifyStatus.UNCHECKED:
        ms = verify_sequence(base, ms.vertices)
    if ms.status is not VerifyStatus.VALID_MAXIMAL_GREEN:
        raise ValueError("opposition_map needs a verified maximal green sequence")
    pi = ms.terminal_perm
    assert pi is not None
    inv = [0] * len(pi)
    for i, p in enumerate(pi):
        inv[p - 1] = i + 1
    mapped = tuple(inv[k - 1] for k in reversed(ms.vertices))
    checked = verify_sequence(opposite(base), mapped)
    if checked.status is not VerifyStatus.VALID_MAXIMAL_GREEN:
        raise SearchInvariantError("opposition image failed verification")
    return checked


# -- acyclic quivers -------------------------------------------------------


def source_numberings(base: ExchangeMatrix):
    """Yield every admissible source numbering (all topological orders).

    A source of the remaining subquiver has no incoming arrows from remaining
    vertices.  Raises NotAcyclicError when no source exists at some step.
    """
    if base.m != 0:
        raise ValueError("source numberings expect a quiver without frozen vertices")
    n = base.n
    ent = base.entries

    def rec(remaining: list[int], prefix: list[int]):
        if not remaining:
            yield tuple(prefix)
            return
        sources = [
            i for i in remaining
            if all(ent[j - 1][i - 1] <= 0 for j in remaining if j != i)
        ]
        if not sources:
            raise NotAcyclicError(
                f"no source among remaining vertices {remaining}; quiver is cyclic"
            )
        for i in sources:
            yield from rec([j for j in remaining if j != i], prefix + [i])

    yield from rec(list(range(1, n + 1)), [])


def admissible_source_numbering(base: ExchangeMatrix) -> MutationSequence:
    """Greedy smallest-label source peeling; verified before returning.

    Mutating along any admissible source numbering is a maximal green
    sequence of the minimum possible length n.
    """
    n = base.n
    ent = base.entries
    remaining = list(range(1, n + 1))
    order = []
    while remaining:
        for i in remaining:
            if all(ent[j - 1][i - 1] <= 0 for j in remaining if j != i):
                order.append(i)
                remaining.remove(i)
                break
        else:
            raise NotAcyclicError("quiver has an oriented cycle")
    checked = verify_sequence(base, tuple(order))
    if checked.status is not VerifyStatus.VALID_MAXIMAL_GREEN:
        raise SearchInvariantError("source numbering failed verification")
    return checked


# -- whole exchange graph and bounded reachability -------------------------


def full_exchange_graph(
    base: ExchangeMatrix, node_budget: int | None = None
) -> SearchDag:
    """Closure of the framed quiver under mutation in every direction.

    Unlike explore(), red mutations are followed too, so this reaches every
    class of the exchange graph; edges still point in the green direction
    (each unordered adjacency has exactly one green side).  Finite exactly
    for finite cluster type, hence the budget.
    """
    if base.m != 0:
        raise ValueError("expects a quiver without frozen vertices")
    source_key, source_rep, source_green = _register(framed(base))
    dag = SearchDag(
        base=base,
        max_length=0,
        source_key=source_key,
        coframed_key=canonical_key(coframed(base)).data,
        nodes={source_key: Node(source_rep, source_green, 0, {0: 1})},
    )
    _check_new_node(dag, source_key, source_rep, source_green)
    frontier = [source_key]
    while frontier:
        nxt = []
        for key in frontier:
            node = dag.nodes[key]
            edges = []
            for k in range(1, node.matrix.n + 1):
                ckey, rep, green = _register(node.matrix.mutate(k))
                if ckey not in dag.nodes:
                    dag.nodes[ckey] = Node(rep, green, len(dag.nodes))
                    _check_new_node(dag, ckey, rep, green)
                    if node_budget is not None and len(dag.nodes) > node_budget:
                        raise BudgetExceededError(len(dag.nodes), -1)
                    nxt.append(ckey)
                if k in node.green:
                    edges.append((k, ckey))
            node.edges = edges
        frontier = nxt
    _assert_acyclic(dag)
    return dag


def full_exchange_graph_size(base: ExchangeMatrix, node_budget: int | None) -> int:
    """Number of quiver classes in the exchange graph, budget-guarded."""
    return len(full_exchange_graph(base, node_budget).nodes)


def reaches_all_red(matrix: ExchangeMatrix, max_depth: int) -> bool:
    """Bounded lookahead: can green mutations reach an all-red state?"""
    seen = {canonical_key(matrix).data}
    frontier = [matrix]
    if matrix.is_all_red():
        return True
    for _ in range(max_depth):
        nxt = []
        for mat in frontier:
            for k in mat.green_vertices():
                child = mat.mutate(k)
                key = canonical_key(child).data
                if key in seen:
                    continue
                seen.add(key)
                if child.is_all_red():
                    return True
                nxt.append(child)
        if not nxt:
            return False
        frontier = nxt
    return False
