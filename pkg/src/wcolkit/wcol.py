"""Weak reachability sets and weak coloring numbers of orderings.

Under an ordering, a vertex u is weakly d-reachable from v when u comes no
later than v and some u-v path of length at most d uses only vertices that
come no earlier than u.  The weak coloring number of an ordering at radius
d is the largest weak reachability set it induces; minimizing that over
all orderings gives the graph invariant.

The core primitive works from the other end: for a vertex u, one breadth
first search over the vertices ranked after u collects exactly the set of
vertices that weakly reach back to u.  One such search per vertex yields
all weak reachability sets.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, VertexOrdering

DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class WcolResult:
    """Outcome of a weak coloring computation.

    ``exact`` is True only when ``value`` is known to be the minimum over
    all orderings; results tied to one given order report False.
    """

    value: int
    order: VertexOrdering
    witness_vertex: int
    exact: bool


def _check_args(graph: Graph, order: VertexOrdering, d: int) -> None:
    if len(order) != graph.n:
        raise ValueError("ordering length does not match vertex count")
    if d < 0:
        raise ValueError("radius must be nonnegative")


def _cluster(adj, rank, d: int, u: int):
    """Vertices reachable from u within d steps using ranks >= rank(u).

    Exactly the set of v with u weakly d-reachable from v.
    """
    base = rank[u]
    dist = {u: 0}
    frontier = [u]
    depth = 0
    while frontier and depth < d:
        depth += 1
        nxt = []
        for v in frontier:
            for w in adj[v]:
                if w not in dist and rank[w] > base:
                    dist[w] = depth
                    nxt.append(w)
        frontier = nxt
    return dist


def inverse_weak_reachability(graph: Graph, order: VertexOrdering, d: int, w: int) -> frozenset:
    """All v such that w is weakly d-reachable from v.  Contains w."""
    _check_args(graph, order, d)
    return frozenset(_cluster(graph.adjacency, order.rank, d, w))


def weak_reachability_sets(graph: Graph, order: VertexOrdering, d: int) -> list:
    """Weak d-reachability set of every vertex, as a list indexed by vertex."""
    _check_args(graph, order, d)
    adj = graph.adjacency
    rank = order.rank
    sets = [[] for _ in range(graph.n)]
    for u in range(graph.n):
        for v in _cluster(adj, rank, d, u):
            sets[v].append(u)
    return [frozenset(s) for s in sets]


def weak_reachability(graph: Graph, order: VertexOrdering, d: int, v: int) -> frozenset:
    """Weak d-reachability set of one vertex.  Always contains v; d=0 gives {v}."""
    _check_args(graph, order, d)
    if not (0 <= v < graph.n):
        raise ValueError(f"vertex {v} out of range")
    adj = graph.adjacency
    rank = order.rank
    out = set()
    for u in range(graph.n):
        if rank[u] <= rank[v] and v in _cluster(adj, rank, d, u):
            out.add(u)
    return frozenset(out)


def weak_reachability_paths(graph: Graph, order: VertexOrdering, d: int, v: int) -> dict:
    """Witness paths for the weak d-reachability set of v.

    Maps each reachable u to one shortest witness path (v, ..., u) whose
    vertices all rank at least u.  Every suffix of a witness path is a
    witness for its own start vertex.
    """
    _check_args(graph, order, d)
    adj = graph.adjacency
    rank = order.rank
    paths = {}
    for u in range(graph.n):
        if rank[u] > rank[v]:
            continue
        base = rank[u]
        parent = {u: None}
        frontier = [u]
        depth = 0
        while frontier and depth < d and v not in parent:
            depth += 1
            nxt = []
            for x in frontier:
                for w in adj[x]:
                    if w not in parent and rank[w] > base:
                        parent[w] = x
                        nxt.append(w)
            frontier = nxt
        if v not in parent:
            continue
        path = []
        node = v
        while node is not None:
            path.append(node)
            node = parent[node]
        paths[u] = tuple(path)
    return paths


def wcol_of_order(graph: Graph, order: VertexOrdering, d: int) -> WcolResult:
    """Weak coloring number of one fixed ordering.

    The witness vertex is the smallest vertex attaining the maximum set
    size.  ``exact`` is False: the value bounds the graph invariant from
    above but is exact only for this order.
    """
    if graph.n == 0:
        raise ValueError("weak coloring of the empty graph is undefined")
    sets = weak_reachability_sets(graph, order, d)
    value = max(len(s) for s in sets)
    witness = min(v for v in range(graph.n) if len(sets[v]) == value)
    return WcolResult(value=value, order=order, witness_vertex=witness, exact=False)


def degeneracy_order(graph: Graph) -> VertexOrdering:
    """Repeatedly strip a minimum degree vertex; place it rightmost.

    Ties break toward the smallest vertex id.  The resulting order puts
    densely connected vertices early, which keeps weak reachability sets
    small on sparse graphs.
    """
    n = graph.n
    degree = [graph.degree(v) for v in range(n)]
    alive = [True] * n
    removed = []
    for _ in range(n):
        best = min((degree[v], v) for v in range(n) if alive[v])[1]
        alive[best] = False
        removed.append(best)
        for w in graph.adjacency[best]:
            if alive[w]:
                degree[w] -= 1
    return VertexOrdering(tuple(reversed(removed)))


def wcol_heuristic(graph: Graph, d: int, canonical: "VertexOrdering | None" = None) -> WcolResult:
    """Best of the degeneracy order and an optional supplied order.

    Ties go to the degeneracy order.
    """
    result = wcol_of_order(graph, degeneracy_order(graph), d)
    if canonical is not None:
        other = wcol_of_order(graph, canonical, d)
        if other.value < result.value:
            result = other
    return result


def _search_order(graph: Graph, d: int, target: int, budget: list) -> "tuple | None | bool":
    """Look for an ordering whose weak coloring number stays within target.

    Returns a permutation when one exists, False when none exists, and
    None when the node budget ran out first.  Vertices are appended left
    to right; a placement u adds u to the weak reachability set of every
    vertex that reaches u through the not yet placed region, so counts
    only ever grow and infeasible prefixes can be cut early.
    """
    n = graph.n
    adj = graph.adjacency
    counts = [0] * n
    unplaced = [True] * n
    prefix = []

    def cluster_of(u: int):
        dist = {u: 0}
        frontier = [u]
        depth = 0
        while frontier and depth < d:
            depth += 1
            nxt = []
            for v in frontier:
                for w in adj[v]:
                    if w not in dist and unplaced[w]:
                        dist[w] = depth
                        nxt.append(w)
            frontier = nxt
        return list(dist)

    def dfs() -> "bool | None":
        if len(prefix) == n:
            return True
        for u in range(n):
            if not unplaced[u]:
                continue
            budget[0] -= 1
            if budget[0] < 0:
                return None
            unplaced[u] = False
            cluster = cluster_of(u)
            ok = True
            for w in cluster:
                counts[w] += 1
                # unplaced vertices still owe themselves one slot
                if counts[w] + (1 if unplaced[w] else 0) > target:
                    ok = False
            if ok:
                prefix.append(u)
                sub = dfs()
                if sub:
                    return True
                prefix.pop()
                if sub is None:
                    for w in cluster:
                        counts[w] -= 1
                    unplaced[u] = True
                    return None
            for w in cluster:
                counts[w] -= 1
            unplaced[u] = True
        return False

    out = dfs()
    if out is True:
        return tuple(prefix)
    return out


def wcol_exact(graph: Graph, d: int, budget: int = DEFAULT_BUDGET) -> WcolResult:
    """Minimum weak coloring number over all orderings.

    Runs a budgeted decision search for each candidate value from a cheap
    lower bound up to the heuristic upper bound.  When the budget runs out
    the best order found so far is returned with ``exact`` False.
    """
    if graph.n == 0:
        raise ValueError("weak coloring of the empty graph is undefined")
    if d < 0:
        raise ValueError("radius must be nonnegative")
    incumbent = wcol_heuristic(graph, d)
    lower = 2 if graph.edges and d >= 1 else 1
    remaining = [budget]
    for target in range(lower, incumbent.value):
        found = _search_order(graph, d, target, remaining)
        if found is None:
            return incumbent
        if found is not False:
            result = wcol_of_order(graph, VertexOrdering(found), d)
            return WcolResult(result.value, result.order, result.witness_vertex, True)
    return WcolResult(incumbent.value, incumbent.order, incumbent.witness_vertex, True)
