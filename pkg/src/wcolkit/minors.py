"""Congested shallow minor models and order pull-backs.

A model maps each vertex of a pattern graph H to a connected branch set in
a host graph G.  The model declares a congestion bound c (how many branch
sets may share one host vertex) and a depth bound d (radius of each branch
set); depth None means no radius bound beyond connectivity.  Pattern edges
must join touching branch sets.

Pulling a host ordering back through a model orders H-vertices by the
earliest host vertex of their branch sets.  The weak coloring number of
the pulled-back order is controlled by the host's weak coloring number at
a blown-up radius; ``check_transfer_inequality`` verifies that bound on
concrete instances.

Model files::

    model <|V(H)|> c=<c> d=<d|inf>
    <u> : <v1> <v2> ...      (one line per H-vertex, its branch set)
    he <x> <y>               (pattern edges)
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Mapping

from .graphs import (
    Graph,
    GraphFormatError,
    InvariantViolation,
    VertexOrdering,
    bfs_distances,
    radius,
    touch,
)
from .wcol import wcol_of_order


class MalformedModelError(ValueError):
    """The model structure itself is broken (not merely invalid)."""


class InvalidModelError(ValueError):
    """A structurally sound model that fails validation where validity is required."""


@dataclass(frozen=True)
class MinorModel:
    """Branch sets in a host graph realizing a pattern graph.

    ``branch_sets[u]`` is the host vertex set for pattern vertex u.
    ``depth`` of None disables the radius bound.
    """

    host: Graph
    pattern: Graph
    branch_sets: tuple
    congestion: int
    depth: "int | None"

    def __post_init__(self):
        object.__setattr__(
            self, "branch_sets", tuple(frozenset(s) for s in self.branch_sets)
        )


@dataclass(frozen=True)
class ValidationReport:
    """Per-condition verdicts with the smallest counterexample of each."""

    radius_ok: bool
    radius_bad_vertex: "int | None"
    congestion_ok: bool
    congestion_bad_vertex: "int | None"
    edges_ok: bool
    edges_bad_edge: "tuple | None"
    observed_congestion: int
    observed_depth: "int | float"

    @property
    def valid(self) -> bool:
        return self.radius_ok and self.congestion_ok and self.edges_ok


def _check_model_shape(model: MinorModel) -> None:
    if len(model.branch_sets) != model.pattern.n:
        raise MalformedModelError(
            f"malformed: {model.pattern.n} pattern vertices but "
            f"{len(model.branch_sets)} branch sets"
        )
    for u, branch in enumerate(model.branch_sets):
        if not branch:
            raise MalformedModelError(f"malformed: branch set of {u} is empty")
        for v in branch:
            if not (0 <= v < model.host.n):
                raise MalformedModelError(
                    f"malformed: branch set of {u} names host vertex {v} out of range"
                )
    if model.congestion < 1:
        raise MalformedModelError("malformed: congestion bound must be positive")
    if model.depth is not None and model.depth < 0:
        raise MalformedModelError("malformed: depth bound must be nonnegative")


def validate_model(model: MinorModel) -> ValidationReport:
    """Check radius/connectivity, congestion, and edge touching.

    Counterexamples are the smallest pattern vertex, host vertex, or
    pattern edge in lexicographic order.  Structurally broken models raise
    MalformedModelError instead.
    """
    _check_model_shape(model)
    host = model.host

    radius_bad = None
    observed_depth = 0
    bound = float("inf") if model.depth is None else model.depth
    for u in range(model.pattern.n):
        r = radius(host, model.branch_sets[u])
        if r > observed_depth:
            observed_depth = r
        if r > bound and radius_bad is None:
            radius_bad = u

    load = [0] * host.n
    for branch in model.branch_sets:
        for v in branch:
            load[v] += 1
    observed_congestion = max(load, default=0)
    congestion_bad = None
    for v in range(host.n):
        if load[v] > model.congestion:
            congestion_bad = v
            break

    edges_bad = None
    for x, y in sorted(model.pattern.edges):
        if not touch(host, model.branch_sets[x], model.branch_sets[y]):
            edges_bad = (x, y)
            break

    return ValidationReport(
        radius_ok=radius_bad is None,
        radius_bad_vertex=radius_bad,
        congestion_ok=congestion_bad is None,
        congestion_bad_vertex=congestion_bad,
        edges_ok=edges_bad is None,
        edges_bad_edge=edges_bad,
        observed_congestion=observed_congestion,
        observed_depth=observed_depth,
    )


def identity_model(graph: Graph) -> MinorModel:
    """Each vertex is its own singleton branch set."""
    return MinorModel(
        host=graph,
        pattern=Graph(graph.n, graph.edges),
        branch_sets=tuple(frozenset([v]) for v in range(graph.n)),
        congestion=1,
        depth=0,
    )


def earliest_vertices(model: MinorModel, order: VertexOrdering) -> tuple:
    """For each pattern vertex, the host vertex of its branch set ranked first."""
    _check_model_shape(model)
    rank = order.rank
    return tuple(min(branch, key=lambda v: rank[v]) for branch in model.branch_sets)


def pull_back_order(model: MinorModel, order: VertexOrdering) -> VertexOrdering:
    """Order pattern vertices by the rank of their earliest host vertex.

    Ties break toward the smaller pattern vertex id.
    """
    if len(order) != model.host.n:
        raise ValueError("ordering length does not match host vertex count")
    rank = order.rank
    gamma = earliest_vertices(model, order)
    perm = sorted(range(model.pattern.n), key=lambda u: (rank[gamma[u]], u))
    return VertexOrdering(tuple(perm))


def connection_path(model: MinorModel, order: VertexOrdering, x: int, y: int) -> tuple:
    """Shortest path between earliest vertices of two adjacent branch sets.

    The path stays inside the union of the two branch sets.  For a valid
    model of depth k the length is at most 4k+1.
    """
    gamma = earliest_vertices(model, order)
    union = model.branch_sets[x] | model.branch_sets[y]
    start, goal = gamma[x], gamma[y]
    parent = {start: None}
    queue = deque([start])
    adj = model.host.adjacency
    while queue and goal not in parent:
        v = queue.popleft()
        for w in adj[v]:
            if w in union and w not in parent:
                parent[w] = v
                queue.append(w)
    if goal not in parent:
        raise InvariantViolation(
            f"branch sets of pattern edge ({x}, {y}) are not connected in their union"
        )
    path = []
    node = goal
    while node is not None:
        path.append(node)
        node = parent[node]
    return tuple(reversed(path))


@dataclass(frozen=True)
class TransferReport:
    """Both sides of the pulled-back weak coloring bound.

    ``lhs`` is the pattern's weak coloring number under the pulled-back
    order at radius d; ``rhs`` is k times the host's at radius (4k+1)d.
    ``edge_paths`` holds one earliest-to-earliest path per pattern edge,
    each of length at most 4k+1.
    """

    lhs: int
    rhs: int
    holds: bool
    witness_vertex: int
    witness_reach: frozenset
    edge_paths: Mapping


def check_transfer_inequality(model: MinorModel, order: VertexOrdering, d: int) -> TransferReport:
    """Verify that the pulled-back order inherits the host's bound.

    Requires a valid model with a finite depth bound.  Any such model is
    k-congested of depth k for k = max(congestion, depth), and that k is
    used: the pattern side is measured at radius d, the host side at
    radius (4k+1)d, scaled by k.
    """
    report = validate_model(model)
    if not report.valid:
        raise InvalidModelError("invalid-model")
    if model.depth is None:
        raise ValueError("transfer check needs a depth bound on the model")
    if d < 0:
        raise ValueError("radius must be nonnegative")
    k = max(model.congestion, model.depth)
    pulled = pull_back_order(model, order)
    lhs_result = wcol_of_order(model.pattern, pulled, d) if model.pattern.n else None
    rhs_result = wcol_of_order(model.host, order, (4 * k + 1) * d)
    lhs = lhs_result.value if lhs_result else 0
    witness = lhs_result.witness_vertex if lhs_result else -1
    from .wcol import weak_reachability

    reach = (
        weak_reachability(model.pattern, pulled, d, witness)
        if lhs_result
        else frozenset()
    )
    paths = {}
    max_len = 4 * k + 1
    for x, y in sorted(model.pattern.edges):
        path = connection_path(model, order, x, y)
        if len(path) - 1 > max_len:
            raise InvariantViolation(
                f"connection path for pattern edge ({x}, {y}) exceeds {max_len}"
            )
        paths[(x, y)] = path
    rhs = k * rhs_result.value
    return TransferReport(
        lhs=lhs,
        rhs=rhs,
        holds=lhs <= rhs,
        witness_vertex=witness,
        witness_reach=reach,
        edge_paths=paths,
    )


def random_model(graph: Graph, k: int, seed: int, max_radius: "int | None" = None) -> MinorModel:
    """Grow branch sets as randomized breadth-first balls.

    Every vertex seeds one ball of random radius up to ``max_radius``
    (default k), skipping vertices already claimed by k other balls; seeds
    whose own slot quota is exhausted produce no pattern vertex.  Pattern
    edges are exactly the touching pairs, so the result always validates
    with congestion k and depth k.  Deterministic for a fixed seed.

    With ``max_radius=0`` every ball is a singleton and the result is the
    identity model of the graph.
    """
    if k < 1:
        raise ValueError("congestion bound must be positive")
    cap = k if max_radius is None else max_radius
    if cap < 0 or cap > k:
        raise ValueError("max_radius must lie in [0, k]")
    rng = random.Random(seed)
    load = [0] * graph.n
    branch_sets = []
    adj = graph.adjacency
    for seed_vertex in range(graph.n):
        if load[seed_vertex] >= k:
            continue
        r = rng.randint(0, cap)
        ball = {seed_vertex}
        load[seed_vertex] += 1
        frontier = [seed_vertex]
        for _ in range(r):
            candidates = []
            for v in frontier:
                for w in adj[v]:
                    if w not in ball and load[w] < k:
                        candidates.append(w)
            rng.shuffle(candidates)
            nxt = []
            for w in candidates:
                if w in ball or load[w] >= k:
                    continue
                if rng.random() < 0.9:
                    ball.add(w)
                    load[w] += 1
                    nxt.append(w)
            frontier = nxt
            if not frontier:
                break
        branch_sets.append(frozenset(ball))
    h = len(branch_sets)
    edges = frozenset(
        (i, j)
        for i in range(h)
        for j in range(i + 1, h)
        if touch(graph, branch_sets[i], branch_sets[j])
    )
    return MinorModel(
        host=graph,
        pattern=Graph(h, edges),
        branch_sets=tuple(branch_sets),
        congestion=k,
        depth=k,
    )


def parse_model(text: str, host: Graph) -> MinorModel:
    """Parse the model file format; see the module docstring."""
    header = None
    branches = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "model":
            if header is not None:
                raise GraphFormatError(f"line {lineno}: duplicate model line")
            if len(fields) != 4 or not fields[2].startswith("c=") or not fields[3].startswith("d="):
                raise GraphFormatError(f"line {lineno}: expected 'model <h> c=<c> d=<d>'")
            try:
                h = int(fields[1])
                c = int(fields[2][2:])
                dtext = fields[3][2:]
                depth = None if dtext == "inf" else int(dtext)
            except ValueError:
                raise GraphFormatError(f"line {lineno}: bad model header") from None
            header = (h, c, depth)
        elif fields[0] == "he":
            if len(fields) != 3:
                raise GraphFormatError(f"line {lineno}: expected 'he <x> <y>'")
            try:
                edges.append((int(fields[1]), int(fields[2])))
            except ValueError:
                raise GraphFormatError(f"line {lineno}: pattern edge must be numeric") from None
        elif len(fields) >= 2 and fields[1] == ":":
            try:
                u = int(fields[0])
                members = frozenset(int(f) for f in fields[2:])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: bad branch set line") from None
            if u in branches:
                raise GraphFormatError(f"line {lineno}: duplicate branch set for {u}")
            branches[u] = members
        else:
            raise GraphFormatError(f"line {lineno}: unrecognized line {line!r}")
    if header is None:
        raise GraphFormatError("missing model header line")
    h, c, depth = header
    if sorted(branches) != list(range(h)):
        raise GraphFormatError("branch set lines do not cover pattern vertices 0..h-1")
    try:
        pattern = Graph(h, frozenset(edges))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None
    return MinorModel(
        host=host,
        pattern=pattern,
        branch_sets=tuple(branches[u] for u in range(h)),
        congestion=c,
        depth=depth,
    )


def format_model(model: MinorModel) -> str:
    dtext = "inf" if model.depth is None else str(model.depth)
    lines = [f"model {model.pattern.n} c={model.congestion} d={dtext}"]
    for u, branch in enumerate(model.branch_sets):
        lines.append(f"{u} : " + " ".join(str(v) for v in sorted(branch)))
    lines.extend(f"he {x} {y}" for x, y in sorted(model.pattern.edges))
    return "\n".join(lines) + "\n"


def read_model(path, host: Graph) -> MinorModel:
    with open(path, encoding="utf-8") as handle:
        return parse_model(handle.read(), host)


def write_model(model: MinorModel, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(format_model(model))
