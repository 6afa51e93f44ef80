"""Undirected graphs with optional vertex colors, and vertex orderings.

Vertices are dense integers 0..n-1.  Edges are unordered pairs of distinct
vertices.  Colors are named vertex subsets; a vertex may carry several
colors.  Everything here is immutable after construction, so values can be
shared freely.

File formats
------------
Graph files are line based.  ``#`` starts a comment, blank lines are
ignored::

    p <n> <m>
    e <u> <v>        (m of these, 0-based endpoints)
    c <v> <name>     (optional color memberships)

Ordering files hold one line with a permutation of 0..n-1, whitespace
separated.
"""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

INFINITE = math.inf


class GraphFormatError(ValueError):
    """A graph, ordering, or model file could not be parsed."""


class InvariantViolation(RuntimeError):
    """A property that is guaranteed to hold failed; indicates a bug."""


@dataclass(frozen=True)
class Graph:
    """An undirected graph on vertices 0..n-1.

    ``edges`` is normalized to a frozenset of (u, v) tuples with u < v.
    ``colors`` maps a color name to the frozenset of vertices carrying it.
    """

    n: int
    edges: frozenset = frozenset()
    colors: Mapping[str, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u} not allowed")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            normalized.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(normalized))
        frozen_colors = {}
        for name, members in dict(self.colors).items():
            members = frozenset(members)
            for v in members:
                if not (0 <= v < self.n):
                    raise ValueError(f"color {name!r} names vertex {v} out of range")
            frozen_colors[name] = members
        object.__setattr__(self, "colors", frozen_colors)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple:
        """Sorted neighbor tuple per vertex."""
        neigh = [[] for _ in range(self.n)]
        for u, v in self.edges:
            neigh[u].append(v)
            neigh[v].append(u)
        return tuple(tuple(sorted(ns)) for ns in neigh)

    def neighbors(self, v: int) -> tuple:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edges

    def color_set(self, name: str) -> frozenset:
        """Vertices carrying a color; unknown names are empty sets."""
        return self.colors.get(name, frozenset())

    def with_colors(self, colors: Mapping[str, Iterable[int]]) -> "Graph":
        return Graph(self.n, self.edges, {k: frozenset(v) for k, v in colors.items()})


@dataclass(frozen=True)
class VertexOrdering:
    """A total order on 0..n-1, stored as the left-to-right permutation.

    ``perm[i]`` is the vertex at position i; ``rank[v]`` is the position of
    vertex v.  The two are mutually inverse.
    """

    perm: tuple

    def __post_init__(self):
        perm = tuple(self.perm)
        object.__setattr__(self, "perm", perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError("ordering is not a permutation of 0..n-1")

    @classmethod
    def natural(cls, n: int) -> "VertexOrdering":
        return cls(tuple(range(n)))

    @cached_property
    def rank(self) -> tuple:
        rank = [0] * len(self.perm)
        for i, v in enumerate(self.perm):
            rank[v] = i
        return tuple(rank)

    def __len__(self) -> int:
        return len(self.perm)


def bfs_distances(graph: Graph, source: int, allowed=None, limit=None) -> dict:
    """Distances from source inside the subgraph induced by ``allowed``.

    ``allowed`` of None means all vertices; ``limit`` caps the search depth.
    The source must itself be allowed.
    """
    if allowed is not None and source not in allowed:
        raise ValueError("source not in allowed set")
    dist = {source: 0}
    queue = deque([source])
    adj = graph.adjacency
    while queue:
        v = queue.popleft()
        if limit is not None and dist[v] >= limit:
            continue
        for w in adj[v]:
            if w in dist:
                continue
            if allowed is not None and w not in allowed:
                continue
            dist[w] = dist[v] + 1
            queue.append(w)
    return dist


def radius(graph: Graph, vertices) -> "int | float":
    """Radius of the subgraph induced by ``vertices``.

    Minimum over members of the eccentricity within the induced subgraph.
    Disconnected induced subgraphs have infinite radius.  Empty vertex sets
    are rejected.
    """
    members = frozenset(vertices)
    if not members:
        raise ValueError("radius of empty-set is undefined")
    for v in members:
        if not (0 <= v < graph.n):
            raise ValueError(f"vertex {v} out of range")
    best = INFINITE
    for v in sorted(members):
        dist = bfs_distances(graph, v, allowed=members)
        if len(dist) < len(members):
            continue
        ecc = max(dist.values())
        if ecc < best:
            best = ecc
    return best


def touch(graph: Graph, a, b) -> bool:
    """True when the two vertex sets share a vertex or are joined by an edge."""
    a = frozenset(a)
    b = frozenset(b)
    if a & b:
        return True
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    adj = graph.adjacency
    return any(w in large for v in small for w in adj[v])


def d_separated(graph: Graph, u: int, v: int, separator, d: int) -> bool:
    """True when every u-v path of length at most d meets the separator.

    Vertices inside the separator are considered separated from everything,
    including themselves.
    """
    sep = frozenset(separator)
    if u in sep or v in sep:
        return True
    if u == v:
        return False
    dist = {u: 0}
    queue = deque([u])
    adj = graph.adjacency
    while queue:
        w = queue.popleft()
        if dist[w] >= d:
            continue
        for x in adj[w]:
            if x in dist or x in sep:
                continue
            if x == v:
                return False
            dist[x] = dist[w] + 1
            queue.append(x)
    return True


def ktt_free(graph: Graph, t: int) -> bool:
    """True when the graph has no complete bipartite K_{t,t} subgraph.

    Brute force over t-subsets of the vertices of degree at least t; the
    other side must live in their common neighborhood.  Sides are disjoint;
    edges inside a side are irrelevant (subgraph, not induced).
    """
    if t < 1:
        raise ValueError("t must be positive")
    candidates = [v for v in range(graph.n) if graph.degree(v) >= t]
    if len(candidates) < t:
        return True
    neigh = [frozenset(graph.adjacency[v]) for v in range(graph.n)]
    for side in combinations(candidates, t):
        common = neigh[side[0]]
        for v in side[1:]:
            common = common & neigh[v]
            if len(common) < t:
                break
        else:
            if len(common - set(side)) >= t:
                return False
    return True


def add_universal(graph: Graph) -> Graph:
    """Add a vertex with id n adjacent to every existing vertex."""
    new = graph.n
    edges = set(graph.edges)
    edges.update((v, new) for v in range(graph.n))
    return Graph(graph.n + 1, frozenset(edges), graph.colors)


def blowup(graph: Graph, p: int) -> Graph:
    """Replace each vertex by a clique of p copies.

    Copy j of vertex i gets id p*i + j.  Copies of adjacent vertices are
    completely joined; copies of one vertex form a clique.  Colors carry
    over to all copies of their members.
    """
    if p < 1:
        raise ValueError("blowup factor must be positive")
    edges = set()
    for i in range(graph.n):
        for j1, j2 in combinations(range(p), 2):
            edges.add((p * i + j1, p * i + j2))
    for u, v in graph.edges:
        for j1 in range(p):
            for j2 in range(p):
                edges.add((p * u + j1, p * v + j2))
    colors = {
        name: frozenset(p * v + j for v in members for j in range(p))
        for name, members in graph.colors.items()
    }
    return Graph(p * graph.n, frozenset(edges), colors)


def induced_subgraph(graph: Graph, keep) -> Graph:
    """Induced subgraph on ``keep``, reindexed to 0..|keep|-1 in sorted order."""
    kept = sorted(frozenset(keep))
    for v in kept:
        if not (0 <= v < graph.n):
            raise ValueError(f"vertex {v} out of range")
    remap = {v: i for i, v in enumerate(kept)}
    edges = frozenset(
        (remap[u], remap[v]) for u, v in graph.edges if u in remap and v in remap
    )
    colors = {
        name: frozenset(remap[v] for v in members if v in remap)
        for name, members in graph.colors.items()
    }
    return Graph(len(kept), edges, colors)


def isomorphic(g1: Graph, g2: Graph) -> bool:
    """Brute-force isomorphism test, intended for graphs up to ~8 vertices."""
    if g1.n != g2.n or g1.m != g2.m:
        return False
    deg1 = sorted(g1.degree(v) for v in range(g1.n))
    deg2 = sorted(g2.degree(v) for v in range(g2.n))
    if deg1 != deg2:
        return False
    n = g1.n
    target = g2.edges

    def extend(mapping, used):
        v = len(mapping)
        if v == n:
            return True
        for w in range(n):
            if w in used or g1.degree(v) != g2.degree(w):
                continue
            ok = True
            for u in range(v):
                if ((min(u, v), max(u, v)) in g1.edges) != (
                    (min(mapping[u], w), max(mapping[u], w)) in target
                ):
                    ok = False
                    break
            if ok:
                mapping.append(w)
                used.add(w)
                if extend(mapping, used):
                    return True
                mapping.pop()
                used.remove(w)
        return False

    return extend([], set())


def _tokenize_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_graph(text: str) -> Graph:
    """Parse the ``p``/``e``/``c`` graph format; see the module docstring."""
    n = None
    m = None
    edges = []
    colors = {}
    for lineno, fields in _tokenize_lines(text):
        kind = fields[0]
        if kind == "p":
            if n is not None:
                raise GraphFormatError(f"line {lineno}: duplicate p line")
            if len(fields) != 3:
                raise GraphFormatError(f"line {lineno}: expected 'p <n> <m>'")
            try:
                n, m = int(fields[1]), int(fields[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: p line is not numeric") from None
        elif kind == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: e line before p line")
            if len(fields) != 3:
                raise GraphFormatError(f"line {lineno}: expected 'e <u> <v>'")
            try:
                edges.append((int(fields[1]), int(fields[2])))
            except ValueError:
                raise GraphFormatError(f"line {lineno}: edge endpoints must be integers") from None
        elif kind == "c":
            if n is None:
                raise GraphFormatError(f"line {lineno}: c line before p line")
            if len(fields) != 3:
                raise GraphFormatError(f"line {lineno}: expected 'c <v> <name>'")
            try:
                v = int(fields[1])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: color vertex must be an integer") from None
            colors.setdefault(fields[2], set()).add(v)
        else:
            raise GraphFormatError(f"line {lineno}: unknown record {kind!r}")
    if n is None:
        raise GraphFormatError("missing p line")
    if m != len(edges):
        raise GraphFormatError(f"p line promises {m} edges, found {len(edges)}")
    try:
        return Graph(n, frozenset(edges), {k: frozenset(v) for k, v in colors.items()})
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def format_graph(graph: Graph) -> str:
    lines = [f"p {graph.n} {graph.m}"]
    lines.extend(f"e {u} {v}" for u, v in sorted(graph.edges))
    for name in sorted(graph.colors):
        lines.extend(f"c {v} {name}" for v in sorted(graph.colors[name]))
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as handle:
        return parse_graph(handle.read())


def write_graph(graph: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(format_graph(graph))


def parse_ordering(text: str, n=None) -> VertexOrdering:
    fields = text.split()
    try:
        perm = tuple(int(f) for f in fields)
    except ValueError:
        raise GraphFormatError("ordering file must contain integers") from None
    if n is not None and len(perm) != n:
        raise GraphFormatError(f"ordering has {len(perm)} entries, expected {n}")
    try:
        return VertexOrdering(perm)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def read_ordering(path, n=None) -> VertexOrdering:
    with open(path, encoding="utf-8") as handle:
        return parse_ordering(handle.read(), n)


def write_ordering(order: VertexOrdering, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(" ".join(str(v) for v in order.perm) + "\n")
