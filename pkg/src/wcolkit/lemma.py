"""From weak reachability intersections to a low-depth congested model.

Given a host graph with an ordering whose weak d-reachability sets
pairwise intersect, every edge set on the host vertices can be realized
as a congested shallow minor: label each edge by the latest vertex of the
intersection of its endpoints' reachability sets, cover each label fiber
by a minimum vertex cover, and blow the covers up into branch sets made
of inverse reachability sets.  The resulting model has depth at most 2d
and congestion bounded by the largest reachability set times the largest
cover.

The module also carries the counting tools quoted by that construction:
a set-pair bound in the Bollobas style with an exhaustive extremal
search, and a crude closed-form ceiling for cover sizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from .graphs import Graph, InvariantViolation, VertexOrdering, radius
from .minors import MinorModel
from .wcol import weak_reachability_sets

DEFAULT_COVER_SUPPORT = 20


class PreconditionError(ValueError):
    """The pairwise reachability intersection precondition failed."""


class CoverBudgetError(RuntimeError):
    """A label fiber was too large for exact minimum vertex cover."""


def _normalize_edges(edge_list) -> list:
    seen = set()
    out = []
    for u, v in edge_list:
        if u == v:
            raise ValueError(f"loop at vertex {u} not allowed")
        e = (u, v) if u < v else (v, u)
        if e not in seen:
            seen.add(e)
            out.append(e)
    return sorted(out)


def check_wreach_intersections(graph: Graph, order: VertexOrdering, d: int):
    """Do all weak d-reachability sets pairwise intersect?

    Returns (True, None) or (False, first failing pair) scanning pairs in
    lexicographic order.
    """
    sets = weak_reachability_sets(graph, order, d)
    for u in range(graph.n):
        for v in range(u + 1, graph.n):
            if not (sets[u] & sets[v]):
                return False, (u, v)
    return True, None


@dataclass(frozen=True)
class EdgeLabeling:
    """Per-edge intersection sets and their latest vertices.

    ``sigma[e]`` is the intersection of the endpoints' weak d-reachability
    sets; ``rho[e]`` is its vertex of largest rank.  Every sigma set lies
    inside the weak 2d-reachability set of its rho vertex.
    """

    sigma: Mapping
    rho: Mapping


def label_edges(graph: Graph, order: VertexOrdering, d: int, edge_list) -> EdgeLabeling:
    """Label edges by reachability intersections.

    Raises PreconditionError naming the first edge whose endpoints have
    disjoint weak d-reachability sets.
    """
    edges = _normalize_edges(edge_list)
    for u, v in edges:
        if not (0 <= u < graph.n and 0 <= v < graph.n):
            raise ValueError(f"edge ({u}, {v}) out of range")
    sets = weak_reachability_sets(graph, order, d)
    wide = weak_reachability_sets(graph, order, 2 * d)
    rank = order.rank
    sigma = {}
    rho = {}
    for e in edges:
        u, v = e
        inter = sets[u] & sets[v]
        if not inter:
            raise PreconditionError(
                f"precondition-violated: reachability sets of edge ({u}, {v}) are disjoint"
            )
        top = max(inter, key=lambda w: rank[w])
        if not inter <= wide[top]:
            # joining the two witness walks through the top vertex stays
            # within radius 2d, so this cannot happen
            raise InvariantViolation(
                f"sigma of edge ({u}, {v}) leaves the 2d-reachability set of {top}"
            )
        sigma[e] = inter
        rho[e] = top
    return EdgeLabeling(sigma=sigma, rho=rho)


@dataclass(frozen=True)
class CoverFamily:
    """Minimum vertex covers of the label fibers, keyed by label vertex."""

    covers: Mapping

    def cover_of(self, w: int) -> frozenset:
        return self.covers.get(w, frozenset())

    @property
    def max_size(self) -> int:
        return max((len(c) for c in self.covers.values()), default=0)


def minimum_vertex_cover(edges, support_budget: int = DEFAULT_COVER_SUPPORT) -> frozenset:
    """Smallest vertex cover of an edge list, exactly.

    Among covers of minimum size the lexicographically smallest vertex
    tuple wins, so results are deterministic.  Raises CoverBudgetError
    when the support exceeds the budget.
    """
    edges = _normalize_edges(edges)
    if not edges:
        return frozenset()
    support = sorted({v for e in edges for v in e})
    if len(support) > support_budget:
        raise CoverBudgetError("budget")
    for size in range(1, len(support) + 1):
        for subset in combinations(support, size):
            chosen = set(subset)
            if all(u in chosen or v in chosen for u, v in edges):
                return frozenset(subset)
    return frozenset(support)


def matching_cover(edges) -> frozenset:
    """Endpoints of a greedy maximal matching: a 2-approximate cover."""
    edges = _normalize_edges(edges)
    cover = set()
    for u, v in edges:
        if u not in cover and v not in cover:
            cover.add(u)
            cover.add(v)
    return frozenset(cover)


def compute_covers(
    labeling: EdgeLabeling,
    support_budget: int = DEFAULT_COVER_SUPPORT,
) -> CoverFamily:
    """Exact minimum vertex cover of every label fiber.

    The fiber of w is the set of edges labeled w.  Raises CoverBudgetError
    when some fiber support exceeds the budget; callers may fall back to
    ``matching_cover`` on the offending fibers.
    """
    fibers = {}
    for e, w in labeling.rho.items():
        fibers.setdefault(w, []).append(e)
    covers = {}
    for w in sorted(fibers):
        covers[w] = minimum_vertex_cover(fibers[w], support_budget)
    return CoverFamily(covers=covers)


def build_model(
    graph: Graph,
    order: VertexOrdering,
    d: int,
    covers: CoverFamily,
    edge_list,
) -> MinorModel:
    """Assemble branch sets realizing the given edges as a shallow minor.

    The branch set of u is u itself plus the inverse weak d-reachability
    sets of all labels whose cover contains u.  The pattern is the given
    edge set on the host vertices; the model depth is 2d and the declared
    congestion is the observed one.

    Three facts are checked and raise InvariantViolation on failure: each
    pattern edge has touching branch sets (one endpoint absorbs the
    other), each branch set has radius at most 2d, and the congestion is
    at most s * max-cover + 1 where s is the largest weak d-reachability
    set of the order.
    """
    if graph.n == 0:
        raise ValueError("cannot build a model over the empty graph")
    edges = _normalize_edges(edge_list)
    sets = weak_reachability_sets(graph, order, d)
    inverse = [set() for _ in range(graph.n)]
    for v in range(graph.n):
        for u in sets[v]:
            inverse[u].add(v)

    branch = [{u} for u in range(graph.n)]
    for w, cover in covers.covers.items():
        for u in cover:
            branch[u].update(inverse[w])

    for x, y in edges:
        if x not in branch[y] and y not in branch[x]:
            raise InvariantViolation(
                f"pattern edge ({x}, {y}) has non-touching branch sets"
            )
    for u in range(graph.n):
        r = radius(graph, branch[u])
        if r > 2 * d:
            raise InvariantViolation(
                f"branch set of {u} has radius {r}, above {2 * d}"
            )
    load = [0] * graph.n
    for members in branch:
        for v in members:
            load[v] += 1
    congestion = max(load)
    s = max(len(x) for x in sets)
    if congestion > s * covers.max_size + 1:
        raise InvariantViolation(
            f"congestion {congestion} exceeds {s} * {covers.max_size} + 1"
        )
    return MinorModel(
        host=graph,
        pattern=Graph(graph.n, frozenset(edges)),
        branch_sets=tuple(frozenset(b) for b in branch),
        congestion=congestion,
        depth=2 * d,
    )


def bollobas_bound(a: int, b: int) -> int:
    """Largest length of a qualifying set-pair sequence: sum of b^i, i <= a."""
    if a < 0 or b < 0:
        raise ValueError("set size bounds must be nonnegative")
    return sum(b**i for i in range(a + 1))


@dataclass(frozen=True)
class BollobasVerdict:
    premise_ok: bool
    failing_clause: "str | None"
    failing_index: "int | None"
    n: int
    bound: int
    bound_ok: "bool | None"


def bollobas_check(a_sets, b_sets, a: int, b: int) -> BollobasVerdict:
    """Check the set-pair premise and, when it holds, the length bound.

    Premise: |A_i| <= a, |B_i| <= b, A_i disjoint from B_i, and A_i meets
    B_j whenever i < j.  The verdict names the first failing clause.
    """
    a_sets = [frozenset(s) for s in a_sets]
    b_sets = [frozenset(s) for s in b_sets]
    bound = bollobas_bound(a, b)
    n = len(a_sets)

    def verdict(clause, index):
        return BollobasVerdict(
            premise_ok=clause is None,
            failing_clause=clause,
            failing_index=index,
            n=n,
            bound=bound,
            bound_ok=(n <= bound) if clause is None else None,
        )

    if len(a_sets) != len(b_sets):
        return verdict("length-mismatch", None)
    for i in range(n):
        if len(a_sets[i]) > a:
            return verdict("size-a", i)
        if len(b_sets[i]) > b:
            return verdict("size-b", i)
        if a_sets[i] & b_sets[i]:
            return verdict("self-intersection", i)
    for i in range(n):
        for j in range(i + 1, n):
            if not (a_sets[i] & b_sets[j]):
                return verdict("cross-intersection", j)
    return verdict(None, None)


def bollobas_search(universe: int, a: int, b: int):
    """Longest qualifying set-pair sequence over a fixed ground set.

    Exhaustive via memoized search on the family of still-usable B-sets:
    appending a pair (A, B) restricts future B's to those meeting A.
    Returns (length, witness) with the lexicographically first witness.
    """
    if universe < 0:
        raise ValueError("universe size must be nonnegative")
    ground = tuple(range(universe))

    def subsets(limit):
        out = []
        for size in range(limit + 1):
            out.extend(frozenset(c) for c in combinations(ground, size))
        return out

    a_cands = subsets(a)
    b_cands = subsets(b)
    # Candidate families are tiny; states are bitmasks over B indices.
    a_bits = [sum(1 << e for e in s) for s in a_cands]
    b_bits = [sum(1 << e for e in s) for s in b_cands]
    meets = [
        sum(1 << j for j, bits in enumerate(b_bits) if bits & a_bit)
        for a_bit in a_bits
    ]
    disjoint_a = [
        tuple(i for i, a_bit in enumerate(a_bits) if not a_bit & b_bit)
        for b_bit in b_bits
    ]
    memo = {}

    def best(valid: int):
        if valid in memo:
            return memo[valid]
        top = (0, None)
        seen = set()
        rest = valid
        while rest:
            low = rest & -rest
            rest ^= low
            b_idx = low.bit_length() - 1
            for a_idx in disjoint_a[b_idx]:
                nxt = valid & meets[a_idx]
                if nxt in seen:
                    continue
                seen.add(nxt)
                sub_len, _ = best(nxt)
                if sub_len + 1 > top[0]:
                    top = (sub_len + 1, (a_idx, b_idx))
        memo[valid] = top
        return top

    valid = (1 << len(b_cands)) - 1
    length, _ = best(valid)
    witness = []
    while True:
        _, choice = best(valid)
        if choice is None:
            break
        a_idx, b_idx = choice
        witness.append((a_cands[a_idx], b_cands[b_idx]))
        valid = valid & meets[a_idx]
    return length, witness


def ramsey_upper(a: int, b: int) -> int:
    """Binomial ceiling for the two-color Ramsey number R(a, b)."""
    if a < 1 or b < 1:
        raise ValueError("Ramsey arguments must be positive")
    return math.comb(a + b - 2, a - 1)


def theoretical_cover_bound(s: int, t: int, lambda_size: int) -> int:
    """Closed-form ceiling for fiber cover sizes: 2^s * lambda^2 * R(2t, s^s).

    Exact integer arithmetic throughout; the result grows astronomically
    fast and is meant for reporting next to observed cover sizes.
    """
    if s < 2:
        raise ValueError("s must be at least 2")
    if t < 1:
        raise ValueError("t must be positive")
    if lambda_size < 1:
        raise ValueError("lambda_size must be positive")
    return (2**s) * lambda_size**2 * ramsey_upper(2 * t, s**s)
