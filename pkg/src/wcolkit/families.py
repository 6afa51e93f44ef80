"""Graph family generators, wcol growth profiles, and degree comparison.

Generators produce small members of structured families (paths, cycles,
stars, grids, k-trees, cliques, edgeless graphs).  Graphs built by
incremental clique attachment carry their construction order, which
witnesses the binomial ceiling binom(d+t, t) on weak coloring numbers.
A profile measures wcol across a range of radii d and fits a polynomial
degree on a log-log scale; profiles of two families are compared by
fitted degree with a safety margin, which can rule out one growth
function dominating the other, empirically.
"""

from __future__ import annotations

import math
import random
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .graphs import Graph, InvariantViolation, VertexOrdering
from .wcol import wcol_exact, wcol_heuristic, wcol_of_order


@dataclass(frozen=True)
class GeneratedGraph:
    """A generated graph with its canonical ordering and provenance label.

    ktree_t is the clique-attachment width for graphs built as k-trees,
    None otherwise; it drives the binomial ceiling check in profiles.
    """

    graph: Graph
    canonical: VertexOrdering
    label: str
    ktree_t: "int | None" = None


def _natural(graph: Graph, label: str, ktree_t=None) -> GeneratedGraph:
    return GeneratedGraph(graph, VertexOrdering.natural(graph.n), label, ktree_t)


def path_graph(n: int) -> GeneratedGraph:
    if n < 1:
        raise ValueError("path needs at least one vertex")
    edges = frozenset((i, i + 1) for i in range(n - 1))
    return _natural(Graph(n, edges), f"path {n}", ktree_t=1)


def cycle_graph(n: int) -> GeneratedGraph:
    if n < 3:
        raise ValueError("cycle needs at least three vertices")
    edges = {(i, i + 1) for i in range(n - 1)}
    edges.add((0, n - 1))
    return _natural(Graph(n, frozenset(edges)), f"cycle {n}")


def star_graph(n: int) -> GeneratedGraph:
    """Center 0 plus n-1 leaves; the center leads the canonical order."""
    if n < 1:
        raise ValueError("star needs at least one vertex")
    edges = frozenset((0, i) for i in range(1, n))
    return _natural(Graph(n, edges), f"star {n}", ktree_t=1)


def grid_graph(width: int, height: int) -> GeneratedGraph:
    """width x height grid, row-major ids and canonical order."""
    if width < 1 or height < 1:
        raise ValueError("grid sides must be positive")
    edges = set()
    for r in range(height):
        for c in range(width):
            v = r * width + c
            if c + 1 < width:
                edges.add((v, v + 1))
            if r + 1 < height:
                edges.add((v, v + width))
    return _natural(Graph(width * height, frozenset(edges)), f"grid {width} {height}")


def edgeless_graph(n: int) -> GeneratedGraph:
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    return _natural(Graph(n), f"edgeless {n}")


def clique_graph(n: int) -> GeneratedGraph:
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    edges = frozenset((u, v) for u in range(n) for v in range(u + 1, n))
    return _natural(Graph(n, edges), f"clique {n}")


def complete_ktree(t: int, height: int) -> GeneratedGraph:
    """Binary-branching t-tree: every active t-clique spawns two vertices.

    Starts from a t-clique.  Each new vertex is joined to its host clique
    and activates the t cliques obtained by swapping itself for one host
    vertex.  height counts spawning rounds; t=1 yields the complete
    binary tree of that height.  Vertex ids follow construction order.
    """
    if t < 1:
        raise ValueError("t must be positive")
    if height < 0:
        raise ValueError("height must be nonnegative")
    edges = set()
    base = tuple(range(t))
    for u in base:
        for v in base:
            if u < v:
                edges.add((u, v))
    nxt = t
    active = [base]
    for _ in range(height):
        spawned = []
        for clique in active:
            for _ in range(2):
                v = nxt
                nxt += 1
                for u in clique:
                    edges.add((u, v) if u < v else (v, u))
                for drop in clique:
                    spawned.append(
                        tuple(sorted((set(clique) - {drop}) | {v}))
                    )
        active = spawned
    graph = Graph(nxt, frozenset(edges))
    return _natural(graph, f"complete-ktree {t} {height}", ktree_t=t)


def random_ktree(t: int, n: int, seed: int) -> GeneratedGraph:
    """Random t-tree on n vertices: each new vertex joins a random t-clique.

    Starts from a clique on min(t, n) vertices, so treewidth is at most t.
    Deterministic under the seed; ids follow construction order.
    """
    if t < 1:
        raise ValueError("t must be positive")
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    rng = random.Random(seed)
    base = min(t, n)
    edges = set()
    for u in range(base):
        for v in range(u + 1, base):
            edges.add((u, v))
    cliques = [tuple(range(base))] if base == t else []
    for v in range(base, n):
        if not cliques:
            raise ValueError("no clique to attach to; need n >= t")
        host = cliques[rng.randrange(len(cliques))]
        for u in host:
            edges.add((u, v) if u < v else (v, u))
        for drop in host:
            cliques.append(tuple(sorted((set(host) - {drop}) | {v})))
    graph = Graph(n, frozenset(edges))
    return _natural(graph, f"random-ktree {t} {n} {seed}", ktree_t=t)


def fan_ktree(t: int, height: int) -> GeneratedGraph:
    """Staged k-tree whose construction order has wcol growing like d^t.

    Stage b appends a fan of b vertices and then an apex; the apex of the
    last stage weakly d-reaches one full fan per distance step, which for
    t=2 realizes binom(d+2, 2) exactly once height >= d.  For t=1 the
    same staging degenerates to a path.  Supported for t in {1, 2}.
    """
    if t not in (1, 2):
        raise ValueError("fan-ktree supports t in {1, 2}")
    if height < 0:
        raise ValueError("height must be nonnegative")
    if t == 1:
        total = 1 + height * (height + 1) // 2 + height
        gen = path_graph(total)
        return GeneratedGraph(gen.graph, gen.canonical, f"fan-ktree 1 {height}", 1)
    edges = {(0, 1)}
    apex, partner = 1, 0
    nxt = 2
    for stage in range(1, height + 1):
        for i in range(stage):
            v = nxt
            nxt += 1
            if i == 0:
                a, b = apex, partner
            else:
                a, b = v - 1, apex
            edges.add((a, v) if a < v else (v, a))
            edges.add((b, v) if b < v else (v, b))
        fan_top = nxt - 1
        v = nxt
        nxt += 1
        edges.add((fan_top, v))
        edges.add((apex, v) if apex < v else (v, apex))
        apex, partner = v, fan_top
    graph = Graph(nxt, frozenset(edges))
    return _natural(graph, f"fan-ktree 2 {height}", ktree_t=2)


def gen_family(spec: str) -> GeneratedGraph:
    """Build a graph from a textual spec like "path 10" or "grid 3 4".

    Known forms: path n, cycle n, star n, grid w h, edgeless n, clique n,
    complete-ktree t h, random-ktree t n seed, fan-ktree t h.
    """
    words = spec.split()
    if not words:
        raise ValueError("empty family spec")
    name, args = words[0], words[1:]
    try:
        nums = [int(a) for a in args]
    except ValueError:
        raise ValueError(f"family spec {spec!r}: arguments must be integers")
    forms = {
        "path": (path_graph, 1),
        "cycle": (cycle_graph, 1),
        "star": (star_graph, 1),
        "grid": (grid_graph, 2),
        "edgeless": (edgeless_graph, 1),
        "clique": (clique_graph, 1),
        "complete-ktree": (complete_ktree, 2),
        "random-ktree": (random_ktree, 3),
        "fan-ktree": (fan_ktree, 2),
    }
    if name not in forms:
        raise ValueError(f"unknown family {name!r}")
    fn, arity = forms[name]
    if len(nums) != arity:
        raise ValueError(f"family {name!r} takes {arity} integer arguments")
    return fn(*nums)


@dataclass(frozen=True)
class WcolProfile:
    """wcol values of a family across d, with a fitted polynomial degree.

    points holds (d, value, exact) triples.  The degree is the least
    squares slope of log value against log d over the upper half of the
    d range (points with 2d >= d_max); the residual is the root mean
    square log-scale error of that fit.
    """

    label: str
    points: tuple
    fitted_degree: float
    fit_residual: float


def _fit_degree(points, d_max):
    window = [(d, v) for d, v, _ in points if 2 * d >= d_max]
    xs = [math.log(d) for d, _ in window]
    ys = [math.log(v) for _, v in window]
    if len(set(xs)) < 2:
        raise ValueError("profile needs at least two distinct d in the fit window")
    if len(set(ys)) == 1:
        return 0.0, 0.0
    fit = statistics.linear_regression(xs, ys)
    residuals = [y - (fit.slope * x + fit.intercept) for x, y in zip(xs, ys)]
    rms = math.sqrt(sum(r * r for r in residuals) / len(residuals))
    return fit.slope, rms


def _family_value(members, d: int, method: str):
    best = 0
    exact = True
    for member in members:
        if method == "exact":
            res = wcol_exact(member.graph, d)
        elif method == "heuristic":
            res = wcol_heuristic(member.graph, d, canonical=member.canonical)
        elif method == "canonical":
            res = wcol_of_order(member.graph, member.canonical, d)
        else:
            raise ValueError(f"unknown method {method!r}")
        if member.ktree_t is not None and method == "canonical":
            ceiling = math.comb(d + member.ktree_t, member.ktree_t)
            if res.value > ceiling:
                raise InvariantViolation(
                    f"{member.label}: construction order gives {res.value} at d={d}, "
                    f"above binom(d+t, t) = {ceiling}"
                )
        best = max(best, res.value)
        exact = exact and res.exact
    return d, best, exact


def profile_family(specs, d_max: int, method: str = "canonical") -> WcolProfile:
    """Family wcol per d in 1..d_max; the family value is the member max.

    Construction orderings of k-tree members are checked against the
    binom(d+t, t) ceiling at every measured d.  Points for distinct d
    are computed concurrently; output is deterministic.
    """
    if d_max < 2:
        raise ValueError("d_max must be at least 2")
    members = [gen_family(s) for s in specs]
    if not members:
        raise ValueError("no family specs given")
    if any(m.graph.n == 0 for m in members):
        raise ValueError("cannot profile an empty graph")
    with ThreadPoolExecutor(max_workers=8) as pool:
        points = list(
            pool.map(lambda d: _family_value(members, d, method), range(1, d_max + 1))
        )
    points.sort()
    degree, residual = _fit_degree(points, d_max)
    label = " + ".join(m.label for m in members)
    return WcolProfile(
        label=label,
        points=tuple(points),
        fitted_degree=degree,
        fit_residual=residual,
    )


def format_profile(profile: WcolProfile) -> str:
    lines = ["d\twcol\texact"]
    for d, value, exact in profile.points:
        lines.append(f"{d}\t{value}\t{1 if exact else 0}")
    lines.append(f"# label {profile.label}")
    lines.append(f"# fitted_degree {profile.fitted_degree:.6f}")
    lines.append(f"# fit_residual {profile.fit_residual:.6f}")
    return "\n".join(lines) + "\n"


DOMINATION_MARGIN = 0.5


def compare_domination(f: WcolProfile, g: WcolProfile) -> str:
    """Empirical verdict on whether one growth profile can dominate the other.

    Degrees are compared with a margin of 0.5.  A strictly larger degree
    on f's side means no constant c can give f(d) <= c*g(cd)+c in the
    limit, so the verdict is that g cannot dominate f; and symmetrically.
    Samples cannot prove asymptotics, hence the explicit EMPIRICAL tag.
    """
    if f.fitted_degree > g.fitted_degree + DOMINATION_MARGIN:
        return "g-cannot-dominate-f (empirical)"
    if g.fitted_degree > f.fitted_degree + DOMINATION_MARGIN:
        return "f-cannot-dominate-g (empirical)"
    return "no-separation (empirical)"
