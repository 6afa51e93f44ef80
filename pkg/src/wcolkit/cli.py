"""Command line driver.

Subcommands: gen, wcol, validate-model, pullback, check-transfer,
sigma-rho, build-model, bollobas (check|search), fo-apply, fo-search,
profile, compare.  Exit codes: 0 success or property holds, 1 property
violated, 2 usage or format error.  All output is deterministic for
fixed inputs and seeds.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .families import (
    WcolProfile,
    compare_domination,
    format_profile,
    gen_family,
    profile_family,
)
from .fo import (
    AsymmetricFormulaError,
    ParseError,
    Transduction,
    apply_interpretation,
    parse_formula,
    search_transduction,
)
from .graphs import (
    GraphFormatError,
    InvariantViolation,
    format_graph,
    induced_subgraph,
    read_graph,
    read_ordering,
    write_ordering,
)
from .lemma import (
    CoverBudgetError,
    DEFAULT_COVER_SUPPORT,
    PreconditionError,
    bollobas_bound,
    bollobas_check,
    bollobas_search,
    build_model,
    compute_covers,
    label_edges,
)
from .minors import (
    InvalidModelError,
    MalformedModelError,
    check_transfer_inequality,
    format_model,
    pull_back_order,
    read_model,
    validate_model,
)
from .wcol import DEFAULT_BUDGET, wcol_exact, wcol_heuristic, wcol_of_order


def _write_text(path, text: str):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _read_edge_list(path) -> list:
    out = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected two vertex ids")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: vertex ids must be integers")
        out.append((u, v))
    return out


def _parse_color_assignments(items) -> dict:
    expansion = {}
    for item in items or []:
        if "=" not in item:
            raise ValueError(f"color assignment {item!r} must look like NAME=1,2,3")
        name, _, body = item.partition("=")
        name = name.strip()
        if not name:
            raise ValueError(f"color assignment {item!r} has an empty name")
        ids = frozenset(int(w) for w in body.replace(",", " ").split())
        expansion[name] = ids
    return expansion


def _parse_keep(text, n: int):
    if text is None:
        return tuple(range(n))
    return tuple(int(w) for w in text.replace(",", " ").split())


def _cmd_gen(args) -> int:
    gen = gen_family(" ".join(args.spec))
    _write_text(args.out, format_graph(gen.graph))
    if args.order_out:
        write_ordering(gen.canonical, args.order_out)
    return 0


def _cmd_wcol(args) -> int:
    graph = read_graph(args.graph)
    modes = sum(1 for flag in (args.order, args.exact, args.heuristic) if flag)
    if modes != 1:
        raise ValueError("choose exactly one of --order FILE, --exact, --heuristic")
    if args.order:
        order = read_ordering(args.order, graph.n)
        result = wcol_of_order(graph, order, args.d)
    elif args.exact:
        result = wcol_exact(graph, args.d, budget=args.budget)
    else:
        result = wcol_heuristic(graph, args.d)
    print(f"value {result.value}")
    print(f"exact {1 if result.exact else 0}")
    print(f"witness {result.witness_vertex}")
    if args.order_out:
        write_ordering(result.order, args.order_out)
    return 0


def _cmd_validate_model(args) -> int:
    host = read_graph(args.host)
    model = read_model(args.model, host)
    report = validate_model(model)
    print(f"radius {'ok' if report.radius_ok else f'bad {report.radius_bad_vertex}'}")
    print(
        "congestion "
        + ("ok" if report.congestion_ok else f"bad {report.congestion_bad_vertex}")
    )
    if report.edges_ok:
        print("edges ok")
    else:
        x, y = report.edges_bad_edge
        print(f"edges bad {x} {y}")
    print(f"observed-congestion {report.observed_congestion}")
    depth = report.observed_depth
    print(f"observed-depth {'inf' if math.isinf(depth) else int(depth)}")
    print(f"verdict {'valid' if report.valid else 'invalid'}")
    return 0 if report.valid else 1


def _cmd_pullback(args) -> int:
    host = read_graph(args.host)
    model = read_model(args.model, host)
    order = read_ordering(args.order, host.n)
    pulled = pull_back_order(model, order)
    if args.out:
        write_ordering(pulled, args.out)
    else:
        print(" ".join(str(v) for v in pulled.perm))
    return 0


def _cmd_check_transfer(args) -> int:
    host = read_graph(args.host)
    model = read_model(args.model, host)
    order = read_ordering(args.order, host.n)
    effective = max(model.congestion, model.depth) if model.depth is not None else None
    if args.k is not None and args.k != effective:
        raise ValueError(f"--k {args.k} does not match the model's k = {effective}")
    report = check_transfer_inequality(model, order, args.d)
    print(f"lhs {report.lhs}")
    print(f"rhs {report.rhs}")
    longest = max((len(p) - 1 for p in report.edge_paths.values()), default=0)
    print(f"longest-edge-path {longest}")
    print(f"holds {1 if report.holds else 0}")
    return 0 if report.holds else 1


def _cmd_sigma_rho(args) -> int:
    graph = read_graph(args.graph)
    order = read_ordering(args.order, graph.n)
    edges = _read_edge_list(args.edges) if args.edges else sorted(graph.edges)
    labeling = label_edges(graph, order, args.d, edges)
    for u, v in sorted(labeling.sigma):
        sigma = ",".join(str(w) for w in sorted(labeling.sigma[(u, v)]))
        print(f"e {u} {v} rho {labeling.rho[(u, v)]} sigma {sigma}")
    return 0


def _cmd_build_model(args) -> int:
    graph = read_graph(args.graph)
    order = read_ordering(args.order, graph.n)
    edges = _read_edge_list(args.edges) if args.edges else sorted(graph.edges)
    labeling = label_edges(graph, order, args.d, edges)
    covers = compute_covers(labeling, support_budget=args.cover_budget)
    model = build_model(graph, order, args.d, covers, edges)
    print(f"congestion {model.congestion}")
    print(f"depth {model.depth}")
    print(f"max-cover {covers.max_size}")
    print(f"pattern-edges {model.pattern.m}")
    if args.out:
        _write_text(args.out, format_model(model))
    return 0


def _parse_set_pairs(path) -> tuple:
    a_sets, b_sets = [], []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ";" not in line:
            raise ValueError(f"line {lineno}: expected 'a1 a2 ... ; b1 b2 ...'")
        left, _, right = line.partition(";")
        try:
            a_sets.append(frozenset(int(w) for w in left.split()))
            b_sets.append(frozenset(int(w) for w in right.split()))
        except ValueError:
            raise ValueError(f"line {lineno}: set elements must be integers")
    return a_sets, b_sets


def _cmd_bollobas(args) -> int:
    if args.mode == "check":
        if not args.pairs:
            raise ValueError("check mode needs a set-pair file")
        a_sets, b_sets = _parse_set_pairs(args.pairs)
        verdict = bollobas_check(a_sets, b_sets, args.a, args.b)
        print(f"n {verdict.n}")
        print(f"bound {verdict.bound}")
        if not verdict.premise_ok:
            where = "" if verdict.failing_index is None else f" at {verdict.failing_index}"
            print(f"premise fails {verdict.failing_clause}{where}")
            return 1
        print("premise ok")
        print(f"holds {1 if verdict.bound_ok else 0}")
        return 0 if verdict.bound_ok else 1
    length, witness = bollobas_search(args.universe, args.a, args.b)
    bound = bollobas_bound(args.a, args.b)
    print(f"bound {bound}")
    print(f"length {length}")
    for a_set, b_set in witness:
        left = " ".join(str(v) for v in sorted(a_set))
        right = " ".join(str(v) for v in sorted(b_set))
        print(f"{left} ; {right}")
    return 0 if length <= bound else 1


def _cmd_fo_apply(args) -> int:
    graph = read_graph(args.graph)
    formula = parse_formula(Path(args.formula).read_text(encoding="utf-8"))
    expansion = _parse_color_assignments(args.colors)
    merged = dict(graph.colors)
    for name, ids in expansion.items():
        for v in ids:
            if not 0 <= v < graph.n:
                raise ValueError(f"color {name!r} lists vertex {v} out of range")
        merged[name] = ids
    expanded = graph.with_colors(merged)
    applied = apply_interpretation(expanded, formula)
    keep = _parse_keep(args.keep, graph.n)
    _write_text(args.out, format_graph(induced_subgraph(applied, keep)))
    return 0


def _cmd_fo_search(args) -> int:
    source = read_graph(args.source)
    target = read_graph(args.target)
    formula = parse_formula(Path(args.formula).read_text(encoding="utf-8"))
    names = tuple(w for w in (args.colors or "").replace(",", " ").split())
    trans = Transduction(names, formula)
    result = search_transduction(source, target, trans, budget=args.budget)
    print(f"status {result.status}")
    print(f"checked {result.checked}")
    if result.status == "found":
        for name in names:
            ids = ",".join(str(v) for v in sorted(result.expansion[name]))
            print(f"expansion {name}={ids}")
        print("keep " + ",".join(str(v) for v in result.keep))
        return 0
    return 1


def _cmd_profile(args) -> int:
    profile = profile_family(args.family, args.d_max, args.method)
    _write_text(args.out, format_profile(profile))
    return 0


def _parse_profile_text(text: str) -> WcolProfile:
    points = []
    label = ""
    degree = None
    residual = 0.0
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line == "d\twcol\texact":
            continue
        if line.startswith("#"):
            words = line[1:].split(None, 1)
            if len(words) == 2 and words[0] == "label":
                label = words[1]
            elif len(words) == 2 and words[0] == "fitted_degree":
                degree = float(words[1])
            elif len(words) == 2 and words[0] == "fit_residual":
                residual = float(words[1])
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"bad profile row {line!r}")
        points.append((int(parts[0]), int(parts[1]), parts[2] == "1"))
    if degree is None:
        raise ValueError("profile file lacks a fitted_degree comment")
    return WcolProfile(label, tuple(points), degree, residual)


def _cmd_compare(args) -> int:
    f = _parse_profile_text(Path(args.f).read_text(encoding="utf-8"))
    g = _parse_profile_text(Path(args.g).read_text(encoding="utf-8"))
    print(f"f-degree {f.fitted_degree:.6f}")
    print(f"g-degree {g.fitted_degree:.6f}")
    print(f"verdict {compare_domination(f, g)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wcolkit",
        description="Weak coloring numbers, congested shallow minors, and "
        "first-order transductions on small graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a family member")
    p.add_argument("spec", nargs="+", help="family spec, e.g. path 10")
    p.add_argument("--out", help="graph file (default stdout)")
    p.add_argument("--order-out", help="write the canonical ordering here")
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("wcol", help="weak coloring number of a graph")
    p.add_argument("graph")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--order", help="ordering file")
    p.add_argument("--exact", action="store_true")
    p.add_argument("--heuristic", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--order-out", help="write the witnessing ordering here")
    p.set_defaults(fn=_cmd_wcol)

    p = sub.add_parser("validate-model", help="validate a minor model")
    p.add_argument("host")
    p.add_argument("model")
    p.set_defaults(fn=_cmd_validate_model)

    p = sub.add_parser("pullback", help="pull a host ordering back to the pattern")
    p.add_argument("host")
    p.add_argument("model")
    p.add_argument("order")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_pullback)

    p = sub.add_parser("check-transfer", help="check the ordering transfer inequality")
    p.add_argument("host")
    p.add_argument("model")
    p.add_argument("order")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, help="must equal max(congestion, depth) of the model")
    p.set_defaults(fn=_cmd_check_transfer)

    p = sub.add_parser("sigma-rho", help="label edges by reachability intersections")
    p.add_argument("graph")
    p.add_argument("order")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--edges", help="edge list file (default: graph edges)")
    p.set_defaults(fn=_cmd_sigma_rho)

    p = sub.add_parser("build-model", help="build a congested shallow-minor model")
    p.add_argument("graph")
    p.add_argument("order")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--edges", help="edge list file (default: graph edges)")
    p.add_argument("--cover-budget", type=int, default=DEFAULT_COVER_SUPPORT)
    p.add_argument("--out", help="model file")
    p.set_defaults(fn=_cmd_build_model)

    p = sub.add_parser("bollobas", help="set-pair bound: check a sequence or search")
    p.add_argument("mode", choices=["check", "search"])
    p.add_argument("pairs", nargs="?", help="set-pair file for check mode")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--universe", type=int, default=0, help="ground set size for search")
    p.set_defaults(fn=_cmd_bollobas)

    p = sub.add_parser("fo-apply", help="apply a formula as the new edge relation")
    p.add_argument("graph")
    p.add_argument("--formula", required=True, help="formula file")
    p.add_argument(
        "--colors",
        action="append",
        metavar="NAME=1,2,3",
        help="color assignment, repeatable",
    )
    p.add_argument("--keep", help="comma-separated vertices to keep (default all)")
    p.add_argument("--out", help="graph file (default stdout)")
    p.set_defaults(fn=_cmd_fo_apply)

    p = sub.add_parser("fo-search", help="search expansions making a transduction hit a target")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--formula", required=True, help="formula file")
    p.add_argument("--colors", help="comma-separated declared color names")
    p.add_argument("--budget", type=int, default=200_000)
    p.set_defaults(fn=_cmd_fo_search)

    p = sub.add_parser("profile", help="wcol growth profile of a family")
    p.add_argument("--family", action="append", required=True, help="family spec, repeatable")
    p.add_argument("--d-max", type=int, required=True)
    p.add_argument(
        "--method", choices=["exact", "heuristic", "canonical"], default="canonical"
    )
    p.add_argument("--out", help="TSV file (default stdout)")
    p.set_defaults(fn=_cmd_profile)

    p = sub.add_parser("compare", help="compare two profiles by fitted degree")
    p.add_argument("f", help="profile TSV")
    p.add_argument("g", help="profile TSV")
    p.set_defaults(fn=_cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (
        InvariantViolation,
        InvalidModelError,
        PreconditionError,
        AsymmetricFormulaError,
    ) as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return 1
    except (
        GraphFormatError,
        MalformedModelError,
        ParseError,
        CoverBudgetError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
