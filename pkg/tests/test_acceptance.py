"""End-to-end acceptance checks.

Each test prints one "criterion N: PASS/FAIL" line (visible under -s) and
asserts the property it names.  Seeds are fixed so every run sees the
same instances.
"""

import itertools
import math
import random
import subprocess
import sys
import time

from oracles import rand_graph, wcol_of_order_oracle, wreach_oracle
from wcolkit import (
    Graph,
    Transduction,
    VertexOrdering,
    add_universal,
    apply_interpretation,
    bollobas_bound,
    bollobas_check,
    bollobas_search,
    build_model,
    check_transfer_inequality,
    check_wreach_intersections,
    complete_ktree,
    compare_domination,
    compute_covers,
    fan_ktree,
    format_graph,
    format_model,
    identity_model,
    isomorphic,
    ktt_free,
    label_edges,
    parse_formula,
    profile_family,
    random_ktree,
    random_model,
    search_transduction,
    theoretical_cover_bound,
    transduce,
    validate_model,
    wcol_exact,
    wcol_of_order,
    weak_reachability_sets,
)
from wcolkit.minors import MinorModel


def report(number: int, ok: bool, detail: str) -> None:
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")


def path_graph_raw(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def test_criterion_1_ktree_wcol_values():
    started = time.monotonic()
    # construction orderings stay under the binomial ceiling, d <= 15
    ceiling_violations = []
    members = [
        complete_ktree(1, 7),
        complete_ktree(2, 4),
        complete_ktree(3, 3),
        fan_ktree(1, 10),
        fan_ktree(2, 10),
    ]
    for t in (1, 2, 3):
        members.extend(random_ktree(t, 12, seed) for seed in range(5))
    for member in members:
        t = member.ktree_t
        for d in range(1, 16):
            value = wcol_of_order(member.graph, member.canonical, d).value
            if value > math.comb(d + t, t):
                ceiling_violations.append((member.label, d, value))
    # exact optimum on width-1 instances pinned to d+1 whenever n >= d+1
    exact_mismatches = []
    instances = [(f"path {n}", path_graph_raw(n)) for n in range(2, 11)]
    instances += [
        ("binary tree h=1", complete_ktree(1, 1).graph),
        ("binary tree h=2", complete_ktree(1, 2).graph),
    ]
    for d in range(1, 5):
        for label, g in instances:
            if g.n < d + 1:
                continue
            res = wcol_exact(g, d)
            assert res.exact
            if res.value != d + 1:
                exact_mismatches.append(f"{label}: wcol_{d}={res.value} != {d + 1}")
    elapsed = time.monotonic() - started
    ok = not ceiling_violations and not exact_mismatches and elapsed < 60
    shown = "; ".join(exact_mismatches[:3])
    report(
        1,
        ok,
        f"ceiling violations {len(ceiling_violations)}, exact mismatches "
        f"{len(exact_mismatches)} ({shown}...), {elapsed:.1f}s",
    )
    assert not ceiling_violations
    assert elapsed < 60
    assert not exact_mismatches, exact_mismatches


def test_criterion_2_transfer_inequality():
    started = time.monotonic()
    failures = 0
    for seed in range(1000):
        rng = random.Random(seed)
        n = rng.randint(1, 10)
        k = rng.randint(1, 3)
        d = rng.randint(0, 3)
        g = rand_graph(n, rng.choice([0.2, 0.4, 0.6]), seed * 7 + 1)
        model = random_model(g, k, seed * 13 + 2)
        order = VertexOrdering(tuple(rng.sample(range(n), n)))
        rep = check_transfer_inequality(model, order, d)
        if not rep.holds:
            failures += 1
        if any(len(p) - 1 > 4 * k + 1 for p in rep.edge_paths.values()):
            failures += 1
    elapsed = time.monotonic() - started
    ok = failures == 0 and elapsed < 60
    report(2, ok, f"1000 random models, {failures} failures, {elapsed:.1f}s")
    assert failures == 0
    assert elapsed < 60


def test_criterion_3_setpair_bound():
    started = time.monotonic()
    excesses = []
    for universe in range(6):
        for a in range(3):
            for b in range(3):
                length, witness = bollobas_search(universe, a, b)
                if length > bollobas_bound(a, b):
                    excesses.append((universe, a, b, length))
                verdict = bollobas_check(
                    [w[0] for w in witness], [w[1] for w in witness], a, b
                )
                assert verdict.premise_ok
    elapsed = time.monotonic() - started
    ok = not excesses and elapsed < 60
    report(3, ok, f"universe<=5, a,b<=2 exhaustive, {len(excesses)} excesses, {elapsed:.1f}s")
    assert not excesses
    assert elapsed < 60


def test_criterion_4_cover_pipeline():
    started = time.monotonic()
    formulas = [
        parse_formula("adj(x, y) | (A(x) & A(y))"),
        parse_formula("adj(x, y) | exists z (adj(x, z) & adj(z, y))"),
    ]
    bad = 0
    for run in range(200):
        rng = random.Random(run)
        n = rng.randint(1, 8)
        gprime = rand_graph(n, rng.choice([0.2, 0.35, 0.5]), run * 3 + 1)
        a_set = frozenset(v for v in range(n) if rng.random() < 0.5)
        gprime = gprime.with_colors({"A": a_set})
        g = add_universal(gprime)
        order = VertexOrdering((n,) + tuple(range(n)))
        d = rng.choice([1, 2])
        ok_pre, _ = check_wreach_intersections(g, order, d)
        assert ok_pre
        h = apply_interpretation(g, formulas[run % 2])
        hedges = sorted(h.edges)
        labeling = label_edges(g, order, d, hedges)
        covers = compute_covers(labeling)
        model = build_model(g, order, d, covers, hedges)
        rep = validate_model(model)
        sets = weak_reachability_sets(g, order, d)
        s = max(len(x) for x in sets)
        claims = [
            rep.valid,
            model.pattern.edges == frozenset(hedges),
            rep.observed_depth <= 2 * d,
            rep.observed_congestion <= s * max(covers.max_size, 1),
        ]
        t = 1
        while not ktt_free(h, t):
            t += 1
        s2 = wcol_of_order(g, order, 2 * d).value
        claims.append(covers.max_size <= theoretical_cover_bound(max(s2, 2), t, 1))
        if not all(claims):
            bad += 1
    elapsed = time.monotonic() - started
    ok = bad == 0 and elapsed < 60
    report(4, ok, f"200 cone pipelines, {bad} failed claim sets, {elapsed:.1f}s")
    assert bad == 0


def test_criterion_5_oracle_agreement():
    started = time.monotonic()
    mismatches = 0

    def check(g, seed):
        nonlocal mismatches
        rng = random.Random(seed)
        order = VertexOrdering(tuple(rng.sample(range(g.n), g.n)))
        for d in range(0, 4):
            if wcol_of_order(g, order, d).value != wcol_of_order_oracle(g, order, d):
                mismatches += 1
        for d in range(1, 4):
            best = min(
                wcol_of_order(g, VertexOrdering(perm), d).value
                for perm in itertools.permutations(range(g.n))
            )
            res = wcol_exact(g, d)
            if not res.exact or res.value != best:
                mismatches += 1

    count = 0
    for n in range(1, 5):
        pairs = list(itertools.combinations(range(n), 2))
        for bits in range(1 << len(pairs)):
            g = Graph(n, frozenset(p for i, p in enumerate(pairs) if bits >> i & 1))
            check(g, bits * 31 + n)
            count += 1
    for i in range(500):
        rng = random.Random(9000 + i)
        n = 5 if i < 350 else 6
        g = rand_graph(n, rng.choice([0.25, 0.5, 0.75]), 9000 + i)
        check(g, 9000 + i)
        count += 1
    elapsed = time.monotonic() - started
    ok = mismatches == 0
    report(5, ok, f"{count} graphs vs both oracles, {mismatches} mismatches, {elapsed:.1f}s")
    assert mismatches == 0


def test_criterion_6_stars_from_edgeless():
    trans = Transduction(("A",), parse_formula("(A(x) & !A(y)) | (A(y) & !A(x))"))
    outcomes = []
    for n in range(2, 7):
        source = Graph(n)
        target = Graph(n, frozenset((0, i) for i in range(1, n)))
        first = search_transduction(source, target, trans)
        second = search_transduction(source, target, trans)
        rebuilt = transduce(source, trans, first.expansion, first.keep)
        outcomes.append(
            first.status == "found"
            and first == second
            and isomorphic(rebuilt, target)
        )
    ok = all(outcomes)
    report(6, ok, f"edgeless n=2..6 to stars, {sum(outcomes)}/5 found deterministically")
    assert ok


def test_criterion_7_degree_separation():
    started = time.monotonic()
    low = profile_family(["fan-ktree 1 15"], 15)
    high = profile_family(["fan-ktree 2 15"], 15)
    gap = high.fitted_degree - low.fitted_degree
    verdict = compare_domination(high, low)
    elapsed = time.monotonic() - started
    ok = gap >= 0.5 and verdict == "g-cannot-dominate-f (empirical)" and elapsed < 300
    report(
        7,
        ok,
        f"degrees {high.fitted_degree:.4f} vs {low.fitted_degree:.4f}, gap {gap:.3f}, "
        f"verdict {verdict}, {elapsed:.1f}s",
    )
    assert gap >= 0.5
    assert verdict == "g-cannot-dominate-f (empirical)"
    assert elapsed < 300


def test_criterion_8_cli_determinism(tmp_path):
    star4 = Graph(4, frozenset({(0, 1), (0, 2), (0, 3)}))
    p4 = Graph(4, frozenset({(0, 1), (1, 2), (2, 3)}))
    p10 = path = Graph(10, frozenset((i, i + 1) for i in range(9)))
    star5 = Graph(5, frozenset((0, i) for i in range(1, 5)))

    def put(name, text):
        target = tmp_path / name
        target.write_text(text, encoding="utf-8")
        return str(target)

    g10 = put("p10.txt", format_graph(p10))
    o10 = put("o10.txt", " ".join(str(v) for v in range(10)) + "\n")
    host = put("host.txt", format_graph(p4))
    model = put(
        "model.txt",
        format_model(
            MinorModel(
                p4,
                Graph(2, frozenset({(0, 1)})),
                (frozenset({0, 1}), frozenset({2, 3})),
                1,
                1,
            )
        ),
    )
    o4 = put("o4.txt", "0 1 2 3\n")
    star = put("star.txt", format_graph(star4))
    edges = put("edges.txt", "1 2\n")
    pairs = put("pairs.txt", "1 ; 2\n2 ; 1\n")
    f_dist2 = put("dist2.txt", "exists z (adj(x, z) & adj(z, y))\n")
    f_star = put("fstar.txt", "(A(x) & !A(y)) | (A(y) & !A(x))\n")
    big_star = put("star5.txt", format_graph(star5))
    edgeless4 = put("edgeless4.txt", format_graph(Graph(4)))
    prof_low = str(tmp_path / "low.tsv")
    prof_high = str(tmp_path / "high.tsv")

    commands = [
        ["gen", "fan-ktree", "2", "4"],
        ["gen", "random-ktree", "2", "9", "3"],
        ["wcol", g10, "--d", "3", "--order", o10],
        ["wcol", g10, "--d", "2", "--exact"],
        ["wcol", g10, "--d", "2", "--heuristic"],
        ["validate-model", host, model],
        ["pullback", host, model, o4],
        ["check-transfer", host, model, o4, "--d", "1", "--k", "1"],
        ["sigma-rho", star, o4, "--d", "1", "--edges", edges],
        ["build-model", star, o4, "--d", "1", "--edges", edges],
        ["bollobas", "check", pairs, "--a", "1", "--b", "1"],
        ["bollobas", "search", "--a", "2", "--b", "2", "--universe", "4"],
        ["fo-apply", big_star, "--formula", f_dist2],
        ["fo-search", edgeless4, star, "--formula", f_star, "--colors", "A"],
        ["profile", "--family", "fan-ktree 1 8", "--d-max", "8", "--out", prof_low],
        ["profile", "--family", "fan-ktree 2 8", "--d-max", "8", "--out", prof_high],
        ["compare", prof_high, prof_low],
    ]
    unstable = []
    for argv in commands:
        runs = [
            subprocess.run(
                [sys.executable, "-m", "wcolkit.cli", *argv],
                capture_output=True,
            )
            for _ in range(2)
        ]
        same = (
            runs[0].stdout == runs[1].stdout
            and runs[0].stderr == runs[1].stderr
            and runs[0].returncode == runs[1].returncode
        )
        if not same:
            unstable.append(argv[0])
    ok = not unstable
    report(8, ok, f"{len(commands)} subcommands run twice, unstable: {unstable or 'none'}")
    assert not unstable
