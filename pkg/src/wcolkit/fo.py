"""First-order formulas over colored graphs, interpretations, transductions.

Formula syntax, plain text:

    atom      :=  adj(v, w)  |  v = w  |  Name(v)  |  true  |  false
    formula   :=  !f  |  f & g  |  f | g  |  f -> g  |  f <-> g
               |  exists v f  |  forall v f  |  (f)

Precedence from tightest to loosest: !, &, |, ->, <->.  Implication is
right associative, equivalence left associative.  A quantifier body
extends maximally to the right, so ``exists z adj(x,z) & adj(z,y)``
binds both conjuncts.  The names adj, exists, forall, true and false are
reserved; any other identifier applied to an argument is a color test.
Free variables must be among x and y, and quantifiers may bind neither
of them, nor shadow an enclosing binding.

An interpretation rewrites the edge relation of a graph by a symmetric
formula in x and y.  A transduction first expands the graph with new
color sets, then interprets, then restricts to a subset of vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Mapping

from .graphs import Graph, induced_subgraph, isomorphic

RESERVED = frozenset({"adj", "exists", "forall", "true", "false"})

DEFAULT_FO_BUDGET = 200_000


class ParseError(ValueError):
    """Formula text rejected; message carries line and column."""


class AsymmetricFormulaError(ValueError):
    """Edge formula disagrees with its own transpose on some pair."""


@dataclass(frozen=True)
class Literal:
    value: bool


@dataclass(frozen=True)
class Adj:
    left: str
    right: str


@dataclass(frozen=True)
class Eq:
    left: str
    right: str


@dataclass(frozen=True)
class Color:
    name: str
    var: str


@dataclass(frozen=True)
class Not:
    sub: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    sub: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    sub: "Formula"


Formula = (
    Literal | Adj | Eq | Color | Not | And | Or | Implies | Iff | Exists | Forall
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        start_col = col
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in "(),!&|=":
            kind = {
                "(": "lparen",
                ")": "rparen",
                ",": "comma",
                "!": "not",
                "&": "and",
                "|": "or",
                "=": "eq",
            }[ch]
            tokens.append(_Token(kind, ch, line, start_col))
            i += 1
            col += 1
            continue
        if ch == "-":
            if text[i : i + 2] == "->":
                tokens.append(_Token("implies", "->", line, start_col))
                i += 2
                col += 2
                continue
            raise ParseError(f"{line}:{start_col}: stray '-'")
        if ch == "<":
            if text[i : i + 3] == "<->":
                tokens.append(_Token("iff", "<->", line, start_col))
                i += 3
                col += 3
                continue
            raise ParseError(f"{line}:{start_col}: stray '<'")
        raise ParseError(f"{line}:{start_col}: unexpected character {ch!r}")
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0
        self.scope = []

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self, kind: str) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != kind:
            raise ParseError(
                f"{tok.line}:{tok.col}: expected {kind}, found {tok.text or 'end of input'!r}"
            )
        self.pos += 1
        return tok

    def error(self, tok: _Token, why: str):
        raise ParseError(f"{tok.line}:{tok.col}: {why}")

    def variable(self) -> str:
        tok = self.take("ident")
        if tok.text in RESERVED:
            self.error(tok, f"reserved word {tok.text!r} cannot name a variable")
        if tok.text not in ("x", "y") and tok.text not in self.scope:
            self.error(tok, f"unbound variable {tok.text!r}")
        return tok.text

    def formula(self) -> Formula:
        return self.iff()

    def iff(self) -> Formula:
        node = self.implies()
        while self.peek().kind == "iff":
            self.take("iff")
            node = Iff(node, self.implies())
        return node

    def implies(self) -> Formula:
        node = self.disjunction()
        if self.peek().kind == "implies":
            self.take("implies")
            return Implies(node, self.implies())
        return node

    def disjunction(self) -> Formula:
        node = self.conjunction()
        while self.peek().kind == "or":
            self.take("or")
            node = Or(node, self.conjunction())
        return node

    def conjunction(self) -> Formula:
        node = self.negation()
        while self.peek().kind == "and":
            self.take("and")
            node = And(node, self.negation())
        return node

    def negation(self) -> Formula:
        if self.peek().kind == "not":
            self.take("not")
            return Not(self.negation())
        return self.atom()

    def quantifier(self, ctor) -> Formula:
        tok = self.take("ident")
        name = tok.text
        if name in RESERVED:
            self.error(tok, f"reserved word {name!r} cannot be quantified")
        if name in ("x", "y"):
            self.error(tok, f"cannot rebind {name!r}")
        if name in self.scope:
            self.error(tok, f"variable {name!r} is already bound")
        self.scope.append(name)
        body = self.formula()
        self.scope.pop()
        return ctor(name, body)

    def atom(self) -> Formula:
        tok = self.peek()
        if tok.kind == "lparen":
            self.take("lparen")
            node = self.formula()
            self.take("rparen")
            return node
        if tok.kind == "ident":
            self.take("ident")
            word = tok.text
            if word == "true":
                return Literal(True)
            if word == "false":
                return Literal(False)
            if word == "exists":
                return self.quantifier(Exists)
            if word == "forall":
                return self.quantifier(Forall)
            if word == "adj":
                self.take("lparen")
                a = self.variable()
                self.take("comma")
                b = self.variable()
                self.take("rparen")
                return Adj(a, b)
            if self.peek().kind == "lparen":
                self.take("lparen")
                v = self.variable()
                self.take("rparen")
                return Color(word, v)
            if self.peek().kind == "eq":
                if word not in ("x", "y") and word not in self.scope:
                    self.error(tok, f"unbound variable {word!r}")
                self.take("eq")
                return Eq(word, self.variable())
            self.error(tok, f"expected '(' or '=' after {word!r}")
        self.error(tok, f"expected a formula, found {tok.text or 'end of input'!r}")


def parse_formula(text: str) -> Formula:
    parser = _Parser(_tokenize(text))
    node = parser.formula()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(f"{tok.line}:{tok.col}: trailing input {tok.text!r}")
    return node


def quantifier_rank(node: Formula) -> int:
    if isinstance(node, (Literal, Adj, Eq, Color)):
        return 0
    if isinstance(node, Not):
        return quantifier_rank(node.sub)
    if isinstance(node, (And, Or, Implies, Iff)):
        return max(quantifier_rank(node.left), quantifier_rank(node.right))
    return 1 + quantifier_rank(node.sub)


def formula_colors(node: Formula) -> frozenset:
    if isinstance(node, Color):
        return frozenset({node.name})
    if isinstance(node, (Literal, Adj, Eq)):
        return frozenset()
    if isinstance(node, Not):
        return formula_colors(node.sub)
    if isinstance(node, (And, Or, Implies, Iff)):
        return formula_colors(node.left) | formula_colors(node.right)
    return formula_colors(node.sub)


_PREC = {
    Iff: 1,
    Implies: 2,
    Or: 3,
    And: 4,
    Not: 5,
}


def _prec(node: Formula) -> int:
    if isinstance(node, (Exists, Forall)):
        return 0
    return _PREC.get(type(node), 6)


def format_formula(node: Formula) -> str:
    """Parseable text; parse(format(f)) returns f."""

    def render(sub: Formula, floor: int) -> str:
        text = raw(sub)
        if _prec(sub) < floor:
            return f"({text})"
        return text

    def raw(sub: Formula) -> str:
        if isinstance(sub, Literal):
            return "true" if sub.value else "false"
        if isinstance(sub, Adj):
            return f"adj({sub.left}, {sub.right})"
        if isinstance(sub, Eq):
            return f"{sub.left} = {sub.right}"
        if isinstance(sub, Color):
            return f"{sub.name}({sub.var})"
        if isinstance(sub, Not):
            return "!" + render(sub.sub, 5)
        if isinstance(sub, And):
            return f"{render(sub.left, 4)} & {render(sub.right, 5)}"
        if isinstance(sub, Or):
            return f"{render(sub.left, 3)} | {render(sub.right, 4)}"
        if isinstance(sub, Implies):
            return f"{render(sub.left, 3)} -> {render(sub.right, 2)}"
        if isinstance(sub, Iff):
            return f"{render(sub.left, 1)} <-> {render(sub.right, 2)}"
        if isinstance(sub, Exists):
            return f"exists {sub.var} {render(sub.sub, 0)}"
        return f"forall {sub.var} {render(sub.sub, 0)}"

    return raw(node)


def swap_xy(node: Formula) -> Formula:
    """Exchange the free variables x and y throughout."""
    flip = {"x": "y", "y": "x"}

    def sw(v: str) -> str:
        return flip.get(v, v)

    if isinstance(node, Literal):
        return node
    if isinstance(node, Adj):
        return Adj(sw(node.left), sw(node.right))
    if isinstance(node, Eq):
        return Eq(sw(node.left), sw(node.right))
    if isinstance(node, Color):
        return Color(node.name, sw(node.var))
    if isinstance(node, Not):
        return Not(swap_xy(node.sub))
    if isinstance(node, (And, Or, Implies, Iff)):
        return type(node)(swap_xy(node.left), swap_xy(node.right))
    return type(node)(node.var, swap_xy(node.sub))


def symmetrize(node: Formula) -> Formula:
    """Disjunction with the transpose; always a symmetric edge formula."""
    return Or(node, swap_xy(node))


def eval_formula(node: Formula, graph: Graph, assignment: Mapping[str, int]) -> bool:
    env = dict(assignment)

    def ev(sub: Formula) -> bool:
        if isinstance(sub, Literal):
            return sub.value
        if isinstance(sub, Adj):
            return graph.has_edge(env[sub.left], env[sub.right])
        if isinstance(sub, Eq):
            return env[sub.left] == env[sub.right]
        if isinstance(sub, Color):
            return env[sub.var] in graph.color_set(sub.name)
        if isinstance(sub, Not):
            return not ev(sub.sub)
        if isinstance(sub, And):
            return ev(sub.left) and ev(sub.right)
        if isinstance(sub, Or):
            return ev(sub.left) or ev(sub.right)
        if isinstance(sub, Implies):
            return (not ev(sub.left)) or ev(sub.right)
        if isinstance(sub, Iff):
            return ev(sub.left) == ev(sub.right)
        if isinstance(sub, Exists):
            for w in range(graph.n):
                env[sub.var] = w
                if ev(sub.sub):
                    del env[sub.var]
                    return True
            if graph.n:
                del env[sub.var]
            return False
        for w in range(graph.n):
            env[sub.var] = w
            if not ev(sub.sub):
                del env[sub.var]
                return False
        if graph.n:
            del env[sub.var]
        return True

    return ev(node)


def check_symmetric(node: Formula, graph: Graph):
    """Does the formula agree with its transpose on every pair?

    Returns (True, None) or (False, (u, v)) with the first pair, in
    lexicographic order, on which the two orientations disagree.
    """
    for u in range(graph.n):
        for v in range(u + 1, graph.n):
            if eval_formula(node, graph, {"x": u, "y": v}) != eval_formula(
                node, graph, {"x": v, "y": u}
            ):
                return False, (u, v)
    return True, None


def apply_interpretation(graph: Graph, node: Formula) -> Graph:
    """Replace the edge relation by the formula; colors are dropped.

    The formula must be symmetric on this graph, otherwise
    AsymmetricFormulaError reports the first disagreeing pair.
    """
    ok, pair = check_symmetric(node, graph)
    if not ok:
        raise AsymmetricFormulaError(
            f"formula is asymmetric on pair ({pair[0]}, {pair[1]})"
        )
    edges = set()
    for u in range(graph.n):
        for v in range(u + 1, graph.n):
            if eval_formula(node, graph, {"x": u, "y": v}):
                edges.add((u, v))
    return Graph(graph.n, frozenset(edges))


@dataclass(frozen=True)
class Transduction:
    """New color names plus an edge formula over them."""

    colors: tuple
    formula: Formula

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))
        if len(set(self.colors)) != len(self.colors):
            raise ValueError("duplicate color names")
        for name in self.colors:
            if name in RESERVED:
                raise ValueError(f"reserved word {name!r} cannot name a color")
        unknown = formula_colors(self.formula) - set(self.colors)
        if unknown:
            raise ValueError(
                f"formula uses undeclared colors: {', '.join(sorted(unknown))}"
            )


def transduce(graph: Graph, trans: Transduction, expansion: Mapping, keep) -> Graph:
    """Expand with colors, interpret the edge formula, restrict to keep."""
    for name in expansion:
        if name not in trans.colors:
            raise ValueError(f"expansion names unknown color {name!r}")
    merged = dict(graph.colors)
    for name in trans.colors:
        merged[name] = frozenset(expansion.get(name, frozenset()))
    expanded = graph.with_colors(merged)
    applied = apply_interpretation(expanded, trans.formula)
    return induced_subgraph(applied, keep)


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a transduction search.

    status is "found" with the witness expansion and keep set, "none"
    when the whole space was exhausted, or "unknown" when the budget ran
    out first.  checked counts candidate (expansion, keep) pairs tried.
    """

    status: str
    expansion: "Mapping | None"
    keep: "tuple | None"
    checked: int


def search_transduction(
    source: Graph,
    target: Graph,
    trans: Transduction,
    budget: int = DEFAULT_FO_BUDGET,
) -> SearchResult:
    """First expansion and keep set making the transduction hit the target.

    Expansions are enumerated as per-color vertex bitmasks, the first
    declared color most significant, lower vertex ids in lower bits; keep
    sets in lexicographic order.  Expansions on which the formula is
    asymmetric are skipped (they cost one budget unit).  Isomorphism to
    the target is tested exhaustively, so keep targets small.
    """
    n = source.n
    checked = 0
    if target.n > n:
        return SearchResult("none", None, None, 0)
    for masks in product(range(1 << n), repeat=len(trans.colors)):
        expansion = {
            name: frozenset(v for v in range(n) if mask >> v & 1)
            for name, mask in zip(trans.colors, masks)
        }
        merged = dict(source.colors)
        merged.update(expansion)
        expanded = source.with_colors(merged)
        ok, _ = check_symmetric(trans.formula, expanded)
        checked += 1
        if checked > budget:
            return SearchResult("unknown", None, None, checked)
        if not ok:
            continue
        applied = apply_interpretation(expanded, trans.formula)
        for keep in combinations(range(n), target.n):
            checked += 1
            if checked > budget:
                return SearchResult("unknown", None, None, checked)
            candidate = induced_subgraph(applied, keep)
            if isomorphic(candidate, target):
                return SearchResult("found", expansion, keep, checked)
    return SearchResult("none", None, None, checked)
