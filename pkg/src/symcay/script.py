"""A small statement language for driving constructions from text.

One statement per line, ``#`` starts a comment::

    r = (1 2 3 4 5)
    s = (2 5)(3 4)
    D = group(r, s)
    C = cayley(D, {r, (1 5 4 3 2)})
    classify(C)

A statement is ``name = expression`` or a bare expression, whose value is
printed.  Expressions are calls, cycle-notation permutations (1-based),
set literals in braces, integers, double-quoted strings and bound names.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from . import catalog, graphs, groups, symmetry
from .graphs import Graph
from .notation import NotationError, format_permutation, parse_cycles, permutation_from_cycles
from .perm import PermGroup, Permutation, core, normalizer, stabilizer


class ScriptError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Name:
    ident: str


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple


@dataclass(frozen=True)
class SetLiteral:
    items: tuple


@dataclass(frozen=True)
class Statement:
    target: str | None
    expr: object
    line: int


# ------------------------------------------------------------ parsing

class _Parser:
    def __init__(self, text: str, line: int):
        self.text = text
        self.pos = 0
        self.line = line

    def error(self, message: str) -> ScriptError:
        return ScriptError(f"{message} at column {self.pos + 1}", self.line)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def ident(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start:self.pos]

    def statement(self) -> Statement:
        save = self.pos
        name = self.ident()
        if name and not name[0].isdigit() and self.peek() == "=":
            self.pos += 1
            target = name
        else:
            self.pos = save
            target = None
        expr = self.expr()
        if self.peek():
            raise self.error("trailing text")
        return Statement(target, expr, self.line)

    def expr(self):
        ch = self.peek()
        if ch == "(":
            try:
                cycles, end = parse_cycles(self.text, self.pos)
                perm = permutation_from_cycles(cycles, position=self.pos)
            except NotationError as exc:
                raise ScriptError(str(exc), self.line) from None
            self.pos = end
            return perm
        if ch == "{":
            self.pos += 1
            items = self.sequence("}")
            return SetLiteral(tuple(items))
        if ch == '"':
            end = self.text.find('"', self.pos + 1)
            if end < 0:
                raise self.error("unterminated string")
            value = self.text[self.pos + 1:end]
            self.pos = end + 1
            return value
        if ch.isdigit() or ch == "-":
            start = self.pos
            self.pos += 1
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            try:
                return int(self.text[start:self.pos])
            except ValueError:
                raise self.error("malformed integer") from None
        name = self.ident()
        if not name:
            raise self.error("expected an expression")
        if self.peek() == "(":
            self.pos += 1
            return Call(name, tuple(self.sequence(")")))
        return Name(name)

    def sequence(self, close: str) -> list:
        items = []
        if self.peek() == close:
            self.pos += 1
            return items
        while True:
            items.append(self.expr())
            ch = self.peek()
            if ch == ",":
                self.pos += 1
            elif ch == close:
                self.pos += 1
                return items
            else:
                raise self.error(f"expected ',' or {close!r}")


def parse_script(text: str) -> list[Statement]:
    out = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if line.strip():
            out.append(_Parser(line, number).statement())
    return out


# ------------------------------------------------------------ values

def _common_degree(perms) -> list[Permutation]:
    deg = max((p.degree for p in perms), default=0)
    return [p.extend(deg) if p.degree < deg else p for p in perms]


def _fit(perm: Permutation, degree: int) -> Permutation:
    return perm.extend(degree) if perm.degree < degree else perm


def _fit_group(grp: PermGroup, degree: int) -> PermGroup:
    if grp.degree == degree:
        return grp
    return PermGroup([_fit(g, degree) for g in grp.generators], degree=degree)


def _group(*args) -> PermGroup:
    perms: list[Permutation] = []
    for a in args:
        perms.extend(a if isinstance(a, frozenset) else [a])
    if not all(isinstance(p, Permutation) for p in perms):
        raise ValueError("group() takes permutations or sets of permutations")
    perms = _common_degree(sorted(perms))
    return PermGroup(perms, degree=perms[0].degree if perms else 0)


def _align(*groups_):
    deg = max(g.degree for g in groups_)
    return [_fit_group(g, deg) for g in groups_]


def _cayley(G: PermGroup, S) -> Graph:
    return graphs.cayley(G, [_fit(s, G.degree) for s in S])


def _coset(X, H, g):
    X, H = _align(X, H)
    return X, H, _fit(g, X.degree)


def _transitivity(gamma: Graph, X: PermGroup):
    return symmetry.transitivity(gamma, _fit_group(X, gamma.n))


def _build(name: str, *settings: str):
    params = {}
    for s in settings:
        key, sep, value = s.partition("=")
        if not sep:
            raise ValueError(f"parameter {s!r} is not key=value")
        params[key.strip()] = value.strip()
    return catalog.build(name, params)


def _iso(a: Graph, b: Graph):
    perm = symmetry.are_isomorphic(a, b)
    return perm if perm is not None else False


def _load(path: str) -> Graph:
    return Graph.from_json(Path(path).read_text())


def _save(gamma: Graph, path: str) -> str:
    Path(path).write_text(gamma.to_json() + "\n")
    return path


FUNCTIONS = {
    "group": _group,
    "order": lambda G: G.order(),
    "contains": lambda G, x: G.contains(_fit(x, G.degree)),
    "orbit": lambda G, point: frozenset(v + 1 for v in G.orbit(point - 1)),
    "dihedral": groups.dihedral,
    "cyclic": groups.cyclic,
    "pgl2": groups.pgl2,
    "psl2": groups.psl2,
    "frobenius": lambda p, d, n: groups.frobenius_group(p, d, n).G,
    "core": lambda X, H: core(*_align(X, H)),
    "normalizer": lambda X, H: normalizer(*_align(X, H)),
    "stabilizer": lambda G, point: stabilizer(G, point - 1),
    "cayley": _cayley,
    "coset_graph": lambda X, H, g: graphs.coset_graph(*_coset(X, H, g)),
    "predicted_valency": lambda X, H, g: graphs.predicted_valency(*_coset(X, H, g)),
    "connectivity_criterion": lambda X, H, g: graphs.connectivity_criterion(*_coset(X, H, g)),
    "named": graphs.named_graph,
    "lex_cycle": graphs.lex_cycle,
    "double_cover": graphs.double_cover,
    "quotient": lambda gamma, N: graphs.quotient(gamma, _fit_group(N, gamma.n).orbits()),
    "is_cover": lambda gamma, N: graphs.is_cover(gamma, _fit_group(N, gamma.n).orbits()),
    "is_connected": graphs.is_connected,
    "valency": lambda gamma: gamma.valency(),
    "aut": symmetry.automorphism_group,
    "classify": symmetry.classify,
    "transitivity": _transitivity,
    "iso": _iso,
    "build": _build,
    "graph": lambda entry: entry.graph,
    "verify": lambda entry, level="structural": catalog.verify(entry, level),
    "load": _load,
    "save": _save,
}


def format_value(value) -> str:
    if isinstance(value, bool) or value is None:
        return str(value).lower()
    if isinstance(value, Permutation):
        return format_permutation(value)
    if isinstance(value, PermGroup):
        return f"group of order {value.order()} on {value.degree} points"
    if isinstance(value, Graph):
        k = value.valency()
        kind = f"valency {k}" if k is not None else "irregular"
        return f"graph with {value.n} vertices, {value.num_edges()} edges, {kind}"
    if isinstance(value, frozenset):
        items = sorted(value, key=lambda v: (type(v).__name__, v if not isinstance(v, Permutation) else v.images))
        return "{" + ", ".join(format_value(v) for v in items) + "}"
    if isinstance(value, catalog.CatalogEntry):
        return f"entry {value.name} {json.dumps(value.params, sort_keys=True)}"
    if isinstance(value, catalog.Report):
        return value.to_json()
    if isinstance(value, symmetry.TransitivityReport):
        return json.dumps(value.to_dict(), sort_keys=True)
    return str(value)


# ------------------------------------------------------------ evaluation

class Interpreter:
    def __init__(self, out=None):
        self.env: dict[str, object] = {}
        self.out = out

    def evaluate(self, expr, line: int):
        if isinstance(expr, Name):
            if expr.ident not in self.env:
                raise ScriptError(f"name {expr.ident!r} is not bound", line)
            return self.env[expr.ident]
        if isinstance(expr, SetLiteral):
            return frozenset(self.evaluate(e, line) for e in expr.items)
        if isinstance(expr, Call):
            fn = FUNCTIONS.get(expr.func)
            if fn is None:
                raise ScriptError(f"unknown function {expr.func!r}", line)
            args = [self.evaluate(a, line) for a in expr.args]
            try:
                return fn(*args)
            except TypeError as exc:
                raise ScriptError(f"{expr.func}: {exc}", line) from None
        return expr

    def run(self, statements: list[Statement]) -> None:
        for st in statements:
            value = self.evaluate(st.expr, st.line)
            if st.target is not None:
                self.env[st.target] = value
            elif self.out is not None:
                self.out(format_value(value))


def run_script(text: str, out=print) -> dict:
    interp = Interpreter(out)
    interp.run(parse_script(text))
    return interp.env
