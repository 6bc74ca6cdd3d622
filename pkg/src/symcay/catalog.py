"""Named constructions, each built with its expected-property manifest.

Every entry carries the graph, a group ``X`` and a regular subgroup ``G``
acting on its vertices, and the coset data ``(X, H, g)`` it came from (for
entries defined as Cayley or incidence graphs the coset data is the
vertex action, the stabilizer of vertex 0 and an element carrying 0 to
its first neighbour).  Expected values live in ``data/manifest.json``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from importlib import resources

from . import ff, groups, limits, symmetry
from .graphs import (
    Graph, cayley, connectivity_criterion, coset_graph_with_space, double_coset_is_self_paired,
    double_cover, is_connected, is_cover, lex_cycle, named_graph, predicted_valency,
    projective_plane_graph, quotient,
)
from .limits import HypothesisError
from .perm import PermGroup, Permutation, core, elements, normalizer, stabilizer

LEVELS = ("structural", "full")


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise HypothesisError(message)


@dataclass
class CosetData:
    X: PermGroup
    H: PermGroup
    g: Permutation


@dataclass
class CatalogEntry:
    name: str
    params: dict
    graph: Graph
    X: PermGroup  # on the vertices
    G: PermGroup  # on the vertices
    coset: CosetData
    X_src: PermGroup  # where normality of G is decided
    G_src: PermGroup
    W: PermGroup | None = None  # on the vertices; its orbits give the normal quotient
    derived: dict = field(default_factory=dict)
    expected: list = field(default_factory=list)

    @property
    def core_order(self) -> int:
        return self.derived.get("core_order", 1)


# ------------------------------------------------------------ manifest

@lru_cache(maxsize=1)
def manifest() -> dict:
    text = resources.files("symcay").joinpath("data/manifest.json").read_text()
    return json.loads(text)


def entry_names() -> list[str]:
    return sorted(manifest()["entries"])


def default_params(name: str) -> dict:
    return dict(_manifest_entry(name)["params"])


def _manifest_entry(name: str) -> dict:
    entries = manifest()["entries"]
    if name not in entries:
        raise KeyError(f"unknown catalog entry {name!r}")
    return entries[name]


# ------------------------------------------------------------ assembly helpers

def _carrier(X: PermGroup, a: int, b: int) -> Permutation:
    """An element of ``X`` mapping point ``a`` to point ``b``."""
    reps = {a: Permutation.identity(X.degree)}
    queue = [a]
    for u in queue:
        if u == b:
            return reps[u]
        for s in X.generators:
            v = s.images[u]
            if v not in reps:
                reps[v] = reps[u] * s
                queue.append(v)
    raise HypothesisError(f"no element of X maps {a} to {b}")


def _check_index(n: int) -> None:
    limits.check(n, limits.current().max_coset_index, "coset index")


def _from_coset(name, params, X, H, g, G, W=None, derived=None) -> CatalogEntry:
    """Coset graph entry; vertex actions inherit source orders only when ``H`` is core-free."""
    derived = dict(derived or {})
    core_order = core(X, H).order()
    derived["core_order"] = core_order
    graph, space = coset_graph_with_space(X, H, g, check_core=False)
    faithful = core_order == 1

    def act(grp):
        return PermGroup([space.action(a) for a in grp.generators], degree=space.index,
                         order=grp.order() if faithful else None)

    Wv = PermGroup([space.action(a) for a in W.generators], degree=space.index) if W else None
    return CatalogEntry(name, params, graph, act(X), act(G), CosetData(X, H, g), X, G, Wv, derived)


def _from_action(name, params, graph, X, G, W=None, derived=None) -> CatalogEntry:
    g = _carrier(X, 0, graph.adj[0][0])
    coset = CosetData(X, stabilizer(X, 0), g)
    return CatalogEntry(name, params, graph, X, G, coset, X, G, W, dict(derived or {}))


def _first(it):
    return next(iter(it), None)


def _dihedral_pair(elems, r: Permutation) -> PermGroup:
    """``<r, t>`` for the first involution ``t`` inverting ``r``."""
    rinv = r.inverse()
    t = _first(e for e in elems if e.order() == 2 and e * r * e == rinv)
    if t is None:
        raise AssertionError("no involution inverts r")
    return PermGroup([r, t], degree=r.degree)


# ------------------------------------------------------------ soluble families

def _gamma_2_p1_p(p: int) -> CatalogEntry:
    _require(ff.is_prime(p), f"p not prime: {p}")
    _require(p >= 5, "p >= 5 violated")
    _require(groups.is_primitive_divisor(p, 2, p - 1), f"{p} not a primitive divisor of 2^{p - 1}-1")
    _check_index(2 ** (p - 1) * p)
    fd = groups.frobenius_group(2, p - 1, p)
    f = fd.field
    sigma = groups.field_automorphism(f, (p - 1) // 2)
    X = PermGroup(list(fd.G.generators) + [sigma], degree=f.size)
    H = PermGroup([sigma], degree=f.size)
    omega = ff.primitive_element(f)
    g = groups.translation(f, (omega ** (2 ** ((p - 1) // 2) + 1)).value) * fd.h
    return _from_coset("gamma_2_p1_p", {"p": p}, X, H, g, fd.G, fd.W,
                       {"order_G": 2 ** (p - 1) * p})


def _block_entry(name: str, bc: groups.BlockConstruction, params: dict, extra: dict) -> CatalogEntry:
    order_G = bc.p ** bc.d * bc.n
    _check_index(order_G)
    derived = {"n": bc.n, "order_G": order_G, **extra}
    return _from_coset(name, params, bc.X, bc.N, bc.y, bc.G, bc.W, derived)


def _gamma_p_2_n(p: int, l: int, m: int, d: int) -> CatalogEntry:
    bc = groups.construction_group_im(p, l, m, d)
    WN = PermGroup(list(bc.W.generators) + list(bc.N.generators), degree=bc.X.degree)
    extra = {"quotient": f"C{bc.n}", "quotient_dihedral": bc.X.order() // WN.order() == 2 * bc.n}
    return _block_entry("gamma_p_2_n", bc, {"p": p, "l": l, "m": m, "d": d}, extra)


def _gamma_p_n(p: int, l: int, m: int, d: int) -> CatalogEntry:
    bc = groups.construction_group_yin(p, l, m, d)
    return _block_entry("gamma_p_n", bc, {"p": p, "l": l, "m": m, "d": d},
                        {"quotient": f"lex_cycle{bc.n // 2}"})


def _gamma_2_d_n(d: int, n: int) -> CatalogEntry:
    dc = groups.construction_group_d2p(d, n)
    _check_index(2**d * n)
    return _from_coset("gamma_2_d_n", {"d": d, "n": n}, dc.X, dc.R, dc.h, dc.G, dc.W,
                       {"order_G": 2**d * n})


def _gamma_p_4_5(p: int) -> CatalogEntry:
    mc = groups.a5_module_group(p)
    _check_index(p**4 * 5)
    return _from_coset("gamma_p_4_5", {"p": p}, mc.X, mc.R, mc.connector, mc.G, mc.W,
                       {"order_G": p**4 * 5})


def _gamma_p_4_10(p: int) -> CatalogEntry:
    mc = groups.s5_module_group(p)
    _check_index(p**4 * 10)
    return _from_coset("gamma_p_4_10", {"p": p}, mc.X, mc.R, mc.connector, mc.G, mc.W,
                       {"order_G": p**4 * 10})


# ------------------------------------------------------------ incidence graphs

def _singer_dihedral(N: int) -> PermGroup:
    """``<rho, tau>`` on points ``i`` and lines ``N + j``: ``rho`` shifts points
    up and lines down, ``tau`` swaps point ``i`` with line ``i``."""
    rho = Permutation([(i + 1) % N for i in range(N)] + [N + (j - 1) % N for j in range(N)])
    tau = Permutation([N + i for i in range(N)] + list(range(N)))
    return PermGroup([rho, tau], degree=2 * N)


def _incidence_entry(name: str, q: int, incident: bool) -> CatalogEntry:
    graph = projective_plane_graph(q, incident)
    X = symmetry.automorphism_group(graph)
    return _from_action(name, {}, graph, X, _singer_dihedral(q * q + q + 1))


def _example_TA1() -> CatalogEntry:
    return _incidence_entry("example_TA1", 2, incident=False)


def _example_TA2() -> CatalogEntry:
    return _incidence_entry("example_TA2", 3, incident=True)


def _lex_cycle(p: int) -> CatalogEntry:
    _require(ff.is_prime(p) and p >= 3, f"p not an odd prime: {p}")
    graph = lex_cycle(p)
    # vertex 2i + j; rho: i -> i + 1, sigma: (i, j) -> (-i, 1 - j)
    rho = Permutation([2 * ((v // 2 + 1) % p) + v % 2 for v in range(2 * p)])
    sigma = Permutation([2 * ((-(v // 2)) % p) + 1 - v % 2 for v in range(2 * p)])
    X = symmetry.automorphism_group(graph)
    return _from_action("lex_cycle", {"p": p}, graph, X, PermGroup([rho, sigma], degree=2 * p),
                        derived={"aut_claim": 2**p * 2 * p})


# ------------------------------------------------------------ projective examples

def _example_A_data():
    X = groups.pgl2(7)
    el = elements(X)
    r = _first(e for e in el if e.order() == 8)
    H = _dihedral_pair(el, r)
    invs = [t for t in elements(H) if t.order() == 2]
    for i, a in enumerate(invs):
        for b in invs[i + 1:]:
            if a * b != b * a:
                continue
            K = PermGroup([a, b], degree=X.degree)
            NX = normalizer(X, K)
            if NX.order() != 24:
                continue
            for o in elements(normalizer(H, K)):
                if o.order() != 2 or K.contains(o):
                    continue
                oinv_z = [z for z in elements(NX) if z.order() == 3 and o * z * o == z.inverse()]
                if oinv_z:
                    return X, H, o * oinv_z[0]
    raise AssertionError("no (K, o, z) found in PGL(2,7)")


def _example_A() -> CatalogEntry:
    X, H, g = _example_A_data()
    w2 = X.generators[1] * X.generators[1]
    G = PermGroup([X.generators[0], w2], degree=X.degree)
    return _from_coset("example_A", {}, X, H, g, G, derived={"aut_claim": X.order()})


def _example_B(x: str) -> CatalogEntry:
    _require(x in ("z", "yz"), f"x must be z or yz, not {x!r}")
    X = groups.pgl2(7)
    T = groups.psl2(7)
    el = elements(T)
    r = _first(e for e in el if e.order() == 4)
    H = _dihedral_pair(el, r)
    hel = elements(H)
    centre = {c for c in hel if all(c * s == s * c for s in H.generators)}
    o = _first(e for e in hel if e.order() == 2 and e not in centre)
    NX = normalizer(X, PermGroup([o], degree=X.degree))
    nel = elements(NX)
    z = _first(e for e in nel if e.order() == 2 and not T.contains(e))
    y = _first(e for e in nel if e.order() == 4)
    g = z if x == "z" else y * z
    G = PermGroup(X.generators[:2], degree=X.degree)
    return _from_coset("example_B", {"x": x}, X, H, g, G, derived={"aut_claim": X.order()})


def _example_C_data(q: int):
    _require(q in (11, 23), f"q must be 11 or 23, not {q}")
    X = groups.pgl2(q) if q == 11 else groups.psl2(q)
    el = elements(X)
    e3 = [e for e in el if e.order() == 3]
    H = None
    for a in (e for e in el if e.order() == 4):
        H = _first(P for P in (PermGroup([a, b], degree=X.degree) for b in e3) if P.order() == 24)
        if H is not None:
            break
    hel = elements(H)
    c = _first(e for e in hel if e.order() == 3)
    L = _dihedral_pair(hel, c)
    NL = normalizer(X, L)
    o = _first(e for e in elements(NL) if e.order() == 2 and not H.contains(e))
    if q == 11:
        G = PermGroup([X.generators[0], X.generators[1] * X.generators[1]], degree=X.degree)
    else:
        G = PermGroup(X.generators[:2], degree=X.degree)
    return X, H, o, G, NL.order()


def _example_C(q: int) -> CatalogEntry:
    X, H, o, G, nl = _example_C_data(q)
    return _from_coset("example_C", {"q": q}, X, H, o, G,
                       derived={"aut_claim": X.order(), "normalizer_L_order": nl,
                                "order_G": X.order() // 24})


def _example_D() -> CatalogEntry:
    base = _example_C(11)
    n = base.graph.n
    graph = double_cover(base.graph)

    def lift(a: Permutation) -> Permutation:
        return Permutation(list(a.images) + [v + n for v in a.images], check=False)

    eps = Permutation([v + n for v in range(n)] + list(range(n)))
    X = PermGroup([lift(a) for a in base.X.generators] + [eps], degree=2 * n)
    t, w = base.X.generators[0], base.X.generators[1]
    G = PermGroup([lift(t), lift(w) * eps], degree=2 * n)
    return _from_action("example_D", {}, graph, X, G, derived={"aut_claim": 2 * base.X.order()})


# ------------------------------------------------------------ half-transitive family

def _check_half_transitive(p: int, d: int, n: int) -> None:
    _require(ff.is_prime(p) and p % 2 == 1, f"p not an odd prime: {p}")
    _require(d > 1 and d % 2 == 1, "d > 1 odd violated")
    _require(groups.is_primitive_divisor(n, p, d), f"{n} not a primitive divisor of {p}^{d}-1")
    _require(not groups.is_imprimitive_on_W(n, p, d), "<h> imprimitive on W")


def valid_i(n: int) -> list[int]:
    return [i for i in range(1, (n - 1) // 2 + 1) if math.gcd(i, n) == 1]


def connection_set(fd: groups.FrobeniusData, i: int) -> list[Permutation]:
    """``{a h^i, a^-1 h^i}`` and their inverses, with ``a`` the translation by 1."""
    f = fd.field
    hi = fd.h ** i
    s1 = groups.translation(f, 1) * hi
    s2 = groups.translation(f, f.neg(1)) * hi
    return [s1, s2, s1.inverse(), s2.inverse()]


def _half_transitive(p: int, d: int, n: int, i: int) -> CatalogEntry:
    _check_half_transitive(p, d, n)
    _require(i in valid_i(n), f"i={i} not in 1..(n-1)/2 coprime to n")
    _check_index(p**d * n)
    fd = groups.frobenius_group(p, d, n)
    graph = cayley(fd.G, connection_set(fd, i))
    elems = elements(fd.G)
    index = {e.images: k for k, e in enumerate(elems)}

    def right(a: Permutation) -> Permutation:
        return Permutation([index[(e * a).images] for e in elems], check=False)

    neg = groups.multiplication(fd.field, fd.field.neg(1))
    flip = Permutation([index[(neg * e * neg).images] for e in elems], check=False)
    G = PermGroup([right(a) for a in fd.G.generators], degree=len(elems))
    W = PermGroup([right(a) for a in fd.W.generators], degree=len(elems))
    X = PermGroup(list(G.generators) + [flip], degree=len(elems))
    order_G = p**d * n
    return _from_action("half_transitive", {"p": p, "d": d, "n": n, "i": i}, graph, X, G, W,
                        derived={"order_G": order_G, "aut_claim": 2 * order_G})


def rule_classes(p: int, n: int) -> list[list[int]]:
    """Classes of ``valid_i(n)`` under ``i ~ j`` iff ``p^r i = ±j (mod n)``."""
    members = valid_i(n)
    classes: list[list[int]] = []
    seen: set[int] = set()
    for i in members:
        if i in seen:
            continue
        orbit = set()
        x = i
        while x not in orbit:
            orbit.add(x)
            x = x * p % n
        cls = sorted(j for j in members if j in orbit or (n - j) % n in orbit)
        seen.update(cls)
        classes.append(cls)
    return classes


@dataclass
class IsoClasses:
    p: int
    d: int
    n: int
    classes: list[list[int]]
    isomorphisms: dict  # (i, j) with i ~ j under the rule -> image list of Gamma_i -> Gamma_j
    verdicts: dict  # (i, j) for every pair -> search verdict

    @property
    def forward_rule_holds(self) -> bool:
        return all(self.verdicts[pair] for pair in self.isomorphisms)

    @property
    def search_classes(self) -> list[list[int]]:
        members = sorted({i for c in self.classes for i in c})
        out: list[list[int]] = []
        for i in members:
            for cls in out:
                if self.verdicts[(cls[0], i)]:
                    cls.append(i)
                    break
            else:
                out.append([i])
        return out


def iso_classes_half_transitive(p: int, d: int, n: int) -> IsoClasses:
    """The rule partition of ``valid_i(n)``, with every pair tested by search."""
    _check_half_transitive(p, d, n)
    classes = rule_classes(p, n)
    owner = {i: k for k, c in enumerate(classes) for i in c}
    members = sorted(owner)
    graphs = {i: _half_transitive(p, d, n, i).graph for i in members}
    verdicts: dict = {}
    isos: dict = {}
    for a, i in enumerate(members):
        for j in members[a + 1:]:
            perm = symmetry.are_isomorphic(graphs[i], graphs[j])
            verdicts[(i, j)] = perm is not None
            if owner[i] == owner[j]:
                isos[(i, j)] = list(perm.images) if perm is not None else None
    return IsoClasses(p, d, n, classes, isos, verdicts)


# ------------------------------------------------------------ build

_BUILDERS = {
    "gamma_2_p1_p": (_gamma_2_p1_p, ("p",)),
    "gamma_p_2_n": (_gamma_p_2_n, ("p", "l", "m", "d")),
    "gamma_p_n": (_gamma_p_n, ("p", "l", "m", "d")),
    "gamma_2_d_n": (_gamma_2_d_n, ("d", "n")),
    "gamma_p_4_5": (_gamma_p_4_5, ("p",)),
    "gamma_p_4_10": (_gamma_p_4_10, ("p",)),
    "example_TA1": (_example_TA1, ()),
    "example_TA2": (_example_TA2, ()),
    "example_A": (_example_A, ()),
    "example_B": (_example_B, ("x",)),
    "example_C": (_example_C, ("q",)),
    "example_D": (_example_D, ()),
    "half_transitive": (_half_transitive, ("p", "d", "n", "i")),
    "lex_cycle": (_lex_cycle, ("p",)),
}

_STRING_PARAMS = {"x"}


def resolve_params(name: str, params: dict | None = None) -> dict:
    """Manifest defaults overridden by ``params``; values are coerced and checked by name."""
    if name not in _BUILDERS:
        raise KeyError(f"unknown catalog entry {name!r}")
    names = _BUILDERS[name][1]
    out = default_params(name)
    for k, v in (params or {}).items():
        if k not in names:
            raise HypothesisError(f"unknown parameter {k!r} for {name}")
        if k in _STRING_PARAMS:
            out[k] = str(v)
        else:
            try:
                out[k] = int(v)
            except (TypeError, ValueError):
                raise HypothesisError(f"parameter {k} must be an integer, not {v!r}") from None
    return out


def build(name: str, params: dict | None = None) -> CatalogEntry:
    params = resolve_params(name, params)
    fn, names = _BUILDERS[name]
    entry = fn(*(params[k] for k in names))
    entry.params = params
    entry.expected = [item for item in _manifest_entry(name)["items"] if _applies(item, params)]
    return entry


def _applies(item: dict, params: dict) -> bool:
    return all(params.get(k) == v for k, v in item.get("when", {}).items())


# ------------------------------------------------------------ verification

@dataclass
class ItemResult:
    key: str
    ref: str
    level: str
    expect: object
    op: str
    value: object
    passed: bool | None  # None for values recorded without a claim
    error: str | None = None

    def to_dict(self) -> dict:
        d = {"key": self.key, "ref": self.ref, "level": self.level, "expect": self.expect,
             "op": self.op, "value": self.value, "passed": self.passed}
        if self.error is not None:
            d["error"] = self.error
        return d


@dataclass
class Report:
    entry: str
    params: dict
    level: str
    items: list[ItemResult]
    transitivity: dict
    classification: str | None = None

    @property
    def passed(self) -> bool:
        return all(it.passed is not False for it in self.items)

    @property
    def failed(self) -> list[ItemResult]:
        return [it for it in self.items if it.passed is False]

    def item(self, key: str) -> ItemResult:
        return next(it for it in self.items if it.key == key)

    def to_dict(self) -> dict:
        return {"entry": self.entry, "params": self.params, "level": self.level,
                "passed": self.passed, "transitivity": self.transitivity,
                "classification": self.classification,
                "items": [it.to_dict() for it in self.items]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


class _Checks:
    """Lazily computed facts about one entry, shared between manifest items."""

    def __init__(self, entry: CatalogEntry):
        self.e = entry

    @cached_property
    def report(self) -> symmetry.TransitivityReport:
        return symmetry.transitivity(self.e.graph, self.e.X)

    @cached_property
    def aut(self) -> symmetry.AutomorphismData:
        return symmetry.automorphism_data(self.e.graph)

    @cached_property
    def aut_report(self) -> symmetry.TransitivityReport:
        return symmetry.transitivity(self.e.graph, self.aut.group)

    @cached_property
    def quotient(self) -> Graph:
        if self.e.W is None:
            raise HypothesisError("entry has no normal subgroup W")
        return quotient(self.e.graph, self.e.W.orbits())

    def connection_set(self) -> list[Permutation]:
        nbrs = set(self.e.graph.adj[0])
        return [s for s in elements(self.e.G) if s.images[0] in nbrs]

    def value(self, key: str, expect):
        e = self.e
        c = e.coset
        if key == "vertices":
            return e.graph.n
        if key == "valency":
            return e.graph.valency()
        if key == "connected":
            return is_connected(e.graph)
        if key == "core_free":
            return e.core_order == 1
        if key == "predicted_valency":
            return predicted_valency(c.X, c.H, c.g, check_core=False)
        if key == "connectivity_criterion":
            return connectivity_criterion(c.X, c.H, c.g)
        if key == "double_coset_self_paired":
            return double_coset_is_self_paired(c.H, c.g)
        if key == "G_order":
            return e.G_src.order()
        if key == "G_regular":
            return symmetry.is_regular(e.G, e.graph.n)
        if key == "G_normal_in_X":
            return e.G_src.is_normal_in(e.X_src)
        if key in ("X_vertex_transitive", "X_edge_transitive", "X_arc_transitive", "max_s",
                   "stabilizer_order"):
            return getattr(self.report, key.removeprefix("X_"))
        if key == "stabilizer_table":
            return symmetry.table_consistent(self.report.max_s, self.report.stabilizer_order)
        if key == "arc_rule":
            return self.report.arc_transitive == e.derived["quotient_dihedral"]
        if key == "quotient_W":
            return _identify(self.quotient, expect)
        if key == "quotient_W_is_cycle":
            q = self.quotient
            return q.n >= 3 and q.valency() == 2 and is_connected(q)
        if key == "cover_W":
            return is_cover(e.graph, e.W.orbits())
        if key == "aut_G_S_order":
            limits.check(e.G.order(), limits.current().max_aut_G_S_order, "group order")
            return symmetry.aut_G_S(e.G, self.connection_set()).order()
        if key in e.derived:
            return e.derived[key]
        if key == "aut_order":
            return self.aut.order
        if key == "classification":
            return self.aut_report.classification
        if key == "normal_cayley":
            return symmetry.is_normal_cayley(e.graph, e.G, self.aut.group)
        raise KeyError(f"unknown manifest item {key!r}")


def _identify(q: Graph, expected) -> str:
    """``expected`` when ``q`` is isomorphic to that named graph, else a description."""
    if isinstance(expected, str):
        try:
            target = named_graph(expected)
        except ValueError:
            target = None
        if target is not None and symmetry.are_isomorphic(q, target) is not None:
            return expected
    k = q.valency()
    return f"{q.n} vertices, valency {k}" if k is not None else f"{q.n} vertices, irregular"


def _resolve_expect(spec, entry: CatalogEntry, values: dict, checks: _Checks):
    if isinstance(spec, dict):
        if "param" in spec:
            return entry.params[spec["param"]]
        if "derived" in spec:
            return entry.derived[spec["derived"]]
        if "value_of" in spec:
            key = spec["value_of"]
            if key not in values:
                values[key] = checks.value(key, None)
            return values[key]
    return spec


def _compare(op: str, value, expect) -> bool:
    if op == "==":
        return value == expect
    if op == ">=":
        return value >= expect
    if op == "<=":
        return value <= expect
    raise ValueError(f"unknown comparison {op!r}")


def verify(entry: CatalogEntry, level: str = "structural", stretch: bool = False) -> Report:
    """Evaluate every manifest item up to ``level``; failures are report content."""
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    if level == "full":
        limits.check(entry.graph.n, limits.current().max_aut_vertices, "vertex count")
    checks = _Checks(entry)
    claim = _manifest_entry(entry.name)["claim"]
    values: dict = {}
    items: list[ItemResult] = []
    for spec in entry.expected:
        lvl = spec.get("level", "structural")
        if lvl == "full" and level != "full":
            continue
        if spec.get("stretch") and not (stretch and level == "full"):
            continue
        key = spec["key"]
        op = spec.get("op", "==")
        raw = spec.get("expect")
        ref = f"{claim}:{spec.get('tag', key)}"
        try:
            expect = _resolve_expect(raw, entry, values, checks)
            value = checks.value(key, expect)
            values[key] = value
            passed = None if raw is None else _compare(op, value, expect)
            items.append(ItemResult(key, ref, lvl, expect, op, value, passed))
        except (HypothesisError, KeyError, limits.BoundExceeded) as exc:
            items.append(ItemResult(key, ref, lvl, raw, op, None, False, str(exc)))
    trans = checks.report.to_dict()
    cls = checks.aut_report.classification if level == "full" else None
    return Report(entry.name, dict(entry.params), level, items, trans, cls)
