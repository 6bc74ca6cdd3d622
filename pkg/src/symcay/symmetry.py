"""Transitivity reports, automorphism groups and isomorphism tests."""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import asdict, dataclass

from . import _search, limits
from .graphs import Graph, components, induced_subgraph, is_automorphism, is_connected
from .limits import HypothesisError
from .perm import Permutation, PermGroup, elements

S_CAP = 7

# vertex-stabilizer orders of connected (X,s)-transitive tetravalent graphs
STABILIZER_TABLE: dict[int, tuple[int, ...]] = {
    2: (12, 24),
    3: (36, 72, 144),
    4: (432,),
    7: (3**5 * 48,),
}

CLASSIFICATIONS = ("normal-arc-transitive", "arc-transitive", "half-transitive",
                   "edge-only", "vertex-only", "none")


class NotAutomorphism(ValueError):
    pass


@dataclass(frozen=True)
class TransitivityReport:
    vertex_transitive: bool
    edge_transitive: bool
    arc_transitive: bool
    max_s: int
    max_s_at_cap: bool
    stabilizer_order: int
    group_order: int
    classification: str

    def to_dict(self) -> dict:
        return asdict(self)


def _check_generators(gamma: Graph, X: PermGroup) -> None:
    if X.degree != gamma.n:
        raise ValueError(f"group of degree {X.degree} on a graph with {gamma.n} vertices")
    for i, g in enumerate(X.generators):
        bad = is_automorphism(gamma, g)
        if bad is not None:
            raise NotAutomorphism(f"generator {i} is not an automorphism: edge {bad} is not preserved")


def _orbit_size(start: tuple, step, gens) -> int:
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = step(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen)


def _count_s_arcs(gamma: Graph, s: int) -> int:
    """Number of s-arcs, by a walk count forbidding immediate reversal."""
    # state: arcs (u, v); ways[arc] = number of s-arcs ending with that arc
    ways = {(u, v): 1 for u in range(gamma.n) for v in gamma.adj[u]}
    for _ in range(s - 1):
        nxt: dict[tuple[int, int], int] = {}
        for (u, v), k in ways.items():
            for w in gamma.adj[v]:
                if w != u:
                    nxt[(v, w)] = nxt.get((v, w), 0) + k
        ways = nxt
    return sum(ways.values())


def _first_s_arc(gamma: Graph, s: int) -> tuple[int, ...] | None:
    arc = [0]
    for _ in range(s):
        nbrs = [w for w in gamma.adj[arc[-1]] if len(arc) < 2 or w != arc[-2]]
        if not nbrs:
            return None
        arc.append(nbrs[0])
    return tuple(arc)


def _s_arc_transitive(gamma: Graph, imgs, order: int, s: int) -> bool:
    total = _count_s_arcs(gamma, s)
    if total > order:
        return False
    start = _first_s_arc(gamma, s)
    if start is None:
        return False
    return _orbit_size(start, lambda a, g: tuple(g[x] for x in a), imgs) == total


def transitivity(gamma: Graph, X: PermGroup, G: PermGroup | None = None) -> TransitivityReport:
    """Vertex/edge/arc transitivity of ``X`` on ``gamma`` and the largest ``s``.

    If a regular subgroup ``G`` is supplied and is normal in an
    arc-transitive ``X``, the classification is ``normal-arc-transitive``.
    """
    _check_generators(gamma, X)
    imgs = [g.images for g in X.generators]
    order = X.order()
    n = gamma.n
    vorb = len(X.orbit(0)) if n else 0
    vertex_t = vorb == n
    edges = gamma.num_edges()
    if edges:
        u = next(v for v in range(n) if gamma.adj[v])
        e0 = (u, gamma.adj[u][0])
        edge_t = _orbit_size(e0, lambda e, g: tuple(sorted((g[e[0]], g[e[1]]))), imgs) == edges
        arc_t = edge_t and _orbit_size(e0, lambda e, g: (g[e[0]], g[e[1]]), imgs) == 2 * edges
    else:
        edge_t = arc_t = False
    max_s = 0
    if arc_t and vertex_t:
        max_s = 1
        for s in range(2, S_CAP + 1):
            if not _s_arc_transitive(gamma, imgs, order, s):
                break
            max_s = s
    stab = order // vorb if vorb else order
    if vertex_t and edge_t and arc_t:
        cls = "arc-transitive"
        if G is not None and G.is_normal_in(X):
            cls = "normal-arc-transitive"
    elif vertex_t and edge_t:
        cls = "half-transitive"
    elif edge_t:
        cls = "edge-only"
    elif vertex_t:
        cls = "vertex-only"
    else:
        cls = "none"
    return TransitivityReport(vertex_t, edge_t, arc_t, max_s, max_s == S_CAP, stab, order, cls)


# ------------------------------------------------------------ automorphisms

@dataclass
class AutomorphismData:
    group: PermGroup
    base: list[int]
    orbit_sizes: list[int]
    search: _search.AutResult | None

    @property
    def order(self) -> int:
        return self.group.order()


def automorphism_data(gamma: Graph) -> AutomorphismData:
    limits.check(gamma.n, limits.current().max_aut_vertices, "vertex count")
    comps = components(gamma)
    if len(comps) > 1:
        return _disconnected_automorphisms(gamma, comps)
    res = _search.automorphisms(gamma.adj)
    for g in res.generators:
        if is_automorphism(gamma, g) is not None:
            raise AssertionError("search returned a non-automorphism")
    group = PermGroup(res.generators, degree=gamma.n) if gamma.n else PermGroup.trivial(0)
    if group.order() != res.order:
        raise AssertionError(f"chain order {group.order()} differs from orbit product {res.order}")
    return AutomorphismData(group, res.base, res.orbit_sizes, res)


def _disconnected_automorphisms(gamma: Graph, comps: list[list[int]]) -> AutomorphismData:
    """``Aut`` of a disconnected graph as a product of wreath products.

    Components are grouped into isomorphism classes; a class of ``k``
    copies of ``C`` contributes ``Aut(C)`` on its first copy, a swap of
    the first two copies and a cycle through all copies, so the order is
    the product of ``|Aut(C)|^k k!``.  That order is exact by
    construction and is handed to the group instead of building a chain
    for a group of astronomically large order.
    """
    n = gamma.n
    subs = [induced_subgraph(gamma, c) for c in comps]
    classes: list[list[tuple[int, list[int]]]] = []  # (component index, iso from the class representative)
    for i, sub in enumerate(subs):
        for cls in classes:
            rep = cls[0][0]
            iso = are_isomorphic(subs[rep], sub)
            if iso is not None:
                cls.append((i, list(iso.images)))
                break
        else:
            classes.append([(i, list(range(sub.n)))])
    gens: list[Permutation] = []
    order = 1
    for cls in classes:
        rep = cls[0][0]
        rep_data = automorphism_data(subs[rep])
        k = len(cls)
        order *= rep_data.order**k * math.factorial(k)
        for a in rep_data.group.generators:
            img = list(range(n))
            for i, v in enumerate(comps[rep]):
                img[v] = comps[rep][a.images[i]]
            gens.append(Permutation(img, check=False))
        if k < 2:
            continue
        # global vertex of copy j at representative position i
        where = [[comps[c][iso[i]] for i in range(len(iso))] for c, iso in cls]
        swap = list(range(n))
        for i in range(len(where[0])):
            swap[where[0][i]] = where[1][i]
            swap[where[1][i]] = where[0][i]
        gens.append(Permutation(swap, check=False))
        if k > 2:
            cyc = list(range(n))
            for j in range(k):
                for i in range(len(where[0])):
                    cyc[where[j][i]] = where[(j + 1) % k][i]
            gens.append(Permutation(cyc, check=False))
    for g in gens:
        if is_automorphism(gamma, g) is not None:
            raise AssertionError("component assembly produced a non-automorphism")
    return AutomorphismData(PermGroup(gens, degree=n, order=order), [], [], None)


def automorphism_group(gamma: Graph) -> PermGroup:
    """``Aut(gamma)``; its order is checked against the search's orbit product."""
    return automorphism_data(gamma).group


def are_isomorphic(g1: Graph, g2: Graph) -> Permutation | None:
    """An isomorphism ``g1 -> g2`` (vertex ``v`` of ``g1`` goes to ``perm(v)``), or None."""
    bound = limits.current().max_aut_vertices
    limits.check(max(g1.n, g2.n), bound, "vertex count")
    if g1.n != g2.n or g1.num_edges() != g2.num_edges():
        return None
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return None
    if g1.n == 0:
        return Permutation([])
    aut2 = _search.automorphisms(g2.adj)
    img = _search.isomorphism(g1.adj, g2.adj, aut2)
    if img is None:
        return None
    perm = Permutation(img)
    if g1.relabel(perm) != g2:
        raise AssertionError("search returned a non-isomorphism")
    return perm


def classify(gamma: Graph) -> TransitivityReport:
    return transitivity(gamma, automorphism_group(gamma))


# ------------------------------------------------------------ Cayley data

def aut_G_S(G: PermGroup, S) -> PermGroup:
    """Automorphisms of ``G`` fixing ``S`` setwise, as permutations of ``elements(G)``.

    A candidate is a bijection of ``S`` preserving element orders; it is
    extended along ``f(s x) = phi(s) f(x)`` from the identity and kept
    when that is consistent and bijective, which makes it an automorphism.
    """
    limits.check(G.order(), limits.current().max_aut_G_S_order, "group order")
    S = list(dict.fromkeys(S))
    if not S:
        raise HypothesisError("empty connection set")
    if PermGroup(S, degree=G.degree).order() != G.order() or not all(G.contains(s) for s in S):
        raise HypothesisError("S does not generate G")
    elems = elements(G)
    index = {e.images: i for i, e in enumerate(elems)}
    left = [[index[(s * x).images] for x in elems] for s in S]
    orders = [s.order() for s in S]
    found: list[Permutation] = []
    for phi in itertools.permutations(range(len(S))):
        if any(orders[i] != orders[phi[i]] for i in range(len(S))):
            continue
        f = [-1] * len(elems)
        f[0] = 0
        queue = [0]
        ok = True
        while queue and ok:
            x = queue.pop()
            for i in range(len(S)):
                y = left[i][x]
                fy = left[phi[i]][f[x]]
                if f[y] < 0:
                    f[y] = fy
                    queue.append(y)
                elif f[y] != fy:
                    ok = False
                    break
        if not ok or -1 in f or len(set(f)) != len(f):
            continue
        found.append(Permutation(f, check=False))
    return PermGroup(found, degree=len(elems))


def is_regular(G: PermGroup, n: int) -> bool:
    return G.degree == n and G.order() == n and (n == 0 or len(G.orbit(0)) == n)


def is_normal_cayley(gamma: Graph, G: PermGroup, aut: PermGroup | None = None) -> bool:
    if not is_regular(G, gamma.n):
        raise HypothesisError("G is not regular on the vertices")
    if aut is None:
        aut = automorphism_group(gamma)
    return all(G.contains(s.conj(a)) for a in aut.generators for s in G.generators)


def stabilizer_consistency(gamma: Graph, X: PermGroup, report: TransitivityReport | None = None) -> bool:
    """Whether ``|X_1|`` appears in the tetravalent stabilizer table for the computed ``s``."""
    if gamma.valency() != 4 or not is_connected(gamma):
        raise HypothesisError("graph must be connected and 4-regular")
    if report is None:
        report = transitivity(gamma, X)
    if report.max_s < 2:
        raise HypothesisError("X must be at least 2-arc-transitive")
    return table_consistent(report.max_s, report.stabilizer_order)


def table_consistent(s: int, stabilizer_order: int) -> bool:
    return stabilizer_order in STABILIZER_TABLE.get(s, ())
