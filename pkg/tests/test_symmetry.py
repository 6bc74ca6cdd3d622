import itertools

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from oracles import aut_count, closure, compose
from symcay import graphs, groups, symmetry
from symcay.graphs import Graph
from symcay.limits import BoundExceeded, HypothesisError, override
from symcay.perm import Permutation, PermGroup, elements


def brute_automorphisms(g: Graph) -> list[tuple]:
    eset = {frozenset(e) for e in g.edges()}
    return [p for p in itertools.permutations(range(g.n))
            if all(frozenset((p[u], p[v])) in eset for u, v in g.edges())]


def s_arcs(g: Graph, s: int) -> list[tuple]:
    arcs = [(v,) for v in range(g.n)]
    for _ in range(s):
        arcs = [a + (w,) for a in arcs for w in g.adj[a[-1]] if len(a) < 2 or w != a[-2]]
    return arcs


def brute_report(g: Graph, auts: list[tuple]) -> dict:
    def transitive_on(items, act):
        if not items:
            return False
        first = items[0]
        return {act(first, p) for p in auts} == set(items)

    vt = transitive_on(list(range(g.n)), lambda v, p: p[v])
    et = transitive_on([frozenset(e) for e in g.edges()], lambda e, p: frozenset(p[x] for x in e))
    at = et and transitive_on(s_arcs(g, 1), lambda a, p: tuple(p[x] for x in a))
    max_s = 0
    if vt and at:
        max_s = 1
        for s in range(2, 8):
            if not transitive_on(s_arcs(g, s), lambda a, p: tuple(p[x] for x in a)):
                break
            max_s = s
    return {"vertex_transitive": vt, "edge_transitive": et, "arc_transitive": at, "max_s": max_s}


CORPUS = {
    "K1": Graph(1, [[]]),
    "K2": graphs.complete(2),
    "P3": graphs.path(3),
    "K4": graphs.complete(4),
    "C5": graphs.cycle(5),
    "K5": graphs.complete(5),
    "C6": graphs.cycle(6),
    "octahedron": graphs.lex_cycle(3),
    "K33": Graph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)]),
    "prism": Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]),
    "two_triangles": Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]),
    "star": Graph.from_edges(5, [(0, i) for i in range(1, 5)]),
    "empty4": Graph(4, [[], [], [], []]),
    "C7": graphs.cycle(7),
    "cube": Graph.from_edges(8, [(a, a ^ (1 << k)) for a in range(8) for k in range(3) if a < a ^ (1 << k)]),
    "C8": graphs.cycle(8),
    "K44_minus_matching": graphs.crown(4),
    "mixed": Graph.from_edges(8, [(0, 1), (1, 2), (2, 0), (3, 4), (5, 6), (6, 7)]),
}


@st.composite
def random_graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, edges)


# ------------------------------------------------------------ automorphism groups

@pytest.mark.parametrize("name", sorted(CORPUS))
def test_aut_order_matches_brute_force(name):
    g = CORPUS[name]
    aut = symmetry.automorphism_group(g)
    assert aut.order() == aut_count(g.n, g.edges())
    assert all(graphs.is_automorphism(g, s) is None for s in aut.generators)


@given(random_graphs())
def test_aut_order_property(g):
    assert symmetry.automorphism_group(g).order() == aut_count(g.n, g.edges())


@pytest.mark.parametrize("n", [3, 4, 9, 12])
def test_aut_cycle_dihedral(n):
    assert symmetry.automorphism_group(graphs.cycle(n)).order() == 2 * n


def test_aut_lex_cycle5():
    assert symmetry.automorphism_group(graphs.lex_cycle(5)).order() == 2**5 * 10 == 320


def test_aut_bound():
    with override(max_aut_vertices=5):
        with pytest.raises(BoundExceeded):
            symmetry.automorphism_group(graphs.cycle(6))


# ------------------------------------------------------------ transitivity

@pytest.mark.parametrize("name", sorted(CORPUS))
def test_classify_matches_brute_force(name):
    g = CORPUS[name]
    rep = symmetry.classify(g)
    want = brute_report(g, brute_automorphisms(g))
    got = {k: getattr(rep, k) for k in want}
    assert got == want


def test_rotation_only_c5():
    c5 = graphs.cycle(5)
    rot = PermGroup([Permutation([(i + 1) % 5 for i in range(5)])])
    rep = symmetry.transitivity(c5, rot)
    assert rep.vertex_transitive and rep.edge_transitive
    assert not rep.arc_transitive
    assert rep.classification == "half-transitive"
    assert rep.max_s == 0


def test_p3_vertex_intransitive():
    rep = symmetry.classify(graphs.path(3))
    assert not rep.vertex_transitive
    assert rep.edge_transitive
    assert rep.classification == "edge-only"


def test_k5_arc_transitive():
    rep = symmetry.classify(graphs.complete(5))
    assert rep.classification == "arc-transitive"
    assert rep.max_s == 2 and rep.stabilizer_order == 24
    assert symmetry.stabilizer_consistency(graphs.complete(5), symmetry.automorphism_group(graphs.complete(5)))


def test_transitivity_rejects_non_automorphism():
    c5 = graphs.cycle(5)
    bad = PermGroup([Permutation.from_cycles([(0, 2)], 5)])
    with pytest.raises(symmetry.NotAutomorphism, match="generator 0"):
        symmetry.transitivity(c5, bad)


@given(random_graphs(6), st.data())
def test_transitivity_monotone(g, data):
    aut = symmetry.automorphism_group(g)
    full = symmetry.transitivity(g, aut)
    sub_gens = data.draw(st.lists(st.sampled_from(list(aut.generators)), max_size=2)) if aut.generators else []
    sub = symmetry.transitivity(g, PermGroup(sub_gens, degree=g.n))
    for flag in ("vertex_transitive", "edge_transitive", "arc_transitive"):
        assert not getattr(sub, flag) or getattr(full, flag)
    assert sub.max_s <= full.max_s


@given(random_graphs(6))
def test_report_invariants(g):
    rep = symmetry.classify(g)
    if rep.arc_transitive and rep.vertex_transitive:
        assert rep.edge_transitive
    assert (rep.classification == "half-transitive") == (
        rep.vertex_transitive and rep.edge_transitive and not rep.arc_transitive)


def test_stabilizer_table():
    assert symmetry.table_consistent(2, 12)
    assert symmetry.table_consistent(2, 24)
    assert not symmetry.table_consistent(2, 10)
    assert symmetry.table_consistent(4, 432)
    assert symmetry.table_consistent(7, 11664)
    with pytest.raises(HypothesisError):
        symmetry.stabilizer_consistency(graphs.cycle(5), symmetry.automorphism_group(graphs.cycle(5)))


# ------------------------------------------------------------ isomorphism

@given(random_graphs(8), st.data())
def test_isomorphism_under_relabeling(g, data):
    perm = Permutation(data.draw(st.permutations(range(g.n))))
    h = g.relabel(perm)
    iso = symmetry.are_isomorphic(g, h)
    assert iso is not None
    assert g.relabel(iso).edges() == h.edges()
    assert symmetry.are_isomorphic(g, g) is not None


@given(random_graphs(7), random_graphs(7))
def test_isomorphism_verdict_matches_networkx(a, b):
    na, nb = nx.Graph(), nx.Graph()
    na.add_nodes_from(range(a.n))
    na.add_edges_from(a.edges())
    nb.add_nodes_from(range(b.n))
    nb.add_edges_from(b.edges())
    assert (symmetry.are_isomorphic(a, b) is not None) == nx.is_isomorphic(na, nb)


def test_double_cover_k5_is_crown():
    iso = symmetry.are_isomorphic(graphs.double_cover(graphs.complete(5)), graphs.crown(5))
    assert iso is not None


def test_non_isomorphic_same_degrees():
    assert symmetry.are_isomorphic(CORPUS["prism"], CORPUS["K33"]) is None
    assert symmetry.are_isomorphic(graphs.cycle(6), CORPUS["two_triangles"]) is None


# ------------------------------------------------------------ Cayley data

def brute_aut_G_S(G: PermGroup, S) -> int:
    """Automorphisms of G fixing S, by extending every choice of generator images."""
    deg = G.degree
    gens = [g.images for g in G.generators]
    els = sorted(closure(gens, deg))
    ident = tuple(range(deg))
    sset = {s.images for s in S}
    count = 0
    for imgs in itertools.product(els, repeat=len(gens)):
        f = {ident: ident}
        queue = [ident]
        ok = True
        while queue and ok:
            x = queue.pop()
            for g, a in zip(gens, imgs):
                y, fy = compose(x, g), compose(f[x], a)
                if y not in f:
                    f[y] = fy
                    queue.append(y)
                elif f[y] != fy:
                    ok = False
                    break
        if ok and len(set(f.values())) == len(els) and {f[s] for s in sset} == sset:
            count += 1
    return count


def test_aut_G_S_z5():
    c = groups.cyclic(5)
    r = c.generators[0]
    assert symmetry.aut_G_S(c, [r, r.inverse()]).order() == 2 == brute_aut_G_S(c, [r, r.inverse()])


@pytest.mark.parametrize("m,k", [(6, 1), (7, 2), (8, 3)])
def test_aut_G_S_matches_brute_force(m, k):
    d = groups.dihedral(m)
    r, s = d.generators
    S = [s, r * s] + ([r, r.inverse()] if k > 1 else [])
    assert symmetry.aut_G_S(d, S).order() == brute_aut_G_S(d, S)


def test_aut_G_S_errors():
    c = groups.cyclic(6)
    r = c.generators[0]
    with pytest.raises(HypothesisError, match="generate"):
        symmetry.aut_G_S(c, [r * r, (r * r).inverse()])


def test_normal_cayley_cycle():
    c = groups.cyclic(7)
    r = c.generators[0]
    gamma = graphs.cayley(c, [r, r.inverse()])
    assert symmetry.is_normal_cayley(gamma, c)
    aut = symmetry.automorphism_group(gamma)
    assert aut.order() // gamma.n == symmetry.aut_G_S(c, [r, r.inverse()]).order()


def test_normal_cayley_requires_regular():
    with pytest.raises(HypothesisError, match="regular"):
        symmetry.is_normal_cayley(graphs.cycle(6), groups.dihedral(6))


def test_normal_cayley_stabilizer_equals_aut_G_S():
    # the cube is Cay(Z_2^3, {e1, e2, e3}) and Z_2^3 is normal in its automorphism group
    cube = CORPUS["cube"]
    gens = [Permutation([a ^ (1 << k) for a in range(8)]) for k in range(3)]
    G = PermGroup(gens)
    assert symmetry.is_normal_cayley(cube, G)
    S = gens
    cay = graphs.cayley(G, S)
    assert nx.is_isomorphic(nx.Graph(cay.edges()), nx.Graph(cube.edges()))
    assert symmetry.automorphism_group(cay).order() // 8 == symmetry.aut_G_S(G, S).order() == 6
    assert len(elements(G)) == 8
