import itertools

import pytest
from hypothesis import given, strategies as st

from oracles import closure, compose
from symcay import groups
from symcay.limits import BoundExceeded
from symcay.perm import (Permutation, PermGroup, centralizer, core, elements, normalizer,
                         orbit, stabilizer)


def P(cycles, n):
    return Permutation.from_cycles(cycles, n)


def S(n):
    return PermGroup([P([range(n)], n), P([(0, 1)], n)], degree=n)


@st.composite
def perms(draw, n):
    return Permutation(draw(st.permutations(range(n))))


@st.composite
def small_groups(draw):
    n = draw(st.integers(1, 7))
    gens = draw(st.lists(perms(n), min_size=0, max_size=3))
    return PermGroup(gens, degree=n)


# ------------------------------------------------------------ permutations

def test_composition_applies_left_factor_first():
    a, b = P([(0, 1)], 3), P([(1, 2)], 3)
    assert (a * b)(0) == 2
    assert (a * b).images == (2, 0, 1)


@given(st.integers(1, 7).flatmap(lambda n: st.tuples(perms(n), perms(n), perms(n))))
def test_composition_associative_and_inverse(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).is_identity()
    assert a.conj(b) == b.inverse() * a * b


def test_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


# ------------------------------------------------------------ orbit

def test_orbit_single_cycle():
    assert orbit(PermGroup([P([range(5)], 5)]), 0) == {0, 1, 2, 3, 4}


def test_orbit_trivial_group():
    assert orbit(PermGroup.trivial(5), 3) == {3}


def test_orbit_two_generators():
    g = PermGroup([P([(0, 1), (2, 3)], 4), P([(1, 2)], 4)])
    expected = {x[0] for x in closure([s.images for s in g.generators], 4)}
    assert orbit(g, 0) == expected == {0, 1, 2, 3}


def test_orbit_out_of_range():
    with pytest.raises(ValueError):
        orbit(PermGroup.trivial(3), 3)


@given(small_groups())
def test_orbits_partition_points(g):
    orbs = g.orbits()
    pts = [x for o in orbs for x in o]
    assert sorted(pts) == list(range(g.degree))
    assert sum(len(o) for o in orbs) == g.degree


# ------------------------------------------------------------ chain and order

def test_order_d10():
    g = PermGroup([P([range(5)], 5), P([(1, 4), (2, 3)], 5)])
    assert g.order() == len(closure([s.images for s in g.generators], 5)) == 10


def test_order_trivial():
    assert PermGroup.trivial(4).order() == 1


def test_order_pgl27():
    g = groups.pgl2(7)
    assert g.order() == len(closure([s.images for s in g.generators], 8)) == 336


@given(small_groups())
def test_chain_order_matches_closure(g):
    assert g.order() == len(closure([s.images for s in g.generators], g.degree))


# ------------------------------------------------------------ membership

def test_contains_d10():
    d10 = PermGroup([P([range(5)], 5), P([(1, 4), (2, 3)], 5)])
    assert d10.contains(P([range(5)], 5))
    bad = P([(0, 2, 1, 3, 4)], 5)
    assert bad.images not in closure([s.images for s in d10.generators], 5)
    assert not d10.contains(bad)
    assert d10.contains(Permutation.identity(5))


def test_contains_degree_mismatch():
    with pytest.raises(ValueError):
        S(4).contains(Permutation.identity(5))


@given(small_groups(), st.data())
def test_contains_agrees_with_elements(g, data):
    x = data.draw(perms(g.degree))
    assert g.contains(x) == (x in set(elements(g)))


# ------------------------------------------------------------ elements

def test_elements_small():
    assert elements(PermGroup.trivial(3)) == [Permutation.identity(3)]
    assert len(elements(PermGroup([P([(0, 1)], 2)]))) == 2
    d14 = groups.dihedral(7)
    els = elements(d14)
    assert len(els) == len(closure([s.images for s in d14.generators], 7)) == 14
    assert [e.images for e in els] == sorted(e.images for e in els)


def test_elements_bound():
    with pytest.raises(BoundExceeded):
        elements(S(6), bound=100)


# ------------------------------------------------------------ core, normalizer

def test_core_of_point_stabilizer_in_s4():
    x = S(4)
    h = stabilizer(x, 0)
    assert h.order() == 6
    # brute force: intersection of all conjugates of h
    xs = closure([s.images for s in x.generators], 4)
    hs = {e for e in xs if e[0] == 0}
    kernel = set(hs)
    for g in xs:
        ginv = tuple(sorted(range(4), key=lambda i: g[i]))
        kernel &= {compose(compose(ginv, k), g) for k in hs}
    assert len(kernel) == 1
    assert core(x, h).order() == 1


def test_core_of_normal_subgroup_is_itself():
    x = S(4)
    v4 = PermGroup([P([(0, 1), (2, 3)], 4), P([(0, 2), (1, 3)], 4)])
    assert core(x, v4).order() == 4


def test_core_d2p_complement_core_free():
    c = groups.construction_group_d2p(4, 15)
    assert core(c.X, c.R).order() == 1


def test_core_d2p_smallest_instance_is_degenerate():
    # at (d, n) = (2, 3) the complement is normal; recorded in the decisions ledger
    c = groups.construction_group_d2p(2, 3)
    assert core(c.X, c.R).order() == 4


def test_core_requires_subgroup():
    with pytest.raises(ValueError):
        core(groups.cyclic(4), PermGroup([P([(0, 1)], 4)]))


@given(small_groups(), st.data())
def test_core_normal_and_contained(x, data):
    elems = elements(x)
    h_gens = data.draw(st.lists(st.sampled_from(elems), max_size=2))
    h = PermGroup(h_gens, degree=x.degree)
    c = core(x, h)
    assert c.is_subgroup_of(h)
    assert all(x.contains(k) and c.contains(k.conj(s)) for k in c.generators for s in x.generators)


def test_normalizer_abelian():
    x = groups.cyclic(6)
    h = PermGroup([P([(0, 2, 4), (1, 3, 5)], 6)])
    assert normalizer(x, h).order() == 6


def test_normalizer_in_s3():
    x = S(3)
    h = PermGroup([P([(0, 1)], 3)])
    xs = [Permutation(e) for e in closure([s.images for s in x.generators], 3)]
    hs = {Permutation.identity(3), P([(0, 1)], 3)}
    brute = [g for g in xs if {e.conj(g) for e in hs} == hs]
    assert normalizer(x, h).order() == len(brute) == 2


@given(small_groups(), st.data())
def test_normalizer_and_centralizer_properties(x, data):
    elems = elements(x)
    sub = data.draw(st.lists(st.sampled_from(elems), max_size=2))
    h = PermGroup(sub, degree=x.degree)
    assert h.is_subgroup_of(normalizer(x, h))
    c = centralizer(x, sub)
    assert all(s.conj(z) == s for s in sub for z in c.generators)


def test_stabilizer_fixes_point():
    g = groups.pgl2(7)
    for pt in (0, 3, 7):
        st_ = stabilizer(g, pt)
        assert st_.order() == 336 // 8
        assert all(s(pt) == pt for s in st_.generators)


def test_left_multiplicative_permutation_product():
    # all 3! products of transpositions agree with the tuple oracle
    ts = [P([(0, 1)], 3), P([(1, 2)], 3), P([(0, 2)], 3)]
    for a, b in itertools.product(ts, repeat=2):
        assert (a * b).images == tuple(b.images[i] for i in a.images)
