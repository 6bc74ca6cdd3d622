"""Permutations and permutation groups.

Points are the integers ``0 .. degree-1``.  Permutations act on the right:
``p * q`` applies ``p`` first and then ``q``, so ``i^(pq) = (i^p)^q``.
Conjugation follows the same convention, ``x.conj(y) == y**-1 * x * y``.

Groups are stored as generator lists; a stabilizer chain is built on
first use by a deterministic Schreier-Sims procedure.  Base points are
chosen as the first point moved by the element that forces a new level.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import limits
from .limits import BoundExceeded


_IDENTITY_IMAGES: dict[int, tuple[int, ...]] = {}


class Permutation:
    """An immutable bijection of ``range(degree)``."""

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Iterable[int], check: bool = True):
        img = tuple(images)
        if check and sorted(img) != list(range(len(img))):
            raise ValueError("images do not form a permutation")
        self._img = img
        self._hash = None

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if a in seen:
                    raise ValueError(f"point {a} repeated in cycles")
                if not 0 <= a < degree:
                    raise ValueError(f"point {a} outside degree {degree}")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                img[a] = b
        return cls(img, check=False)

    @property
    def images(self) -> tuple[int, ...]:
        return self._img

    @property
    def degree(self) -> int:
        return len(self._img)

    def __call__(self, point: int) -> int:
        return self._img[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if len(other._img) != len(self._img):
            raise ValueError("degree mismatch")
        return Permutation(map(other._img.__getitem__, self._img), check=False)

    def inverse(self) -> Permutation:
        inv = [0] * len(self._img)
        for i, j in enumerate(self._img):
            inv[j] = i
        return Permutation(inv, check=False)

    __invert__ = inverse

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self, other: Permutation) -> Permutation:
        """``other^-1 * self * other``."""
        return other.inverse() * self * other

    def is_identity(self) -> bool:
        n = len(self._img)
        ident = _IDENTITY_IMAGES.get(n)
        if ident is None:
            ident = _IDENTITY_IMAGES[n] = tuple(range(n))
        return self._img == ident

    def first_moved(self) -> int | None:
        for i, j in enumerate(self._img):
            if i != j:
                return i
        return None

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = [False] * len(self._img)
        out = []
        for i in range(len(self._img)):
            if seen[i] or self._img[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = self._img[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self._img[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def extend(self, degree: int) -> Permutation:
        if degree < self.degree:
            raise ValueError("cannot shrink a permutation")
        return Permutation(self._img + tuple(range(self.degree, degree)), check=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __lt__(self, other: Permutation) -> bool:
        return self._img < other._img

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._img)
        return self._hash

    def __repr__(self) -> str:
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())
        return f"Permutation({cyc or '()'}, degree={self.degree})"


@dataclass
class ChainLevel:
    base: int
    gens: list[Permutation]
    transversal: dict[int, Permutation] = field(default_factory=dict)
    inverses: dict[int, Permutation] = field(default_factory=dict)

    @property
    def orbit(self) -> list[int]:
        return list(self.transversal)

    def extend_orbit(self) -> None:
        """Grow the transversal under the current generators.

        Existing representatives are never replaced, so Schreier
        generators that already sifted stay valid.
        """
        if not self.transversal:
            ident = Permutation.identity(len(self.gens[0].images)) if self.gens else None
            if ident is None:
                raise ValueError("level without generators")
            self.transversal[self.base] = ident
            self.inverses[self.base] = ident
        queue = list(self.transversal)
        tr = self.transversal
        k = 0
        while k < len(queue):
            pt = queue[k]
            k += 1
            u = tr[pt]
            for s in self.gens:
                q = s._img[pt]
                if q not in tr:
                    v = u * s
                    tr[q] = v
                    self.inverses[q] = v.inverse()
                    queue.append(q)


class StabilizerChain:
    """Base, strong generators and transversals of a permutation group."""

    def __init__(self, degree: int, levels: list[ChainLevel]):
        self.degree = degree
        self.levels = levels

    @property
    def base(self) -> list[int]:
        return [lv.base for lv in self.levels]

    def order(self) -> int:
        return math.prod(len(lv.transversal) for lv in self.levels)

    def sift(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        """Strip ``g`` through the levels from ``start``.

        Returns the residue and the index of the level where sifting
        stopped (``len(levels)`` if it passed all of them).
        """
        for j in range(start, len(self.levels)):
            lv = self.levels[j]
            pt = g._img[lv.base]
            inv = lv.inverses.get(pt)
            if inv is None:
                return g, j
            g = g * inv
        return g, len(self.levels)

    def contains(self, g: Permutation) -> bool:
        h, j = self.sift(g)
        return j == len(self.levels) and h.is_identity()

    def iter_elements(self) -> Iterator[Permutation]:
        """Every element once, as products ``u_k * ... * u_1``."""
        ident = Permutation.identity(self.degree)
        if not self.levels:
            yield ident
            return
        trans = [list(lv.transversal.values()) for lv in self.levels]

        def rec(j: int, acc: Permutation):
            if j < 0:
                yield acc
                return
            for u in trans[j]:
                yield from rec(j - 1, acc * u)

        yield from rec(len(trans) - 1, ident)


def _schreier_sims(gens: list[Permutation], degree: int, known_order: int | None) -> StabilizerChain:
    levels: list[ChainLevel] = []

    def fixes_base(g: Permutation, upto: int) -> bool:
        return all(g._img[levels[i].base] == levels[i].base for i in range(upto))

    for g in gens:
        if g.is_identity():
            continue
        if fixes_base(g, len(levels)):
            levels.append(ChainLevel(base=g.first_moved(), gens=[]))
    for i, lv in enumerate(levels):
        lv.gens = [g for g in gens if not g.is_identity() and fixes_base(g, i)]
        lv.extend_orbit()
    chain = StabilizerChain(degree, levels)
    if not levels:
        return chain

    # pairs (point, generator index) whose Schreier generator already sifted
    done: list[set[tuple[int, int]]] = [set() for _ in levels]

    def finished() -> bool:
        return known_order is not None and chain.order() == known_order

    i = len(levels) - 1
    while i >= 0:
        if finished():
            break
        lv = levels[i]
        restart = False
        for pt in list(lv.transversal):
            u = lv.transversal[pt]
            for gi, s in enumerate(lv.gens):
                if (pt, gi) in done[i]:
                    continue
                q = s._img[pt]
                sg = u * s * lv.inverses[q]
                if not sg.is_identity():
                    h, j = chain.sift(sg, i + 1)
                    if not h.is_identity():
                        if j == len(levels):
                            levels.append(ChainLevel(base=h.first_moved(), gens=[]))
                            done.append(set())
                        for lvl in range(i + 1, j + 1):
                            levels[lvl].gens.append(h)
                            levels[lvl].extend_orbit()
                        i = j
                        restart = True
                        break
                done[i].add((pt, gi))
            if restart:
                break
        if not restart:
            i -= 1
    if known_order is not None and chain.order() != known_order:
        raise AssertionError(f"chain order {chain.order()} contradicts known order {known_order}")
    return chain


class PermGroup:
    """A permutation group given by generators.

    ``order`` may be supplied when it is known exactly from another
    faithful action.  It is then reported without building a chain, and
    lets the chain construction stop early when one is needed.
    """

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None,
                 order: int | None = None):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"generator of degree {g.degree} in group of degree {degree}")
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(g for g in gens if not g.is_identity())
        self._order_hint = order
        self._chain: StabilizerChain | None = None
        self._lock = threading.Lock()

    @classmethod
    def trivial(cls, degree: int) -> PermGroup:
        return cls([], degree=degree)

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._chain = _schreier_sims(list(self.generators), self.degree, self._order_hint)
        return self._chain

    def order(self) -> int:
        if self._chain is None and self._order_hint is not None:
            return self._order_hint
        return self.chain.order()

    def __len__(self) -> int:
        return self.order()

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def contains(self, x: Permutation) -> bool:
        if x.degree != self.degree:
            raise ValueError(f"degree mismatch: {x.degree} vs {self.degree}")
        return self.chain.contains(x)

    __contains__ = contains

    def orbit(self, point: int) -> set[int]:
        return orbit(self, point)

    def orbits(self) -> list[list[int]]:
        seen = [False] * self.degree
        out = []
        for p in range(self.degree):
            if not seen[p]:
                orb = sorted(self.orbit(p))
                for q in orb:
                    seen[q] = True
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return self.degree == 0 or len(self.orbit(0)) == self.degree

    def elements(self, bound: int | None = None) -> list[Permutation]:
        return elements(self, bound)

    def iter_elements(self) -> Iterator[Permutation]:
        return self.chain.iter_elements()

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return all(other.contains(g) for g in self.generators)

    def is_normal_in(self, other: PermGroup) -> bool:
        return all(self.contains(g.conj(a)) for a in other.generators for g in self.generators)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"


def orbit(g: PermGroup, point: int) -> set[int]:
    if not 0 <= point < g.degree:
        raise ValueError(f"point {point} out of range for degree {g.degree}")
    seen = {point}
    queue = [point]
    imgs = [s.images for s in g.generators]
    while queue:
        p = queue.pop()
        for img in imgs:
            q = img[p]
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def build_chain(g: PermGroup) -> StabilizerChain:
    return g.chain


def contains(g: PermGroup, x: Permutation) -> bool:
    return g.contains(x)


def elements(g: PermGroup, bound: int | None = None) -> list[Permutation]:
    """All elements, sorted lexicographically by image array."""
    if bound is None:
        bound = limits.current().max_group_order
    limits.check(g.order(), bound, "group order")
    return sorted(g.iter_elements())


def closure(gens: Sequence[Permutation], degree: int, bound: int) -> set[Permutation]:
    """Brute-force closure under multiplication (independent of the chain)."""
    ident = Permutation.identity(degree)
    seen = {ident}
    queue = [ident]
    while queue:
        x = queue.pop()
        for s in gens:
            y = x * s
            if y not in seen:
                seen.add(y)
                if len(seen) > bound:
                    raise BoundExceeded(f"closure exceeds {bound} elements")
                queue.append(y)
    return seen


class CosetSpace:
    """Right cosets ``Hx`` of ``h`` in ``x``, enumerated from the trivial coset.

    A coset is represented by its canonical element: the member whose
    images of ``h``'s base points are lexicographically smallest, found
    greedily down ``h``'s stabilizer chain.
    """

    def __init__(self, x: PermGroup, h: PermGroup, extra: Sequence[Permutation] = (),
                 bound: int | None = None):
        if not h.is_subgroup_of(x):
            raise ValueError("h is not a subgroup of x")
        if bound is None:
            bound = limits.current().max_coset_index
        self.x = x
        self.h = h
        index = x.order() // h.order()
        limits.check(index, bound, "coset index")
        self.index = index
        self._levels = [(lv.orbit, lv.transversal) for lv in h.chain.levels]
        self.gens = list(x.generators) + list(extra)
        self.reps: list[Permutation] = []
        self.lookup: dict[tuple[int, ...], int] = {}
        # parent[i] = (j, k): coset i = coset j times gens[k]
        self.parent: list[tuple[int, int] | None] = []
        self.actions: list[list[int]] = [[] for _ in self.gens]
        self._enumerate()

    def canonical(self, g: Permutation) -> Permutation:
        for orb, trans in self._levels:
            img = g._img
            best = min(orb, key=img.__getitem__)
            g = trans[best] * g
        return g

    def index_of(self, g: Permutation) -> int:
        return self.lookup[self.canonical(g)._img]

    def _enumerate(self) -> None:
        ident = self.canonical(self.x.identity())
        self.reps.append(ident)
        self.lookup[ident._img] = 0
        self.parent.append(None)
        k = 0
        while k < len(self.reps):
            rep = self.reps[k]
            for gi, a in enumerate(self.gens):
                c = self.canonical(rep * a)
                j = self.lookup.get(c._img)
                if j is None:
                    j = len(self.reps)
                    self.reps.append(c)
                    self.lookup[c._img] = j
                    self.parent.append((k, gi))
                self.actions[gi].append(j)
            k += 1
        if len(self.reps) != self.index:
            raise AssertionError(f"enumerated {len(self.reps)} cosets, expected {self.index}")

    def action(self, a: Permutation) -> Permutation:
        """Right-multiplication action of ``a`` on the cosets."""
        if a in self.gens:
            return Permutation(self.actions[self.gens.index(a)], check=False)
        return Permutation([self.index_of(r * a) for r in self.reps], check=False)

    def action_group(self, g: PermGroup | None = None) -> PermGroup:
        """``g`` (default ``x``) acting on the cosets; order inherited when faithful."""
        if g is None:
            g = self.x
            order = self.x.order()
        else:
            order = None
        return PermGroup([self.action(a) for a in g.generators], degree=self.index, order=order)


def core(x: PermGroup, h: PermGroup) -> PermGroup:
    """Largest normal subgroup of ``x`` inside ``h``.

    Computed as the kernel of ``x`` acting on the right cosets of ``h``:
    an element ``k`` of ``h`` lies in the kernel iff ``r k r^-1`` is in
    ``h`` for every coset representative ``r``.
    """
    if not h.is_subgroup_of(x):
        raise ValueError("h is not a subgroup of x")
    candidates = elements(h)
    if len(candidates) == 1:
        return PermGroup.trivial(x.degree)
    # cosets are visited lazily so that a trivial core exits early
    index = x.order() // h.order()
    limits.check(index, limits.current().max_coset_index, "coset index")
    levels = [(lv.orbit, lv.transversal) for lv in h.chain.levels]

    def canon(g):
        for orb, trans in levels:
            best = min(orb, key=g._img.__getitem__)
            g = trans[best] * g
        return g

    ident = canon(x.identity())
    seen = {ident._img}
    queue = [ident]
    k = 0
    while k < len(queue) and len(candidates) > 1:
        r = queue[k]
        k += 1
        rinv = r.inverse()
        candidates = [c for c in candidates if h.contains(r * c * rinv)]
        for a in x.generators:
            c = canon(r * a)
            if c._img not in seen:
                seen.add(c._img)
                queue.append(c)
    return PermGroup(candidates, degree=x.degree)


def _iter_bounded(x: PermGroup, bound: int | None) -> Iterator[Permutation]:
    if bound is None:
        bound = limits.current().max_normalizer_order
    limits.check(x.order(), bound, "group order")
    return x.iter_elements()


def normalizer(x: PermGroup, h: PermGroup, bound: int | None = None) -> PermGroup:
    """``N_x(h)`` by exhaustive search over ``x``; elements of ``x`` are
    skipped once they fall in the subgroup found so far."""
    found: list[Permutation] = []
    sub = PermGroup([], degree=x.degree)
    for g in _iter_bounded(x, bound):
        if sub.contains(g):
            continue
        if all(h.contains(s.conj(g)) for s in h.generators):
            found.append(g)
            sub = PermGroup(found, degree=x.degree)
    return sub


def centralizer(x: PermGroup, s: Iterable[Permutation], bound: int | None = None) -> PermGroup:
    s = list(s)
    found: list[Permutation] = []
    sub = PermGroup([], degree=x.degree)
    for g in _iter_bounded(x, bound):
        if sub.contains(g):
            continue
        if all(t * g == g * t for t in s):
            found.append(g)
            sub = PermGroup(found, degree=x.degree)
    return sub


def stabilizer(g: PermGroup, point: int) -> PermGroup:
    """Point stabilizer, read off the chain when ``point`` is its first base
    point and otherwise generated by Schreier generators."""
    if not 0 <= point < g.degree:
        raise ValueError(f"point {point} out of range for degree {g.degree}")
    levels = g.chain.levels
    if not levels:
        return PermGroup.trivial(g.degree)
    if levels[0].base == point:
        gens = levels[1].gens if len(levels) > 1 else []
        return PermGroup(gens, degree=g.degree, order=g.order() // len(levels[0].transversal))
    reps = {point: Permutation.identity(g.degree)}
    queue = [point]
    for p in queue:
        for s in g.generators:
            q = s._img[p]
            if q not in reps:
                reps[q] = reps[p] * s
                queue.append(q)
    schreier = {reps[p] * s * reps[s._img[p]].inverse() for p in reps for s in g.generators}
    return PermGroup(sorted(schreier), degree=g.degree, order=g.order() // len(reps))


def subgroup_intersection_order(a: PermGroup, b: PermGroup) -> int:
    """``|a ∩ b|`` by enumerating the smaller group."""
    small, big = (a, b) if a.order() <= b.order() else (b, a)
    return sum(1 for g in small.iter_elements() if big.contains(g))




def direct_product(*groups: PermGroup) -> PermGroup:
    """Intransitive direct product on the disjoint union of the domains."""
    degree = sum(g.degree for g in groups)
    gens = []
    offset = 0
    for g in groups:
        for s in g.generators:
            img = list(range(degree))
            for i, j in enumerate(s.images):
                img[offset + i] = offset + j
            gens.append(Permutation(img, check=False))
        offset += g.degree
    return PermGroup(gens, degree=degree)


def product_permutations(perms: Iterable[Permutation]) -> Permutation:
    it = iter(perms)
    acc = next(it)
    for p in it:
        acc = acc * p
    return acc


__all__ = [
    "Permutation", "PermGroup", "StabilizerChain", "CosetSpace", "orbit", "build_chain",
    "contains", "elements", "closure", "core", "normalizer", "centralizer",
    "stabilizer", "subgroup_intersection_order", "direct_product", "product_permutations",
]
