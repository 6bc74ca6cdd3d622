"""Individualization-refinement search for automorphisms and isomorphisms.

Colourings are lists of ints indexed by vertex.  Refinement replaces each
colour by the rank of ``(colour, sorted neighbour colours)`` among all
signatures, which is isomorphism-invariant, so colour classes of two
isomorphic graphs line up cell by cell.  Every refinement emits a trace;
nodes whose traces differ from the reference path cannot lead to an
automorphism (or isomorphism) and are pruned.  Traces are hashes, so a
collision only costs extra search: every candidate leaf is checked edge
by edge before it is accepted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .perm import Permutation


def refine(adj: tuple[tuple[int, ...], ...], colours: list[int]) -> tuple[list[int], int]:
    """Stable refinement of ``colours``; returns the colouring and a trace hash."""
    n = len(adj)
    ncls = len(set(colours))
    trace: list[int] = []
    while True:
        sigs = [(colours[v], tuple(sorted([colours[u] for u in adj[v]]))) for v in range(n)]
        distinct = sorted(set(sigs))
        rank = {s: i for i, s in enumerate(distinct)}
        new = [rank[s] for s in sigs]
        counts = [0] * len(distinct)
        for c in new:
            counts[c] += 1
        trace.append(hash((tuple(distinct), tuple(counts))))
        colours = new
        if len(distinct) == ncls:
            break
        ncls = len(distinct)
    return colours, hash(tuple(trace))


def individualize(adj, colours: list[int], v: int) -> tuple[list[int], int]:
    cv = colours[v]
    start = [2 * c + (0 if u == v else 1) if c == cv else 2 * c + 1 for u, c in enumerate(colours)]
    return refine(adj, start)


def target_cell(colours: list[int]) -> list[int] | None:
    """Vertices of the first (lowest-colour) non-singleton cell."""
    counts: dict[int, int] = {}
    for c in colours:
        counts[c] = counts.get(c, 0) + 1
    best = min((c for c, k in counts.items() if k > 1), default=None)
    if best is None:
        return None
    return [v for v, c in enumerate(colours) if c == best]


def leaf_map(leaf_a: list[int], leaf_b: list[int]) -> list[int]:
    """Vertex map sending the vertex of colour ``c`` in ``a`` to that in ``b``."""
    pos = [0] * len(leaf_b)
    for v, c in enumerate(leaf_b):
        pos[c] = v
    return [pos[c] for c in leaf_a]


def preserves(adj_a, adj_b, img: list[int]) -> bool:
    for u, nb in enumerate(adj_a):
        target = adj_b[img[u]]
        if len(target) != len(nb):
            return False
        tset = set(target)
        for v in nb:
            if img[v] not in tset:
                return False
    return True


@dataclass
class Path:
    """The leftmost root-to-leaf path: base vertices, cells and traces."""
    colourings: list[list[int]]
    traces: list[int]
    base: list[int]
    cells: list[list[int]]

    @property
    def leaf(self) -> list[int]:
        return self.colourings[-1]


def first_path(adj) -> Path:
    colours, tr = refine(adj, [0] * len(adj))
    path = Path([colours], [tr], [], [])
    while True:
        cell = target_cell(colours)
        if cell is None:
            return path
        v = cell[0]
        colours, tr = individualize(adj, colours, v)
        path.base.append(v)
        path.cells.append(cell)
        path.colourings.append(colours)
        path.traces.append(tr)


class _Orbits:
    """Union-find over vertices, merged by the generators found so far."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def add(self, img: list[int]) -> None:
        for v, w in enumerate(img):
            a, b = self.find(v), self.find(w)
            if a != b:
                if a < b:
                    self.parent[b] = a
                else:
                    self.parent[a] = b


@dataclass
class AutResult:
    generators: list[Permutation]
    base: list[int]
    orbit_sizes: list[int]
    # generators[:level_end[l]] fix base[:l] pointwise
    level_end: list[int] = field(default_factory=list)
    nodes: int = 0

    @property
    def order(self) -> int:
        out = 1
        for k in self.orbit_sizes:
            out *= k
        return out


def _find_leaf(adj_ref, adj, colours, depth, path: Path, counter) -> list[int] | None:
    """DFS below ``colours`` for a leaf whose map from the reference leaf
    preserves adjacency; traces must follow ``path``."""
    counter[0] += 1
    cell = target_cell(colours)
    if cell is None:
        img = leaf_map(path.leaf, colours)
        return img if preserves(adj_ref, adj, img) else None
    if depth >= len(path.base):
        return None
    for w in cell:
        child, tr = individualize(adj, colours, w)
        if tr != path.traces[depth + 1]:
            continue
        found = _find_leaf(adj_ref, adj, child, depth + 1, path, counter)
        if found is not None:
            return found
    return None


def automorphisms(adj) -> AutResult:
    """Generators of Aut and the orbit sizes of the base along the stabilizer chain."""
    n = len(adj)
    path = first_path(adj)
    depth = len(path.base)
    gens: list[list[int]] = []
    orbit_sizes = [1] * depth
    level_end = [0] * depth
    counter = [0]
    for lvl in range(depth - 1, -1, -1):
        orbits = _Orbits(n)
        for g in gens:
            orbits.add(g)
        b = path.base[lvl]
        failed_roots: set[int] = set()
        for v in path.cells[lvl]:
            if v == b or orbits.find(v) == orbits.find(b):
                continue
            if orbits.find(v) in failed_roots:
                continue
            child, tr = individualize(adj, path.colourings[lvl], v)
            img = None
            if tr == path.traces[lvl + 1]:
                img = _find_leaf(adj, adj, child, lvl + 1, path, counter)
            if img is None:
                failed_roots.add(orbits.find(v))
                continue
            gens.append(img)
            before = {orbits.find(x) for x in failed_roots}
            orbits.add(img)
            failed_roots = {orbits.find(x) for x in before}
        rb = orbits.find(b)
        orbit_sizes[lvl] = sum(1 for v in path.cells[lvl] if orbits.find(v) == rb)
        level_end[lvl] = len(gens)
    perms = [Permutation(g, check=False) for g in gens]
    return AutResult(perms, list(path.base), orbit_sizes, level_end, counter[0])


def _prefix_gens(aut: AutResult, depth: int) -> list[list[int]]:
    if depth >= len(aut.level_end):
        return []
    return [g.images for g in aut.generators[:aut.level_end[depth]]]


def isomorphism(adj_a, adj_b, aut_b: AutResult | None = None) -> list[int] | None:
    """An isomorphism ``a -> b`` as an image list, or None if none exists.

    The tree of ``b`` is searched exhaustively against the first path of
    ``a``.  When the prefix individualized so far equals ``b``'s own base
    prefix, candidates are reduced to one per orbit of the pointwise
    stabilizer of that prefix in ``Aut(b)``.
    """
    n = len(adj_a)
    if n != len(adj_b):
        return None
    path = first_path(adj_a)
    root_b, tr = refine(adj_b, [0] * n)
    if tr != path.traces[0]:
        return None

    def search(colours, depth, prefix) -> list[int] | None:
        cell = target_cell(colours)
        if cell is None:
            img = leaf_map(path.leaf, colours)
            return img if preserves(adj_a, adj_b, img) else None
        if depth >= len(path.base):
            return None
        candidates = cell
        if aut_b is not None and prefix is not None and prefix == aut_b.base[:depth]:
            orbits = _Orbits(n)
            for g in _prefix_gens(aut_b, depth):
                orbits.add(g)
            seen: set[int] = set()
            candidates = []
            for w in cell:
                r = orbits.find(w)
                if r not in seen:
                    seen.add(r)
                    candidates.append(w)
        for w in candidates:
            child, trc = individualize(adj_b, colours, w)
            if trc != path.traces[depth + 1]:
                continue
            nxt = prefix + [w] if prefix is not None else None
            found = search(child, depth + 1, nxt)
            if found is not None:
                return found
        return None

    return search(root_b, 0, [])
