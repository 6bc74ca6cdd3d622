"""Simple undirected graphs and the coset/Cayley/quotient/cover calculus."""

from __future__ import annotations

import json
import re
from collections import deque
from collections.abc import Iterable, Sequence

from . import ff, limits
from .limits import HypothesisError
from .perm import CosetSpace, Permutation, PermGroup, core, elements


class Graph:
    """Finite simple graph on vertices ``0..n-1`` with sorted neighbour lists."""

    __slots__ = ("n", "adj", "labels")

    def __init__(self, n: int, adjacency: Sequence[Iterable[int]], labels: dict | None = None,
                 check: bool = True):
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(set(a))) for a in adjacency)
        self.labels = dict(labels or {})
        if check:
            self._validate()

    def _validate(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError(f"{len(self.adj)} neighbour lists for {self.n} vertices")
        for u, nb in enumerate(self.adj):
            for v in nb:
                if not 0 <= v < self.n:
                    raise ValueError(f"neighbour {v} of {u} out of range")
                if v == u:
                    raise ValueError(f"loop at {u}")
        sets = [set(a) for a in self.adj]
        for u, nb in enumerate(self.adj):
            for v in nb:
                if u not in sets[v]:
                    raise ValueError(f"edge {u}-{v} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], labels: dict | None = None) -> Graph:
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for {n} vertices")
            adj[u].append(v)
            adj[v].append(u)
        for u, a in enumerate(adj):
            if len(a) != len(set(a)):
                raise ValueError(f"repeated edge at {u}")
        return cls(n, adj, labels)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def valency(self) -> int | None:
        """Common degree, or None if the graph is not regular."""
        ds = set(self.degrees())
        return ds.pop() if len(ds) == 1 else (0 if not ds else None)

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adj[u]
        lo, hi = 0, len(a)
        while lo < hi:
            mid = (lo + hi) // 2
            if a[mid] < v:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(a) and a[lo] == v

    def relabel(self, perm: Permutation) -> Graph:
        """The graph with vertex ``v`` renamed ``perm(v)``."""
        img = perm.images
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u in range(self.n):
            adj[img[u]] = [img[v] for v in self.adj[u]]
        return Graph(self.n, adj, check=False)

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()], "labels": self.labels}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> Graph:
        try:
            n = int(data["n"])
            edges = [(int(u), int(v)) for u, v in data["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed graph JSON: {exc}") from exc
        return cls.from_edges(n, edges, data.get("labels") or {})

    @classmethod
    def from_json(cls, text: str) -> Graph:
        return cls.from_dict(json.loads(text))

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.num_edges()})"


def is_automorphism(gamma: Graph, perm: Permutation) -> tuple[int, int] | None:
    """None if ``perm`` preserves adjacency, otherwise an edge it breaks."""
    if perm.degree != gamma.n:
        raise ValueError(f"permutation of degree {perm.degree} on a graph with {gamma.n} vertices")
    img = perm.images
    adj = gamma.adj
    for u in range(gamma.n):
        iu = img[u]
        target = adj[iu]
        if len(target) != len(adj[u]):
            return (u, adj[u][0] if adj[u] else u)
        tset = set(target)
        for v in adj[u]:
            if img[v] not in tset:
                return (u, v)
    return None


# ------------------------------------------------------------ constructions

def cayley(G: PermGroup, S: Iterable[Permutation]) -> Graph:
    """``Cay(G, S)``: ``x ~ y`` iff ``y x^-1`` lies in ``S``.

    Vertices are ``elements(G)`` in lexicographic order, so vertex 0 is
    the identity.
    """
    S = list(dict.fromkeys(S))
    elems = elements(G)
    index = {e.images: i for i, e in enumerate(elems)}
    sset = set(S)
    for s in S:
        if s.is_identity():
            raise ValueError("identity in connection set")
        if s.images not in index:
            raise ValueError(f"{s} is not an element of G")
        if s.inverse() not in sset:
            raise ValueError("connection set is not inverse-closed")
    adj = [[index[(s * x).images] for s in S] for x in elems]
    return Graph(len(elems), adj, check=False)


def _check_coset_hypotheses(X: PermGroup, H: PermGroup, g: Permutation) -> None:
    if not X.contains(g):
        raise HypothesisError("g is not an element of X")
    if H.contains(g):
        raise HypothesisError("g lies in H")
    if core(X, H).order() != 1:
        raise HypothesisError("H is not core-free in X")


def coset_graph_with_space(X: PermGroup, H: PermGroup, g: Permutation,
                           check_core: bool = True) -> tuple[Graph, CosetSpace]:
    """The coset graph together with the enumerated coset space.

    The neighbours of ``H`` are ``Hgh`` and ``Hg^-1 h``; the neighbours of
    every other coset are carried along the enumeration tree by the
    right-multiplication action of the tree's generator.
    """
    if check_core:
        _check_coset_hypotheses(X, H, g)
    elif H.contains(g):
        raise HypothesisError("g lies in H")
    space = CosetSpace(X, H)
    ginv = g.inverse()
    hs = elements(H)
    base = sorted({space.index_of(g * h) for h in hs} | {space.index_of(ginv * h) for h in hs})
    nbrs: list[list[int] | None] = [None] * space.index
    nbrs[0] = base
    for i in range(1, space.index):
        j, k = space.parent[i]
        act = space.actions[k]
        nbrs[i] = [act[v] for v in nbrs[j]]
    return Graph(space.index, nbrs, check=False), space


def coset_graph(X: PermGroup, H: PermGroup, g: Permutation) -> Graph:
    """``Cos(X, H, H{g, g^-1}H)`` on the right cosets of ``H``."""
    return coset_graph_with_space(X, H, g)[0]


def stabilizer_intersection_order(H: PermGroup, g: Permutation) -> int:
    """``|H ∩ H^g|``: ``h`` lies in ``H^g`` iff ``g h g^-1`` lies in ``H``."""
    ginv = g.inverse()
    return sum(1 for h in H.iter_elements() if H.contains(g * h * ginv))


def double_coset_is_self_paired(H: PermGroup, g: Permutation) -> bool:
    """Whether ``g^-1`` lies in ``HgH``, decided through the right cosets of
    ``H``: some ``h`` with ``Hgh = Hg^-1``."""
    # H g h == H g^-1  <=>  g h g in H
    return any(H.contains(g * h * g) for h in H.iter_elements())


def predicted_valency(X: PermGroup, H: PermGroup, g: Permutation, check_core: bool = True) -> int:
    """``|H : H ∩ H^g|``, doubled unless ``HgH`` is self-paired."""
    if check_core:
        _check_coset_hypotheses(X, H, g)
    elif H.contains(g):
        raise HypothesisError("g lies in H")
    base = H.order() // stabilizer_intersection_order(H, g)
    return base if double_coset_is_self_paired(H, g) else 2 * base


def is_connected(gamma: Graph) -> bool:
    if gamma.n == 0:
        return True
    return len(component(gamma, 0)) == gamma.n


def component(gamma: Graph, start: int) -> list[int]:
    seen = [False] * gamma.n
    seen[start] = True
    queue = deque([start])
    out = []
    while queue:
        u = queue.popleft()
        out.append(u)
        for v in gamma.adj[u]:
            if not seen[v]:
                seen[v] = True
                queue.append(v)
    return out


def components(gamma: Graph) -> list[list[int]]:
    """Vertex sets of the connected components, each sorted, ordered by least vertex."""
    seen = [False] * gamma.n
    out = []
    for s in range(gamma.n):
        if not seen[s]:
            comp = sorted(component(gamma, s))
            for v in comp:
                seen[v] = True
            out.append(comp)
    return out


def induced_subgraph(gamma: Graph, vertices: Sequence[int]) -> Graph:
    """Subgraph on ``vertices``; vertex ``vertices[i]`` becomes ``i``."""
    pos = {v: i for i, v in enumerate(vertices)}
    adj = [[pos[w] for w in gamma.adj[v] if w in pos] for v in vertices]
    return Graph(len(vertices), adj, check=False)


def distances(gamma: Graph, start: int) -> list[int]:
    """BFS distances from ``start`` (-1 when unreachable)."""
    dist = [-1] * gamma.n
    dist[start] = 0
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in gamma.adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def connectivity_criterion(X: PermGroup, H: PermGroup, g: Permutation) -> bool:
    """``X = <H, g>``."""
    return PermGroup(list(H.generators) + [g], degree=X.degree).order() == X.order()


def _normalize_parts(n: int, parts: Iterable[Iterable[int]]) -> list[list[int]]:
    parts = [sorted(set(p)) for p in parts]
    owner = [-1] * n
    for i, part in enumerate(parts):
        if not part:
            raise ValueError("empty part")
        for v in part:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range")
            if owner[v] >= 0:
                raise ValueError(f"vertex {v} lies in two parts")
            owner[v] = i
    if min(owner, default=0) < 0:
        raise ValueError(f"vertex {owner.index(-1)} lies in no part")
    return sorted(parts)


def quotient(gamma: Graph, parts: Iterable[Iterable[int]]) -> Graph:
    """Simple quotient: parts adjacent when some edge joins them; loops dropped.

    Parts are reindexed in order of their least vertex.
    """
    parts = _normalize_parts(gamma.n, parts)
    owner = [0] * gamma.n
    for i, part in enumerate(parts):
        for v in part:
            owner[v] = i
    adj: list[set[int]] = [set() for _ in parts]
    for u, v in gamma.edges():
        a, b = owner[u], owner[v]
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    return Graph(len(parts), adj, check=False)


def orbit_partition(group: PermGroup) -> list[list[int]]:
    return group.orbits()


def is_cover(gamma: Graph, parts: Iterable[Iterable[int]]) -> bool:
    """Both graphs regular and the quotient keeps the valency."""
    k = gamma.valency()
    if k is None:
        return False
    return quotient(gamma, parts).valency() == k


def double_cover(gamma: Graph) -> Graph:
    """Standard double cover: ``u ~ v'`` iff ``u ~ v``; ``v'`` is ``v + n``."""
    n = gamma.n
    adj = [[v + n for v in gamma.adj[u]] for u in range(n)]
    adj += [list(gamma.adj[u]) for u in range(n)]
    return Graph(2 * n, adj, check=False)


def is_bipartite(gamma: Graph) -> bool:
    colour = [-1] * gamma.n
    for s in range(gamma.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in gamma.adj[u]:
                if colour[v] < 0:
                    colour[v] = 1 - colour[u]
                    queue.append(v)
                elif colour[v] == colour[u]:
                    return False
    return True


def lex_cycle(m: int) -> Graph:
    """``C_m[2K_1]``: vertex ``2i + j`` is ``(i, j)``, adjacent when ``i - i' = ±1 mod m``."""
    if m < 3:
        raise ValueError("m >= 3 required")
    adj = []
    for i in range(m):
        nb = [2 * ((i + e) % m) + j for e in (1, -1) for j in (0, 1)]
        adj.extend([nb, nb])
    return Graph(2 * m, adj, check=False)


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [[(i - 1) % n, (i + 1) % n] for i in range(n)], check=False)


def complete(n: int) -> Graph:
    return Graph(n, [[j for j in range(n) if j != i] for i in range(n)], check=False)


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def crown(n: int) -> Graph:
    """``K_{n,n}`` minus a perfect matching: ``i ~ j + n`` iff ``i != j``."""
    adj = [[j + n for j in range(n) if j != i] for i in range(n)]
    adj += [[j for j in range(n) if j != i] for i in range(n)]
    return Graph(2 * n, adj, check=False)


def _trace(f: ff.Field, x: int, q: int, r: int) -> int:
    acc, y = 0, x
    for _ in range(r):
        acc = f.add(acc, y)
        y = f.pow(y, q)
    return acc


def projective_plane_graph(q: int, incident: bool) -> Graph:
    """Point-line (non-)incidence graph of PG(2, q) for a prime ``q``.

    Points are the classes ``omega^i GF(q)*`` (vertex ``i``) and lines the
    sets ``{x : Tr(omega^j x) = 0}`` (vertex ``N + j``), so ``i ~ N + j``
    according to whether ``Tr(omega^(i+j))`` vanishes.
    """
    if not ff.is_prime(q):
        raise ValueError(f"q={q} must be prime")
    f = ff.make_field(q, 3)
    w = ff.primitive_element(f).value
    N = q * q + q + 1
    zero = [_trace(f, f.pow(w, k), q, 3) == 0 for k in range(N)]
    adj: list[list[int]] = [[] for _ in range(2 * N)]
    for i in range(N):
        for j in range(N):
            if zero[(i + j) % N] == incident:
                adj[i].append(N + j)
                adj[N + j].append(i)
    return Graph(2 * N, adj, check=False)


_NAMED = re.compile(r"^(K|C|C_|crown|path|P)(\d+)$")


def named_graph(name: str) -> Graph:
    """``K<n>``, ``C<n>``, ``crown<n>``, ``path<n>``, ``fano_nonincidence``,
    ``pg23_incidence`` or ``lex_cycle<m>``."""
    if name == "fano_nonincidence":
        return projective_plane_graph(2, incident=False)
    if name == "pg23_incidence":
        return projective_plane_graph(3, incident=True)
    if name.startswith("lex_cycle") and name[9:].isdigit():
        return lex_cycle(int(name[9:]))
    mt = _NAMED.match(name)
    if mt:
        kind, n = mt.group(1), int(mt.group(2))
        if kind == "K" and n >= 1:
            return complete(n)
        if kind in ("C", "C_"):
            return cycle(n)
        if kind == "crown" and n >= 2:
            return crown(n)
        if kind in ("path", "P") and n >= 1:
            return path(n)
    raise ValueError(f"unknown graph name {name!r}")


def check_vertex_bound(gamma: Graph) -> None:
    limits.check(gamma.n, limits.current().max_aut_vertices, "vertex count")
