"""Brute-force references that share no code with the package."""

from __future__ import annotations

import itertools
from collections import deque


def compose(a: tuple, b: tuple) -> tuple:
    """Apply ``a`` then ``b``."""
    return tuple(b[x] for x in a)


def closure(gens: list[tuple], degree: int) -> set[tuple]:
    ident = tuple(range(degree))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def aut_count(n: int, edges: list[tuple[int, int]]) -> int:
    """Vertex permutations preserving the edge set."""
    eset = {frozenset(e) for e in edges}
    return sum(1 for p in itertools.permutations(range(n))
               if all(frozenset((p[u], p[v])) in eset for u, v in edges))


def adjacency_sets(n: int, edges) -> list[set[int]]:
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def connected(n: int, edges) -> bool:
    if n == 0:
        return True
    adj = adjacency_sets(n, edges)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == n
