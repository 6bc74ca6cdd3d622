"""1-based cycle notation at the text boundary, 0-based permutations inside."""

from __future__ import annotations

from .perm import Permutation


class NotationError(ValueError):
    """Malformed permutation text; the message carries the 0-based character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def parse_cycles(text: str, start: int = 0) -> tuple[list[list[int]], int]:
    """Cycles (0-based points) read from ``text[start:]`` up to the first character
    that cannot continue a cycle product; returns them with the end position."""
    cycles: list[list[int]] = []
    i = start
    n = len(text)
    while True:
        while i < n and text[i].isspace():
            i += 1
        if i >= n or text[i] != "(":
            break
        open_at = i
        i += 1
        cycle: list[int] = []
        while True:
            while i < n and (text[i].isspace() or text[i] == ","):
                i += 1
            if i >= n:
                raise NotationError("unbalanced parenthesis", open_at)
            ch = text[i]
            if ch == ")":
                i += 1
                break
            if ch == "(":
                raise NotationError("nested parenthesis", i)
            if not ch.isdigit():
                raise NotationError(f"unexpected character {ch!r}", i)
            j = i
            while j < n and text[j].isdigit():
                j += 1
            point = int(text[i:j])
            if point < 1:
                raise NotationError("points are numbered from 1", i)
            cycle.append(point - 1)
            i = j
        cycles.append(cycle)
    return cycles, i


def permutation_from_cycles(cycles: list[list[int]], degree: int | None = None,
                            position: int = 0) -> Permutation:
    """Product of disjoint cycles; a point may appear only once overall."""
    seen: set[int] = set()
    for c in cycles:
        for x in c:
            if x in seen:
                raise NotationError(f"repeated point {x + 1}", position)
            seen.add(x)
    top = max(seen, default=-1) + 1
    if degree is None:
        degree = top
    elif degree < top:
        raise ValueError(f"point {top} exceeds degree {degree}")
    img = list(range(degree))
    for c in cycles:
        for k, x in enumerate(c):
            img[x] = c[(k + 1) % len(c)]
    return Permutation(img, check=False)


def parse_permutation(text: str, degree: int | None = None) -> Permutation:
    """``"(1 2 3)(4 5)"`` to a permutation; the degree is the largest point
    mentioned unless ``degree`` is given.  ``"()"`` is the identity and
    1-cycles are accepted and ignored."""
    stripped = text.strip()
    if not stripped:
        raise NotationError("empty permutation text", 0)
    cycles, end = parse_cycles(text)
    rest = text[end:]
    if rest.strip():
        pos = end + len(rest) - len(rest.lstrip())
        ch = text[pos]
        raise NotationError("unbalanced parenthesis" if ch == ")" else f"unexpected character {ch!r}", pos)
    return permutation_from_cycles(cycles, degree)


def format_permutation(perm: Permutation) -> str:
    """Cycle notation with 1-based points, fixed points omitted; ``"()"`` for the identity."""
    cycles = perm.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles)
