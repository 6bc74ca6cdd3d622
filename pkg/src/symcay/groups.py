"""Concrete permutation groups for the Frobenius-group constructions.

Every group is realised on an explicit point set:

* affine groups act on the elements of GF(p^d) (integer encodings);
* ``psl2``/``pgl2`` act on the projective line, ``q`` standing for infinity;
* the wreath-type groups of the imprimitive constructions act on ``d``
  blocks of ``Z_p`` (optionally doubled by a sign bit);
* the A5/S5 module groups act on the points of ``W = Z_p^4`` written in
  the coordinates of the construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import ff
from .ff import Field, FieldElement, HypothesisError
from .perm import Permutation, PermGroup


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise HypothesisError(message)


# ---------------------------------------------------------------- predicates

def is_primitive_divisor(n: int, p: int, d: int) -> bool:
    """``n | p^d - 1`` and ``n`` divides no ``p^m - 1`` for a proper divisor ``m`` of ``d``."""
    if (p**d - 1) % n:
        return False
    return all((p**m - 1) % n for m in ff.divisors(d) if m < d)


def is_imprimitive_on_W(n: int, p: int, d: int) -> bool:
    """Whether ``Z_n`` acts imprimitively on ``Z_p^d``: some prime ``k | d``
    has ``n | k(p^(d/k) - 1)``."""
    _require(is_primitive_divisor(n, p, d), f"{n} is not a primitive divisor of {p}^{d}-1")
    return any((k * (p ** (d // k) - 1)) % n == 0 for k in ff.prime_factors(d))


# ------------------------------------------------------------ affine groups

def translation(f: Field, a: int) -> Permutation:
    return Permutation([f.add(x, a) for x in range(f.size)], check=False)


def multiplication(f: Field, a: int) -> Permutation:
    return Permutation(f.mul_table(a), check=False)


def field_automorphism(f: Field, k: int) -> Permutation:
    """``x -> x^(p^k)`` on the points of ``f``."""
    e = f.p ** (k % f.d)
    return Permutation([f.pow(x, e) if x else 0 for x in range(f.size)], check=False)


@dataclass
class FrobeniusData:
    G: PermGroup
    W: PermGroup
    H: PermGroup
    p: int
    d: int
    n: int
    field: Field
    multiplier: FieldElement
    h: Permutation
    translations: list[Permutation]

    def translation(self, a: int) -> Permutation:
        return translation(self.field, a)


def frobenius_group(p: int, d: int, n: int) -> FrobeniusData:
    """``Z_p^d : Z_n`` acting affinely on GF(p^d).

    ``h`` multiplies by ``omega^((p^d-1)/n)`` for the primitive element
    ``omega``; ``W`` is generated by the translations by ``x^j``.
    """
    _require(ff.is_prime(p), f"{p} is not prime")
    _require(d >= 1, "d >= 1 violated")
    _require(n > 1, "n > 1 violated")
    _require((p**d - 1) % n == 0, f"{n} does not divide {p}^{d}-1")
    f = ff.make_field(p, d)
    alpha = ff.element_of_order(f, n)
    h = multiplication(f, alpha.value)
    ts = [translation(f, p**j) for j in range(d)]
    size = f.size
    W = PermGroup(ts, degree=size)
    H = PermGroup([h], degree=size)
    G = PermGroup(ts + [h], degree=size)
    return FrobeniusData(G=G, W=W, H=H, p=p, d=d, n=n, field=f, multiplier=alpha, h=h, translations=ts)


def is_fixed_point_free(data: FrobeniusData) -> bool:
    """No non-identity power of ``h`` fixes a non-zero vector.

    Checked by brute force over all of ``W`` (the action of ``h`` on
    translations is multiplication on field elements).
    """
    mult = data.multiplier
    f = data.field
    for k in range(1, data.n):
        a = (mult ** k).value
        table = f.mul_table(a)
        if any(table[x] == x for x in range(1, f.size)):
            return False
    return True


# ------------------------------------------------------------ classical groups

def dihedral(m: int) -> PermGroup:
    _require(m >= 3, "m >= 3 violated")
    rot = Permutation([(i + 1) % m for i in range(m)], check=False)
    ref = Permutation([(-i) % m for i in range(m)], check=False)
    return PermGroup([rot, ref], degree=m)


def cyclic(m: int) -> PermGroup:
    return PermGroup([Permutation([(i + 1) % m for i in range(m)], check=False)], degree=m)


def _projective_field(q: int) -> Field:
    pp = ff.prime_power(q)
    _require(pp is not None and q <= 32, f"q={q} must be a prime power <= 32")
    return ff.make_field(*pp)


def mobius(f: Field, a: int, b: int, c: int, d: int) -> Permutation:
    """``x -> (a x + b) / (c x + d)`` on the projective line (infinity is ``q``)."""
    q = f.size
    img = []
    for x in range(q + 1):
        if x == q:
            img.append(q if c == 0 else f.mul(a, f.inv(c)))
            continue
        den = f.add(f.mul(c, x), d)
        num = f.add(f.mul(a, x), b)
        img.append(q if den == 0 else f.mul(num, f.inv(den)))
    return Permutation(img)


def pgl2(q: int) -> PermGroup:
    f = _projective_field(q)
    w = ff.primitive_element(f).value
    gens = [mobius(f, 1, 1, 0, 1), mobius(f, w, 0, 0, 1), mobius(f, 0, 1, 1, 0)]
    return PermGroup(gens, degree=q + 1)


def psl2(q: int) -> PermGroup:
    f = _projective_field(q)
    if q % 2 == 0:
        return pgl2(q)
    w = ff.primitive_element(f).value
    minus_one = f.neg(1)
    gens = [mobius(f, 1, 1, 0, 1), mobius(f, f.mul(w, w), 0, 0, 1), mobius(f, 0, minus_one, 1, 0)]
    return PermGroup(gens, degree=q + 1)


def projective_field(q: int) -> Field:
    return _projective_field(q)


@dataclass
class Semidirect:
    group: PermGroup
    normal: PermGroup
    complement: PermGroup


def semidirect(w_gens: list[Permutation], h_gens: list[Permutation]) -> Semidirect:
    """``<w_gens, h_gens>`` recorded with its two factors."""
    gens = list(w_gens) + list(h_gens)
    if not gens:
        raise ValueError("no generators")
    degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise ValueError("degree mismatch")
    return Semidirect(PermGroup(gens, degree=degree), PermGroup(w_gens, degree=degree),
                      PermGroup(h_gens, degree=degree))


# ------------------------------------------------- imprimitive constructions

@dataclass
class BlockConstruction:
    """Data of the wreath-type constructions on ``d`` blocks of ``Z_p``."""
    p: int
    ell: int
    m: int
    d: int
    r: int
    X: PermGroup
    W: PermGroup
    N: PermGroup
    G: PermGroup
    h: Permutation
    y: Permutation
    xs: list[Permutation]
    taus: list[Permutation]
    sigmas: list[Permutation]
    c: Permutation | None
    n: int
    extra: dict = field(default_factory=dict)


def _check_block_params(p: int, ell: int, m: int, d: int) -> None:
    _require(ff.is_prime(p), f"p={p} not prime")
    _require(ell >= 1, "l >= 1 violated")
    _require(p == 2**ell * m + 1, f"p != 2^l*m+1 (2^{ell}*{m}+1 = {2**ell * m + 1})")
    _require(d > 1, "d > 1 violated")
    _require(m >= 3 and m % 2 == 1, "m odd and m >= 3 violated")
    _require(m % d == 0, "d divides m violated")
    _require(is_primitive_divisor(2 * m * d, p, d), "2md not a primitive divisor of p^d-1")


class _Blocks:
    """Point layout ``(block, sign, t)`` for the block constructions."""

    def __init__(self, p: int, d: int, signs: int):
        self.p, self.d, self.signs = p, d, signs
        self.degree = p * d * signs

    def index(self, i: int, s: int, t: int) -> int:
        return (i * self.signs + s) * self.p + t

    def perm(self, fn) -> Permutation:
        img = [0] * self.degree
        for i in range(self.d):
            for s in range(self.signs):
                for t in range(self.p):
                    img[self.index(i, s, t)] = self.index(*fn(i, s, t))
        return Permutation(img)

    def local(self, block: int, fn) -> Permutation:
        """Act by ``fn(s, t)`` on one block, trivially elsewhere."""
        return self.perm(lambda i, s, t: (i, *fn(s, t)) if i == block else (i, s, t))


def _block_generators(layout: _Blocks, r: int):
    p = layout.p
    xs = [layout.local(i, lambda s, t: (s, (t + 1) % p)) for i in range(layout.d)]
    taus = [layout.local(i, lambda s, t: (s, (r * t) % p)) for i in range(layout.d)]
    sigmas = [t ** ((p - 1) // 2) for t in taus]
    cycle = layout.perm(lambda i, s, t: ((i + 1) % layout.d, s, t))
    return xs, taus, sigmas, cycle


def construction_group_im(p: int, ell: int, m: int, d: int) -> BlockConstruction:
    """``X = W:(N:<h>)`` with ``h = c_1 tau_1^((p-1)/2m) (1 2 .. d)``.

    Each block carries ``<x, tau, c>``: ``x`` translates ``Z_p``, ``tau``
    multiplies by the smallest primitive root ``r`` and ``c`` flips a
    sign bit, so the domain has ``2pd`` points.
    """
    _check_block_params(p, ell, m, d)
    r = ff.primitive_root(p)
    layout = _Blocks(p, d, 2)
    xs, taus, sigmas, cycle = _block_generators(layout, r)
    c1 = layout.local(0, lambda s, t: (1 - s, t))
    h = c1 * taus[0] ** ((p - 1) // (2 * m)) * cycle
    n = h.order()
    y = (xs[0] * h).inverse()
    deg = layout.degree
    W = PermGroup(xs, degree=deg)
    N = PermGroup(sigmas, degree=deg)
    G = PermGroup(xs + [h], degree=deg)
    X = PermGroup(xs + sigmas + [h], degree=deg)
    return BlockConstruction(p, ell, m, d, r, X, W, N, G, h, y, xs, taus, sigmas, c1, n)


def construction_group_yin(p: int, ell: int, m: int, d: int) -> BlockConstruction:
    """``X = W:<N, h>`` with ``N = prod_{i != 3} <tau_i^((p-1)/2)>`` and
    ``h = tau_1^((p-1)/4m) (1 2 .. d)``; ``y = (x_2 h)^-1``.

    No sign bit is needed, so the domain has ``pd`` points.  The order of
    ``h`` and of ``X`` are computed rather than assumed.
    """
    _check_block_params(p, ell, m, d)
    _require(ell >= 2, "l >= 2 violated")
    r = ff.primitive_root(p)
    layout = _Blocks(p, d, 1)
    xs, taus, sigmas, cycle = _block_generators(layout, r)
    h = taus[0] ** ((p - 1) // (4 * m)) * cycle
    n = h.order()
    y = (xs[1] * h).inverse()
    deg = layout.degree
    nsig = [s for i, s in enumerate(sigmas) if i != 2]
    W = PermGroup(xs, degree=deg)
    N = PermGroup(nsig, degree=deg)
    G = PermGroup(xs + [h], degree=deg)
    X = PermGroup(xs + nsig + [h], degree=deg)
    return BlockConstruction(p, ell, m, d, r, X, W, N, G, h, y, xs, taus, sigmas, None, n)


@dataclass
class D2pConstruction:
    d: int
    n: int
    X: PermGroup
    V: PermGroup
    W: PermGroup
    H: PermGroup
    R: PermGroup
    G: PermGroup
    h: Permutation
    field: Field


def construction_group_d2p(d: int, n: int) -> D2pConstruction:
    """``X = V:<h>`` on ``V = W_1 x W_2`` with ``W_1 = GF(2^d)`` and
    ``W_2 = {0, 1, z, z^2}`` the copy of GF(4) inside it; ``h`` multiplies
    the two coordinates by ``alpha`` and ``alpha^(n/3)``.
    """
    _require(n % 2 == 1, "n odd violated")
    _require(n % 3 == 0, "3 divides n violated")
    _require(d >= 1 and is_primitive_divisor(n, 2, d), f"{n} not a primitive divisor of 2^{d}-1")
    f = ff.make_field(2, d)
    alpha = ff.element_of_order(f, n)
    zeta = alpha ** (n // 3)
    w2 = [0, 1, zeta.value, (zeta * zeta).value]
    w2_index = {v: i for i, v in enumerate(w2)}
    size = f.size
    deg = size * 4

    def perm(fn):
        img = [0] * deg
        for a in range(size):
            for j in range(4):
                a2, b2 = fn(a, w2[j])
                img[a * 4 + j] = a2 * 4 + w2_index[b2]
        return Permutation(img)

    def trans(u, v):
        return perm(lambda a, b: (f.add(a, u), f.add(b, v)))

    h = perm(lambda a, b: (f.mul(alpha.value, a), f.mul(zeta.value, b)))
    w1_gens = [trans(2**j, 0) for j in range(d)]
    w2_gens = [trans(0, 1), trans(0, zeta.value)]
    V = PermGroup(w1_gens + w2_gens, degree=deg)
    W = PermGroup(w1_gens, degree=deg)
    H = PermGroup([h], degree=deg)
    ww = trans(1, 1)
    R = PermGroup([ww, ww.conj(h)], degree=deg)
    G = PermGroup(w1_gens + [h], degree=deg)
    X = PermGroup(w1_gens + w2_gens + [h], degree=deg)
    return D2pConstruction(d, n, X, V, W, H, R, G, h, f)


# ------------------------------------------------------- A5 / S5 module groups

class _Module:
    """Points of ``Z_p^4`` indexed by coordinate vectors ``(l_1, .., l_4)``."""

    def __init__(self, p: int):
        self.p = p
        self.size = p**4

    def coords(self, idx: int) -> list[int]:
        out = []
        for _ in range(4):
            idx, r = divmod(idx, self.p)
            out.append(r)
        return out

    def index(self, lam) -> int:
        v = 0
        for x in reversed(lam):
            v = v * self.p + x % self.p
        return v

    def perm(self, fn) -> Permutation:
        return Permutation([self.index(fn(self.coords(i))) for i in range(self.size)])

    def translation(self, vec) -> Permutation:
        return self.perm(lambda lam: [a + b for a, b in zip(lam, vec)])


def _perm5(cycles_1based) -> list[int]:
    """Image list on ``0..4`` of a permutation written with points 1..5."""
    img = list(range(5))
    for cyc in cycles_1based:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b - 1
    return img


@dataclass
class ModuleConstruction:
    p: int
    X: PermGroup
    W: PermGroup
    R: PermGroup
    G: PermGroup
    h: Permutation
    connector: Permutation  # g for the A5 case, y for the S5 case
    linear: PermGroup  # the acting group A5 or S5 x Z2, restricted to W
    extra: dict = field(default_factory=dict)


def a5_module_group(p: int) -> ModuleConstruction:
    """``X = W:A5`` on the sum-zero submodule of ``Z_p^5``.

    A point ``sum l_j ebar_j`` (``ebar_j = e_5 - e_j``) has coordinates
    ``c_j = -l_j`` (``j <= 4``) and ``c_5 = sum l_j``; a permutation of
    ``1..5`` moves coordinate ``i`` to position ``i^g``.
    """
    _require(ff.is_prime(p), f"p={p} not prime")
    _require(is_primitive_divisor(5, p, 4), "5 not a primitive divisor of p^4-1")
    mod = _Module(p)

    def lin(cycles):
        img = _perm5(cycles)

        def fn(lam):
            c = [-x for x in lam] + [sum(lam)]
            c2 = [0] * 5
            for i in range(5):
                c2[img[i]] = c[i]
            return [-x for x in c2[:4]]

        return mod.perm(fn)

    ebar = [mod.translation([1 if k == j else 0 for k in range(4)]) for j in range(4)]
    h = lin([(1, 2, 3, 4, 5)])
    a5 = [h, lin([(1, 2, 3)])]
    size = mod.size
    W = PermGroup(ebar, degree=size)
    X = PermGroup(ebar + a5, degree=size)
    R = PermGroup([lin([(2, 3, 4)]), lin([(3, 4, 5)])], degree=size)
    g = ebar[0] * lin([(1, 5), (2, 4)])
    G = PermGroup(ebar + [h], degree=size)
    linear = PermGroup(a5, degree=size)
    return ModuleConstruction(p, X, W, R, G, h, g, linear, extra={"r": lin([(2, 3, 4)])})


def s5_module_group(p: int) -> ModuleConstruction:
    """``X = W:(S5 x <g>)`` on ``W = Z_p^5 / <(1,..,1)>``.

    ``w_i`` is the class of ``e_i - e_i'``; the swap ``g`` of the two
    copies acts as ``-1``.  Points are normalised representatives with
    ``c_5 = 0`` and coordinates ``l_j = c_j - c_5``.
    """
    _require(ff.is_prime(p), f"p={p} not prime")
    _require(is_primitive_divisor(10, p, 4), "10 not a primitive divisor of p^4-1")
    mod = _Module(p)

    def lin(cycles):
        img = _perm5(cycles)

        def fn(lam):
            c = list(lam) + [0]
            c2 = [0] * 5
            for i in range(5):
                c2[img[i]] = c[i]
            return [x - c2[4] for x in c2[:4]]

        return mod.perm(fn)

    w = [mod.translation([1 if k == j else 0 for k in range(4)]) for j in range(4)]
    w5_vec = [-1, -1, -1, -1]
    neg = mod.perm(lambda lam: [-x for x in lam])
    h = lin([(1, 2, 3, 4, 5)])
    s5 = [h, lin([(1, 2)])]
    size = mod.size
    W = PermGroup(w, degree=size)
    X = PermGroup(w + s5 + [neg], degree=size)
    R = PermGroup([lin([(1, 2, 3, 4)]), lin([(1, 2)])], degree=size)
    y = mod.translation([1 + w5_vec[0]] + w5_vec[1:]) * lin([(1, 5)]) * neg
    G = PermGroup(w + [h, neg], degree=size)
    linear = PermGroup(s5 + [neg], degree=size)
    return ModuleConstruction(p, X, W, R, G, h, y, linear, extra={"g": neg})


def closed_form_orders() -> dict:
    """Orders from parameters, keyed by builder name (used by tests)."""
    return {
        "frobenius_group": lambda p, d, n: p**d * n,
        "dihedral": lambda m: 2 * m,
        "pgl2": lambda q: q * (q * q - 1),
        "psl2": lambda q: q * (q * q - 1) // math.gcd(2, q - 1),
        "construction_group_im": lambda p, ell, m, d: p**d * 2**d * 2 * m * d,
        "construction_group_d2p": lambda d, n: 2**d * 4 * n,
        "a5_module_group": lambda p: p**4 * 60,
        "s5_module_group": lambda p: p**4 * 240,
    }
