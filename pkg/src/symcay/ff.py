"""Exact arithmetic in GF(p^d).

Elements are encoded as integers ``0 .. p^d-1`` whose base-``p`` digits
are the polynomial coefficients (digit ``j`` is the coefficient of
``x^j``).  Comparing encodings compares coefficient tuples with the
constant term last, which is the order used to pick moduli and
primitive elements.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from . import limits
from .limits import HypothesisError


def is_prime(n: int) -> bool:
    """Deterministic trial division; adequate for the small primes used here."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, d)`` with ``q == p**d``, or None."""
    if q < 2:
        return None
    ps = prime_factors(q)
    if len(ps) != 1:
        return None
    p = ps[0]
    d = round(math.log(q, p))
    return (p, d) if p**d == q else None


def primitive_root(p: int) -> int:
    """Smallest generator of the units mod a prime ``p``."""
    if p == 2:
        return 1
    fs = prime_factors(p - 1)
    for r in range(2, p):
        if all(pow(r, (p - 1) // f, p) != 1 for f in fs):
            return r
    raise ValueError(f"no primitive root mod {p}")


# polynomials over GF(p) as coefficient lists, lowest degree first

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _polymulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _polymod(prod, m, p)


def _polysub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _polygcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _polymod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def is_irreducible(poly: list[int], p: int) -> bool:
    """Ben-Or test: ``gcd(x^(p^i) - x, f) == 1`` for ``i <= deg(f)/2``."""
    f = _trim(list(poly))
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    xpow = [0, 1]
    for _ in range(d // 2):
        # xpow <- xpow^p mod f
        acc = [1]
        base = xpow
        e = p
        while e:
            if e & 1:
                acc = _polymulmod(acc, base, f, p)
            base = _polymulmod(base, base, f, p)
            e >>= 1
        xpow = acc
        g = _polygcd(f, _polysub(xpow, [0, 1], p), p)
        if len(g) > 1:
            return False
    return True


def _digits(v: int, p: int, d: int) -> list[int]:
    out = []
    for _ in range(d):
        v, r = divmod(v, p)
        out.append(r)
    return out


def _undigits(c: list[int], p: int) -> int:
    v = 0
    for x in reversed(c):
        v = v * p + x
    return v


class Field:
    """GF(p^d) with the lexicographically smallest irreducible monic modulus."""

    def __init__(self, p: int, d: int, modulus: list[int]):
        self.p = p
        self.d = d
        self.size = p**d
        self.modulus = tuple(modulus)  # lowest degree first, monic
        self._mul_cache: dict[int, tuple[int, ...]] = {}

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.d})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and (self.p, self.d, self.modulus) == (other.p, other.d, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.d, self.modulus))

    def modulus_string(self) -> str:
        terms = []
        for j in range(self.d, -1, -1):
            c = self.modulus[j]
            if not c:
                continue
            mono = "" if j == 0 else ("x" if j == 1 else f"x^{j}")
            coef = "" if c == 1 and j else str(c)
            terms.append(coef + mono)
        return "+".join(terms)

    # encoded-integer arithmetic
    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.d == 1:
            return (a + b) % p
        out, mult = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        out, mult = 0, 1
        while a:
            out += ((-(a % p)) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.d == 1:
            return a * b % self.p
        pa = _digits(a, self.p, self.d)
        pb = _digits(b, self.p, self.d)
        return _undigits(_polymulmod(_trim(pa), _trim(pb), list(self.modulus), self.p), self.p)

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a = self.inv(a)
            k = -k
        result = 1
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.size - 2)

    def mul_table(self, a: int) -> tuple[int, ...]:
        """Images of every element under multiplication by ``a``."""
        t = self._mul_cache.get(a)
        if t is None:
            t = tuple(self.mul(a, x) for x in range(self.size))
            self._mul_cache[a] = t
        return t

    def element(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, (list, tuple)):
            value = _undigits([c % self.p for c in value], self.p)
        if not 0 <= value < self.size:
            raise ValueError(f"{value} does not encode an element of {self}")
        return FieldElement(self, value)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, v) for v in range(self.size)]

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)



@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Coefficients, lowest degree first, length ``d``."""
        return tuple(_digits(self.value, self.field.p, self.field.d))

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        return self.field.element(other % self.field.p).value if isinstance(other, int) else other

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self.field.inv(self._other(other))))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.value, k))

    def __bool__(self) -> bool:
        return self.value != 0

    def __lt__(self, other: FieldElement) -> bool:
        return self.value < other.value

    def __repr__(self) -> str:
        return f"{self.field}({list(self.coeffs)})"


@functools.lru_cache(maxsize=None)
def make_field(p: int, d: int) -> Field:
    if not is_prime(p):
        raise HypothesisError(f"{p} is not prime")
    if d < 1:
        raise HypothesisError(f"extension degree {d} must be positive")
    limits.check(p**d, limits.current().max_field_size, "field size")
    for low in range(p**d):
        poly = _digits(low, p, d) + [1]
        if is_irreducible(poly, p):
            return Field(p, d, poly)
    raise AssertionError("no irreducible polynomial found")


def multiplicative_order(x: FieldElement) -> int:
    """Least ``t > 0`` with ``x^t == 1``, by pruning divisors of ``p^d - 1``."""
    if x.value == 0:
        raise ValueError("zero has no multiplicative order")
    f = x.field
    t = f.size - 1
    for q in prime_factors(t):
        while t % q == 0 and f.pow(x.value, t // q) == 1:
            t //= q
    return t


@functools.lru_cache(maxsize=None)
def _primitive_value(f: Field) -> int:
    for v in range(1, f.size):
        if multiplicative_order(FieldElement(f, v)) == f.size - 1:
            return v
    raise AssertionError("multiplicative group is not cyclic")


def primitive_element(f: Field) -> FieldElement:
    return FieldElement(f, _primitive_value(f))


def frobenius(f: Field, x: FieldElement, k: int) -> FieldElement:
    """``x^(p^k)``."""
    k %= f.d
    return FieldElement(f, f.pow(x.value, f.p**k))


def element_of_order(f: Field, n: int) -> FieldElement:
    """``omega^((p^d-1)/n)`` for the primitive element ``omega``."""
    if (f.size - 1) % n:
        raise HypothesisError(f"{n} does not divide {f.size - 1}")
    return primitive_element(f) ** ((f.size - 1) // n)
