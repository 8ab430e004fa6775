"""Finite fields F_{p^v} in a polynomial basis.

Elements are coefficient vectors (low degree first) of length v. The
enumeration order sorts vectors by their highest coordinate first, which
makes the integer ``index = sum c_i p^i`` the position of an element; 0 and 1
come first. Census code works on these indices through ``FieldTables``.
"""
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product

import numpy as np

from .arith import factorize, is_prime
from .errors import CeilingExceeded, ExponentZero, FieldDivisionByZero, NotPrime

ARITH_CEILING = 10**5
CENSUS_CEILING = 1024


@dataclass(frozen=True)
class FieldSpec:
    p: int
    v: int
    modulus: tuple

    @property
    def q(self):
        return self.p**self.v

    def to_json(self):
        return {"p": self.p, "v": self.v, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj):
        return make_field(obj["p"], obj["v"])


@dataclass(frozen=True)
class FieldElement:
    coeffs: tuple

    def __repr__(self):
        return f"FieldElement({list(self.coeffs)})"


# -- polynomials over F_p, lists low degree first --------------------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_divmod(a, m, p):
    a = _trim(a)
    m = _trim(m)
    inv_lead = pow(m[-1], -1, p)
    quo = [0] * max(len(a) - len(m) + 1, 0)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        quo[shift] = c
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
        a = _trim(a)
    return _trim(quo), a


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _is_irreducible(f, p):
    """Trial division by every monic polynomial of degree <= deg f / 2."""
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            g = list(low) + [1]
            if not _poly_divmod(f, g, p)[1]:
                return False
    return True


@lru_cache(maxsize=None)
def _canonical_modulus(p, v):
    if v == 1:
        return (0, 1)
    # itertools.product varies the last slot fastest, so tuples come out
    # ordered by c0 first: the low-to-high lexicographic order.
    for low in product(range(p), repeat=v):
        f = list(low) + [1]
        if f[0] != 0 and _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


def make_field(p, v, ceiling=ARITH_CEILING):
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if v < 1:
        raise ExponentZero("exponent must be at least 1")
    if p**v > ceiling:
        raise CeilingExceeded(f"{p}^{v} exceeds ceiling {ceiling}")
    return FieldSpec(p, v, _canonical_modulus(p, v))


def field_for_q(q, ceiling=ARITH_CEILING):
    f = factorize(q)
    if len(f) != 1:
        raise NotPrime(f"{q} is not a prime power")
    p, v = f[0]
    return make_field(p, v, ceiling)


# -- element arithmetic ----------------------------------------------------

def element(spec, coeffs):
    c = [x % spec.p for x in coeffs] + [0] * (spec.v - len(coeffs))
    if len(c) != spec.v:
        raise ValueError("too many coefficients")
    return FieldElement(tuple(c))


def zero(spec):
    return FieldElement((0,) * spec.v)


def one(spec):
    return FieldElement((1,) + (0,) * (spec.v - 1))


def _reduce(spec, poly):
    if spec.v == 1:
        r = _trim(poly)
        r = [r[0] % spec.p] if r else []
    else:
        r = _poly_divmod(poly, list(spec.modulus), spec.p)[1]
    return FieldElement(tuple(r) + (0,) * (spec.v - len(r)))


def add(spec, a, b):
    return FieldElement(tuple((x + y) % spec.p for x, y in zip(a.coeffs, b.coeffs)))


def sub(spec, a, b):
    return FieldElement(tuple((x - y) % spec.p for x, y in zip(a.coeffs, b.coeffs)))


def neg(spec, a):
    return FieldElement(tuple(-x % spec.p for x in a.coeffs))


def mul(spec, a, b):
    return _reduce(spec, _poly_mul(_trim(a.coeffs), _trim(b.coeffs), spec.p))


def eq(spec, a, b):
    return a.coeffs == b.coeffs


def is_zero(a):
    return not any(a.coeffs)


def inv(spec, a):
    """Inverse via extended Euclid on polynomials."""
    if is_zero(a):
        raise FieldDivisionByZero("inverse of zero")
    p = spec.p
    if spec.v == 1:
        return FieldElement((pow(a.coeffs[0], -1, p),))
    r0, r1 = list(spec.modulus), _trim(a.coeffs)
    s0, s1 = [], [1]
    while r1:
        quo, rem = _poly_divmod(r0, r1, p)
        r0, r1 = r1, rem
        s0, s1 = s1, _poly_sub(s0, _poly_mul(quo, s1, p), p)
    # r0 is a nonzero constant
    c = pow(r0[0], -1, p)
    return _reduce(spec, [x * c % p for x in s0])


def power(spec, a, e):
    if e < 0:
        a, e = inv(spec, a), -e
    result = one(spec)
    while e:
        if e & 1:
            result = mul(spec, result, a)
        a = mul(spec, a, a)
        e >>= 1
    return result


def index_of(spec, a):
    idx = 0
    for c in reversed(a.coeffs):
        idx = idx * spec.p + c
    return idx


def from_index(spec, idx):
    c = []
    for _ in range(spec.v):
        idx, r = divmod(idx, spec.p)
        c.append(r)
    return FieldElement(tuple(c))


def enumerate_elements(spec):
    return [from_index(spec, i) for i in range(spec.q)]


def frobenius(spec, a):
    return power(spec, a, spec.p)


def is_square(spec, a):
    if spec.p == 2 or is_zero(a):
        return True
    return power(spec, a, (spec.q - 1) // 2) == one(spec)


def sqrt(spec, a):
    """Square root smallest in enumeration order, or None."""
    if not is_square(spec, a):
        return None
    if spec.p == 2:
        # Frobenius is bijective: the unique root is a^(q/2).
        return power(spec, a, spec.q // 2)
    for x in enumerate_elements(spec):
        if mul(spec, x, x) == a:
            return x
    raise AssertionError("square without a root")


# -- lookup tables for census kernels ---------------------------------------

class FieldTables:
    """Index-based lookup tables for a census-sized field.

    Arrays are int32 of shape (q, q) for add/mul and (q,) for the rest.
    ``sqrt_idx[a]`` is the smallest root or -1; ``as_root[c]`` is the smallest
    z with z^2 + z = c or -1 (characteristic 2 only).
    """

    def __init__(self, spec):
        self.spec = spec
        p, v, q = spec.p, spec.v, spec.q
        self.p, self.v, self.q = p, v, q
        idx = np.arange(q, dtype=np.int64)
        digits = np.stack([(idx // p**i) % p for i in range(v)], axis=1)
        weights = p ** np.arange(v, dtype=np.int64)
        summed = (digits[:, None, :] + digits[None, :, :]) % p
        self.add = (summed @ weights).astype(np.int32)
        self.neg = (((-digits) % p) @ weights).astype(np.int32)

        gen = self._generator()
        exp = np.zeros(q - 1, dtype=np.int64)
        x = one(spec)
        for i in range(q - 1):
            exp[i] = index_of(spec, x)
            x = mul(spec, x, gen)
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        logsum = (log[:, None] + log[None, :]) % (q - 1)
        mt = exp[logsum]
        mt[0, :] = 0
        mt[:, 0] = 0
        self.mul = mt.astype(np.int32)
        inverse = np.zeros(q, dtype=np.int64)
        inverse[1:] = exp[(-log[1:]) % (q - 1)]
        self.inv = inverse.astype(np.int32)

        squares = self.mul[idx, idx]
        sqrt_idx = np.full(q, -1, dtype=np.int32)
        # reversed assignment leaves the smallest root in place
        sqrt_idx[squares[::-1]] = idx[::-1]
        self.sqrt_idx = sqrt_idx
        chi = np.where(sqrt_idx >= 0, 1, -1).astype(np.int32)
        chi[0] = 0
        self.chi = chi
        if p == 2:
            as_root = np.full(q, -1, dtype=np.int32)
            image = self.add[idx, squares]
            as_root[image[::-1]] = idx[::-1]
            self.as_root = as_root
        else:
            self.as_root = np.full(q, -1, dtype=np.int32)

    def _generator(self):
        spec = self.spec
        q = spec.q
        if q == 2:
            return one(spec)
        primes = [r for r, _ in factorize(q - 1)]
        for i in range(2, q):
            g = from_index(spec, i)
            if all(power(spec, g, (q - 1) // r) != one(spec) for r in primes):
                return g
        raise AssertionError("no generator")

    @cached_property
    def lists(self):
        """Plain-list copies (add, mul, neg, inv, sqrt_idx, as_root, chi)."""
        return tuple(
            a.tolist()
            for a in (self.add, self.mul, self.neg, self.inv, self.sqrt_idx, self.as_root, self.chi)
        )

    def const(self, n):
        """Index of the integer n viewed in the prime subfield."""
        return n % self.p


@lru_cache(maxsize=16)
def tables_for(spec):
    return FieldTables(spec)
