"""Exact elementary arithmetic functions.

Everything here works on Python ints; rationals are ``fractions.Fraction``.
"""
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, prod

import sympy
from sympy.ntheory.modular import solve_congruence

from .errors import IncompatibleResidues, NonPositive

Rat = Fraction


def _check_positive(n):
    if n < 1:
        raise NonPositive(f"expected a positive integer, got {n}")


@lru_cache(maxsize=None)
def _factor_items(n):
    return tuple(sorted(sympy.factorint(n).items()))


def factorize(n):
    """Prime factorization as a sorted tuple of (prime, exponent)."""
    _check_positive(n)
    return _factor_items(n)


def prime_factors(n):
    return tuple(p for p, _ in factorize(n))


def is_prime(n):
    return n >= 2 and bool(sympy.isprime(n))


def prime_power(q):
    """Return (p, v) with q = p^v, v >= 1, or None."""
    if q < 2:
        return None
    f = factorize(q)
    return f[0] if len(f) == 1 else None


@lru_cache(maxsize=None)
def divisors(n):
    _check_positive(n)
    out = [1]
    for p, e in factorize(n):
        out = [d * p**i for d in out for i in range(e + 1)]
    return tuple(sorted(out))


def valuation(n, p):
    _check_positive(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def sigma(n):
    return prod((p ** (e + 1) - 1) // (p - 1) for p, e in factorize(n))


def euler_phi(n):
    return prod((p - 1) * p ** (e - 1) for p, e in factorize(n))


def psi(n):
    """Index of Gamma_0(n) in SL_2(Z)."""
    return prod((p + 1) * p ** (e - 1) for p, e in factorize(n))


def moebius(n):
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def divisor_count(n):
    return prod(e + 1 for _, e in factorize(n))


def omega(n):
    return len(factorize(n))


def liouville_like(n):
    """(-1)^omega(n): sign by number of distinct primes."""
    return -1 if omega(n) % 2 else 1


def phi_hat(n):
    """Dirichlet inverse of n -> euler_phi(n^2): n * prod over p | n of (1 - p)."""
    return n * prod(1 - p for p in prime_factors(n))


def kronecker(a, n):
    _check_positive(n)
    result = 1
    for p, e in factorize(n):
        if p == 2:
            if a % 2 == 0:
                return 0
            s = 1 if a % 8 in (1, 7) else -1
        else:
            r = a % p
            if r == 0:
                return 0
            s = 1 if pow(r, (p - 1) // 2, p) == 1 else -1
        if e % 2:
            result *= s
    return result


def crt_unique(residues):
    """Solve x = a_i (mod m_i); returns (x, lcm) with 0 <= x < lcm."""
    residues = [(a % m, m) for a, m in residues if m != 1]
    if not residues:
        return 0, 1
    sol = solve_congruence(*residues, check=True)
    if sol is None:
        raise IncompatibleResidues(f"no common solution for {residues}")
    return int(sol[0]), int(sol[1])


def delta(n, a, b):
    """1 if a = b (mod n) else 0."""
    return 1 if (a - b) % n == 0 else 0


def exact_sqrt(n):
    """Positive integer square root of a perfect square, else None."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def lcm(a, b):
    return a // gcd(a, b) * b


class PInverse:
    """Formal token standing for q = 1/p; every sum evaluated at it is 0."""

    __slots__ = ("p",)

    def __init__(self, p):
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PInverse) and other.p == self.p

    def __hash__(self):
        return hash(("PInverse", self.p))

    def __repr__(self):
        return f"PInverse({self.p})"


def divide_by_p_squared(q, p):
    """q/p^2 as an integer, or the p^-1 token when p^2 does not divide q."""
    return q // (p * p) if q % (p * p) == 0 else PInverse(p)


def half_power(q, e):
    """q^(e/2) exactly; odd e requires q to be a perfect square."""
    if e % 2 == 0:
        return Fraction(q) ** (e // 2)
    r = exact_sqrt(q)
    if r is None:
        raise ValueError(f"q^({e}/2) is irrational for q = {q}")
    return Fraction(r) ** e
