"""Class numbers of binary quadratic forms and the modified class numbers
that count curves with a prescribed subgroup and trace.

All values are exact ``Fraction``s.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .arith import (
    PInverse,
    divisors,
    factorize,
    kronecker,
    liouville_like,
    prime_factors,
    prime_power,
    valuation,
)
from .chebyshev import U
from .errors import ArgumentNotNegative, BadDiscriminant, NonUnit, NotWellDefined

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class GroupSpec:
    n1: int
    n2: int

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1 or self.n1 % self.n2:
            raise ValueError(f"invalid invariant factors ({self.n1}, {self.n2})")

    @property
    def order(self):
        return self.n1 * self.n2


# -- class numbers -----------------------------------------------------------

@lru_cache(maxsize=None)
def h(d):
    """Number of reduced primitive positive definite forms of discriminant d."""
    if d >= 0 or d % 4 not in (0, 1):
        raise BadDiscriminant(f"{d} is not a negative discriminant")
    count = 0
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (b < 0 and c == a):
                continue
            if gcd(gcd(a, b), c) == 1:
                count += 1
        a += 1
    return count


def h_w(d):
    if d >= 0 or d % 4 not in (0, 1):
        return Fraction(0)
    if d == -3:
        return Fraction(h(d), 3)
    if d == -4:
        return Fraction(h(d), 2)
    return Fraction(h(d))


@lru_cache(maxsize=None)
def _hurwitz(delta):
    total = Fraction(0)
    for f in range(1, isqrt(-delta) + 1):
        if delta % (f * f) == 0:
            total += h_w(delta // (f * f))
    return total


def hurwitz_H(delta):
    if delta >= 0 or delta % 4 not in (0, 1):
        raise BadDiscriminant(f"{delta} is not a negative discriminant")
    return _hurwitz(delta)


def hurwitz_scaled(disc, square):
    """H(disc / square), or 0 when that is not a valid negative discriminant."""
    if disc % square:
        return Fraction(0)
    x = disc // square
    if x >= 0 or x % 4 not in (0, 1):
        return Fraction(0)
    return _hurwitz(x)


# -- the congruence indicator and its helpers -------------------------------

@dataclass(frozen=True)
class ModClassContext:
    """(n1, n2, q, d): q is a prime power, 1, or a PInverse token."""

    n1: int
    n2: int
    q: object
    d: int = 1
    p: int = None

    def __post_init__(self):
        if self.n1 % self.n2:
            raise ValueError("n2 must divide n1")
        if gcd(self.d, self.n1) != 1:
            raise NonUnit(f"d = {self.d} is not a unit mod {self.n1}")
        if self.p is None:
            if isinstance(self.q, PInverse):
                object.__setattr__(self, "p", self.q.p)
            elif self.q > 1:
                object.__setattr__(self, "p", prime_power(self.q)[0])

    @property
    def is_token(self):
        return isinstance(self.q, PInverse)


def _unit_congruent(ctx, n):
    """delta_n(d^2 q, 1)."""
    return (ctx.d * ctx.d * ctx.q - 1) % n == 0


def D(ctx, t, n):
    """1 iff d q + d^-1 = t (mod n); checked at two lifts of d mod n1."""
    if gcd(ctx.d, ctx.n1) != 1:
        raise NonUnit(f"d = {ctx.d} is not a unit mod {ctx.n1}")
    if n == 1:
        return 1
    base = ctx.d % ctx.n1
    values = set()
    for lift in (base, base + ctx.n1):
        if gcd(lift, n) != 1:
            raise NotWellDefined(f"d is not invertible mod {n}")
        values.add((lift * ctx.q + pow(lift, -1, n)) % n)
    if len(values) != 1:
        raise NotWellDefined(f"d q + 1/d is not determined mod {n} by d mod {ctx.n1}")
    return 1 if (values.pop() - t) % n == 0 else 0


def full_divisors(n1):
    out = []
    for nu in divisors(n1):
        if all(valuation(nu, ell) == valuation(n1, ell) for ell in prime_factors(nu)):
            out.append(nu)
    return out


def prec_set(m, n1, n2):
    support = prime_factors(m)
    bounds = [valuation(n1 // n2, ell) - 1 for ell in support]
    if any(b < 1 for b in bounds):
        return []
    out = [1]
    for ell, b in zip(support, bounds):
        out = [mu * ell**k for mu in out for k in range(1, b + 1)]
    return sorted(out)


def D_nu_mu(ctx, nu, mu, t):
    val = 1
    for ell in prime_factors(nu):
        e = valuation(ctx.n1 * ctx.n2 * mu, ell)
        val *= D(ctx, t, ell ** (e - 1)) - D(ctx, t, ell**e)
        if val == 0:
            break
    return val


def _outside_part(n, m):
    """The part of n coprime to m."""
    g = gcd(n, m)
    while g > 1:
        n //= g
        g = gcd(n, m)
    return n


def H_mod(ctx, t):
    """H_{n1,n2}(t, q, d).

    The correction terms carry D(t; .) at the primes of n1 n2 outside m,
    which the inclusion-exclusion over the primes of n1 requires; without it
    the sum is wrong as soon as n1 has two primes and one of them appears to
    a power at least 2 above n2.
    """
    disc = t * t - 4 * ctx.q
    if disc >= 0:
        raise ArgumentNotNegative(f"t^2 - 4q = {disc} is not negative")
    n1, n2 = ctx.n1, ctx.n2
    val = Fraction(0)
    if _unit_congruent(ctx, n2):
        hh = hurwitz_scaled(disc, n2 * n2)
        if hh:
            val += HALF * hh * D(ctx, t, n1 * n2)
    for m in full_divisors(n1):
        if m == 1:
            continue
        for mu in prec_set(m, n1, n2):
            level = n2 * mu
            if not _unit_congruent(ctx, level):
                continue
            hh = hurwitz_scaled(disc, level * level)
            if not hh:
                continue
            factor = D_nu_mu(ctx, m, mu, t)
            if factor:
                factor *= D(ctx, t, _outside_part(n1 * n2, m))
            if factor:
                val += liouville_like(m) * HALF * hh * factor
    return val


def H_mod_prime_power(ctx, t):
    """H_{l^e, l^delta}(t, q, d) by its telescoping single-prime form."""
    fac = factorize(ctx.n1)
    if len(fac) > 1:
        raise ValueError("n1 must be a prime power")
    disc = t * t - 4 * ctx.q
    if disc >= 0:
        raise ArgumentNotNegative(f"t^2 - 4q = {disc} is not negative")
    if ctx.n1 == 1:
        return HALF * hurwitz_scaled(disc, 1)
    ell, e = fac[0]
    dl = valuation(ctx.n2, ell)
    val = Fraction(0)
    if _unit_congruent(ctx, ell**dl):
        val += HALF * hurwitz_scaled(disc, ell ** (2 * dl)) * D(ctx, t, ell ** (e + dl))
    for k in range(1, e - dl):
        if not _unit_congruent(ctx, ell ** (dl + k)):
            continue
        hh = hurwitz_scaled(disc, ell ** (2 * (dl + k)))
        if hh:
            diff = D(ctx, t, ell ** (e + dl + k - 1)) - D(ctx, t, ell ** (e + dl + k))
            val -= HALF * hh * diff
    return val


def H_star(ctx, t):
    """Supersingular counterpart of H_mod (t divisible by p)."""
    q, p = ctx.q, ctx.p
    if t * t >= 4 * q:
        raise ArgumentNotNegative("need t^2 < 4q")
    n1, n2 = ctx.n1, ctx.n2
    v = prime_power(q)[1]
    if n2 > 2:
        return Fraction(0)
    if n2 == 2:
        return HALF * h_w(-p) * D(ctx, t, 2 * n1) if t == 0 else Fraction(0)
    if v % 2 == 0:
        if t == 0:
            return Fraction(1 - kronecker(-4, p), 4) * D(ctx, t, n1)
        if t * t == q:
            return Fraction(1 - kronecker(-3, p), 6) * D(ctx, t, n1)
        return Fraction(0)
    if t == 0:
        val = HALF * hurwitz_H(-4 * p) * D(ctx, t, n1)
        if n1 % 4 == 0:
            val -= HALF * h_w(-p) * (D(ctx, t, n1) - D(ctx, t, 2 * n1))
        return val
    if p == 2 and t * t == 2 * q:
        return Fraction(1, 4) * D(ctx, t, n1)
    if p == 3 and t * t == 3 * q:
        return Fraction(1, 6) * D(ctx, t, n1)
    return Fraction(0)


def _traces(q):
    bound = isqrt(4 * q - 1) if q > 0 else -1
    return range(-bound, bound + 1)


def omega_A(ctx, k):
    if ctx.is_token:
        return Fraction(0)
    return sum(
        (U(k - 2, t, ctx.q) * H_mod(ctx, t) for t in _traces(ctx.q) if t % ctx.p),
        Fraction(0),
    )


def omega_star_A(ctx, k):
    if ctx.is_token:
        return Fraction(0)
    return sum((U(k - 2, t, ctx.q) * H_star(ctx, t) for t in _traces(ctx.q)), Fraction(0))


def Sigma(ctx, k):
    if ctx.is_token:
        return Fraction(0)
    return sum((U(k - 2, t, ctx.q) * H_mod(ctx, t) for t in _traces(ctx.q)), Fraction(0))
