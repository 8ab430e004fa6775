"""Dirichlet characters mod N, evaluated as complex doubles.

A character is stored by its exponents on a fixed generating set of
(Z/N)^x; values are exact roots of unity until converted with ``cmath``.
"""
import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, pi

from .arith import delta, divisors, euler_phi, factorize
from .errors import ModulusTooLarge, ToleranceExceeded

MAX_MODULUS = 200
ORTHO_TOL = 1e-9


def _smallest_primitive_root(pe, phi):
    primes = [r for r, _ in factorize(phi)] if phi > 1 else []
    for g in range(2, pe + 1):
        if gcd(g, pe) == 1 and all(pow(g, phi // r, pe) != 1 for r in primes):
            return g
    return 1


def _lift(residue, pe, N):
    """The unit mod N that is `residue` mod pe and 1 mod N/pe."""
    other = N // pe
    if other == 1:
        return residue % N
    # CRT by hand: pe and other are coprime
    return (residue * other * pow(other, -1, pe) + pe * pow(pe, -1, other)) % N


@dataclass(frozen=True)
class CharacterGroup:
    N: int
    generators: tuple  # (residue mod N, order)
    dlog: dict = field(compare=False, repr=False)


@lru_cache(maxsize=None)
def character_group(N):
    if N < 1:
        raise ValueError("modulus must be positive")
    if N > MAX_MODULUS:
        raise ModulusTooLarge(f"N = {N} exceeds {MAX_MODULUS}")
    gens = []
    for p, e in (factorize(N) if N > 1 else ()):
        pe = p**e
        if p == 2:
            if e >= 2:
                gens.append((_lift(-1, pe, N), 2))
            if e >= 3:
                gens.append((_lift(5, pe, N), 2 ** (e - 2)))
        else:
            phi = (p - 1) * p ** (e - 1)
            gens.append((_lift(_smallest_primitive_root(pe, phi), pe, N), phi))
    dlog = {}
    for exps in product(*(range(o) for _, o in gens)):
        x = 1 % N
        for (g, _), k in zip(gens, exps):
            x = x * pow(g, k, N) % N
        dlog[x] = exps
    if len(dlog) != euler_phi(N):
        raise AssertionError("generators do not generate the unit group")
    return CharacterGroup(N, tuple(gens), dlog)


@dataclass(frozen=True)
class DirichletChar:
    group: CharacterGroup
    exponents: tuple

    @property
    def N(self):
        return self.group.N

    def angle(self, a):
        """chi(a) = exp(2 pi i * angle), angle in [0, 1); None when chi(a) = 0."""
        if gcd(a, self.N) != 1:
            return None
        logs = self.group.dlog[a % self.N]
        s = sum(
            (Fraction(e * k, o) for e, k, (_, o) in zip(self.exponents, logs, self.group.generators)),
            Fraction(0),
        )
        return s - (s.numerator // s.denominator)

    def __call__(self, a):
        ang = self.angle(a)
        if ang is None:
            return 0j
        if ang == 0:
            return 1 + 0j
        return cmath.exp(2j * pi * float(ang))

    @property
    def is_trivial(self):
        return not any(self.exponents)

    @property
    def order(self):
        o = 1
        for e, (_, n) in zip(self.exponents, self.group.generators):
            o = o * (n // gcd(n, e)) // gcd(o, n // gcd(n, e))
        return o

    @property
    def parity(self):
        ang = self.angle(-1)
        return 1 if ang == 0 else -1

    @property
    def conductor(self):
        return _conductor(self)


def _conductor(chi):
    N = chi.N
    for f in divisors(N):
        if all(chi.angle(a) == 0 for a in range(1, N) if gcd(a, N) == 1 and (a - 1) % f == 0):
            return f
    return N


@lru_cache(maxsize=None)
def enumerate_chars(N):
    G = character_group(N)
    return tuple(
        DirichletChar(G, exps) for exps in product(*(range(o) for _, o in G.generators))
    )


def char_orthogonality(N, d, k):
    """(1/phi(N)) * sum of chi(d) over chi with chi(-1) = (-1)^k, exact."""
    if gcd(d, N) != 1:
        raise ValueError("d must be a unit")
    want = 1 if k % 2 == 0 else -1
    s = sum((chi(d) for chi in enumerate_chars(N) if chi.parity == want), 0j) / euler_phi(N)
    sign = 1 if k % 2 == 0 else -1
    exact = Fraction(delta(N, d, 1) + sign * delta(N, d, -1), 2)
    if abs(s - float(exact)) > ORTHO_TOL:
        raise ToleranceExceeded(f"character sum {s} differs from {exact}")
    return exact
