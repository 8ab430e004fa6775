"""Census statistics of invariant factors and their trace-formula main terms."""
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .arith import (
    divisor_count,
    divisors,
    euler_phi,
    exact_sqrt,
    factorize,
    moebius,
    prime_power,
    psi,
    valuation,
)
from .census import census, expect
from .chebyshev import U
from .classnum import GroupSpec
from .errors import HypothesisViolated
from .moments import FormulaMismatch, main_density, moment_mt

SIGMRQ_CONSTANT = 5
N1_ENVELOPE = (10, 0.6)
N2_ENVELOPE = (10, -0.2)


@dataclass(frozen=True)
class StatReport:
    q: int
    name: str
    census_value: Fraction
    formula_main_term: Fraction
    gap: Fraction
    bound: float = None

    @classmethod
    def build(cls, q, name, census_value, main, bound=None):
        return cls(q, name, census_value, main, census_value - main, bound)

    @property
    def within_bound(self):
        return self.bound is None or abs(float(self.gap)) <= self.bound


def cq_constant(q):
    val = Fraction(1)
    for ell, a in factorize(q - 1):
        ratio = (1 - Fraction(1, ell ** (4 * a))) / (1 - Fraction(1, ell**4))
        val *= 1 - Fraction(1, ell * ell * (ell + 1)) * ratio
    return val


def bq_constant(q):
    val = Fraction(1)
    for ell, a in factorize(q - 1):
        ratio = (1 - Fraction(1, ell ** (2 * a))) / (1 - Fraction(1, ell**2))
        val *= 1 + Fraction(1, ell * (ell + 1)) * ratio
    return val


def _n2_density(q, m):
    """Main-term density of curves with n2 = m (0 unless m | q - 1)."""
    if (q - 1) % m:
        return Fraction(0)
    val = Fraction(1, psi(m * m) * euler_phi(m))
    rest = (q - 1) // m
    for ell, _ in factorize(rest):
        val *= 1 - Fraction(1, ell**3) if m % ell == 0 else 1 - Fraction(1, ell * (ell * ell - 1))
    return val


def sigmrq(q, m, k, table=None):
    """E_q(U_{k-2}(t, q) Phi(n2 = m)) against its weight-two main term."""
    if k < 2:
        raise ValueError("k must be at least 2")
    table = table or census(q)
    value = expect(table, lambda c: U(k - 2, c.t, q) if c.n2 == m else 0)
    main = Fraction(q + 1, q) * _n2_density(q, m) if k == 2 else Fraction(0)
    bound = SIGMRQ_CONSTANT * k * q ** ((k - 3) / 2) * divisor_count(q - 1) * math.log(q)
    return StatReport.build(q, f"sigmrq(m={m},k={k})", value, main, bound)


def n2_moment_by_inversion(q, m, k):
    """The same expectation as ``sigmrq`` by Moebius inversion over full level md."""
    if (q - 1) % m:
        return Fraction(0)
    return sum(
        (moebius(d) * moment_mt(q, GroupSpec(m * d, m * d), k) for d in divisors((q - 1) // m)),
        Fraction(0),
    )


def invariant_averages(q, table=None):
    table = table or census(q)
    p = prime_power(q)[0]
    n1_value = expect(table, lambda c: c.n1)
    n2_value = expect(table, lambda c: c.n2)
    n2_main = bq_constant(q)
    r = exact_sqrt(q)
    if r is not None:
        n2_main += Fraction(p, 12 * r)
    c1, e1 = N1_ENVELOPE
    c2, e2 = N2_ENVELOPE
    return (
        StatReport.build(q, "mean n1", n1_value, cq_constant(q) * q, c1 * q**e1),
        StatReport.build(q, "mean n2", n2_value, n2_main, c2 * q**e2),
    )


# -- ell-parts and divisibility ---------------------------------------------

def _check_unit(q, n):
    if math.gcd(q, n) != 1:
        raise HypothesisViolated(f"gcd({q}, {n}) != 1")


def ellpart_terms(ell, alpha, beta):
    """Signed (n1, n2) terms whose Phi-combination is the ell-part indicator."""
    if beta > alpha or beta < 0:
        raise ValueError("need 0 <= beta <= alpha")
    a, b = ell**alpha, ell**beta
    if beta < alpha:
        return [(1, a, b), (-1, a * ell, b), (-1, a, b * ell), (1, a * ell, b * ell)]
    return [(1, a, b), (-1, a * ell, b)]


def divisibility_terms(N):
    """Signed (n1, n2) terms whose Phi-combination indicates N | #E."""
    per_prime = []
    for ell, v in factorize(N):
        terms = [(1, ell**v, 1)]
        for k in range(1, v // 2 + 1):
            terms.append((1, ell ** (v - k), ell**k))
            terms.append((-1, ell ** (v - k + 1), ell**k))
        per_prime.append(terms)
    out = []
    for combo in product(*per_prime):
        sign, n1, n2 = 1, 1, 1
        for s, a, b in combo:
            sign, n1, n2 = sign * s, n1 * a, n2 * b
        out.append((sign, n1, n2))
    return out


def _combine(q, terms, method, census_value):
    if method not in ("census", "formula", "both"):
        raise ValueError("method must be census, formula or both")
    if method == "census":
        return census_value()
    formula = sum(
        (sign * moment_mt(q, GroupSpec(n1, n2), 2) for sign, n1, n2 in terms),
        Fraction(0),
    )
    if method == "both":
        direct = census_value()
        if direct != formula:
            raise FormulaMismatch(f"census {direct} != formula {formula}")
    return formula


def gekeler_ellpart(q, ell, alpha, beta, method="both"):
    """Probability that the ell-primary part of E(F_q) is Z/ell^alpha x Z/ell^beta."""
    _check_unit(q, ell)
    terms = ellpart_terms(ell, alpha, beta)

    def direct():
        return expect(
            census(q),
            lambda c: valuation(c.n1, ell) == alpha and valuation(c.n2, ell) == beta,
        )

    return _combine(q, terms, method, direct)


def divisibility_prob(q, N, method="both"):
    """Probability that N divides #E(F_q)."""
    _check_unit(q, N)

    def direct():
        return expect(census(q), lambda c: c.npoints % N == 0)

    return _combine(q, divisibility_terms(N), method, direct)


def divisibility_report(q, N):
    main = sum(
        (sign * main_density(q, GroupSpec(n1, n2)) for sign, n1, n2 in divisibility_terms(N) if (q - 1) % n2 == 0),
        Fraction(0),
    )
    return StatReport.build(q, f"P({N} | #E)", divisibility_prob(q, N), main)


def ellpart_table(q, ell, method="both"):
    """All nonzero ell-part probabilities; exponents range up to the Hasse bound."""
    top = (math.isqrt(q) + 2) ** 2
    out = {}
    alpha = 0
    while ell**alpha <= top:
        for beta in range(alpha + 1):
            if ell ** (alpha + beta) > top:
                break
            val = gekeler_ellpart(q, ell, alpha, beta, method)
            if val:
                out[(alpha, beta)] = val
        alpha += 1
    return out
