"""Weighted moments E_q(U_{k-2}(t_E, q) Phi_A) and E_q(t^R Phi_A).

Every quantity is available two ways: folded directly over a census table,
or assembled from Hecke traces. The two must agree exactly.
"""
from fractions import Fraction
from math import gcd

from .arith import (
    delta,
    divide_by_p_squared,
    divisors,
    euler_phi,
    exact_sqrt,
    half_power,
    phi_hat,
    prime_factors,
    prime_power,
    psi,
    valuation,
)
from .census import census, expect, phi_A
from .chebyshev import U, a_coeff, catalan, expand_power, rho
from .classnum import GroupSpec
from .errors import HypothesisViolated
from .traceformula import T_family

TRIVIAL = GroupSpec(1, 1)
METHODS = ("census", "formula", "both")
COROLLARY_CONSTANT = 10


class FormulaMismatch(AssertionError):
    """Census and trace-formula values disagree."""


def _prime_power(q):
    pv = prime_power(q)
    if pv is None:
        raise HypothesisViolated(f"q = {q} is not a prime power")
    return pv


def _check_coprime(q, A):
    if gcd(q, A.order) != 1:
        raise HypothesisViolated(f"gcd(q, |A|) = {gcd(q, A.order)}")


def census_moment_mt(q, A, k, table=None):
    table = table or census(q)
    return expect(table, lambda c: U(k - 2, c.t, q) * phi_A(c, A))


def census_moment_power(q, A, R, table=None):
    table = table or census(q)
    return expect(table, lambda c: c.t**R * phi_A(c, A))


def moment_mt(q, A, k):
    """E_q(U_{k-2}(t_E, q) Phi_A) from traces of Hecke operators."""
    if k < 2:
        raise ValueError("k must be at least 2")
    p, _ = _prime_power(q)
    _check_coprime(q, A)
    n1, n2 = A.n1, A.n2
    if (q - 1) % n2:
        return Fraction(0)

    q_low = divide_by_p_squared(q, p)
    total = Fraction(0)
    for nu in divisors(gcd(q - 1, n1) // n2):
        lam = n2 * nu
        total += phi_hat(nu) * (
            T_family(n1, lam, q, 1, k) - p ** (k - 1) * T_family(n1, lam, q_low, p % n1 if n1 > 1 else 1, k)
        )
    val = total / (q * euler_phi(n1 // n2))

    r = exact_sqrt(q)
    if r is not None:
        sign = 1 if k % 2 == 0 else -1
        ind = delta(n1, r, 1) + sign * delta(n1, r, -1)
        val += half_power(q, k - 2) * Fraction((p - 1) * (k - 1), 24 * q) * ind
    return val


def moment_power(q, A, R, method="both"):
    """E_q(t^R Phi_A); ``both`` raises FormulaMismatch on disagreement."""
    if R < 0:
        raise ValueError("R must be non-negative")
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    from_census = from_formula = None
    if method in ("census", "both"):
        from_census = census_moment_power(q, A, R)
    if method in ("formula", "both"):
        from_formula = sum(
            (c * Fraction(q) ** j * moment_mt(q, A, R - 2 * j + 2) for j, c in expand_power(R)),
            Fraction(0),
        )
    if method == "both" and from_census != from_formula:
        raise FormulaMismatch(f"E_{q}(t^{R} Phi_{A}): census {from_census} != formula {from_formula}")
    return from_formula if from_census is None else from_census


def ihara_moment(q, R):
    """E_q(t^{2R}) for all curves, from level-one traces."""
    p, v = _prime_power(q)
    q_low = divide_by_p_squared(q, p)
    val = Fraction(0)
    for j in range(R + 1):
        k = 2 * R - 2 * j + 2
        val += a_coeff(R, j) * Fraction(q) ** (j - 1) * (rho(q, k) - p ** (k - 1) * rho(q_low, k, p))
    if v % 2 == 0:
        val += Fraction(p - 1, 12 * q) * (4 * q) ** R
    return val


def birch_value(p, R, tau):
    """p * E_p(t^{2R}) for a prime p >= 5 and R <= 5; ``tau`` is tau(p)."""
    table = {
        0: p,
        1: p**2 - 1,
        2: 2 * p**3 - 3 * p - 1,
        3: 5 * p**4 - 9 * p**2 - 5 * p - 1,
        4: 14 * p**5 - 28 * p**3 - 20 * p**2 - 7 * p - 1,
        5: 42 * p**6 - 90 * p**4 - 75 * p**3 - 35 * p**2 - 9 * p - 1 - tau,
    }
    if R not in table:
        raise ValueError("closed forms exist for 0 <= R <= 5")
    return table[R]


def main_density(q, A):
    """Leading constant of E_q(Phi_A): n1 / (psi(n1) phi(n1) n2^2) times a local correction."""
    n1, n2 = A.n1, A.n2
    if (q - 1) % n2:
        raise HypothesisViolated(f"q = {q} is not 1 mod n2 = {n2}")
    g = gcd(q - 1, n1)
    val = Fraction(n1, psi(n1) * euler_phi(n1) * n2 * n2)
    for ell in prime_factors(n1 // g):
        val *= 1 + Fraction(1, ell ** (1 + 2 * valuation(g // n2, ell)))
    return val


def corollary_gap(q, A, k):
    """moment_mt minus its weight-two main term."""
    if (q - 1) % A.n2:
        raise HypothesisViolated(f"q = {q} is not 1 mod n2 = {A.n2}")
    main = main_density(q, A) if k == 2 else Fraction(0)
    return moment_mt(q, A, k) - main


def corollary_envelope(q, A, k, constant=COROLLARY_CONSTANT):
    return constant * k * A.n2 * A.n1**3 * float(q) ** ((k - 3) / 2)


# -- closed forms for cyclic and full level-ell subgroups ---------------------

def cyclic_closed_form(p, ell, R, trace_g1, trace_full=None, cusp=None):
    """p * E_p(t^{2R} Phi_{Z/ell}) from weight-(2R-2j+2) traces.

    ``trace_g1(k)`` and ``trace_full(k)`` return Tr(T_p) on S_k of
    Gamma_1(ell) and Gamma(ell); the latter is only needed when p = 1 mod ell.
    When p = 1 mod ell the constant inside the sum is
    (ell - 1)(3 + (-1)^ell)/4 unless ``cusp`` overrides it.
    """
    lead = catalan(R) * (p + 1) * p**R
    if p % ell != 1:
        extra = Fraction(1) if p % ell == ell - 1 else Fraction(1, 2)
        s = sum(
            (a_coeff(R, j) * p**j * (Fraction(trace_g1(2 * R - 2 * j + 2), ell - 1) + extra) for j in range(R + 1)),
            Fraction(0),
        )
        return Fraction(lead, ell - 1) - s
    if cusp is None:
        cusp = Fraction((ell - 1) * (3 + (-1) ** ell), 4)
    s = sum(
        (
            a_coeff(R, j)
            * p**j
            * (trace_g1(2 * R - 2 * j + 2) - Fraction(trace_full(2 * R - 2 * j + 2), ell + 1) + cusp)
            for j in range(R + 1)
        ),
        Fraction(0),
    )
    return Fraction(ell * lead, ell * ell - 1) - s / (ell - 1)


def full_level_closed_form(p, ell, R, trace_full):
    """p * E_p(t^{2R} Phi_{Z/ell x Z/ell})."""
    if p % ell != 1:
        return Fraction(0)
    scale = Fraction(1, ell * (ell * ell - 1))
    cusp = Fraction((ell * ell - 1) * (3 + (-1) ** ell), 4)
    s = sum(
        (a_coeff(R, j) * p**j * (trace_full(2 * R - 2 * j + 2) + cusp) for j in range(R + 1)),
        Fraction(0),
    )
    return scale * catalan(R) * (p + 1) * p**R - scale * s
