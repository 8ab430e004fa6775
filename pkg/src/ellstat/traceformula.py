"""Traces of Hecke operators on cusp forms.

``trace_gamma_nm`` is the exact engine for Tr(<d> T_q | S_k(Gamma(N, M))).
``trace_gamma0_chi`` evaluates nebentype traces with floating character
values and only serves as an independent cross-check.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .arith import (
    PInverse,
    crt_unique,
    delta,
    divisors,
    euler_phi,
    exact_sqrt,
    half_power,
    prime_power,
    psi,
    sigma,
)
from .chebyshev import U
from .classnum import ModClassContext, Sigma, h_w
from .dirichlet import enumerate_chars
from .errors import HypothesisViolated, NegativeOrNonIntegerDimension, ToleranceExceeded

ROUND_TOL = 1e-6


@dataclass(frozen=True)
class TraceResult:
    total: Fraction
    identity_term: Fraction
    elliptic_term: Fraction
    hyperbolic_term: Fraction
    dual_term: Fraction


def _check_request(q, N, M, d):
    if N % M:
        raise HypothesisViolated(f"M = {M} does not divide N = {N}")
    if gcd(N, q) != 1:
        raise HypothesisViolated(f"gcd(N, q) = {gcd(N, q)}")
    if gcd(d, N) != 1:
        raise HypothesisViolated(f"d = {d} is not a unit mod {N}")
    if (d * d * q - 1) % M:
        raise HypothesisViolated(f"d^2 q is not 1 mod M = {M}")


def _sign(k):
    return 1 if k % 2 == 0 else -1


def _hyperbolic_y(b, c, tau, n):
    """y = b mod tau, y = c mod n/tau."""
    return crt_unique([(b, tau), (c, n // tau)])[0]


@lru_cache(maxsize=None)
def trace_gamma_nm(q, N, M, d, k):
    """Exact Tr(<d> T_q | S_k(Gamma(N, M))) with its four terms."""
    if isinstance(q, PInverse):
        z = Fraction(0)
        return TraceResult(z, z, z, z, z)
    _check_request(q, N, M, d)
    sgn = _sign(k)
    phiN = euler_phi(N)
    NM = N * M

    ident = Fraction(0)
    r = exact_sqrt(q)
    if r is not None:
        ident = (
            Fraction(k - 1, 24)
            * half_power(q, k - 2)
            * psi(NM)
            * (delta(N, r * d, 1) + sgn * delta(N, r * d, -1))
        )

    L = gcd(d * d * q - 1, N)
    ell = Fraction(0)
    for lam in divisors(L // M):
        weight = Fraction(euler_phi(lam * lam) * euler_phi(N // (M * lam)), euler_phi(N // M))
        ell += weight * Sigma(ModClassContext(N, lam * M, q, d), k)
    ell *= Fraction(psi(N * N), psi((N // M) ** 2))

    hyp = Fraction(0)
    for b in divisors(q):
        c = q // b
        inner = Fraction(0)
        for tau in divisors(NM):
            g = gcd(tau, NM // tau)
            if (b - c) % g:
                continue
            y = _hyperbolic_y(b, c, tau, NM)
            mod = N * gcd(M, g) // g
            ind = delta(mod, y * d, 1) + sgn * delta(mod, y * d, -1)
            if ind:
                inner += Fraction(euler_phi(g) * euler_phi(mod), phiN) * ind
        hyp += min(b, c) ** (k - 1) * inner
    hyp /= 4

    dual = Fraction(sigma(q), phiN) if k == 2 else Fraction(0)
    per = ident - ell - hyp + dual
    return TraceResult(per * phiN, ident * phiN, ell * phiN, hyp * phiN, dual * phiN)


def level_one_trace(q, k):
    total = trace_gamma_nm(q, 1, 1, 1, k).total
    if total.denominator != 1:
        raise AssertionError(f"non-integral level one trace {total}")
    return int(total)


def T_family(n1, lam, q, d, k):
    """T_{n1,lam}(q, d): the normalized elliptic part of the Gamma(n1, lam) trace."""
    if isinstance(q, PInverse):
        return Fraction(0)
    if gcd(d * d * q - 1, n1) % lam:
        raise HypothesisViolated(f"lam = {lam} does not divide (d^2 q - 1, n1)")
    sgn = _sign(k)
    phi1 = euler_phi(n1)
    dinv = pow(d, -1, n1) if n1 > 1 else 0

    t_trace = trace_gamma_nm(q, n1, lam, d, k).total / phi1

    t_id = Fraction(0)
    r = exact_sqrt(q)
    if r is not None:
        t_id = (
            Fraction(k - 1, 24)
            * half_power(q, k - 2)
            * psi(n1 * lam)
            * (delta(n1, r, dinv) + sgn * delta(n1, r, -dinv))
        )

    if q == 1:
        p, v = 2, 0
    else:
        p, v = prime_power(q)
    n = n1 * lam
    t_hyp = Fraction(0)
    for i in range(v + 1):
        b, c = p**i, p ** (v - i)
        inner = Fraction(0)
        for tau in divisors(n):
            g = gcd(tau, n // tau)
            if (b - c) % g:
                continue
            y = _hyperbolic_y(b, c, tau, n)
            mod = n1 * gcd(lam, g) // g
            ind = delta(mod, y, dinv) + sgn * delta(mod, y, -dinv)
            if ind:
                inner += Fraction(euler_phi(g) * euler_phi(mod), phi1) * ind
        t_hyp += min(b, c) ** (k - 1) * inner
    t_hyp /= 4

    t_dual = Fraction(sigma(q), phi1) if k == 2 else Fraction(0)
    scale = Fraction(psi((n1 // lam) ** 2) * euler_phi(n1 // lam), psi(n1 * n1))
    return scale * (-t_trace + t_id - t_hyp + t_dual)


def dim_cusp(N, M, k):
    total = trace_gamma_nm(1, N, M, 1, k).total
    if total.denominator != 1 or total < 0:
        raise NegativeOrNonIntegerDimension(f"dim S_{k}(Gamma({N},{M})) came out as {total}")
    return int(total)


@lru_cache(maxsize=None)
def _tau_series(prec):
    # q * prod (1 - q^m)^24 truncated at q^prec
    coeffs = [0] * (prec + 1)
    coeffs[0] = 1
    for m in range(1, prec + 1):
        for _ in range(24):
            for i in range(prec, m - 1, -1):
                coeffs[i] -= coeffs[i - m]
    return [0] + coeffs[:prec]


def ramanujan_tau(n):
    if not 1 <= n <= 60:
        raise ValueError("series oracle covers 1 <= n <= 60")
    return _tau_series(60)[n]


# -- nebentype oracle ---------------------------------------------------------

def _chi_at(chi, a, level):
    if gcd(a, level) != 1:
        return 0j
    return chi(a)


def _mu_chi(chi, level, t, m, q):
    nf = gcd(level, m)
    big = level * nf
    roots = {c % level for c in range(big) if (c * c - t * c + q) % big == 0}
    s = sum((_chi_at(chi, c, level) for c in roots), 0j)
    return psi(level) / psi(level // nf) * s


def trace_gamma0_chi_complex(q, level, k, chi):
    """Tr(T_q | S_k(Gamma_0(level), chi)) as a complex float; chi has modulus dividing level."""
    if gcd(q, level) != 1:
        raise HypothesisViolated("q must be coprime to the level")
    if level % chi.N:
        raise HypothesisViolated("character modulus must divide the level")
    if chi.parity != _sign(k):
        return 0j
    total = 0j
    r = exact_sqrt(q)
    if r is not None:
        total += (k - 1) / 12 * psi(level) * _chi_at(chi, r, level) * float(half_power(q, k - 2))

    ell = 0j
    bound = isqrt(4 * q - 1)
    for t in range(-bound, bound + 1):
        disc = t * t - 4 * q
        inner = 0j
        for m in range(1, isqrt(-disc) + 1):
            if disc % (m * m):
                continue
            w = h_w(disc // (m * m))
            if w:
                inner += float(w) * _mu_chi(chi, level, t, m, q)
        ell += U(k - 2, t, q) * inner
    total -= ell / 2

    cond = chi.conductor
    hyp = 0j
    for b in divisors(q):
        c = q // b
        inner = 0j
        for tau in divisors(level):
            g = gcd(tau, level // tau)
            if (level // cond) % g or (b - c) % g:
                continue
            y = _hyperbolic_y(b, c, tau, level)
            inner += euler_phi(g) * _chi_at(chi, y, level)
        hyp += min(b, c) ** (k - 1) * inner
    total -= hyp / 2

    if k == 2 and chi.is_trivial:
        total += sum(c for c in divisors(q) if gcd(level, q // c) == 1)
    return total


def round_trace(z, tol=ROUND_TOL):
    """Nearest rational with denominator 12, if z is that close to one."""
    x = Fraction(round(z.real * 12), 12)
    if abs(z.imag) > tol or abs(z.real - float(x)) > tol:
        raise ToleranceExceeded(f"{z} is not within {tol} of a rational with denominator 12")
    return x


def trace_gamma0_chi(q, level, k, chi):
    return round_trace(trace_gamma0_chi_complex(q, level, k, chi))


def gamma_nm_via_characters(q, N, M, d, k):
    """Sum over chi mod N of chi(d) Tr(T_q | S_k(Gamma_0(NM), chi)), rounded."""
    s = sum(
        (chi(d) * trace_gamma0_chi_complex(q, N * M, k, chi) for chi in enumerate_chars(N)),
        0j,
    )
    return round_trace(s)
