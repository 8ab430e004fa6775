"""Chebyshev polynomials of the second kind in the weighted form U_j(t, q).

U_j(t, q) = (a^(j+1) - b^(j+1)) / (a - b) for a, b the roots of X^2 - tX + q;
it is computed by the integer recurrence, never through square roots.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .arith import PInverse, half_power, prime_power, sigma


def U(j, t, q):
    if j < 0:
        raise ValueError("index must be non-negative")
    prev, cur = 1, t
    if j == 0:
        return prev
    for _ in range(j - 1):
        prev, cur = cur, t * cur - q * prev
    return cur


def a_coeff(R, j):
    """C(2R, j) - C(2R, j-1), zero outside 0 <= j <= R."""
    if j < 0 or j > R:
        return 0
    return comb(2 * R, j) - (comb(2 * R, j - 1) if j >= 1 else 0)


def catalan(R):
    return a_coeff(R, R)


def c_coeff(R, j):
    if R % 2 == 0:
        return a_coeff(R // 2, j)
    h = (R - 1) // 2
    return a_coeff(h, j) + a_coeff(h, j - 1)


@dataclass(frozen=True)
class ChebCoeffs:
    R: int
    a: dict
    c: dict
    catalan: int


def cheb_coeffs(R):
    return ChebCoeffs(
        R,
        {j: a_coeff(R, j) for j in range(R + 1)},
        {j: c_coeff(R, j) for j in range(R // 2 + 1)},
        catalan(R),
    )


def _u_poly(n):
    """Coefficient list (low degree first) of U_n(t, 1)."""
    prev, cur = [1], [0, 1]
    if n == 0:
        return prev
    for _ in range(n - 1):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return cur


def expand_power(R):
    """[(j, c_{R,j})] with t^R = sum c_{R,j} q^j U_{R-2j}(t, q).

    Solved by peeling leading terms at q = 1; weighted homogeneity in
    (t, q) makes the result valid for all q.
    """
    rem = [0] * R + [1]
    out = []
    for j in range(R // 2 + 1):
        n = R - 2 * j
        c = rem[n]
        for i, u in enumerate(_u_poly(n)):
            rem[i] -= c * u
        out.append((j, c))
    if any(rem):
        raise AssertionError("expansion did not terminate")
    return out


def rho(q, k, p=None):
    """-Tr(T_q | S_k(SL_2(Z))) plus the identity, hyperbolic and dual corrections.

    ``q`` is a prime power, 1, or a ``PInverse`` token (value 0).
    """
    from .traceformula import level_one_trace

    if isinstance(q, PInverse):
        return Fraction(0)
    if q == 1:
        v, pp = 0, p or 2
    else:
        pp, v = prime_power(q)
    val = -Fraction(level_one_trace(q, k))
    if v % 2 == 0:
        val += Fraction(k - 1, 12) * half_power(q, k - 2)
    val -= Fraction(1, 2) * sum(min(pp**i, pp ** (v - i)) ** (k - 1) for i in range(v + 1))
    if k == 2:
        val += sigma(q)
    return val
