"""Brute-force reference computations used only by the tests.

These deliberately avoid the census kernels: they walk every model and every
affine point through the raw field tables.
"""
from collections import Counter
from fractions import Fraction
from itertools import product
from math import gcd

from ellstat.arith import prime_power
from ellstat.ffield import make_field, tables_for


def field_tables(q):
    return tables_for(make_field(*prime_power(q)))


def lhs_rhs(T, model, x, y):
    a1, a2, a3, a4, a6 = model
    A, M = T.add, T.mul
    lhs = A[M[y, y], A[M[M[a1, x], y], M[a3, y]]]
    x2 = M[x, x]
    rhs = A[A[A[M[x2, x], M[a2, x2]], M[a4, x]], a6]
    return lhs, rhs


def affine_points(T, model):
    return [(x, y) for x in range(T.q) for y in range(T.q) if lhs_rhs(T, model, x, y)[0] == lhs_rhs(T, model, x, y)[1]]


def is_singular(T, model):
    """A point of the projective closure where both partials vanish."""
    a1, a2, a3, a4, a6 = model
    A, M, N = T.add, T.mul, T.neg
    c2, c3 = 2 % T.p, 3 % T.p
    for x, y in affine_points(T, model):
        # F = y^2 + a1 x y + a3 y - x^3 - a2 x^2 - a4 x - a6
        fy = A[A[M[c2, y], M[a1, x]], a3]
        fx = A[M[a1, y], N[A[A[M[c3, M[x, x]], M[M[c2, a2], x]], a4]]]
        if fx == 0 and fy == 0:
            return True
    return False


class Arith:
    """Affine group law on a long Weierstrass model, None = infinity."""

    def __init__(self, T, model):
        self.T, self.model = T, model

    def neg(self, P):
        if P is None:
            return None
        a1, _, a3, _, _ = self.model
        A, M, N = self.T.add, self.T.mul, self.T.neg
        x, y = P
        return (x, N[A[A[y, M[a1, x]], a3]])

    def add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        T = self.T
        A, M, N, I = T.add, T.mul, T.neg, T.inv
        a1, a2, a3, a4, a6 = self.model
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if Q == self.neg(P):
                return None
            num = A[A[A[M[3 % T.p, M[x1, x1]], M[M[2 % T.p, a2], x1]], a4], N[M[a1, y1]]]
            den = A[A[M[2 % T.p, y1], M[a1, x1]], a3]
        else:
            num = A[y2, N[y1]]
            den = A[x2, N[x1]]
        lam = M[num, I[den]]
        x3 = A[A[A[A[M[lam, lam], M[a1, lam]], N[a2]], N[x1]], N[x2]]
        y3 = A[A[M[lam, A[x1, N[x3]]], N[y1]], N[A[M[a1, x3], a3]]]
        return (x3, y3)

    def order(self, P):
        n, Q = 1, P
        while Q is not None:
            Q = self.add(Q, P)
            n += 1
        return n


def group_structure(T, model):
    pts = [None] + affine_points(T, model)
    arith = Arith(T, model)
    exponent = 1
    for P in pts:
        o = arith.order(P)
        exponent = exponent * o // gcd(exponent, o)
    return len(pts), exponent


def weighted_traces(q, with_exponent=False):
    """sum over nonsingular models of 1/|G| keyed by trace (and exponent).

    Short models for p > 3 (G = units acting by u^4, u^6); long models
    otherwise (G of order (q - 1) q^3).
    """
    T = field_tables(q)
    short = T.p > 3
    group_order = (q - 1) if short else (q - 1) * q**3
    weights = Counter()
    models = (
        ((0, 0, 0, a4, a6) for a4 in range(q) for a6 in range(q))
        if short
        else product(range(q), repeat=5)
    )
    for model in models:
        if is_singular(T, model):
            continue
        if with_exponent:
            n, e = group_structure(T, model)
            key = (q + 1 - n, e)
        else:
            key = q + 1 - (len(affine_points(T, model)) + 1)
        weights[key] += Fraction(1, group_order)
    return weights
