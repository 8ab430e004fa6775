# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled census kernels; same API and results as ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int32_t, int64_t, uint8_t

from .arith import factorize

IMPLEMENTATION = "cython"

ctypedef int32_t[:, ::1] Tab2
ctypedef int32_t[::1] Tab1


cdef class _Field:
    cdef Tab2 A, M
    cdef Tab1 N, IV, SQ, AS, CHI
    cdef int p, q

    def __init__(self, T):
        self.A = T.add
        self.M = T.mul
        self.N = T.neg
        self.IV = T.inv
        self.SQ = T.sqrt_idx
        self.AS = T.as_root
        self.CHI = T.chi
        self.p = T.p
        self.q = T.q

    cdef inline int c(self, int n):
        return n % self.p

    cdef int disc(self, int a1, int a2, int a3, int a4, int a6):
        cdef Tab2 A = self.A, M = self.M
        cdef Tab1 N = self.N
        cdef int b2, b4, b6, b8, d
        b2 = A[M[a1, a1], M[self.c(4), a2]]
        b4 = A[M[self.c(2), a4], M[a1, a3]]
        b6 = A[M[a3, a3], M[self.c(4), a6]]
        b8 = M[M[a1, a1], a6]
        b8 = A[b8, M[self.c(4), M[a2, a6]]]
        b8 = A[b8, N[M[M[a1, a3], a4]]]
        b8 = A[b8, M[a2, M[a3, a3]]]
        b8 = A[b8, N[M[a4, a4]]]
        d = N[M[M[b2, b2], b8]]
        d = A[d, N[M[self.c(8), M[M[b4, b4], b4]]]]
        d = A[d, N[M[self.c(27), M[b6, b6]]]]
        d = A[d, M[self.c(9), M[M[b2, b4], b6]]]
        return d


def discriminant(T, a1, a2, a3, a4, a6):
    return _Field(T).disc(a1, a2, a3, a4, a6)


def orbits(T):
    """Isomorphism classes as (a1, a2, a3, a4, a6, aut), enumeration order."""
    if T.p > 3:
        return _short_orbits(_Field(T))
    return _long_orbits(_Field(T))


cdef list _short_orbits(_Field F):
    cdef int q = F.q, a, b, u, aa, bb, aut, a3
    cdef Tab2 A = F.A, M = F.M
    cdef int c4 = F.c(4), c27 = F.c(27)
    cdef cnp.ndarray[int32_t] u4 = np.zeros(q, dtype=np.int32)
    cdef cnp.ndarray[int32_t] u6 = np.zeros(q, dtype=np.int32)
    cdef cnp.ndarray[uint8_t] visited = np.zeros(q * q, dtype=np.uint8)
    for u in range(q):
        u4[u] = M[M[u, u], M[u, u]]
        u6[u] = M[u4[u], M[u, u]]
    out = []
    for a in range(q):
        a3 = M[M[a, a], a]
        for b in range(q):
            if visited[a * q + b]:
                continue
            if A[M[c4, a3], M[c27, M[b, b]]] == 0:
                continue
            aut = 0
            for u in range(1, q):
                aa = M[u4[u], a]
                bb = M[u6[u], b]
                visited[aa * q + bb] = 1
                if aa == a and bb == b:
                    aut += 1
            out.append((0, 0, 0, a, b, aut))
    return out


cdef list _long_orbits(_Field F):
    cdef int q = F.q
    cdef Tab2 A = F.A, M = F.M
    cdef Tab1 N = F.N, IV = F.IV
    cdef int64_t total = <int64_t>q * q * q * q * q
    cdef cnp.ndarray[uint8_t] visited = np.zeros(total, dtype=np.uint8)
    cdef int64_t pos = 0, rep, rest, idx
    cdef int a1, a2, a3, a4, a6, u, r, s, t, aut
    cdef int ui, ui2, ui3, ui4, ui6, rr, n1, n2, n3, n4, n6, x
    cdef int c2 = F.c(2), c3 = F.c(3)
    out = []
    while pos < total:
        if visited[pos]:
            pos += 1
            continue
        rep = pos
        a6 = rep % q; rest = rep // q
        a4 = rest % q; rest //= q
        a3 = rest % q; rest //= q
        a2 = rest % q; a1 = rest // q
        aut = 0
        for u in range(1, q):
            ui = IV[u]
            ui2 = M[ui, ui]
            ui3 = M[ui2, ui]
            ui4 = M[ui2, ui2]
            ui6 = M[ui4, ui2]
            for r in range(q):
                rr = M[r, r]
                for s in range(q):
                    n1 = M[ui, A[a1, M[c2, s]]]
                    x = A[a2, N[M[s, a1]]]
                    x = A[x, M[c3, r]]
                    x = A[x, N[M[s, s]]]
                    n2 = M[ui2, x]
                    for t in range(q):
                        x = A[A[a3, M[r, a1]], M[c2, t]]
                        n3 = M[ui3, x]
                        x = A[a4, N[M[s, a3]]]
                        x = A[x, M[M[c2, r], a2]]
                        x = A[x, N[M[A[t, M[r, s]], a1]]]
                        x = A[x, M[c3, rr]]
                        x = A[x, N[M[c2, M[s, t]]]]
                        n4 = M[ui4, x]
                        x = A[a6, M[r, a4]]
                        x = A[x, M[rr, a2]]
                        x = A[x, M[rr, r]]
                        x = A[x, N[M[t, a3]]]
                        x = A[x, N[M[t, t]]]
                        x = A[x, N[M[M[r, t], a1]]]
                        n6 = M[ui6, x]
                        idx = (((<int64_t>n1 * q + n2) * q + n3) * q + n4) * q + n6
                        visited[idx] = 1
                        if idx == rep:
                            aut += 1
        if F.disc(a1, a2, a3, a4, a6) != 0:
            out.append((a1, a2, a3, a4, a6, aut))
        pos += 1
    return out


cdef class _Curve:
    cdef _Field F
    cdef int a1, a2, a3, a4, a6
    # result registers of the last group operation; rx = -1 means infinity
    cdef int rx, ry

    def __init__(self, _Field F, coeffs):
        self.F = F
        self.a1, self.a2, self.a3, self.a4, self.a6 = coeffs

    cdef void add(self, int x1, int y1, int x2, int y2):
        cdef Tab2 A = self.F.A, M = self.F.M
        cdef Tab1 N = self.F.N, IV = self.F.IV
        cdef int p = self.F.p, num, den, lam, x3, nu, xx
        if x1 < 0:
            self.rx = x2; self.ry = y2
            return
        if x2 < 0:
            self.rx = x1; self.ry = y1
            return
        if x1 == x2:
            if y2 == N[A[A[y1, M[self.a1, x1]], self.a3]]:
                self.rx = -1; self.ry = -1
                return
            xx = M[x1, x1]
            num = A[A[M[3 % p, xx], M[2 % p, M[self.a2, x1]]], A[self.a4, N[M[self.a1, y1]]]]
            den = A[A[M[2 % p, y1], M[self.a1, x1]], self.a3]
        else:
            num = A[y2, N[y1]]
            den = A[x2, N[x1]]
        lam = M[num, IV[den]]
        x3 = A[A[M[lam, lam], M[self.a1, lam]], N[A[A[self.a2, x1], x2]]]
        nu = A[y1, N[M[lam, x1]]]
        self.ry = N[A[A[M[A[lam, self.a1], x3], nu], self.a3]]
        self.rx = x3

    cdef void smul(self, int64_t n, int x, int y):
        cdef int rx = -1, ry = -1
        while n:
            if n & 1:
                self.add(rx, ry, x, y)
                rx = self.rx; ry = self.ry
            self.add(x, y, x, y)
            x = self.rx; y = self.ry
            n >>= 1
        self.rx = rx; self.ry = ry


cdef int64_t _count(_Field F, int a1, int a2, int a3, int a4, int a6):
    cdef Tab2 A = F.A, M = F.M
    cdef Tab1 IV = F.IV, AS = F.AS, CHI = F.CHI
    cdef int x, xx, f, B, q = F.q, p = F.p, c4 = F.c(4)
    cdef int64_t total = 1
    for x in range(q):
        xx = M[x, x]
        f = A[A[A[M[xx, x], M[a2, xx]], M[a4, x]], a6]
        B = A[M[a1, x], a3]
        if p == 2:
            if B == 0:
                total += 1
            elif AS[M[f, IV[M[B, B]]]] >= 0:
                total += 2
        else:
            total += 1 + CHI[A[M[c4, f], M[B, B]]]
    return total


def count_points(T, coeffs):
    a1, a2, a3, a4, a6 = coeffs
    return _count(_Field(T), a1, a2, a3, a4, a6)


cdef int64_t _gcd(int64_t a, int64_t b):
    while b:
        a, b = b, a % b
    return a


cdef int _unique_candidate(int64_t L, int64_t npts, int64_t q, int64_t *found):
    cdef int64_t n, m
    cdef int count = 0
    n = L
    while n <= npts:
        if npts % n == 0:
            m = npts // n
            if n % m == 0 and (q - 1) % m == 0:
                count += 1
                found[0] = n
        n += L
    return count


cdef int64_t _exponent(_Field F, _Curve C, int64_t npts, list fac):
    cdef Tab2 A = F.A, M = F.M
    cdef Tab1 N = F.N, IV = F.IV, SQ = F.SQ, AS = F.AS
    cdef int x, xx, f, B, s, z, k, npt, q = F.q, p = F.p
    cdef int c4 = F.c(4), half = 0
    cdef int ys[2]
    cdef int64_t L = 1, order, found = 0, ell, cof, e
    cdef int nf = len(fac), j
    cdef int64_t ells[64]
    cdef int64_t cofs[64]
    for j in range(nf):
        ells[j] = fac[j][0]
        cofs[j] = npts // (fac[j][0] ** fac[j][1])
    if p != 2:
        half = IV[2 % p]
    for x in range(q):
        xx = M[x, x]
        f = A[A[A[M[xx, x], M[C.a2, xx]], M[C.a4, x]], C.a6]
        B = A[M[C.a1, x], C.a3]
        npt = 0
        if p == 2:
            if B == 0:
                ys[0] = SQ[f]; npt = 1
            else:
                z = AS[M[f, IV[M[B, B]]]]
                if z >= 0:
                    ys[0] = M[B, z]; ys[1] = M[B, A[z, 1]]; npt = 2
        else:
            s = SQ[A[M[c4, f], M[B, B]]]
            if s >= 0:
                ys[0] = M[A[N[B], s], half]; npt = 1
                if s != 0:
                    ys[1] = M[A[N[B], N[s]], half]; npt = 2
        for k in range(npt):
            order = 1
            for j in range(nf):
                C.smul(cofs[j], x, ys[k])
                while C.rx >= 0:
                    C.smul(ells[j], C.rx, C.ry)
                    order *= ells[j]
            L = L // _gcd(L, order) * order
            if _unique_candidate(L, npts, q, &found) == 1:
                return found
    return L


def group_exponent(T, coeffs, npts):
    F = _Field(T)
    return _exponent(F, _Curve(F, coeffs), npts, list(factorize(npts)))


def invariants(T, models):
    """(npoints, n1) for each model in ``models``."""
    cdef _Field F = _Field(T)
    out = []
    for coeffs in models:
        a1, a2, a3, a4, a6 = coeffs
        npts = _count(F, a1, a2, a3, a4, a6)
        out.append((npts, _exponent(F, _Curve(F, coeffs), npts, list(factorize(npts)))))
    return out
