"""Pure-Python census kernels (fallback when the compiled core is absent).

Field elements are indices into ``FieldTables``. Points are (x, y) index
pairs with ``None`` for the point at infinity.
"""
import numpy as np

from .arith import factorize

IMPLEMENTATION = "python"


def discriminant(T, a1, a2, a3, a4, a6):
    A, M, N = T.lists[:3]
    return _disc(A, M, N, T.p, a1, a2, a3, a4, a6)


def _disc(A, M, N, p, a1, a2, a3, a4, a6):
    def c(n):
        return n % p

    def sm(k, x):
        return M[c(k)][x]

    b2 = A[M[a1][a1]][sm(4, a2)]
    b4 = A[sm(2, a4)][M[a1][a3]]
    b6 = A[M[a3][a3]][sm(4, a6)]
    b8 = M[M[a1][a1]][a6]
    b8 = A[b8][sm(4, M[a2][a6])]
    b8 = A[b8][N[M[M[a1][a3]][a4]]]
    b8 = A[b8][M[a2][M[a3][a3]]]
    b8 = A[b8][N[M[a4][a4]]]
    d = N[M[M[b2][b2]][b8]]
    d = A[d][N[sm(8, M[M[b4][b4]][b4])]]
    d = A[d][N[sm(27, M[b6][b6])]]
    d = A[d][sm(9, M[M[b2][b4]][b6])]
    return d


def orbits(T):
    """Isomorphism classes as (a1, a2, a3, a4, a6, aut), enumeration order."""
    if T.p > 3:
        return _short_orbits(T)
    return _long_orbits(T)


def _short_orbits(T):
    q = T.q
    A, M, N = T.lists[:3]
    c4, c27 = 4 % T.p, 27 % T.p
    u4 = [M[M[u][u]][M[u][u]] for u in range(q)]
    u6 = [M[u4[u]][M[u][u]] for u in range(q)]
    visited = bytearray(q * q)
    out = []
    for a in range(q):
        a3 = M[M[a][a]][a]
        for b in range(q):
            if visited[a * q + b]:
                continue
            if A[M[c4][a3]][M[c27][M[b][b]]] == 0:
                continue
            aut = 0
            for u in range(1, q):
                a2_, b2_ = M[u4[u]][a], M[u6[u]][b]
                visited[a2_ * q + b2_] = 1
                if a2_ == a and b2_ == b:
                    aut += 1
            out.append((0, 0, 0, a, b, aut))
    return out


def _long_orbits(T):
    q, p = T.q, T.p
    A, M, Ng = T.add, T.mul, T.neg
    Al, Ml, Nl = T.lists[:3]
    u, r, s, t = np.meshgrid(
        np.arange(1, q), np.arange(q), np.arange(q), np.arange(q), indexing="ij"
    )
    u, r, s, t = (x.ravel() for x in (u, r, s, t))
    ui = T.inv[u]
    ui2 = M[ui, ui]
    ui3 = M[ui2, ui]
    ui4 = M[ui2, ui2]
    ui6 = M[ui4, ui2]
    two_s = A[s, s]
    two_t = A[t, t]
    three_r = A[A[r, r], r]
    ss = M[s, s]
    rr = M[r, r]
    rs = M[r, s]
    rt = M[r, t]
    st = M[s, t]
    tt = M[t, t]
    rrr = M[rr, r]
    two_r = A[r, r]
    three_rr = A[A[rr, rr], rr]
    two_st = A[st, st]
    t_plus_rs = A[t, rs]
    # terms independent of the model
    base2 = A[three_r, Ng[ss]]
    base4 = A[three_rr, Ng[two_st]]
    base6 = A[rrr, Ng[tt]]

    total = q**5
    visited = np.zeros(total, dtype=bool)
    out = []
    pos = 0
    while pos < total:
        off = int(np.argmin(visited[pos:]))
        pos += off
        if visited[pos]:
            break
        rep = pos
        a6, rest = rep % q, rep // q
        a4, rest = rest % q, rest // q
        a3, rest = rest % q, rest // q
        a2, a1 = rest % q, rest // q
        n1 = M[ui, A[a1, two_s]]
        n2 = M[ui2, A[A[a2, Ng[M[s, a1]]], base2]]
        n3 = M[ui3, A[A[a3, M[r, a1]], two_t]]
        x4 = A[a4, Ng[M[s, a3]]]
        x4 = A[x4, M[two_r, a2]]
        x4 = A[x4, Ng[M[t_plus_rs, a1]]]
        n4 = M[ui4, A[x4, base4]]
        x6 = A[a6, M[r, a4]]
        x6 = A[x6, M[rr, a2]]
        x6 = A[x6, Ng[M[t, a3]]]
        x6 = A[x6, Ng[M[rt, a1]]]
        n6 = M[ui6, A[x6, base6]]
        idx = (((n1.astype(np.int64) * q + n2) * q + n3) * q + n4) * q + n6
        visited[idx] = True
        if _disc(Al, Ml, Nl, p, a1, a2, a3, a4, a6) != 0:
            aut = int(np.count_nonzero(idx == rep))
            out.append((a1, a2, a3, a4, a6, aut))
        pos += 1
    return out


class _Curve:
    def __init__(self, T, lists, coeffs):
        self.A, self.M, self.N, self.I = lists
        self.p = T.p
        self.a1, self.a2, self.a3, self.a4, self.a6 = coeffs

    def add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        A, M, N, I = self.A, self.M, self.N, self.I
        x1, y1 = P
        x2, y2 = Q
        a1, a2, a3, a4 = self.a1, self.a2, self.a3, self.a4
        p = self.p
        if x1 == x2:
            if y2 == N[A[A[y1][M[a1][x1]]][a3]]:
                return None
            xx = M[x1][x1]
            num = A[A[M[3 % p][xx]][M[2 % p][M[a2][x1]]]][A[a4][N[M[a1][y1]]]]
            den = A[A[M[2 % p][y1]][M[a1][x1]]][a3]
        else:
            num = A[y2][N[y1]]
            den = A[x2][N[x1]]
        lam = M[num][I[den]]
        x3 = A[A[M[lam][lam]][M[a1][lam]]][N[A[A[a2][x1]][x2]]]
        nu = A[y1][N[M[lam][x1]]]
        y3 = N[A[A[M[A[lam][a1]][x3]][nu]][a3]]
        return (x3, y3)

    def mul(self, n, P):
        R = None
        while n:
            if n & 1:
                R = self.add(R, P)
            P = self.add(P, P)
            n >>= 1
        return R


def _points(T, coeffs):
    A, M, N, I, SQ, AS, _ = T.lists
    p, q = T.p, T.q
    a1, a2, a3, a4, a6 = coeffs
    for x in range(q):
        xx = M[x][x]
        f = A[A[A[M[xx][x]][M[a2][xx]]][M[a4][x]]][a6]
        B = A[M[a1][x]][a3]
        if p == 2:
            if B == 0:
                yield (x, SQ[f])
                continue
            z = AS[M[f][I[M[B][B]]]]
            if z >= 0:
                yield (x, M[B][z])
                yield (x, M[B][A[z][1]])
        else:
            D = A[M[4 % p][f]][M[B][B]]
            s = SQ[D]
            if s < 0:
                continue
            half = I[2 % p]
            y = M[A[N[B]][s]][half]
            yield (x, y)
            if s != 0:
                yield (x, M[A[N[B]][N[s]]][half])


def count_points(T, coeffs):
    A, M, N, I, _, AS, chi = T.lists
    p, q = T.p, T.q
    a1, a2, a3, a4, a6 = coeffs
    total = 1
    for x in range(q):
        xx = M[x][x]
        f = A[A[A[M[xx][x]][M[a2][xx]]][M[a4][x]]][a6]
        B = A[M[a1][x]][a3]
        if p == 2:
            if B == 0:
                total += 1
            elif AS[M[f][I[M[B][B]]]] >= 0:
                total += 2
        else:
            total += 1 + chi[A[M[4 % p][f]][M[B][B]]]
    return total


def _n1_candidates(L, npts, q):
    out = []
    for n in range(L, npts + 1, L):
        if npts % n:
            continue
        m = npts // n
        if n % m == 0 and (q - 1) % m == 0:
            out.append(n)
    return out


def group_exponent(T, coeffs, npts):
    curve = _Curve(T, T.lists[:4], coeffs)
    fac = factorize(npts)
    L = 1
    for P in _points(T, coeffs):
        order = 1
        for ell, e in fac:
            Q = curve.mul(npts // ell**e, P)
            while Q is not None:
                Q = curve.mul(ell, Q)
                order *= ell
        L = L * order // _gcd(L, order)
        cands = _n1_candidates(L, npts, T.q)
        if len(cands) == 1:
            return cands[0]
    return L


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def invariants(T, models):
    """(npoints, n1) for each model in ``models``."""
    out = []
    for coeffs in models:
        npts = count_points(T, coeffs)
        out.append((npts, group_exponent(T, coeffs, npts)))
    return out
