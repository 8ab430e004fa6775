"""Verification suites: each compares two independent routes and collects
every disagreement as a counterexample record."""
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

from .arith import divide_by_p_squared, prime_power
from .census import LONG_MODEL_CEILING, census, expect
from .chebyshev import U, catalan, expand_power
from .classnum import GroupSpec, ModClassContext, Sigma, omega_A, omega_star_A
from .errors import NegativeOrNonIntegerDimension
from .moments import (
    FormulaMismatch,
    birch_value,
    census_moment_mt,
    census_moment_power,
    corollary_envelope,
    corollary_gap,
    moment_mt,
    moment_power,
)
from .stats import (
    divisibility_prob,
    ellpart_table,
    invariant_averages,
    n2_moment_by_inversion,
    sigmrq,
)
from .traceformula import (
    dim_cusp,
    gamma_nm_via_characters,
    level_one_trace,
    ramanujan_tau,
    trace_gamma_nm,
)

SUITES = ("mass", "birch", "mt", "ansalpha", "cheb", "gammanm", "tau", "dim", "stats")
MT_FIELDS = (5, 7, 9, 11, 13, 25, 27, 49)
MAX_REPORTED = 10


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.counterexamples

    def check(self, case, expected, got):
        self.checked += 1
        if expected != got:
            self.counterexamples.append(
                {"suite": self.name, "case": case, "expected": str(expected), "got": str(got)}
            )

    def to_json(self, limit=MAX_REPORTED):
        return {
            "suite": self.name,
            "checked": self.checked,
            "failures": len(self.counterexamples),
            "counterexamples": self.counterexamples[:limit],
        }


def census_fields(qmax):
    """Prime powers q <= qmax that the census can enumerate."""
    out = []
    for q in range(2, qmax + 1):
        pv = prime_power(q)
        if pv is None or (pv[0] <= 3 and q > LONG_MODEL_CEILING):
            continue
        out.append(q)
    return out


def _groups(q, n1_max=6):
    for n1 in range(1, n1_max + 1):
        for n2 in range(1, n1 + 1):
            if n1 % n2 == 0 and gcd(q, n1) == 1:
                yield GroupSpec(n1, n2)


def suite_mass(qmax):
    res = SuiteResult("mass")
    for q in census_fields(qmax):
        table = census(q)
        res.check({"q": q, "what": "mass"}, Fraction(1), expect(table, lambda c: 1))
        for R in (1, 3, 5, 7):
            res.check({"q": q, "R": R}, Fraction(0), census_moment_power(q, GroupSpec(1, 1), R, table))
    return res


def suite_birch(qmax):
    res = SuiteResult("birch")
    for p in (5, 7, 11, 13):
        if p > qmax:
            continue
        tau = level_one_trace(p, 12)
        res.check({"p": p, "what": "tau oracle"}, ramanujan_tau(p), tau)
        table = census(p)
        for R in range(6):
            got = p * census_moment_power(p, GroupSpec(1, 1), 2 * R, table)
            res.check({"p": p, "R": R}, birch_value(p, R, tau), got)
    return res


def suite_mt(qmax):
    res = SuiteResult("mt")
    for q in (q for q in MT_FIELDS if q <= qmax):
        table = census(q)
        for A in _groups(q):
            for k in range(2, 9):
                case = {"q": q, "n1": A.n1, "n2": A.n2, "k": k}
                res.check(case, census_moment_mt(q, A, k, table), moment_mt(q, A, k))
    return res


def suite_ansalpha(qmax):
    res = SuiteResult("ansalpha")
    for q in (q for q in MT_FIELDS if q <= qmax):
        p, _ = prime_power(q)
        q_low = divide_by_p_squared(q, p)
        for A in _groups(q):
            d_low = p % A.n1 if A.n1 > 1 else 1
            ctx = ModClassContext(A.n1, A.n2, q, 1)
            ctx_low = ModClassContext(A.n1, A.n2, q_low, d_low, p=p)
            for k in range(2, 9):
                lhs = omega_A(ctx, k) + omega_star_A(ctx, k)
                rhs = Sigma(ctx, k) - p ** (k - 1) * Sigma(ctx_low, k)
                res.check({"q": q, "n1": A.n1, "n2": A.n2, "k": k}, rhs, lhs)
    return res


def suite_cheb(qmax):
    res = SuiteResult("cheb")
    for R in range(13):
        for t in range(-6, 7):
            for q in (1, 2, 5, 9):
                rebuilt = sum(c * q**j * U(R - 2 * j, t, q) for j, c in expand_power(R))
                res.check({"R": R, "t": t, "q": q}, t**R, rebuilt)
    for q in census_fields(qmax):
        for A in (GroupSpec(1, 1), GroupSpec(2, 1), GroupSpec(2, 2)):
            if gcd(q, A.order) != 1:
                continue
            for R in range(7):
                case = {"q": q, "n1": A.n1, "n2": A.n2, "R": R}
                try:
                    moment_power(q, A, R, "both")
                    res.check(case, True, True)
                except FormulaMismatch as exc:
                    res.check(case, "census == formula", str(exc))
        table = census(q)
        for R in range(4):
            scaled = census_moment_power(q, GroupSpec(1, 1), 2 * R, table) / Fraction(q) ** R
            ok = abs(float(scaled) - catalan(R)) <= 4**R * 3 / q**0.5
            res.check({"q": q, "R": R, "what": "catalan envelope"}, True, ok)
    return res


def gammanm_cases(N_max=8, fields=(5, 7, 11), weights=(2, 3, 4, 6)):
    """Cases where the exact engine applies: d a unit with d^2 q = 1 mod M."""
    for N in range(1, N_max + 1):
        for M in (m for m in range(1, N + 1) if N % m == 0):
            for q in fields:
                if gcd(q, N) != 1:
                    continue
                for d in range(1, N + 1):
                    if gcd(d, N) == 1 and (d * d * q - 1) % M == 0:
                        for k in weights:
                            yield q, N, M, d % N if N > 1 else 1, k


def suite_gammanm(qmax=None):
    res = SuiteResult("gammanm")
    for q, N, M, d, k in gammanm_cases():
        case = {"q": q, "N": N, "M": M, "d": d, "k": k}
        res.check(case, trace_gamma_nm(q, N, M, d, k).total, gamma_nm_via_characters(q, N, M, d, k))
    return res


def suite_tau(qmax=None):
    res = SuiteResult("tau")
    for q in (2, 3, 4, 5, 7, 9, 25, 27, 49):
        p, v = prime_power(q)
        # Hecke recursion from the prime value
        a, b = 1, ramanujan_tau(p)
        for _ in range(v - 1):
            a, b = b, ramanujan_tau(p) * b - p**11 * a
        res.check({"q": q, "what": "recursion"}, b, level_one_trace(q, 12))
        if q <= 60:
            res.check({"q": q, "what": "series"}, ramanujan_tau(q), level_one_trace(q, 12))
    return res


def suite_dim(qmax=None):
    res = SuiteResult("dim")
    for N in range(1, 9):
        for M in (m for m in range(1, N + 1) if N % m == 0):
            for k in range(2, 13):
                case = {"N": N, "M": M, "k": k}
                try:
                    dim = dim_cusp(N, M, k)
                except NegativeOrNonIntegerDimension as exc:
                    res.check(case, "non-negative integer", str(exc))
                    continue
                res.check(case, True, 12 * dim <= k * N**3)
    res.check({"N": 7, "M": 7, "k": 2}, 3, dim_cusp(7, 7, 2))
    for k in range(2, 27):
        expected = _level_one_dim(k)
        res.check({"N": 1, "M": 1, "k": k}, expected, dim_cusp(1, 1, k))
    return res


def _level_one_dim(k):
    if k % 2 or k < 12:
        return 0
    return k // 12 - 1 if k % 12 == 2 else k // 12


def suite_stats(qmax):
    res = SuiteResult("stats")
    for q in census_fields(qmax):
        if q < 4:
            continue
        n1_rep, n2_rep = invariant_averages(q)
        res.check({"q": q, "what": "mean n1 envelope"}, True, n1_rep.within_bound)
        res.check({"q": q, "what": "mean n2 envelope"}, True, n2_rep.within_bound)
        table = census(q)
        res.check({"q": q, "what": "n2 range"}, True, all(c.n2 <= isqrt(q) + 1 for c in table.classes))
        for m in range(1, isqrt(q) + 2):
            for k in (2, 3, 4):
                rep = sigmrq(q, m, k, table)
                if gcd(m, q) == 1:
                    res.check({"q": q, "m": m, "k": k}, rep.census_value, n2_moment_by_inversion(q, m, k))
                if (q - 1) % m:
                    res.check({"q": q, "m": m, "k": k, "what": "vanishing"}, 0, rep.census_value)
        for A in _groups(q):
            if (q - 1) % A.n2 == 0:
                for k in (2, 3, 4):
                    gap = corollary_gap(q, A, k)
                    ok = abs(float(gap)) <= corollary_envelope(q, A, k)
                    res.check({"q": q, "n1": A.n1, "n2": A.n2, "k": k, "what": "corollary"}, True, ok)
        for ell in (2, 3, 5):
            if q % ell == 0:
                continue
            try:
                total = sum(ellpart_table(q, ell).values())
            except FormulaMismatch as exc:
                res.check({"q": q, "ell": ell}, "census == formula", str(exc))
                continue
            res.check({"q": q, "ell": ell, "what": "total probability"}, 1, total)
        for N in range(2, 13):
            if gcd(N, q) != 1:
                continue
            try:
                divisibility_prob(q, N)
                res.check({"q": q, "N": N}, True, True)
            except FormulaMismatch as exc:
                res.check({"q": q, "N": N}, "census == formula", str(exc))
    return res


def sigmrq_bound_report(qmax):
    """Cases exceeding the explicit Theorem-6-type constant; reported, never fatal."""
    out = []
    for q in census_fields(qmax):
        table = census(q)
        for m in range(1, isqrt(q) + 2):
            for k in (2, 3, 4, 5):
                rep = sigmrq(q, m, k, table)
                if not rep.within_bound:
                    out.append({"q": q, "m": m, "k": k, "gap": str(rep.gap), "bound": rep.bound})
    return out


RUNNERS = {
    "mass": suite_mass,
    "birch": suite_birch,
    "mt": suite_mt,
    "ansalpha": suite_ansalpha,
    "cheb": suite_cheb,
    "gammanm": suite_gammanm,
    "tau": suite_tau,
    "dim": suite_dim,
    "stats": suite_stats,
}


def run_suites(name, qmax=49):
    names = SUITES if name == "all" else (name,)
    if any(n not in RUNNERS for n in names):
        raise ValueError(f"unknown suite {name!r}")
    return [RUNNERS[n](qmax) for n in names]
