from fractions import Fraction
from math import gcd, sqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import primerange

from ellstat import traceformula as tf
from ellstat.arith import PInverse, divisor_count, divisors, euler_phi, phi_hat
from ellstat.classnum import ModClassContext, Sigma, hurwitz_H
from ellstat.dirichlet import enumerate_chars
from ellstat.errors import HypothesisViolated, ToleranceExceeded
from ellstat.verify import gammanm_cases

TAU = {1: 1, 2: -24, 3: 252, 4: -1472, 5: 4830, 7: -16744, 11: 534612, 13: -577738}


@pytest.mark.parametrize("n, value", TAU.items())
def test_tau_series(n, value):
    assert tf.ramanujan_tau(n) == value


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 25, 27, 49])
def test_level_one_weight_twelve_is_tau(q):
    assert tf.level_one_trace(q, 12) == tf.ramanujan_tau(q)


def test_tau_hecke_relation_for_prime_powers():
    for p in (2, 3, 5, 7):
        assert tf.level_one_trace(p * p, 12) == tf.ramanujan_tau(p) ** 2 - p**11


def test_known_traces():
    # S_2(Gamma_1(11)) is spanned by the form of the curve 11a, a_2 = -2
    assert tf.trace_gamma_nm(2, 11, 1, 1, 2).total == -2
    assert tf.trace_gamma_nm(3, 11, 1, 1, 2).total == -1


@pytest.mark.parametrize(
    "N, M, k, dim",
    [(1, 1, 12, 1), (1, 1, 24, 2), (1, 1, 14, 0), (11, 1, 2, 1), (13, 1, 2, 2), (7, 7, 2, 3), (5, 5, 2, 0), (4, 1, 6, 1)],
)
def test_dimensions(N, M, k, dim):
    assert tf.dim_cusp(N, M, k) == dim


def test_gamma0_dimension_from_character_side():
    trivial = enumerate_chars(1)[0]
    assert tf.trace_gamma0_chi(1, 11, 2, trivial) == 1
    assert tf.trace_gamma0_chi(1, 23, 2, trivial) == 2


def test_trace_decomposition():
    res = tf.trace_gamma_nm(5, 6, 2, 1, 4)
    assert res.total == res.identity_term - res.elliptic_term - res.hyperbolic_term + res.dual_term
    assert res.total.denominator == 1
    assert res.dual_term == 0  # only weight 2 carries the dual term
    assert tf.trace_gamma_nm(4, 3, 1, 1, 2).identity_term != 0


CASES = list(gammanm_cases(N_max=6, fields=(5, 7), weights=(2, 3, 4)))


@settings(max_examples=40)
@given(st.sampled_from(CASES))
def test_exact_engine_matches_character_sum(case):
    q, N, M, d, k = case
    assert tf.trace_gamma_nm(q, N, M, d, k).total == tf.gamma_nm_via_characters(q, N, M, d, k)


def test_hypotheses_enforced():
    with pytest.raises(HypothesisViolated):
        tf.trace_gamma_nm(5, 6, 4, 1, 2)  # M does not divide N
    with pytest.raises(HypothesisViolated):
        tf.trace_gamma_nm(5, 10, 1, 1, 2)  # q not coprime to N
    with pytest.raises(HypothesisViolated):
        tf.trace_gamma_nm(5, 6, 1, 2, 2)  # d not a unit
    with pytest.raises(HypothesisViolated):
        tf.trace_gamma_nm(7, 5, 5, 1, 2)  # 7 is not 1 mod 5
    with pytest.raises(HypothesisViolated):
        tf.T_family(6, 4, 5, 1, 2)
    assert tf.trace_gamma_nm(PInverse(5), 3, 1, 1, 2).total == 0
    assert tf.T_family(3, 1, PInverse(5), 1, 2) == 0


def test_round_trace_tolerance():
    assert tf.round_trace(complex(2.0000001, 0)) == 2
    assert tf.round_trace(complex(1 / 3 + 1e-8, -1e-8)) == Fraction(1, 3)
    with pytest.raises(ToleranceExceeded):
        tf.round_trace(complex(0.5, 1e-3))
    with pytest.raises(ToleranceExceeded):
        tf.round_trace(complex(0.04, 0))


def test_tau_oracle_range():
    with pytest.raises(ValueError):
        tf.ramanujan_tau(61)


def test_weight_two_trace_beyond_hasse():
    # no curve over F_p has a point of order ell once ell > (sqrt(p) + 1)^2
    for p in primerange(2, 30):
        for ell in primerange(3, 60):
            if ell > (sqrt(p) + 1) ** 2:
                assert tf.trace_gamma_nm(p, ell, 1, 1, 2).total == p + 1 - Fraction(ell - 1, 2)


def _middle_window():
    for p in primerange(2, 60):
        for ell in primerange(3, 90):
            if (sqrt(p) - 1) ** 2 < ell < (sqrt(p) + 1) ** 2 and p - ell not in (-1, 0, 1):
                yield p, ell


def test_weight_two_trace_counts_curves_of_order_ell():
    # exactly one multiple of ell in the Hasse interval: the curves with #E = ell
    checked = 0
    for p, ell in _middle_window():
        if 2 * ell <= (sqrt(p) + 1) ** 2:
            continue
        tr = tf.trace_gamma_nm(p, ell, 1, 1, 2).total
        rhs = -tr / (ell - 1) + Fraction(p + 1, ell - 1) - Fraction(1, 2)
        assert hurwitz_H((p + 1 - ell) ** 2 - 4 * p) == 2 * rhs
        checked += 1
    assert checked == 60


def test_unhalved_class_number_form_fails():
    p, ell = 5, 7
    tr = tf.trace_gamma_nm(p, ell, 1, 1, 2).total
    rhs = -tr / (ell - 1) + Fraction(p + 1, ell - 1) - Fraction(1, 2)
    assert hurwitz_H((p + 1 - ell) ** 2 - 4 * p) != rhs


def test_tau_multiplicative_in_series():
    assert tf.ramanujan_tau(6) == tf.ramanujan_tau(2) * tf.ramanujan_tau(3)


def test_character_side_level_one():
    trivial = enumerate_chars(1)[0]
    assert tf.trace_gamma0_chi(2, 1, 12, trivial) == -24
    assert tf.trace_gamma0_chi(2, 11, 2, trivial) == -2


def test_weight_two_level_one_cancels():
    for q in (2, 3, 4, 5, 7, 8, 9, 25, 49):
        res = tf.trace_gamma_nm(q, 1, 1, 1, 2)
        assert res.total == 0
        assert res.identity_term - res.elliptic_term - res.hyperbolic_term + res.dual_term == 0


TRACE_REQUESTS = [
    (q, N, M, k)
    for N in range(1, 13)
    for M in divisors(N)
    for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 25, 27, 49)
    for k in (2, 3, 4, 6, 8, 12)
    if gcd(q, N) == 1 and (q - 1) % M == 0
]


@settings(max_examples=120)
@given(st.sampled_from(TRACE_REQUESTS))
def test_integrality_and_deligne_envelope(req):
    q, N, M, k = req
    total = tf.trace_gamma_nm(q, N, M, 1, k).total
    assert total.denominator == 1
    dim = tf.dim_cusp(N, M, k)
    assert abs(total) <= dim * divisor_count(q) * q ** ((k - 1) / 2) + 1e-9
    if dim == 0:
        assert total == 0


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_genus_zero_levels_have_no_weight_two_forms(N):
    for M in divisors(N):
        assert tf.dim_cusp(N, M, 2) == 0
        for q in (5, 7, 11, 13):
            if gcd(q, N) == 1 and (q - 1) % M == 0:
                assert tf.trace_gamma_nm(q, N, M, 1, 2).total == 0


@pytest.mark.parametrize("n1, n2", [(2, 1), (3, 1), (4, 2), (6, 1)])
@pytest.mark.parametrize("q", [5, 7, 25])
def test_sigma_as_convolution_of_trace_families(n1, n2, q):
    ctx = ModClassContext(n1, n2, q)
    for k in (2, 3, 4, 6):
        conv = sum(
            (phi_hat(nu) * tf.T_family(n1, n2 * nu, q, 1, k) for nu in divisors(gcd(q - 1, n1) // n2)),
            Fraction(0),
        )
        assert Sigma(ctx, k) == conv / euler_phi(n1 // n2)


def test_full_level_dimension_bound():
    for N in range(1, 9):
        for k in range(2, 13):
            assert 12 * tf.dim_cusp(N, N, k) <= k * N**3
