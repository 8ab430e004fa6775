from collections import Counter
from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
import ellstat.census as cz
from ellstat.arith import prime_power
from ellstat.chebyshev import U
from ellstat.classnum import GroupSpec
from ellstat.errors import CeilingExceeded, NotPrime, SingularModel
from ellstat.ffield import make_field

SMALL = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 25, 27, 32]


def expected_class_count(q):
    p, v = prime_power(q)
    if p == 2:
        return 2 * q + (1 if v % 2 else 5)
    if p == 3:
        return 2 * q + (2 if v % 2 else 4)
    return 2 * q + {1: 6, 5: 2, 7: 4, 11: 0}[q % 12]


@pytest.mark.parametrize("q", SMALL + [37, 41, 49, 121, 125])
def test_mass_and_class_count(q):
    table = cz.census(q)
    assert sum(cz.weight(table, c) for c in table.classes) == 1
    assert len(table.classes) == expected_class_count(q)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 11, 13])
def test_weights_by_trace_and_exponent_match_brute_force(q):
    want = oracles.weighted_traces(q, with_exponent=True)
    got = Counter()
    for c in cz.census(q).classes:
        got[(c.t, c.n1)] += Fraction(1, c.aut_count)
    assert dict(got) == dict(want)


@pytest.mark.parametrize("q", SMALL)
def test_class_invariants_are_consistent(q):
    for c in cz.census(q).classes:
        assert c.t * c.t <= 4 * q
        assert c.n1 * c.n2 == c.npoints == q + 1 - c.t
        assert c.n1 % c.n2 == 0
        assert (q - 1) % c.n2 == 0
        assert cz.point_count(c.rep) == c.npoints
        assert cz.group_structure(c.rep) == (c.n1, c.n2)


@pytest.mark.parametrize("q", [5, 7, 8, 9, 25])
def test_enumeration_is_deterministic(q):
    table = cz.census(q)
    assert cz.dump_census(cz.enumerate_census(q)) == cz.dump_census(table)
    keys = [c.sort_key() for c in table.classes]
    assert keys == sorted(keys)


def test_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("ELLSTAT_CACHE", str(tmp_path))
    table = cz.enumerate_census(9)
    path = cz.save_census(table)
    assert path.parent == tmp_path
    assert path.name == "census_p3_v2_m" + "".join(map(str, make_field(3, 2).modulus)) + ".json"
    assert cz.load_census(path) == table
    cz.census.cache_clear()
    try:
        assert cz.census(9, use_disk=True) == table
    finally:
        cz.census.cache_clear()


@pytest.mark.parametrize("q", SMALL)
def test_odd_moments_vanish(q):
    table = cz.census(q)
    for R in (1, 3, 5):
        assert cz.expect(table, lambda c: c.t**R) == 0


@pytest.mark.parametrize("q", SMALL)
def test_second_moment(q):
    assert cz.expect(cz.census(q), lambda c: c.t**2) == Fraction(q * q - 1, q)


@given(st.sampled_from([4, 5, 7, 9, 11]), st.integers(1, 4), st.sampled_from([(1, 1), (2, 1), (2, 2), (3, 1), (4, 2)]))
def test_extension_expect_matches_power_sums(q, r, A):
    table = cz.census(q)
    spec = GroupSpec(*A)

    def points_over_extension(c):
        # Frobenius power sums: s_r = t s_{r-1} - q s_{r-2}
        s = [2, c.t]
        for _ in range(r - 1):
            s.append(c.t * s[-1] - q * s[-2])
        return q**r + 1 - s[r]

    want = cz.expect(table, lambda c: points_over_extension(c) * cz.phi_A(c, spec))
    assert cz.extension_expect(table, spec, r) == want


def test_singular_model_rejected():
    spec = make_field(7, 1)
    cusp = cz.CurveModel.from_coeffs(spec, [0, 0, 0, 0, 0])
    with pytest.raises(SingularModel):
        cz.point_count(cusp)
    with pytest.raises(SingularModel):
        cz.group_structure(cusp)


def test_invalid_fields():
    with pytest.raises(NotPrime):
        cz.census(12)
    with pytest.raises(CeilingExceeded):
        cz.census(64)
    with pytest.raises(CeilingExceeded):
        cz.enumerate_census(1031)


def test_sample_class():
    table = cz.census(5)
    row = [c for c in table.classes if c.t == -4]
    assert [(c.npoints, c.n1, c.n2) for c in row] == [(10, 10, 1)]


def test_hasse_extremes_for_square_fields():
    # t = +-2 sqrt(q) occurs only for supersingular curves
    for q in (4, 9, 25, 49):
        r = isqrt(q)
        ts = {c.t for c in cz.census(q).classes}
        assert {2 * r, -2 * r} <= ts
        assert all(c.is_supersingular for c in cz.census(q).classes if abs(c.t) == 2 * r)


def test_point_count_examples():
    f5 = make_field(5, 1)
    e1 = cz.CurveModel.from_coeffs(f5, [0, 0, 0, 1, 0])  # y^2 = x^3 + x
    assert cz.point_count(e1) == 4
    assert cz.group_structure(e1) == (2, 2)
    e2 = cz.CurveModel.from_coeffs(f5, [0, 0, 0, 0, 1])  # y^2 = x^3 + 1
    assert cz.point_count(e2) == 6
    assert cz.group_structure(e2) == (6, 1)


def test_phi_indicator_examples():
    table = cz.census(7)
    for c in table.classes:
        assert cz.phi_A(c, GroupSpec(1, 1)) == 1
        want = int(c.n1 % 2 == 0 and c.n2 % 2 == 0)
        assert cz.phi_A(c, GroupSpec(2, 2)) == want


@pytest.mark.parametrize("q", [q for q in SMALL if q >= 5])
def test_quadratic_excess(q):
    table = cz.census(q)
    assert cz.extension_expect(table, GroupSpec(1, 1), 1) == q + 1
    assert cz.extension_expect(table, GroupSpec(1, 1), 2) >= q * q + q


@pytest.mark.parametrize("q", SMALL)
def test_trivial_chebyshev_bound(q):
    table = cz.census(q)
    for n1, n2 in [(1, 1), (2, 1), (2, 2), (3, 1), (4, 2), (5, 1)]:
        A = GroupSpec(n1, n2)
        for k in range(2, 9):
            val = cz.expect(table, lambda c: U(k - 2, c.t, q) * cz.phi_A(c, A))
            assert abs(float(val)) <= q ** (k / 2 - 1) * (1 + 1e-12)


@pytest.mark.parametrize("q", [q for q in SMALL if prime_power(q)[0] > 3])
def test_automorphism_counts(q):
    for c in cz.census(q).classes:
        assert c.aut_count in (2, 4, 6)
