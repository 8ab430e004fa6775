from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ellstat.arith import delta, euler_phi
from ellstat.dirichlet import MAX_MODULUS, char_orthogonality, character_group, enumerate_chars
from ellstat.errors import ModulusTooLarge

moduli = st.integers(1, 64)


def _units(N):
    return [a for a in range(1, N + 1) if gcd(a, N) == 1]


@given(moduli)
def test_character_count(N):
    chars = enumerate_chars(N)
    assert len(chars) == euler_phi(N)
    assert sum(chi.is_trivial for chi in chars) == 1


@given(moduli)
def test_values_are_roots_of_unity_and_multiplicative(N):
    units = _units(N)
    for chi in enumerate_chars(N):
        for a in units:
            assert abs(abs(chi(a)) - 1) < 1e-12
            assert abs(chi(a) ** chi.order - 1) < 1e-9
            for b in units[:6]:
                assert abs(chi(a * b) - chi(a) * chi(b)) < 1e-9
        if N > 1:
            assert chi(N) == 0


@given(moduli)
def test_orthogonality_over_elements(N):
    chars = enumerate_chars(N)
    for chi in chars:
        s = sum(chi(a) for a in _units(N))
        assert abs(s - (euler_phi(N) if chi.is_trivial else 0)) < 1e-8


@given(moduli, st.integers(0, 200))
def test_orthogonality_over_characters(N, a):
    s = sum(chi(a) for chi in enumerate_chars(N))
    assert abs(s - euler_phi(N) * delta(N, a, 1) * (gcd(a, N) == 1)) < 1e-8


@given(moduli)
def test_parity_and_conductor(N):
    for chi in enumerate_chars(N):
        assert chi.parity in (1, -1)
        assert abs(chi(-1) - chi.parity) < 1e-12
        f = chi.conductor
        assert N % f == 0
        # chi factors through (Z/f)^x and through no smaller modulus
        for a in _units(N):
            for b in _units(N):
                if (a - b) % f == 0:
                    assert chi.angle(a) == chi.angle(b)


def test_conductor_examples():
    assert sorted(chi.conductor for chi in enumerate_chars(8)) == [1, 4, 8, 8]
    assert sorted(chi.conductor for chi in enumerate_chars(9)) == [1, 3, 9, 9, 9, 9]
    assert sorted(chi.conductor for chi in enumerate_chars(12)) == [1, 3, 4, 12]


@given(st.integers(1, 40), st.integers(-100, 100), st.integers(2, 12))
def test_char_orthogonality_exact(N, d, k):
    if gcd(d, N) != 1:
        with pytest.raises(ValueError):
            char_orthogonality(N, d, k)
        return
    sign = 1 if k % 2 == 0 else -1
    assert char_orthogonality(N, d, k) == Fraction(delta(N, d, 1) + sign * delta(N, d, -1), 2)


def test_modulus_limits():
    with pytest.raises(ModulusTooLarge):
        character_group(MAX_MODULUS + 1)
    with pytest.raises(ValueError):
        character_group(0)


def test_small_modulus_examples():
    (chi,) = enumerate_chars(1)
    assert chi.is_trivial and chi.conductor == 1
    chars = enumerate_chars(5)
    assert sorted(chi.order for chi in chars) == [1, 2, 4, 4]
    assert sorted(chi.parity for chi in chars) == [-1, -1, 1, 1]


@given(st.integers(3, 80))
def test_parities_split_evenly(N):
    parities = [chi.parity for chi in enumerate_chars(N)]
    assert parities.count(1) == parities.count(-1)


def test_orthogonality_examples():
    assert char_orthogonality(5, 1, 2) == Fraction(1, 2)
    assert char_orthogonality(5, 4, 3) == Fraction(-1, 2)
    assert char_orthogonality(7, 3, 2) == char_orthogonality(7, 3, 3) == 0
