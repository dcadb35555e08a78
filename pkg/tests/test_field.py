import random
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from corelab.field import FieldError, FieldSpec, SmallFieldWarning, is_prime


def test_parse_roundtrip():
    assert FieldSpec.parse("q").is_rational
    F = FieldSpec.parse("p=32003")
    assert F.p == 32003 and str(F) == "p=32003"
    assert str(FieldSpec.parse("q")) == "q"


@pytest.mark.parametrize("bad", ["p=4", "p=1", "p=2", "r", "p=x", f"p={2**31 + 11}"])
def test_parse_rejects(bad):
    with pytest.raises(FieldError):
        FieldSpec.parse(bad)


def test_small_prime_warns():
    with pytest.warns(SmallFieldWarning):
        FieldSpec(7)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        FieldSpec(101)


def test_is_prime_small_table():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@given(st.integers(1, 32002))
def test_inverse_mod_p(a):
    F = FieldSpec(32003)
    assert F.reduce(a * F.inv(a)) == 1


@given(st.fractions().filter(bool))
def test_inverse_rational(a):
    F = FieldSpec(None)
    assert F.inv(a) * a == 1


def test_coercion_of_fractions():
    F = FieldSpec(7, warn=False)
    assert F("1/2") == 4
    assert F(Fraction(3, 2)) == F(3) * F.inv(2) % 7
    assert FieldSpec(None)("3/6") == Fraction(1, 2)


def test_random_elements_in_range():
    rng = random.Random(1)
    F = FieldSpec(32003)
    assert all(0 <= F.random_element(rng) < 32003 for _ in range(100))
    Q = FieldSpec(None)
    assert all(-50 <= Q.random_element(rng) <= 50 for _ in range(100))


def test_signed_representative():
    F = FieldSpec(32003)
    assert F.to_signed(32002) == -1
    assert F.to_signed(5) == 5
