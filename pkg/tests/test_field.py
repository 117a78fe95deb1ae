from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reltype.field import GF, QQ, Field, is_prime, parse_field


def test_characteristic_validation():
    with pytest.raises(ValueError):
        Field(2)
    with pytest.raises(ValueError):
        Field(9)
    assert GF(32003).characteristic == 32003
    assert QQ.characteristic == 0


def test_parse_field():
    assert parse_field("QQ") == QQ
    assert parse_field("GF(7)") == GF(7)
    assert parse_field(" GF( 32003 ) ") == GF(32003)
    with pytest.raises(ValueError):
        parse_field("RR")
    with pytest.raises(ValueError):
        parse_field("GF(8)")


def test_prime_field_arithmetic():
    F = GF(5)
    assert F.add(3, 2) == 0
    assert F.mul(3, 4) == 2
    assert F.inv(2) == 3
    assert F(Fraction(1, 2)) == 3
    assert F("-1") == 4
    assert F.to_signed(4) == -1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_rationals_are_exact():
    a = QQ(Fraction(1, 3))
    assert QQ.add(a, a) + a == 1
    assert QQ.to_signed(QQ(Fraction(6, 3))) == 2
    assert QQ.to_signed(QQ("3/4")) == Fraction(3, 4)


@given(st.integers(3, 200).filter(is_prime), st.integers(1, 10**6))
def test_inverse_mod_p(p, a):
    F = GF(p)
    a = F(a)
    if a:
        assert F.mul(a, F.inv(a)) == 1
