import pytest

from reltype.field import GF, QQ
from reltype.parse import ParseError, parse_ideal, parse_polynomial, parse_ring


def test_parse_ring():
    R = parse_ring("QQ[x,y]")
    assert R.variables == ("x", "y") and R.field == QQ
    S = parse_ring("GF(32003)[x1, x2, x3]")
    assert S.field == GF(32003) and S.nvars == 3
    for bad in ["QQ", "RR[x]", "QQ[]", "QQ[x,1y]", "GF(4)[x]"]:
        with pytest.raises(ValueError):
            parse_ring(bad)


def test_grammar():
    R = parse_ring("QQ[x,y,z]")
    p = parse_polynomial("x^2*z - x*z^2", R)
    assert str(p) == "x^2*z - x*z^2"
    assert parse_polynomial("-(x+y)^2", R) == parse_polynomial("-x^2 - 2*x*y - y^2", R)
    assert parse_polynomial("3", R) == R.const(3)
    assert str(parse_polynomial("x/2", R)) == "1/2*x"


def test_implicit_multiplication_rejected_with_position():
    R = parse_ring("QQ[x,y]")
    with pytest.raises(ParseError) as info:
        parse_polynomial("2x + y", R)
    assert "implicit multiplication" in str(info.value)
    assert info.value.pos == 1
    with pytest.raises(ParseError):
        parse_polynomial("x y", R)
    with pytest.raises(ParseError):
        parse_polynomial("x(y+1)", R)


def test_errors():
    R = parse_ring("QQ[x,y]")
    for bad in ["", "x +", "x^y", "(x", "w", "x/y", "x/0", "x ** 2", "x^-1"]:
        with pytest.raises((ParseError, ZeroDivisionError)):
            parse_polynomial(bad, R)


def test_parse_ideal():
    R = parse_ring("QQ[x,y]")
    assert parse_ideal("", R) == []
    I = parse_ideal("x^2, x*y, (x+y)*(x-y)", R)
    assert len(I) == 3
    with pytest.raises(ParseError) as info:
        parse_ideal("x, 2y", R)
    assert info.value.pos == 4
