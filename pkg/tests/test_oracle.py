import pytest

from reltype.blowup import rees_ideal, relation_type
from reltype.field import GF, QQ
from reltype.groebner import ideal_contains
from reltype.oracle import OracleError, minimal_generator_bidegrees, rees_piece
from reltype.parse import parse_ideal, parse_ring

SCROLL_DIMS = {(0, 1): 0, (1, 1): 2, (2, 1): 4, (0, 2): 1, (1, 2): 6, (2, 2): 11}
KOSZUL_DIMS = {
    (0, 1): 0, (1, 1): 1, (2, 1): 2, (0, 2): 0, (1, 2): 2,
    (2, 2): 4, (0, 3): 0, (1, 3): 3, (2, 3): 6,
}


def gens(text, ring="QQ[x,y]"):
    return parse_ideal(text, parse_ring(ring))


def test_scroll_pieces():
    f = gens("x^2, x*y, y^2")
    (q,) = rees_piece(f, 0, 2)
    assert str(q.normalized()) == "T2^2 - T1*T3"
    lin = rees_piece(f, 1, 1)
    assert len(lin) == 2
    pres = rees_ideal(f[0].ring, f)
    assert ideal_contains(list(pres.Q), [q.in_ring(pres.ring) for q in lin])
    assert rees_piece(f, 0, 1) == []


@pytest.mark.parametrize("char", [None, 32003, 7])
@pytest.mark.parametrize("method", ["auto", "linear", "monomial"])
def test_scroll_table(char, method):
    t = minimal_generator_bidegrees(gens("x^2, x*y, y^2"), 4, 4, characteristic=char, method=method)
    assert t.generator_bidegrees() == [(0, 2), (1, 1), (1, 1)]
    assert {k: t.dims[k] for k in SCROLL_DIMS} == SCROLL_DIMS
    assert t.rt() == 2


@pytest.mark.parametrize("char", [None, 32003])
def test_koszul_table(char):
    t = minimal_generator_bidegrees(gens("x, y"), 2, 3, characteristic=char, method="linear")
    assert t.generator_bidegrees() == [(1, 1)]
    assert {k: t.dims[k] for k in KOSZUL_DIMS} == KOSZUL_DIMS
    assert t.rt_lower_bound() == 1


def test_principal_table_is_empty():
    t = minimal_generator_bidegrees(gens("x"), 3, 3)
    assert t.generator_bidegrees() == [] and t.rt() == 1


def test_counts_bounded_by_dims():
    t = minimal_generator_bidegrees(gens("x^2 - y^2, x*y"), 4, 4)
    for key, c in t.fresh.items():
        assert 0 <= c <= t.dims[key]


@pytest.mark.parametrize(
    "text",
    ["x^2, x*y, y^2", "x^2 - y^2, x*y", "x^3, x^2*y + y^3, x*y^2", "x^2 + x*y, y^2, x*y - y^2"],
)
def test_field_independence_and_gb_agreement(text):
    f = gens(text)
    qq = minimal_generator_bidegrees(f, 5, 4, method="linear")
    fp = minimal_generator_bidegrees(f, 5, 4, characteristic=32003, method="linear")
    assert qq.dims == fp.dims and qq.fresh == fp.fresh
    rep = relation_type(rees_ideal(f[0].ring, f))
    assert sorted(rep.bidegrees) == qq.generator_bidegrees()


def test_monotone_saturation():
    f = gens("x^3, y^3, x^2*y")
    small = minimal_generator_bidegrees(f, 4, 4)
    big = minimal_generator_bidegrees(f, 6, 6)
    assert small.generator_bidegrees() == big.generator_bidegrees()
    assert big.rt() == 3


def test_rejections():
    with pytest.raises(OracleError):
        minimal_generator_bidegrees(gens("x^2 + y, x*y"), 3, 3)
    with pytest.raises(OracleError):
        minimal_generator_bidegrees(gens("x^2, y"), 3, 3)
    with pytest.raises(OracleError):
        minimal_generator_bidegrees(gens("x/7, y"), 3, 3, characteristic=7)
    with pytest.raises(OracleError):
        minimal_generator_bidegrees(gens("x^2 - y^2, x*y"), 3, 3, method="monomial")
    with pytest.raises(OracleError):
        minimal_generator_bidegrees(gens("x, y"), 3, 0)
    R = parse_ring("QQ[x,y]")
    base = R.with_base_ideal(gens("x^3"))
    with pytest.raises(OracleError):
        minimal_generator_bidegrees([base.gen(0)], 2, 2)
