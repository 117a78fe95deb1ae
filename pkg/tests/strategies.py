"""Hypothesis strategies for polynomials in small rings."""

from hypothesis import strategies as st

from reltype.field import GF, QQ
from reltype.poly import Polynomial, RingContext

FIELDS = [QQ, GF(32003), GF(5)]


def ring(names=("x", "y", "z"), field=QQ, T=0):
    tn = tuple(f"T{i + 1}" for i in range(T))
    n = len(names)
    return RingContext(tuple(names) + tn, field, T_block=tuple(range(n, n + T)))


def coefficients(field):
    if field.characteristic:
        return st.integers(-field.characteristic, field.characteristic)
    return st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def polynomials(draw, R, max_terms=5, max_exp=3):
    n = R.nvars
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_exp)] * n),
            coefficients(R.field),
            max_size=max_terms,
        )
    )
    return Polynomial(R, terms)
