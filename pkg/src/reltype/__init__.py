"""Relation type of Rees algebras via Groebner bases."""

from .field import GF, QQ, Field, parse_field
from .poly import DEGREVLEX, LEX, Polynomial, RingContext, RingMismatchError, TermOrder
from .parse import ParseError, parse_ideal, parse_polynomial, parse_ring
from .groebner import (
    GroebnerBasis,
    GroebnerIncomplete,
    buchberger,
    eliminate,
    ideal_contains,
    ideal_equal,
    ideal_intersect,
    ideal_member,
    ideal_quotient,
    is_groebner,
    normal_form,
)
from .blowup import (
    GrPresentation,
    PolyMatrix,
    ReesPresentation,
    RelationTypeReport,
    base_change,
    gr_presentation,
    is_linear_type,
    jacobian_dual,
    rees_ideal,
    relation_type,
    relation_type_cyclic,
    sym_ideal,
)

__version__ = "0.1.0"
