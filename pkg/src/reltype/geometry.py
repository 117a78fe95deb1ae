"""Example families: monomial algebras, point sets, nodal curves, space curves."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .blowup import PolyMatrix, RelationTypeReport, rees_ideal, relation_type
from .field import QQ, Field
from .groebner import GroebnerEngine, eliminate, ideal_intersect
from .poly import Polynomial, RingContext, monomials_of_degree

__all__ = [
    "PointP2",
    "ExampleInstance",
    "monomial_algebra_gens",
    "unbounded_family_gens",
    "point_ideal",
    "points_ideal",
    "six_points_instance",
    "nodal_curve_instance",
    "monomial_curve_instance",
    "minimal_homogeneous_generators",
    "rt_affine_scheme",
    "default_nodal_parameters",
    "random_point_set",
]


@dataclass(frozen=True)
class ExampleInstance:
    name: str
    ring: RingContext
    generators: tuple[Polynomial, ...]
    expected_rt: int | None = None
    provenance: str = ""
    conjecture: bool = False
    notes: str = ""
    matrices: dict = field(default_factory=dict, compare=False)


def _xring(nvars: int, field: Field, weights=None) -> RingContext:
    names = ["x", "y", "z"][:nvars] if nvars <= 3 else [f"x{i + 1}" for i in range(nvars)]
    return RingContext(tuple(names), field, weights=tuple(weights) if weights else None)


# ---------------------------------------------------------------------------
# monomial families


def monomial_algebra_gens(n: int, d: int, field: Field = QQ) -> ExampleInstance:
    """All degree-d monomials in n variables, in descending lex order."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    ring = _xring(n, field)
    gens = tuple(ring.monomial(e, 1) for e in monomials_of_degree(n, d))
    rt = 2 if n >= 2 and d >= 2 else 1
    return ExampleInstance(f"veronese_n{n}_d{d}", ring, gens, rt, "literature")


def unbounded_family_gens(d: int, field: Field = QQ) -> ExampleInstance:
    """The monomial family with relation type d/2 (d even) or (d+1)/2 (d odd)."""
    if d < 3:
        raise ValueError("need d >= 3")
    ring = RingContext(tuple(f"x{i + 1}" for i in range(d)), field)

    def mono(exps):
        return ring.monomial(exps, 1)

    def prod(idx, base=None):
        e = list(base or [0] * d)
        for i in idx:
            e[i - 1] += 1
        return e

    f = [
        mono(prod(range(3, d + 1), [2] + [0] * (d - 1))),
        mono(prod(range(2, d), [2] + [0] * (d - 1))),
    ]
    for j in range(2, d):
        f.append(mono(prod([i for i in range(2, d + 1) if i not in (j, j + 1)], [3] + [0] * (d - 1))))
    if d % 2:
        f.append(mono(prod(range(1, d + 1))))
        rt = (d + 1) // 2
    else:
        rt = d // 2
    return ExampleInstance(f"unbounded_d{d}", ring, tuple(f), rt, "literature")


# ---------------------------------------------------------------------------
# points in the projective plane


@dataclass(frozen=True, eq=False)
class PointP2:
    """Point [a : b : c] of the projective plane; equality is projective."""

    a: object
    b: object
    c: object

    def __post_init__(self):
        if not (self.a or self.b or self.c):
            raise ValueError("[0:0:0] is not a point")

    @property
    def coords(self) -> tuple:
        return (self.a, self.b, self.c)

    def normalized(self, field: Field = QQ) -> tuple:
        v = [field(c) for c in self.coords]
        piv = next(c for c in reversed(v) if c)
        inv = field.inv(piv)
        return tuple(field.mul(c, inv) for c in v)

    def __eq__(self, other):
        if not isinstance(other, PointP2):
            return NotImplemented
        u, v = self.coords, other.coords
        return all(Fraction(u[i]) * Fraction(v[j]) == Fraction(u[j]) * Fraction(v[i]) for i in range(3) for j in range(3))

    def __hash__(self):
        return hash(tuple(Fraction(c) for c in self.normalized()))


def _plane_ring(field: Field) -> RingContext:
    return RingContext(("x", "y", "z"), field)


def point_ideal(p: PointP2, ring: RingContext | None = None) -> list[Polynomial]:
    """Two independent linear forms cutting out p."""
    ring = ring or _plane_ring(QQ)
    x, y, z = (ring.gen(i) for i in range(3))
    F = ring.field
    a, b, c = (F(v) for v in p.coords)
    if F.characteristic and not (a or b or c):
        raise ValueError("point vanishes modulo p")
    if c:
        return [x.scale(c) - z.scale(a), y.scale(c) - z.scale(b)] if a else [x, y.scale(c) - z.scale(b)]
    if b:
        return [z, x.scale(b) - y.scale(a)]
    return [y, z]


def minimal_homogeneous_generators(gens: Sequence[Polynomial], ring: RingContext | None = None) -> list[Polynomial]:
    """Greedy minimal generating set of a homogeneous ideal (by degree)."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    ring = ring or gens[0].ring
    w = ring.weights or (1,) * ring.nvars
    weights = [0] * ring.nvars
    for i, wi in zip(ring.x_block, w):
        weights[i] = wi
    eng = GroebnerEngine(ring, ring.order, trunc_weights=weights, sugar_weights=[max(1, v) for v in weights], max_degree=None, timeout=None)
    key = ring.sort_key

    def deg(g):
        return g.degree_in(range(ring.nvars), weights)

    kept = []
    for g in sorted(gens, key=lambda g: (deg(g), len(g), key(g.leading_monomial()))):
        eng.run(deg(g))
        if eng.add(g):
            kept.append(g.normalized())
    return kept


def points_ideal(points: Sequence[PointP2], ring: RingContext | None = None) -> list[Polynomial]:
    """Minimal generators of the ideal of a finite point set."""
    ring = ring or _plane_ring(QQ)
    pts = list(points)
    if not pts:
        return [ring.one]
    F = ring.field
    seen = set()
    for p in pts:
        key = p.normalized(F)
        if key in seen:
            raise ValueError(f"duplicate point {p.coords}")
        seen.add(key)
    ideal = point_ideal(pts[0], ring)
    for p in pts[1:]:
        ideal = ideal_intersect(ideal, point_ideal(p, ring), ring=ring, max_degree=None, timeout=None)
        ideal = minimal_homogeneous_generators(ideal, ring)
    return minimal_homogeneous_generators(ideal, ring)


def six_points_instance(a1=2, a2=3, a3=5, field: Field = QQ) -> ExampleInstance:
    """Three collinear points on z = 0 plus three in general position.

    Returns the four cubics, ordered to match the syzygy matrix M whose
    columns are the T-linear relations.  Entry M[3][2] is -z: with +z the
    third column is not a syzygy.
    """
    F = field
    a = [F(v) for v in (a1, a2, a3)]
    if len(set(a)) != 3:
        raise ValueError("a1, a2, a3 must be distinct")
    for v in a:
        if v in (F(0), F(1), F(-1)):
            raise ValueError("a_i must avoid 0, 1 and -1")
    ring = _plane_ring(F)
    x, y, z = (ring.gen(i) for i in range(3))
    e1 = F.add(F.add(a[0], a[1]), a[2])
    e2 = F.add(F.add(F.mul(a[0], a[1]), F.mul(a[0], a[2])), F.mul(a[1], a[2]))
    e3 = F.mul(F.mul(a[0], a[1]), a[2])
    f = (
        y**2 * z - y * z**2,
        x * y * z,
        x**2 * z - x * z**2,
        x**3 - (x**2 * y).scale(e1) + (x * y**2).scale(e2) - (y**3).scale(e3) + (y * z**2).scale(e3) - x * z**2,
    )
    zero = ring.zero
    M = PolyMatrix(
        (
            (x, zero, -(y + z).scale(e3)),
            (z - y, x - z, y.scale(e2) - z.scale(e1)),
            (zero, -y, x - y.scale(e1) + z),
            (zero, zero, -z),
        )
    )
    points = [PointP2(v, 1, 0) for v in (a1, a2, a3)] + [PointP2(1, 0, 1), PointP2(0, 1, 1), PointP2(0, 0, 1)]
    return ExampleInstance(
        f"six_points_{a1}_{a2}_{a3}",
        ring,
        f,
        3,
        "literature",
        notes="three collinear points and three in general position",
        matrices={"M": M, "points": points, "e": (e1, e2, e3)},
    )


# ---------------------------------------------------------------------------
# canonical nodal curves


def _primes(count: int) -> list[int]:
    out, k = [], 2
    while len(out) < count:
        if all(k % q for q in out):
            out.append(k)
        k += 1
    return out


def default_nodal_parameters(g: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """a = first g primes, b = the next g primes; g = 3 gives (2,3,5), (7,11,13)."""
    pr = _primes(2 * g)
    return tuple(pr[:g]), tuple(pr[g:])


def nodal_curve_instance(g: int, a: Sequence | None = None, b: Sequence | None = None, field: Field = QQ) -> ExampleInstance:
    """f_i = prod_{j != i} Q_j with Q_i = (a_i x - y)(b_i x - y) in k[x, y]."""
    if g < 3:
        raise ValueError("genus must be at least 3")
    if a is None or b is None:
        da, db = default_nodal_parameters(g)
        a = da if a is None else a
        b = db if b is None else b
    if len(a) != g or len(b) != g:
        raise ValueError("need g values for a and for b")
    params = [field(v) for v in list(a) + list(b)]
    if len(set(params)) != 2 * g:
        raise ValueError("the 2g parameters must be distinct")
    ring = RingContext(("x", "y"), field)
    x, y = ring.gen(0), ring.gen(1)
    Q = [(x.scale(field(ai)) - y) * (x.scale(field(bi)) - y) for ai, bi in zip(a, b)]
    f = []
    for i in range(g):
        p = ring.one
        for j in range(g):
            if j != i:
                p = p * Q[j]
        f.append(p)
    zero = ring.zero
    rows = []
    for i in range(g - 1):
        rows.append(tuple(Q[i] if j == i else zero for j in range(g - 1)))
    rows.append(tuple(-Q[g - 1] for _ in range(g - 1)))
    expected = {3: 4, 4: 3}.get(g, 2)
    return ExampleInstance(
        f"nodal_g{g}",
        ring,
        tuple(f),
        expected,
        "literature",
        conjecture=g >= 5,
        notes="canonical nodal curve",
        matrices={"M": PolyMatrix(tuple(rows)), "Q": Q},
    )


# ---------------------------------------------------------------------------
# monomial space curves


def monomial_curve_instance(a: int, b: int, c: int, field: Field = QQ) -> ExampleInstance:
    """Ideal of the curve (t^a, t^b, t^c) in k[x, y, z] (weights a, b, c)."""
    if gcd(gcd(a, b), c) != 1:
        raise ValueError("exponents must be coprime")
    big = RingContext(("t", "x", "y", "z"), field)
    t, x, y, z = (big.gen(i) for i in range(4))
    gens = [x - t**a, y - t**b, z - t**c]
    ring = RingContext(("x", "y", "z"), field, weights=(a, b, c))
    elim = eliminate(gens, [0], ring=big, max_degree=None, timeout=None)
    ideal = minimal_homogeneous_generators([g.in_ring(ring) for g in elim], ring)
    return ExampleInstance(
        f"space_curve_{a}_{b}_{c}", ring, tuple(ideal), None, "computed",
        notes="relation type is 1 or at least 3",
    )


def rt_affine_scheme(ideal: Sequence[Polynomial], ring: RingContext | None = None, **kw) -> RelationTypeReport:
    """Relation type of the scheme cut out by ``ideal`` (affine cone for
    homogeneous ideals): the relation type of the ideal itself."""
    ideal = list(ideal)
    ring = ring or ideal[0].ring
    return relation_type(rees_ideal(ring, ideal, **kw), **kw)


def random_point_set(rng, field: Field, max_points: int = 6) -> list[PointP2]:
    """Distinct points of the plane, mixing general and special position.

    Special configurations put several points on one line, or use small
    coordinates so that coincidences such as collinear triples are common.
    """
    p = field.characteristic or 101
    count = rng.randint(1, max_points)
    mode = rng.choice(["general", "collinear", "small"])
    pts: list[PointP2] = []
    seen = set()

    def push(v):
        if not any(field(c) for c in v):
            return
        pt = PointP2(*v)
        key = pt.normalized(field)
        if key not in seen:
            seen.add(key)
            pts.append(pt)

    if mode == "collinear":
        # points u + s*v on the line through u and v
        u = [rng.randrange(p) for _ in range(3)]
        v = [rng.randrange(p) for _ in range(3)]
        on_line = rng.randint(3, max(3, count))
        for _ in range(50 * on_line):
            if len(pts) >= on_line:
                break
            s, t = rng.randrange(p), rng.randrange(p)
            push([(s * a + t * b) % p for a, b in zip(u, v)])
    while len(pts) < count:
        hi = 3 if mode == "small" else p
        push([rng.randrange(hi) for _ in range(3)])
    return pts
