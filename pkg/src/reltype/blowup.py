"""Rees algebras, symmetric algebras, associated graded rings, relation type.

For an ideal I = (f_1, ..., f_m) of R = k[x]/a the Rees ideal Q is the kernel
of k[x, T] -> R[t], T_i -> f_i t (modulo a).  It is computed by eliminating t
from (T_i - t f_i) + a.  Q is graded by T-degree, and the relation type is
the largest T-degree of a minimal homogeneous generator of Q.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .groebner import (
    DEFAULT_MAX_DEGREE,
    DEFAULT_TIMEOUT,
    GroebnerEngine,
    GroebnerIncomplete,
    buchberger,
    eliminate,
    ideal_equal,
    ideal_quotient,
)
from .poly import Polynomial, RingContext, TermOrder

__all__ = [
    "ReesPresentation",
    "RelationTypeReport",
    "Certificate",
    "GrPresentation",
    "PolyMatrix",
    "rees_ring",
    "rees_ideal",
    "relation_type",
    "relation_type_cyclic",
    "sym_ideal",
    "is_linear_type",
    "gr_presentation",
    "base_change",
    "jacobian_dual",
    "syzygy_matrix",
    "is_syzygy_matrix",
]


@dataclass(frozen=True)
class ReesPresentation:
    """Generators of the Rees ideal of (f) over ``base``.

    ``ring`` is k[x, T_1..T_m] carrying the base ideal; every element of
    ``Q`` is T-homogeneous of T-degree at least one.
    """

    base: RingContext
    generators: tuple[Polynomial, ...]
    ring: RingContext
    Q: tuple[Polynomial, ...]
    status: str = "exact"
    reason: str | None = None
    timings_ms: dict = field(default_factory=dict, compare=False)

    @property
    def exact(self) -> bool:
        return self.status == "exact"

    @property
    def T(self) -> list[Polynomial]:
        return [self.ring.gen(i) for i in self.ring.T_block]

    def x_weights(self) -> tuple[int, ...]:
        return self.base.weights or (1,) * len(self.base.x_block)

    def generator_degrees(self) -> list[int] | None:
        """x-degrees of the f_i if all are homogeneous (zero f_i get None)."""
        w = self.x_weights()
        xs = self.base.x_block
        degs = []
        for f in self.generators:
            if not f:
                degs.append(None)
            elif f.is_homogeneous_in(xs, w):
                degs.append(f.degree_in(xs, w))
            else:
                return None
        return degs

    def is_homogeneous(self) -> bool:
        degs = self.generator_degrees()
        if degs is None or any(d == 0 for d in degs):
            return False
        w = self.x_weights()
        return all(a.is_homogeneous_in(self.base.x_block, w) for a in self.base.base_ideal)

    def is_equigenerated(self) -> bool:
        degs = self.generator_degrees()
        return self.is_homogeneous() and len({d for d in degs if d is not None}) <= 1

    def substitution_check(self) -> bool:
        """Every element of Q vanishes under T_i -> t f_i modulo the base ideal."""
        names = self.base.variables + ("_t",)
        big = RingContext(names, self.base.field)
        t = big.gen(len(names) - 1)
        images = {}
        for k, i in enumerate(self.ring.T_block):
            images[i] = t * self.generators[k].in_ring(big)
        base = [a.in_ring(big) for a in self.base.base_ideal]
        gb = buchberger(base, ring=big) if base else None
        for q in self.Q:
            img = q.substitute(images, big)
            if gb is None:
                if img:
                    return False
            elif not gb.contains(img):
                return False
        return True


@dataclass(frozen=True)
class Certificate:
    """Outcome of testing one generator against the lower-degree ideal.

    ``member`` generators reduce to zero modulo the basis of the retained
    generators (of ``basis_size`` elements, complete through ``degree``);
    survivors carry their nonzero normal form ``remainder``.
    """

    generator: Polynomial
    member: bool
    remainder: Polynomial
    degree: int
    basis_size: int


@dataclass(frozen=True)
class RelationTypeReport:
    rt: int
    exact: bool
    generators: tuple[Polynomial, ...]
    t_degrees: tuple[int, ...]
    bidegrees: tuple[tuple[int, int], ...] | None
    certificates: tuple[Certificate, ...]
    reason: str | None = None
    timings_ms: dict = field(default_factory=dict, compare=False)

    @property
    def x_degrees(self) -> tuple[int, ...] | None:
        return None if self.bidegrees is None else tuple(d for d, _ in self.bidegrees)


@dataclass(frozen=True)
class GrPresentation:
    """Defining ideal of gr_I(R) over R/I, as generators in k[x, T] taken
    modulo the base ideal of ``ring`` (which is a + I)."""

    ring: RingContext
    generators: tuple[Polynomial, ...]
    rt_gr: int
    t_degrees: tuple[int, ...]
    exact: bool = True


# ---------------------------------------------------------------------------
# Rees ideal


def _fresh_names(taken: Sequence[str], stem: str, count: int) -> list[str]:
    taken = set(taken)
    for sep in ("", "_", "__"):
        names = [f"{stem}{sep}{i + 1}" for i in range(count)]
        if not taken.intersection(names):
            return names
    raise ValueError(f"cannot find free names for {stem}")


def rees_ring(base: RingContext, m: int, T_weights: Sequence[int] | None = None) -> RingContext:
    """k[x, T_1..T_m] with the base ideal of ``base`` carried along."""
    tnames = _fresh_names(base.variables, "T", m)
    xs = list(base.x_block)
    names = tuple(base.variables[i] for i in xs) + tuple(tnames)
    n = len(xs)
    if T_weights is not None:
        w = tuple(base.weights or (1,) * n) + tuple(max(1, d) for d in T_weights)
        order = TermOrder("degrevlex", weights=w)
    else:
        order = TermOrder("degrevlex")
    ring = RingContext(
        names,
        base.field,
        order,
        x_block=tuple(range(n)),
        T_block=tuple(range(n, n + m)),
        weights=base.weights,
    )
    return ring.with_base_ideal([a.in_ring(ring) for a in base.base_ideal])


def rees_ideal(
    base: RingContext,
    f: Sequence[Polynomial],
    *,
    max_degree: int | None = DEFAULT_MAX_DEGREE,
    timeout: float | None = DEFAULT_TIMEOUT,
) -> ReesPresentation:
    """Rees ideal of (f) over ``base`` by eliminating t from (T_i - t f_i) + a."""
    t0 = time.perf_counter()
    f = tuple(base.coerce(g) for g in f)
    xs = set(base.x_block)
    for g in f:
        if g.variables_used() - xs:
            raise ValueError("Rees generators must involve only x-variables")
    m = len(f)
    w = base.weights or (1,) * len(base.x_block)
    homogeneous = all(g.is_homogeneous_in(base.x_block, w) for g in f if g)
    degs = [g.degree_in(base.x_block, w) if g else 1 for g in f]
    ring = rees_ring(base, m, degs if homogeneous else None)
    if m == 0:
        return ReesPresentation(base, f, ring, (), "exact", None, {"rees": 0.0})

    # elimination ring: t first, then x, then T
    tname = "t"
    while tname in ring.variables:
        tname += "_"
    names = (tname,) + ring.variables
    big = RingContext(names, base.field)
    t = big.gen(0)
    gens = []
    for k, i in enumerate(ring.T_block):
        gens.append(big.gen(i + 1) - t * f[k].in_ring(big))
    gens += [a.in_ring(big) for a in base.base_ideal]
    if homogeneous:
        xw = tuple(w)
        order_w = (1,) + xw + tuple(max(1, d) for d in degs)
        sugar_w = (1,) + xw + tuple(d + 1 for d in degs)
    else:
        order_w = None
        sugar_w = None
    status, reason = "exact", None
    try:
        elim = eliminate(
            gens, [0], ring=big, weights=order_w, sugar_weights=sugar_w,
            max_degree=max_degree, timeout=timeout,
        )
    except GroebnerIncomplete as exc:
        status, reason = "degree-capped", exc.reason
        elim = [g for g in exc.partial if not g.as_dict() or all(e[0] == 0 for e in g.as_dict())]
    Q = []
    seen = set()
    for g in elim:
        g = g.in_ring(ring)
        for comp in g.t_homogeneous_components():
            if comp.t_degree() < 1:
                continue
            comp = comp.normalized()
            if comp not in seen:
                seen.add(comp)
                Q.append(comp)
    Q.sort(key=lambda q: (q.t_degree(), q.total_degree(), str(q)))
    return ReesPresentation(
        base, f, ring, tuple(Q), status, reason,
        {"rees": (time.perf_counter() - t0) * 1000.0},
    )


# ---------------------------------------------------------------------------
# graded minimal generators


def _grading(pres: ReesPresentation, extra_base: Sequence[Polynomial] = ()):
    """Grading used to extract minimal generators.

    Homogeneous input: x weighted as in the base ring, T_i weighted by
    deg f_i (positive, so minimal generating sets are canonical).
    Otherwise the T-degree alone.
    """
    ring = pres.ring
    nx = len(ring.x_block)
    xw = pres.x_weights()
    if pres.is_homogeneous() and all(
        a.is_homogeneous_in(ring.x_block, xw) for a in extra_base if a
    ):
        degs = pres.generator_degrees()
        return tuple(xw) + tuple(1 if d is None else d for d in degs), True
    return (0,) * nx + (1,) * len(ring.T_block), False


def _greedy_minimal(
    ring: RingContext,
    gens: Sequence[Polynomial],
    base: Sequence[Polynomial],
    grading: Sequence[int],
    positive: bool,
    *,
    max_degree=DEFAULT_MAX_DEGREE,
    timeout=DEFAULT_TIMEOUT,
):
    """Scan generators by increasing degree, keeping those not in the ideal
    of the base and the generators kept so far.

    Returns (kept, certificates).  The engine is truncated at the current
    degree, which is exact because everything is homogeneous for ``grading``.
    """
    sugar = tuple(grading) if positive else None
    eng = GroebnerEngine(
        ring, ring.order, sugar_weights=sugar, trunc_weights=grading,
        max_degree=max_degree, timeout=timeout,
    )

    def deg(p):
        return max(sum(a * w for a, w in zip(e, grading)) for e in p.as_dict())

    key = ring.sort_key
    for b in base:
        if b:
            eng.add(b)
    ordered = sorted(
        (g for g in gens if g),
        key=lambda g: (deg(g), g.t_degree(), len(g), key(g.leading_monomial())),
    )
    kept: list[Polynomial] = []
    certs: list[Certificate] = []
    current = None
    for g in ordered:
        d = deg(g)
        if d != current:
            eng.run(d)
            current = d
        monos, coeffs = eng.reduce(*eng.to_internal(g))
        rem = eng.to_polynomial(monos, coeffs)
        size = len(eng.G)
        if monos:
            kept.append(g)
            eng.add((monos, coeffs))
            eng.run(d)
            certs.append(Certificate(g, False, rem, d, size))
        else:
            certs.append(Certificate(g, True, rem, d, size))
    return kept, certs


def relation_type(
    pres: ReesPresentation,
    *,
    max_degree: int | None = DEFAULT_MAX_DEGREE,
    timeout: float | None = DEFAULT_TIMEOUT,
) -> RelationTypeReport:
    """Relation type of the Rees algebra: the top T-degree of a minimal
    homogeneous generating set of Q (1 when Q = 0)."""
    t0 = time.perf_counter()
    grading, positive = _grading(pres)
    exact = pres.exact
    reason = pres.reason
    try:
        kept, certs = _greedy_minimal(
            pres.ring, pres.Q, pres.ring.base_ideal, grading, positive,
            max_degree=max_degree, timeout=timeout,
        )
    except GroebnerIncomplete as exc:
        # fall back to the raw generator list: an upper-bound-free lower bound
        kept, certs = list(pres.Q), []
        exact, reason = False, exc.reason
    tdeg = tuple(g.t_degree() for g in kept)
    rt = max((1,) + tdeg)
    bideg = None
    if positive and pres.is_equigenerated():
        bideg = tuple(sorted((g.x_degree(), g.t_degree()) for g in kept))
    return RelationTypeReport(
        rt, exact, tuple(kept), tuple(sorted(tdeg)), bideg, tuple(certs), reason,
        {"relation_type": (time.perf_counter() - t0) * 1000.0, **pres.timings_ms},
    )


def sym_ideal(pres: ReesPresentation) -> list[Polynomial]:
    """Minimal T-degree-one generators of Q: the symmetric-algebra relations."""
    grading, positive = _grading(pres)
    linear = [q for q in pres.Q if q.t_degree() == 1]
    kept, _ = _greedy_minimal(pres.ring, linear, pres.ring.base_ideal, grading, positive)
    return kept


def is_linear_type(pres: ReesPresentation) -> bool:
    """True iff Q is generated by its T-degree-one part (plus the base ideal)."""
    ring = pres.ring
    nx = len(ring.x_block)
    grading = (0,) * nx + (1,) * len(ring.T_block)
    eng = GroebnerEngine(ring, ring.order, trunc_weights=grading, max_degree=None, timeout=None)
    for a in ring.base_ideal:
        eng.add(a)
    for q in sym_ideal(pres):
        eng.add(q)
    top = max((q.t_degree() for q in pres.Q), default=1)
    eng.run(top)
    return all(eng.contains(q) for q in pres.Q)


def base_change(pres: ReesPresentation, extra: Sequence[Polynomial], **kw) -> GrPresentation:
    """Presentation of A (x)_R R/b for the Rees algebra A and b = (extra).

    The defining ideal is the image of Q in (R/(a + b))[T]; its minimal
    generators are found by the same graded scan with base ideal a + b.
    """
    ring = pres.ring
    extra = [g.in_ring(ring) for g in extra if g]
    base = list(ring.base_ideal) + extra
    new_ring = ring.with_base_ideal(base)
    grading, positive = _grading(pres, extra)
    kept, _ = _greedy_minimal(new_ring, pres.Q, base, grading, positive, **kw)
    tdeg = tuple(sorted(g.t_degree() for g in kept))
    return GrPresentation(new_ring, tuple(kept), max((1,) + tdeg), tdeg, pres.exact)


def gr_presentation(pres: ReesPresentation, **kw) -> GrPresentation:
    """Defining ideal of gr_I(R) = R[It]/I R[It] over R/I and its relation type.

    This is the base change of the Rees algebra along R -> R/I.
    """
    return base_change(pres, pres.generators, **kw)


# ---------------------------------------------------------------------------
# cyclic algebras


def relation_type_cyclic(base: RingContext, f: Polynomial, *, max_steps: int = 64, **kw) -> int:
    """Least n >= 1 with (0 : f^(n+1)) = (0 : f^n) in base = k[x]/a."""
    f = base.coerce(f)
    a = base.base_ideal
    if not a:
        return 1

    def ann(n):
        return ideal_quotient(a, f**n, **kw) or [base.zero]

    prev = ann(1)
    for n in range(1, max_steps + 1):
        nxt = ann(n + 1)
        if ideal_equal(prev, nxt, ring=base, **kw):
            return n
        prev = nxt
    raise GroebnerIncomplete(f"annihilator chain did not stabilize within {max_steps} steps")


# ---------------------------------------------------------------------------
# matrices and Jacobian duals


@dataclass(frozen=True)
class PolyMatrix:
    entries: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        if len({len(r) for r in rows}) != 1:
            raise ValueError("matrix must be rectangular")
        ring = rows[0][0].ring
        if not all(e.ring.same_ring(ring) for r in rows for e in r):
            raise ValueError("all entries must share one ring")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows, ring: RingContext | None = None) -> "PolyMatrix":
        if ring is None:
            ring = next(e.ring for r in rows for e in r if isinstance(e, Polynomial))
        return cls(tuple(tuple(ring.coerce(e) for e in r) for r in rows))

    @property
    def ring(self) -> RingContext:
        return self.entries[0][0].ring

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j) -> list[Polynomial]:
        return [r[j] for r in self.entries]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(tuple(zip(*self.entries)))

    def det(self) -> Polynomial:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return _det([list(r) for r in self.entries], self.ring)

    def __str__(self):
        cells = [[str(e) for e in r] for r in self.entries]
        width = [max(len(r[j]) for r in cells) for j in range(self.cols)]
        return "\n".join("[ " + "  ".join(c.rjust(w) for c, w in zip(r, width)) + " ]" for r in cells)

    def to_lists(self) -> list[list[str]]:
        return [[str(e) for e in r] for r in self.entries]


def _det(m, ring):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = ring.zero
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * _det(minor, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def _var_indices(ring, names):
    return [v if isinstance(v, int) else ring.index(v) for v in names]


def jacobian_dual(
    M: PolyMatrix,
    xvars: Sequence,
    Tvars: Sequence,
    ring: RingContext | None = None,
) -> PolyMatrix:
    """Matrix B(M) of T-linear forms with T . M = x . B(M).

    Entries of M must be linear forms in ``xvars`` with constant coefficients.
    ``ring`` must contain both variable sets (default: the ring of M).
    """
    ring = ring or M.ring
    xi = _var_indices(ring, xvars)
    ti = _var_indices(ring, Tvars)
    if M.rows != len(ti):
        raise ValueError(f"M has {M.rows} rows but {len(ti)} T-variables were given")
    B = [[ring.zero for _ in range(M.cols)] for _ in xi]
    for i in range(M.rows):
        for j in range(M.cols):
            entry = M[i, j].in_ring(ring)
            for e, c in entry.as_dict().items():
                support = [v for v, a in enumerate(e) if a]
                if len(support) != 1 or e[support[0]] != 1 or support[0] not in xi:
                    raise ValueError(f"entry M[{i},{j}] = {entry} is not linear in the x-variables")
                k = xi.index(support[0])
                B[k][j] = B[k][j] + ring.gen(ti[i]).scale(c)
    T = [ring.gen(i) for i in ti]
    X = [ring.gen(i) for i in xi]
    for j in range(M.cols):
        lhs = ring.zero
        for i in range(M.rows):
            lhs = lhs + T[i] * M[i, j].in_ring(ring)
        rhs = ring.zero
        for k in range(len(xi)):
            rhs = rhs + X[k] * B[k][j]
        assert lhs == rhs, "T.M = x.B(M) failed"
    return PolyMatrix(tuple(tuple(r) for r in B))


def syzygy_matrix(pres: ReesPresentation) -> PolyMatrix:
    """Columns are the coefficient vectors of the minimal T-linear relations."""
    linear = sym_ideal(pres)
    if not linear:
        raise ValueError("the generators have no syzygies")
    ring = pres.ring
    xring = ring
    cols = []
    for q in linear:
        col = []
        for i in ring.T_block:
            part = {}
            for e, c in q.as_dict().items():
                if e[i] == 1:
                    ne = list(e)
                    ne[i] = 0
                    part[tuple(ne)] = c
            col.append(Polynomial(xring, part))
        cols.append(col)
    return PolyMatrix(tuple(zip(*cols)))


def is_syzygy_matrix(f: Sequence[Polynomial], M: PolyMatrix) -> bool:
    ring = M.ring
    for j in range(M.cols):
        s = ring.zero
        for i in range(M.rows):
            s = s + f[i].in_ring(ring) * M[i, j]
        if s:
            return False
    return True
