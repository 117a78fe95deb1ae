"""Buchberger's algorithm with the sugar strategy and Gebauer-Moeller criteria.

The engine packs every monomial into one Python int: the high bits hold the
rows of the order matrix, the low bits hold the exponents (8 bits each, top
bit a guard).  Integer comparison is then the term order, monomial product is
integer addition and divisibility is one subtraction and a mask.

:class:`GroebnerEngine` is incremental and can be truncated by a grading in
which all inputs are homogeneous; this is what the relation-type loop uses to
test membership degree by degree.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import kernels
from .poly import Polynomial, RingContext, TermOrder

__all__ = [
    "GroebnerIncomplete",
    "GroebnerBasis",
    "GroebnerEngine",
    "normal_form",
    "buchberger",
    "is_groebner",
    "eliminate",
    "elimination_order",
    "ideal_member",
    "ideal_contains",
    "ideal_equal",
    "ideal_intersect",
    "ideal_quotient",
    "DEFAULT_MAX_DEGREE",
    "DEFAULT_TIMEOUT",
]

DEFAULT_MAX_DEGREE = 40
DEFAULT_TIMEOUT = 60.0

_EXP_BITS = 8
_EXP_LIMIT = 1 << (_EXP_BITS - 1)


class GroebnerIncomplete(RuntimeError):
    """A computation hit its degree cap or timeout; ``partial`` holds the
    polynomials found so far (they lie in the ideal but need not form a
    Groebner basis)."""

    def __init__(self, reason: str, partial: list[Polynomial] | None = None):
        super().__init__(reason)
        self.reason = reason
        self.partial = partial or []


class _Encoder:
    def __init__(self, nvars: int, order: TermOrder):
        self.n = nvars
        rows = order.matrix(nvars)
        self.rows = rows
        top = max((max(r) for r in rows), default=1) * nvars * (2 * _EXP_LIMIT)
        self.width = top.bit_length() + 1
        self.low = _EXP_BITS * nvars
        self.pmask = (1 << self.low) - 1
        self.guard = sum(_EXP_LIMIT << (_EXP_BITS * i) for i in range(nvars))
        # each variable contributes a fixed int; encode is then a dot product
        nrows = len(rows)
        self.unit = []
        for i in range(nvars):
            key = 0
            for j, r in enumerate(rows):
                key |= r[i] << (self.width * (nrows - 1 - j))
            self.unit.append((key << self.low) | (1 << (_EXP_BITS * i)))

    def encode(self, exps: Sequence[int]) -> int:
        if any(a >= _EXP_LIMIT for a in exps):
            raise GroebnerIncomplete(f"exponent {max(exps)} exceeds the packed limit {_EXP_LIMIT - 1}")
        return sum(a * u for a, u in zip(exps, self.unit))

    def decode(self, m: int) -> tuple[int, ...]:
        return tuple((m >> (_EXP_BITS * i)) & 0xFF for i in range(self.n))

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((((b & self.pmask) | g) - (a & self.pmask)) & g) == g

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.decode(a), self.decode(b)
        return self.encode([x if x > y else y for x, y in zip(ea, eb)])

    def coprime(self, a: int, b: int) -> bool:
        ea, eb = self.decode(a), self.decode(b)
        return not any(x and y for x, y in zip(ea, eb))

    def overflowed(self, monos: Iterable[int]) -> bool:
        g = self.guard
        return any(m & g for m in monos)


class _GPoly:
    __slots__ = ("monos", "coeffs", "lm", "sugar", "tdeg")

    def __init__(self, monos, coeffs, sugar, tdeg):
        self.monos = monos
        self.coeffs = coeffs
        self.lm = monos[0]
        self.sugar = sugar
        self.tdeg = tdeg


@dataclass
class _Pair:
    i: int
    j: int
    lcm: int
    sugar: int
    tdeg: int
    total: int


class GroebnerEngine:
    """Incremental Buchberger engine over one ring and term order.

    ``sugar_weights``: positive weights for the sugar degree (default: all 1).
    ``trunc_weights``: nonnegative weights of a grading in which every added
    polynomial is homogeneous; :meth:`run` then accepts a degree bound and
    only processes S-pairs up to it, which suffices to decide membership for
    homogeneous elements of degree at most the bound.
    """

    def __init__(
        self,
        ring: RingContext,
        order: TermOrder | None = None,
        *,
        sugar_weights: Sequence[int] | None = None,
        trunc_weights: Sequence[int] | None = None,
        max_degree: int = DEFAULT_MAX_DEGREE,
        timeout: float | None = DEFAULT_TIMEOUT,
    ):
        self.ring = ring
        self.order = order or ring.order
        self.enc = _Encoder(ring.nvars, self.order)
        self.p = ring.field.characteristic
        self.F = ring.field
        n = ring.nvars
        self.sugar_w = tuple(sugar_weights) if sugar_weights else (1,) * n
        self.trunc_w = tuple(trunc_weights) if trunc_weights else None
        self.max_degree = max_degree
        self.timeout = timeout
        self._t0 = time.monotonic()
        self.polys: list[_GPoly] = []
        self.G: list[int] = []
        self.B: list[_Pair] = []
        self.pairs_reduced = 0
        self.zero_reductions = 0

    # conversion -----------------------------------------------------------

    def _wdeg(self, m: int, w) -> int:
        return sum(a * b for a, b in zip(self.enc.decode(m), w))

    def _tdeg(self, m: int) -> int:
        return self._wdeg(m, self.trunc_w) if self.trunc_w else 0

    def to_internal(self, f: Polynomial) -> tuple[list[int], list]:
        f = self.ring.coerce(f)
        enc = self.enc.encode
        pairs = sorted(((enc(e), c) for e, c in f._terms.items()), reverse=True)
        return [m for m, _ in pairs], [c for _, c in pairs]

    def to_polynomial(self, monos, coeffs) -> Polynomial:
        dec = self.enc.decode
        return Polynomial(self.ring, {dec(m): c for m, c in zip(monos, coeffs)}, _trusted=True)

    # reduction ------------------------------------------------------------

    def _reducer(self, m: int, active: Sequence[_GPoly]) -> _GPoly | None:
        divides = self.enc.divides
        for g in active:
            if divides(g.lm, m):
                return g
        return None

    def reduce(self, monos, coeffs, active: Sequence[_GPoly] | None = None, top_only=False):
        """Full (or top) reduction by the given monic polynomials."""
        if active is None:
            active = [self.polys[i] for i in self.G]
        sub_mul = kernels.sub_mul
        p = self.p
        rm, rc = [], []
        start = 0
        while start < len(monos):
            m = monos[start]
            g = self._reducer(m, active)
            if g is None:
                if top_only:
                    return monos, coeffs
                rm.append(m)
                rc.append(coeffs[start])
                start += 1
                continue
            monos, coeffs = sub_mul(monos, coeffs, start, g.monos, g.coeffs, m - g.lm, coeffs[start], p)
            start = 0
        return rm, rc

    def _monic(self, monos, coeffs):
        lc = coeffs[0]
        if lc == 1:
            return coeffs
        inv = self.F.inv(lc)
        if self.p:
            return [c * inv % self.p for c in coeffs]
        return [c * inv for c in coeffs]

    def _make(self, monos, coeffs, sugar=None) -> _GPoly:
        coeffs = self._monic(monos, coeffs)
        if sugar is None:
            sugar = max(self._wdeg(m, self.sugar_w) for m in monos)
        return _GPoly(monos, coeffs, sugar, self._tdeg(monos[0]))

    # public incremental interface ------------------------------------------

    def add(self, f: Polynomial | tuple) -> bool:
        """Add a generator; returns False if it reduces to zero."""
        monos, coeffs = f if isinstance(f, tuple) else self.to_internal(f)
        if not monos:
            return False
        if self.trunc_w is not None:
            degs = {self._tdeg(m) for m in monos}
            if len(degs) > 1:
                raise ValueError("generator is not homogeneous for the truncation grading")
        sugar = max(self._wdeg(m, self.sugar_w) for m in monos)
        monos, coeffs = self.reduce(monos, coeffs)
        if not monos:
            return False
        self._check(monos)
        self._insert(self._make(monos, coeffs, sugar))
        return True

    def _check(self, monos):
        if self.enc.overflowed(monos):
            raise GroebnerIncomplete("exponent overflow", self.current())
        if self.max_degree is not None:
            deg = max(sum(self.enc.decode(m)) for m in monos)
            if deg > self.max_degree:
                raise GroebnerIncomplete(
                    f"degree cap {self.max_degree} exceeded (degree {deg})", self.current()
                )

    def _insert(self, h: _GPoly):
        enc = self.enc
        hi = len(self.polys)
        self.polys.append(h)
        polys = self.polys
        hl = h.lm
        # Gebauer-Moeller: new pairs, chain criterion among them
        cand = []
        for gi in self.G:
            gl = polys[gi].lm
            cand.append((gi, enc.lcm(hl, gl), enc.coprime(hl, gl)))
        kept = []
        for idx, (gi, L, cop) in enumerate(cand):
            if cop:
                kept.append((gi, L, cop))
                continue
            dominated = False
            for gj, L2, _ in cand[idx + 1 :]:
                if enc.divides(L2, L):
                    dominated = True
                    break
            if not dominated:
                for gj, L2, _ in kept:
                    if enc.divides(L2, L):
                        dominated = True
                        break
            if not dominated:
                kept.append((gi, L, cop))
        # old pairs killed by the new leading monomial
        newB = []
        for pr in self.B:
            if enc.divides(hl, pr.lcm):
                l1 = enc.lcm(polys[pr.i].lm, hl)
                l2 = enc.lcm(polys[pr.j].lm, hl)
                if l1 != pr.lcm and l2 != pr.lcm:
                    continue
            newB.append(pr)
        for gi, L, cop in kept:
            if cop:
                continue
            g = polys[gi]
            s = max(h.sugar + self._wdeg(L - hl, self.sugar_w), g.sugar + self._wdeg(L - g.lm, self.sugar_w))
            newB.append(_Pair(gi, hi, L, s, self._tdeg(L), sum(enc.decode(L))))
        self.B = newB
        self.G = [gi for gi in self.G if not enc.divides(hl, polys[gi].lm)] + [hi]

    def run(self, bound: int | None = None) -> None:
        """Process S-pairs (those with truncation degree <= bound, if given)."""
        while True:
            eligible = [pr for pr in self.B if bound is None or pr.tdeg <= bound]
            if not eligible:
                break
            pr = min(eligible, key=lambda q: (q.sugar, q.lcm))
            self.B.remove(pr)
            if self.timeout is not None and time.monotonic() - self._t0 > self.timeout:
                self.B.append(pr)
                raise GroebnerIncomplete(f"timeout after {self.timeout} s", self.current())
            if self.max_degree is not None and pr.total > self.max_degree:
                self.B.append(pr)
                raise GroebnerIncomplete(
                    f"degree cap {self.max_degree} exceeded by an S-pair of degree {pr.total}",
                    self.current(),
                )
            f, g = self.polys[pr.i], self.polys[pr.j]
            sf = pr.lcm - f.lm
            monos = [m + sf for m in f.monos]
            monos, coeffs = kernels.sub_mul(monos, f.coeffs, 0, g.monos, g.coeffs, pr.lcm - g.lm, 1, self.p)
            self.pairs_reduced += 1
            monos, coeffs = self.reduce(monos, coeffs)
            if not monos:
                self.zero_reductions += 1
                continue
            self._check(monos)
            self._insert(self._make(monos, coeffs, pr.sugar))

    def normal_form(self, f: Polynomial) -> Polynomial:
        monos, coeffs = self.reduce(*self.to_internal(f))
        return self.to_polynomial(monos, coeffs)

    def contains(self, f: Polynomial) -> bool:
        monos, _ = self.reduce(*self.to_internal(f), top_only=True)
        return not monos

    def current(self) -> list[Polynomial]:
        return [self.to_polynomial(self.polys[i].monos, self.polys[i].coeffs) for i in self.G]

    def reduced_basis(self) -> list[Polynomial]:
        """Interreduced monic basis from the current generator set."""
        active = sorted((self.polys[i] for i in self.G), key=lambda g: g.lm)
        out = []
        for k, g in enumerate(active):
            others = active[:k] + active[k + 1 :]
            monos, coeffs = self.reduce(g.monos[1:], g.coeffs[1:], others)
            out.append(self.to_polynomial([g.lm] + monos, [g.coeffs[0]] + coeffs))
        return out


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis; generators sorted by ascending leading monomial.

    Over QQ generators are primitive integral with positive leading
    coefficient; over GF(p) they are monic.
    """

    generators: tuple[Polynomial, ...]
    order: TermOrder
    source: tuple[Polynomial, ...]
    ring: RingContext
    status: str = "exact"
    stats: dict = field(default_factory=dict, compare=False)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.generators, self.order)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()


def normal_form(p: Polynomial, basis: Sequence[Polynomial], order: TermOrder | None = None) -> Polynomial:
    """Remainder of multivariate division of ``p`` by ``basis``."""
    ring = p.ring
    basis = [ring.coerce(b) for b in basis]
    eng = GroebnerEngine(ring, order, max_degree=None, timeout=None)
    active = []
    for b in basis:
        if b:
            monos, coeffs = eng.to_internal(b)
            active.append(eng._make(monos, coeffs))
    monos, coeffs = eng.reduce(*eng.to_internal(p), active)
    return eng.to_polynomial(monos, coeffs)


def buchberger(
    gens: Sequence[Polynomial],
    order: TermOrder | None = None,
    *,
    ring: RingContext | None = None,
    sugar_weights: Sequence[int] | None = None,
    max_degree: int | None = DEFAULT_MAX_DEGREE,
    timeout: float | None = DEFAULT_TIMEOUT,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Raises :class:`GroebnerIncomplete` if the degree cap or timeout is hit.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    order = order or ring.order
    eng = GroebnerEngine(ring, order, sugar_weights=sugar_weights, max_degree=max_degree, timeout=timeout)
    src = tuple(ring.coerce(g) for g in gens)
    for g in src:
        eng.add(g)
    eng.run()
    basis = tuple(b.normalized() for b in eng.reduced_basis())
    return GroebnerBasis(
        basis, order, src, ring, "exact",
        {"pairs": eng.pairs_reduced, "zero_reductions": eng.zero_reductions},
    )


def is_groebner(polys: Sequence[Polynomial], order: TermOrder | None = None) -> bool:
    """Exhaustive Buchberger criterion: every S-polynomial reduces to zero.

    Uses no pair-elimination criteria, so it certifies a basis independently
    of the strategy that produced it.
    """
    polys = [p for p in polys if p]
    if not polys:
        return True
    ring = polys[0].ring
    eng = GroebnerEngine(ring, order, max_degree=None, timeout=None)
    gp = [eng._make(*eng.to_internal(p)) for p in polys]
    enc = eng.enc
    for a in range(len(gp)):
        for b in range(a + 1, len(gp)):
            f, g = gp[a], gp[b]
            L = enc.lcm(f.lm, g.lm)
            sf = L - f.lm
            monos = [m + sf for m in f.monos]
            monos, coeffs = kernels.sub_mul(monos, f.coeffs, 0, g.monos, g.coeffs, L - g.lm, 1, eng.p)
            monos, _ = eng.reduce(monos, coeffs, gp)
            if monos:
                return False
    return True


def elimination_order(ring: RingContext, drop: Iterable[int], weights: Sequence[int] | None = None) -> TermOrder:
    """Block order with the dropped variables first, degrevlex within blocks."""
    drop = sorted(set(drop))
    keep = [i for i in range(ring.nvars) if i not in drop]
    blocks = [b for b in (tuple(drop), tuple(keep)) if b]
    return TermOrder.block(*blocks, weights=weights)


def _indices(ring: RingContext, names) -> list[int]:
    return [n if isinstance(n, int) else ring.index(n) for n in names]


def eliminate(
    gens: Sequence[Polynomial],
    drop: Iterable,
    *,
    ring: RingContext | None = None,
    weights: Sequence[int] | None = None,
    sugar_weights: Sequence[int] | None = None,
    max_degree: int | None = DEFAULT_MAX_DEGREE,
    timeout: float | None = DEFAULT_TIMEOUT,
) -> list[Polynomial]:
    """Generators of the ideal intersected with the subring free of ``drop``."""
    gens = list(gens)
    ring = ring or gens[0].ring
    idx = _indices(ring, drop)
    order = elimination_order(ring, idx, weights)
    if not gens:
        return []
    gb = buchberger(gens, order, ring=ring, sugar_weights=sugar_weights, max_degree=max_degree, timeout=timeout)
    dropset = set(idx)
    return [g for g in gb.generators if not (g.variables_used() & dropset)]


def ideal_member(p: Polynomial, gens: Sequence[Polynomial], **kw) -> tuple[bool, GroebnerBasis]:
    """Membership test; the witness is the Groebner basis used."""
    ring = p.ring
    gb = buchberger(gens, ring=ring, **kw)
    return gb.contains(p), gb


def ideal_contains(big: Sequence[Polynomial], small: Sequence[Polynomial], *, ring=None, **kw) -> bool:
    small = [s for s in small if s]
    if not small:
        return True
    ring = ring or small[0].ring
    gb = buchberger(big, ring=ring, **kw)
    return all(gb.contains(s) for s in small)


def ideal_equal(a: Sequence[Polynomial], b: Sequence[Polynomial], *, ring=None, **kw) -> bool:
    return ideal_contains(a, b, ring=ring, **kw) and ideal_contains(b, a, ring=ring, **kw)


def _with_aux(ring: RingContext, name: str = "u") -> RingContext:
    while name in ring.variables:
        name += "_"
    return RingContext((name,) + ring.variables, ring.field)


def ideal_intersect(I: Sequence[Polynomial], J: Sequence[Polynomial], *, ring: RingContext | None = None, **kw) -> list[Polynomial]:
    """Generators of I cap J, by eliminating u from u*I + (1-u)*J."""
    I, J = list(I), list(J)
    ring = ring or (I + J)[0].ring
    if not I or not J:
        return []
    big = _with_aux(ring)
    u = big.gen(0)
    gens = [u * f.in_ring(big) for f in I] + [(1 - u) * g.in_ring(big) for g in J]
    out = eliminate(gens, [0], ring=big, **kw)
    return [g.in_ring(ring) for g in out]


def ideal_quotient(I: Sequence[Polynomial], f: Polynomial, **kw) -> list[Polynomial]:
    """Generators of the colon ideal (I : f)."""
    ring = f.ring
    if not f:
        return [ring.one]
    inter = ideal_intersect(list(I), [f], ring=ring, **kw)
    out = []
    for g in inter:
        q, r = _exact_divide(g, f)
        if r:
            raise ArithmeticError("intersection element not divisible by f")
        out.append(q)
    return out


def _exact_divide(g: Polynomial, f: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Division of g by the single polynomial f: (quotient, remainder)."""
    ring = g.ring
    F = ring.field
    lf_e, lf_c = f.leading_term()
    inv = F.inv(lf_c)
    q = {}
    rem = g
    out_rem = ring.zero
    while rem:
        e, c = rem.leading_term()
        if all(a >= b for a, b in zip(e, lf_e)):
            s = tuple(a - b for a, b in zip(e, lf_e))
            coef = F.mul(c, inv)
            q[s] = F.add(q.get(s, 0), coef)
            rem = rem - f.mul_monomial(s, coef)
        else:
            t = Polynomial(ring, {e: c}, _trusted=True)
            out_rem = out_rem + t
            rem = rem - t
    return Polynomial(ring, q), out_rem
