"""Sparse multivariate polynomials over QQ and GF(p).

A :class:`RingContext` fixes the variables, the coefficient field, the term
order and the block structure used by the Rees-algebra code (an ``x`` block
for the base ring, a ``T`` block for the presentation variables and an
optional auxiliary block).  :class:`Polynomial` values are immutable maps from
exponent tuples to nonzero coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .field import QQ, Field

__all__ = [
    "TermOrder",
    "DEGREVLEX",
    "LEX",
    "RingContext",
    "Polynomial",
    "RingMismatchError",
    "monomials_of_degree",
]

Exps = tuple[int, ...]


class RingMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class TermOrder:
    """Monomial order given as a nonnegative integer weight matrix.

    ``kind`` is ``"degrevlex"``, ``"lex"`` or ``"block"``.  A block order
    compares the blocks in sequence, each with (weighted) degrevlex, so any
    monomial involving a variable of the first block beats every monomial free
    of it.  ``weights`` are optional positive per-variable degree weights used
    by the degrevlex parts.
    """

    kind: str = "degrevlex"
    blocks: tuple[tuple[int, ...], ...] = ()
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown term order {self.kind!r}")
        if self.kind == "block" and not self.blocks:
            raise ValueError("block order needs at least one block")
        if self.weights is not None and any(w <= 0 for w in self.weights):
            raise ValueError("order weights must be positive")

    @staticmethod
    def block(*blocks: Sequence[int], weights: Sequence[int] | None = None) -> "TermOrder":
        return TermOrder(
            "block",
            tuple(tuple(b) for b in blocks),
            None if weights is None else tuple(weights),
        )

    def matrix(self, nvars: int) -> list[list[int]]:
        """Rows of a nonsingular nonnegative matrix realizing the order."""
        w = self.weights or (1,) * nvars
        if len(w) != nvars:
            raise ValueError("order weights do not match the variable count")
        if self.kind == "lex":
            return [[int(i == j) for j in range(nvars)] for i in range(nvars)]
        blocks = self.blocks if self.kind == "block" else (tuple(range(nvars)),)
        seen = sorted(i for b in blocks for i in b)
        if seen != list(range(nvars)):
            raise ValueError("order blocks must partition the variables")
        rows = []
        for b in blocks:
            # prefix sums P_k, P_{k-1}, ..., P_1 realize (weighted) degrevlex
            for k in range(len(b), 0, -1):
                row = [0] * nvars
                for i in b[:k]:
                    row[i] = w[i]
                rows.append(row)
        return rows

    def key_function(self, nvars: int):
        rows = self.matrix(nvars)
        supports = [[(j, c) for j, c in enumerate(r) if c] for r in rows]

        def key(exps: Exps) -> tuple[int, ...]:
            return tuple(sum(c * exps[j] for j, c in s) for s in supports)

        return key


DEGREVLEX = TermOrder("degrevlex")
LEX = TermOrder("lex")


def monomials_of_degree(nvars: int, d: int) -> list[Exps]:
    """All exponent vectors of total degree ``d``, lexicographically descending."""
    if nvars == 0:
        return [()] if d == 0 else []
    if nvars == 1:
        return [(d,)]
    out = []
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - a):
            out.append((a,) + rest)
    return out


@dataclass(frozen=True)
class RingContext:
    """Polynomial ring k[variables] with block roles and an optional base ideal.

    ``x_block``, ``T_block`` and ``aux_block`` hold variable indices.  The
    base ideal lives in the x-variables and is stored as canonical term tuples
    so that the context stays hashable; use :attr:`base_ideal` to read it.
    """

    variables: tuple[str, ...]
    field: Field = QQ
    order: TermOrder = DEGREVLEX
    x_block: tuple[int, ...] | None = None
    T_block: tuple[int, ...] = ()
    aux_block: tuple[int, ...] = ()
    base_terms: tuple = ()
    weights: tuple[int, ...] | None = None
    _cache: dict = dc_field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        names = tuple(self.variables)
        object.__setattr__(self, "variables", names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        if self.x_block is None:
            rest = set(self.T_block) | set(self.aux_block)
            object.__setattr__(self, "x_block", tuple(i for i in range(len(names)) if i not in rest))
        if self.weights is not None and len(self.weights) != len(self.x_block):
            raise ValueError("weights must match the x-block")

    # construction -------------------------------------------------------

    @classmethod
    def polynomial_ring(cls, names: Iterable[str], field: Field = QQ, order: TermOrder = DEGREVLEX) -> "RingContext":
        return cls(tuple(names), field, order)

    def with_base_ideal(self, gens: Iterable["Polynomial"]) -> "RingContext":
        xs = set(self.x_block)
        terms = []
        for g in gens:
            g = self.coerce(g)
            if any(e[i] for e, _ in g._terms.items() for i in range(self.nvars) if i not in xs):
                raise ValueError("base ideal generators must involve only x-variables")
            if g:
                terms.append(tuple(sorted(g._terms.items())))
        return replace(self, base_terms=tuple(terms), _cache={})

    def with_order(self, order: TermOrder) -> "RingContext":
        return replace(self, order=order, _cache={})

    def with_field(self, field: Field) -> "RingContext":
        old = self.field
        terms = tuple(
            tuple((e, field(old.to_signed(c))) for e, c in g) for g in self.base_terms
        )
        return replace(self, field=field, base_terms=terms, _cache={})

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def base_ideal(self) -> list["Polynomial"]:
        return [Polynomial(self, dict(t)) for t in self.base_terms]

    def same_ring(self, other: "RingContext") -> bool:
        return (
            self is other
            or (self.variables == other.variables and self.field == other.field)
        )

    @property
    def sort_key(self):
        k = self._cache.get("key")
        if k is None:
            k = self._cache["key"] = self.order.key_function(self.nvars)
        return k

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    # element constructors -------------------------------------------------

    def gen(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one}, _trusted=True)

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {}, _trusted=True)

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {}, _trusted=True)

    @property
    def one(self) -> "Polynomial":
        return self.const(1)

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): coeff})

    def coerce(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring is self:
                return value
            if not self.same_ring(value.ring):
                raise RingMismatchError(
                    f"polynomial from {value.ring.variables} used in {self.variables}"
                )
            return Polynomial(self, value._terms, _trusted=True)
        if isinstance(value, (int, Fraction)) or type(value).__name__ == "mpq":
            return self.const(value)
        if isinstance(value, str):
            from .parse import parse_polynomial

            return parse_polynomial(value, self)
        raise TypeError(f"cannot coerce {type(value).__name__} into a polynomial")

    def __str__(self):
        return f"{self.field}[{','.join(self.variables)}]"


class Polynomial:
    """Immutable sparse polynomial in a :class:`RingContext`."""

    __slots__ = ("ring", "_terms", "__weakref__")

    def __init__(self, ring: RingContext, terms: Mapping[Exps, object] | None = None, _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self._terms = dict(terms) if terms else {}
            return
        F = ring.field
        n = ring.nvars
        clean: dict[Exps, object] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(a) for a in e)
            if len(e) != n or any(a < 0 for a in e):
                raise ValueError(f"bad exponent vector {e} for {n} variables")
            c = F(c)
            if e in clean:
                c = F.add(clean[e], c)
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        self._terms = clean

    # basic protocol -------------------------------------------------------

    def terms(self) -> list[tuple[Exps, object]]:
        """Terms in canonical order: descending under the ring's term order."""
        key = self.ring.sort_key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def as_dict(self) -> dict[Exps, object]:
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring.same_ring(other.ring) and self._terms == other._terms
        try:
            return self._terms == self.ring.coerce(other)._terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # arithmetic -----------------------------------------------------------

    def _other(self, other) -> "Polynomial":
        return self.ring.coerce(other)

    def __add__(self, other):
        other = self._other(other)
        F = self.ring.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = F.add(out[e], c) if e in out else c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {e: F.neg(c) for e, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        other = self._other(other)
        F = self.ring.field
        p = F.characteristic
        out: dict[Exps, object] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return Polynomial(self.ring, out, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result, base = self.ring.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        c = F(c)
        if not c:
            return self.ring.zero
        return Polynomial(self.ring, {e: F.mul(a, c) for e, a in self._terms.items()}, _trusted=True)

    def mul_monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        F = self.ring.field
        coeff = F(coeff)
        if not coeff:
            return self.ring.zero
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, exps)): F.mul(c, coeff) for e, c in self._terms.items()},
            _trusted=True,
        )

    # degrees and gradings -------------------------------------------------

    def degree_in(self, indices: Iterable[int], weights: Sequence[int] | None = None) -> int:
        """Maximal weighted degree in the given variables (-1 for zero)."""
        idx = list(indices)
        w = weights or [1] * len(idx)
        if not self._terms:
            return -1
        return max(sum(wi * e[i] for i, wi in zip(idx, w)) for e in self._terms)

    def total_degree(self) -> int:
        return self.degree_in(range(self.ring.nvars))

    def t_degree(self) -> int:
        return self.degree_in(self.ring.T_block)

    def x_degree(self) -> int:
        return self.degree_in(self.ring.x_block, self.ring.weights)

    def is_homogeneous_in(self, indices: Iterable[int], weights: Sequence[int] | None = None) -> bool:
        idx = list(indices)
        w = weights or [1] * len(idx)
        return len({sum(wi * e[i] for i, wi in zip(idx, w)) for e in self._terms}) <= 1

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        return self.is_homogeneous_in(range(self.ring.nvars), weights)

    def is_t_homogeneous(self) -> bool:
        return self.is_homogeneous_in(self.ring.T_block)

    def t_homogeneous_components(self) -> list["Polynomial"]:
        """Split by total T-degree, in increasing T-degree."""
        parts: dict[int, dict] = {}
        T = self.ring.T_block
        for e, c in self._terms.items():
            parts.setdefault(sum(e[i] for i in T), {})[e] = c
        return [Polynomial(self.ring, parts[d], _trusted=True) for d in sorted(parts)]

    def variables_used(self) -> set[int]:
        return {i for e in self._terms for i, a in enumerate(e) if a}

    # leading data ----------------------------------------------------------

    def leading_term(self) -> tuple[Exps, object]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        key = self.ring.sort_key
        e = max(self._terms, key=key)
        return e, self._terms[e]

    def leading_monomial(self) -> Exps:
        return self.leading_term()[0]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    def normalized(self) -> "Polynomial":
        """Canonical associate: monic over GF(p), primitive integral with
        positive leading coefficient over QQ."""
        if not self._terms or self.ring.field.is_prime_field:
            return self.monic()
        from math import gcd, lcm

        fr = [Fraction(int(c.numerator), int(c.denominator)) for c in self._terms.values()]
        den = 1
        for f in fr:
            den = lcm(den, f.denominator)
        num = 0
        for f in fr:
            num = gcd(num, f.numerator * (den // f.denominator))
        scale = Fraction(den, num)
        if self.leading_coefficient() < 0:
            scale = -scale
        return self.scale(scale)

    # substitution ----------------------------------------------------------

    def substitute(self, images: Mapping[int, "Polynomial"], target: RingContext | None = None) -> "Polynomial":
        """Ring map sending variable ``i`` to ``images[i]``; unmapped variables
        go to the variable of the same name in ``target``."""
        target = target or self.ring
        gens = []
        for i, name in enumerate(self.ring.variables):
            if i in images:
                gens.append(target.coerce(images[i]))
            else:
                gens.append(target.gen(name))
        result = target.zero
        F = target.field
        cache: dict[tuple[int, int], Polynomial] = {}
        for e, c in self._terms.items():
            term = target.const(F(c) if F != self.ring.field else c)
            for i, a in enumerate(e):
                if a:
                    pw = cache.get((i, a))
                    if pw is None:
                        pw = cache[(i, a)] = gens[i] ** a
                    term = term * pw
            result = result + term
        return result

    def in_ring(self, ring: RingContext) -> "Polynomial":
        """Re-home into a ring containing all variables used here, by name."""
        if ring.same_ring(self.ring) and ring.variables == self.ring.variables:
            return Polynomial(ring, self._terms, _trusted=True)
        pos = []
        for i, name in enumerate(self.ring.variables):
            pos.append(ring.variables.index(name) if name in ring.variables else None)
        out = {}
        for e, c in self._terms.items():
            ne = [0] * ring.nvars
            for i, a in enumerate(e):
                if a:
                    if pos[i] is None:
                        raise RingMismatchError(f"variable {self.ring.variables[i]} not in target ring")
                    ne[pos[i]] = a
            out[tuple(ne)] = c if ring.field == self.ring.field else ring.field(self.ring.field.to_signed(c))
        return Polynomial(ring, out)

    # printing ---------------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        F = self.ring.field
        names = self.ring.variables
        parts = []
        for e, c in self.terms():
            c = F.to_signed(c)
            neg = c < 0
            c = -c if neg else c
            factors = []
            for name, a in zip(names, e):
                if a == 1:
                    factors.append(name)
                elif a:
                    factors.append(f"{name}^{a}")
            mono = "*".join(factors)
            if isinstance(c, Fraction):
                cs = f"{c.numerator}/{c.denominator}"
            else:
                cs = str(c)
            if not mono:
                body = cs
            elif c == 1:
                body = mono
            else:
                body = f"{cs}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"
