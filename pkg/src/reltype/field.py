"""Exact coefficient fields: the rationals and prime fields GF(p)."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

try:  # gmpy2 rationals are several times faster than Fraction
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover
    _rational = Fraction

__all__ = ["Field", "QQ", "GF", "parse_field", "is_prime"]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field of characteristic 0 (QQ) or an odd prime p (GF(p)).

    Elements are plain Python ints in ``range(p)`` for prime fields and
    rationals for QQ.  Calling the field coerces ints, Fractions and strings.
    """

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and (p < 3 or not is_prime(p)):
            raise ValueError(f"characteristic must be 0 or an odd prime, got {p}")

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, value):
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value)
        if p:
            if isinstance(value, int):
                return value % p
            value = Fraction(value)
            return value.numerator * pow(value.denominator, -1, p) % p
        return _rational(value)

    def neg(self, a):
        return (-a) % self.characteristic if self.characteristic else -a

    def add(self, a, b):
        return (a + b) % self.characteristic if self.characteristic else a + b

    def sub(self, a, b):
        return (a - b) % self.characteristic if self.characteristic else a - b

    def mul(self, a, b):
        return a * b % self.characteristic if self.characteristic else a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        return pow(a, -1, p) if p else 1 / _rational(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        p = self.characteristic
        return pow(a, e, p) if p else a**e

    def to_signed(self, a):
        """Integer or Fraction representative; symmetric range for GF(p)."""
        p = self.characteristic
        if p:
            return a - p if a > p // 2 else int(a)
        a = Fraction(int(a.numerator), int(a.denominator))
        return a.numerator if a.denominator == 1 else a

    def __str__(self):
        return f"GF({self.characteristic})" if self.characteristic else "QQ"

    __repr__ = __str__


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


_FIELD_RE = re.compile(r"^\s*(?:(QQ|Q)|GF\(\s*(\d+)\s*\))\s*$")


def parse_field(spec: str) -> Field:
    """Parse ``QQ`` or ``GF(p)``."""
    m = _FIELD_RE.match(spec)
    if not m:
        raise ValueError(f"unrecognized field {spec!r}; expected QQ or GF(p)")
    return QQ if m.group(1) else Field(int(m.group(2)))
