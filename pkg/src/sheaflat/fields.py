"""Exact scalar arithmetic over the rationals and prime fields.

Rational scalars are ``gmpy2.mpq`` values (always reduced); prime-field
scalars are plain ints in ``[0, p)``. A :class:`Field` value carries the
operations so that matrix code can stay generic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpq

from .errors import SheafLatError


@dataclass(frozen=True)
class Field:
    """The field of scalars: rationals when ``p`` is None, else GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not gmpy2.is_prime(self.p):
            raise SheafLatError(f"{self.p} is not prime")

    @staticmethod
    def rationals() -> "Field":
        return Field(None)

    @staticmethod
    def prime(p: int) -> "Field":
        return Field(int(p))

    @property
    def is_rationals(self) -> bool:
        return self.p is None

    @property
    def zero(self):
        return mpq(0) if self.p is None else 0

    @property
    def one(self):
        return mpq(1) if self.p is None else 1

    def of(self, value):
        """Coerce an int, Fraction, mpq or 'a/b' string into a field scalar."""
        if isinstance(value, str):
            value = Fraction(value)
        if self.p is None:
            if isinstance(value, Fraction):
                return mpq(value.numerator, value.denominator)
            return mpq(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return int(value.numerator) * self.inv(int(value.denominator) % self.p) % self.p
        return int(value) % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / mpq(a) if self.p is None else pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_str(self, a) -> str:
        """Exact decimal-free rendering ('3', '-1/2', ...)."""
        return str(a)

    def __repr__(self):
        return "Q" if self.p is None else f"F{self.p}"


QQ = Field.rationals()
