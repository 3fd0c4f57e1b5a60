"""Exact coefficient fields: the rationals and prime fields Z/p.

Matrices store raw values (``Fraction`` for Q, ``int`` residues for Z/p) and
do arithmetic through the owning :class:`FieldSpec`.  :class:`Scalar` is the
public, field-tagged wrapper for callers that want checked arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RawValue = Union[Fraction, int]

PRIME_LIMIT = 2**31


class FieldMismatchError(ValueError):
    """Raised when values from two different fields are combined."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p is None``) or the prime field Z/p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or isinstance(self.p, bool):
                raise TypeError("prime must be an int")
            if not (1 < self.p < PRIME_LIMIT) or not is_prime(self.p):
                raise ValueError(f"{self.p} is not a prime below 2^31")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def zero(self) -> RawValue:
        return Fraction(0) if self.p is None else 0

    @property
    def one(self) -> RawValue:
        return Fraction(1) if self.p is None else 1

    # Raw arithmetic.  Inputs are assumed canonical for this field.

    def coerce(self, value) -> RawValue:
        """Map an int, Fraction or numeric string into this field."""
        if isinstance(value, str):
            value = Fraction(value.strip())
        if self.p is None:
            return Fraction(value)
        value = Fraction(value)
        num = value.numerator % self.p
        den = value.denominator % self.p
        if den == 0:
            raise ZeroDivisionError(f"denominator {value.denominator} vanishes mod {self.p}")
        return num * pow(den, -1, self.p) % self.p

    def add(self, a: RawValue, b: RawValue) -> RawValue:
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a: RawValue, b: RawValue) -> RawValue:
        return a - b if self.p is None else (a - b) % self.p

    def neg(self, a: RawValue) -> RawValue:
        return -a if self.p is None else (-a) % self.p

    def mul(self, a: RawValue, b: RawValue) -> RawValue:
        return a * b if self.p is None else a * b % self.p

    def inv(self, a: RawValue) -> RawValue:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p is None else pow(a, -1, self.p)

    def div(self, a: RawValue, b: RawValue) -> RawValue:
        return self.mul(a, self.inv(b))

    def format(self, a: RawValue) -> str:
        if self.p is None:
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(a)

    def random_element(self, rng: random.Random, bound: int = 5) -> RawValue:
        if self.p is None:
            return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        return rng.randrange(self.p)

    def random_nonzero(self, rng: random.Random, bound: int = 5) -> RawValue:
        while True:
            x = self.random_element(rng, bound)
            if x:
                return x

    def token(self) -> str:
        """Name used in the matrix interchange header."""
        return "q" if self.p is None else f"zp:{self.p}"

    @classmethod
    def from_token(cls, token: str) -> "FieldSpec":
        token = token.strip().lower()
        if token in ("q", "qq", "rationals"):
            return cls.rationals()
        if token.startswith("zp:"):
            return cls.prime(int(token[3:]))
        raise ValueError(f"unknown field {token!r}")

    def __str__(self) -> str:
        return "Q" if self.p is None else f"Z/{self.p}"


QQ = FieldSpec.rationals()
GF2 = FieldSpec.prime(2)


@dataclass(frozen=True)
class Scalar:
    """A field element that remembers its field.

    Rationals are kept as ``Fraction`` (lowest terms, positive denominator)
    and residues in ``[0, p)``, so ``==`` is structural equality.
    """

    field: FieldSpec
    value: RawValue

    @classmethod
    def of(cls, field: FieldSpec, value) -> "Scalar":
        return cls(field, field.coerce(value))

    def _check(self, other: "Scalar") -> None:
        if not isinstance(other, Scalar):
            raise TypeError(f"expected Scalar, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"cannot combine {self.field} with {other.field}")

    def __add__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.field, self.field.div(self.value, other.value))

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, self.field.neg(self.value))

    def __bool__(self) -> bool:
        return bool(self.value)

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __str__(self) -> str:
        return self.field.format(self.value)


def add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def neg(a: Scalar) -> Scalar:
    return -a


def inv(a: Scalar) -> Scalar:
    return a.inverse()
