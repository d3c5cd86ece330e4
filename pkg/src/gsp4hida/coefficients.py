"""Coefficient contexts: Z, Z/p^r and p-adically valued rationals.

p-adic numbers are exact ``Fraction`` values; a ``ValuedRationals``
context only records the precision budget p^precision to which results
are certified.  Nothing here ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ContextError

Scalar = Union[int, Fraction]

INTEGERS = "integers"
RESIDUE = "residue"
VALUED = "valued"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def valuation(x: Scalar, p: int) -> float | int:
    """Exact p-adic valuation; ``inf`` for zero."""
    if x == 0:
        return float("inf")
    x = Fraction(x)
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def is_integral(x: Scalar, p: int) -> bool:
    return Fraction(x).denominator % p != 0


def reduce_mod(x: Scalar, p: int, r: int) -> int:
    """Image of a p-integral rational in Z/p^r."""
    x = Fraction(x)
    n = p**r
    if x.denominator % p == 0:
        raise ValueError(f"{x} is not {p}-integral")
    return x.numerator * pow(x.denominator, -1, n) % n


@dataclass(frozen=True)
class CoefficientContext:
    """One of Integers, Residue(p, r) or ValuedRationals(p, precision)."""

    kind: str
    p: int | None = None
    r: int | None = None

    def __post_init__(self):
        if self.kind not in (INTEGERS, RESIDUE, VALUED):
            raise ContextError(f"unknown context kind {self.kind!r}")
        if self.kind != INTEGERS:
            if self.p is None or not is_prime(self.p) or self.p == 2:
                raise ContextError("p must be an odd prime")
            if self.r is None or self.r < 1:
                raise ContextError("level/precision must be a positive integer")

    @classmethod
    def integers(cls) -> "CoefficientContext":
        return cls(INTEGERS)

    @classmethod
    def residue(cls, p: int, r: int) -> "CoefficientContext":
        return cls(RESIDUE, p, r)

    @classmethod
    def valued(cls, p: int, precision: int) -> "CoefficientContext":
        return cls(VALUED, p, precision)

    @property
    def modulus(self) -> int | None:
        return self.p**self.r if self.kind == RESIDUE else None

    @property
    def precision(self) -> int | None:
        return self.r if self.kind == VALUED else None

    def normalize(self, x: Scalar) -> Scalar:
        if self.kind == RESIDUE:
            return reduce_mod(x, self.p, self.r)
        if self.kind == INTEGERS:
            x = Fraction(x)
            if x.denominator != 1:
                raise ContextError(f"{x} is not an integer")
            return int(x)
        return Fraction(x)

    def is_unit(self, x: Scalar) -> bool:
        if self.kind == INTEGERS:
            return x in (1, -1)
        if self.kind == RESIDUE:
            return x % self.p != 0
        return x != 0

    def inverse(self, x: Scalar) -> Scalar:
        if not self.is_unit(x):
            raise ZeroDivisionError(f"{x} is not invertible in {self}")
        if self.kind == RESIDUE:
            return pow(int(x), -1, self.modulus)
        if self.kind == INTEGERS:
            return int(x)
        return 1 / Fraction(x)

    def __str__(self) -> str:
        if self.kind == INTEGERS:
            return "Z"
        if self.kind == RESIDUE:
            return f"Z/{self.p}^{self.r}"
        return f"Q_{self.p}(prec {self.r})"
