"""Concrete parameter tuples (a, b, c_1..c_m) and their exponentials."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Tuple, Union

from .indexing import BinaryIndex

Param = Union[int, Fraction, float, complex]


def parse_param(text: str) -> Param:
    """``"p/q"`` or an integer gives an exact Fraction; anything else a float/complex."""
    text = text.strip()
    try:
        return Fraction(text) if "." not in text and "e" not in text.lower() else float(text)
    except ValueError:
        return complex(text.replace(" ", ""))


def is_exact_number(x) -> bool:
    return isinstance(x, (int, Fraction))


def unit_exponential(x: Param) -> complex:
    """exp(2 pi i x); exact rationals are reduced mod 1 first, so integers give exactly 1."""
    if is_exact_number(x):
        frac = Fraction(x) - math.floor(Fraction(x))
        if frac == 0:
            return 1 + 0j
        if frac == Fraction(1, 2):
            return -1 + 0j
        if frac == Fraction(1, 4):
            return 1j
        if frac == Fraction(3, 4):
            return -1j
        return cmath.exp(2j * math.pi * float(frac))
    return cmath.exp(2j * math.pi * complex(x))


@dataclass(frozen=True)
class ParameterPoint:
    a: Param
    b: Param
    c: Tuple[Param, ...]

    def __post_init__(self):
        c = tuple(self.c) if not isinstance(self.c, Number) else (self.c,)
        if not c:
            raise ValueError("need at least one c parameter (m >= 1)")
        norm = lambda x: Fraction(x) if isinstance(x, int) and not isinstance(x, bool) else x
        object.__setattr__(self, "a", norm(self.a))
        object.__setattr__(self, "b", norm(self.b))
        object.__setattr__(self, "c", tuple(norm(x) for x in c))

    @property
    def m(self) -> int:
        return len(self.c)

    @property
    def exact(self) -> bool:
        return all(is_exact_number(x) for x in (self.a, self.b) + self.c)

    @property
    def alpha(self) -> complex:
        return unit_exponential(self.a)

    @property
    def beta(self) -> complex:
        return unit_exponential(self.b)

    @property
    def gammas(self) -> Tuple[complex, ...]:
        return tuple(unit_exponential(x) for x in self.c)

    def generator_values(self):
        return [self.alpha, self.beta, *self.gammas]

    @property
    def lam(self) -> complex:
        """(-1)^(m-1) alpha^-1 beta^-1 prod gamma_k."""
        out = (-1) ** (self.m - 1) / (self.alpha * self.beta)
        for g in self.gammas:
            out *= g
        return out

    def lambda_exponent(self):
        """x with lambda = exp(2 pi i x): (m-1)/2 - a - b + sum c_k."""
        return Fraction(self.m - 1, 2) - self.a - self.b + sum(self.c)

    def shifted(self, index: BinaryIndex):
        """(a^I, b^I, c^I)."""
        if index.m != self.m:
            raise ValueError("index length does not match m")
        shift = sum(i * (1 - ck) for i, ck in zip(index.bits, self.c))
        c_shift = tuple(2 - ck if i else ck for i, ck in zip(index.bits, self.c))
        return self.a + shift, self.b + shift, c_shift

    def to_json(self):
        return {"a": str(self.a), "b": str(self.b), "c": [str(x) for x in self.c]}

    def __str__(self):
        return f"(a={self.a}, b={self.b}, c=({', '.join(str(x) for x in self.c)}))"
