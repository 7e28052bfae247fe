"""Coefficient field C(alpha, beta, gamma_1..gamma_m) with its inversion involution.

Two interchangeable backings:

* :class:`ExactScalar` -- a rational function over Q.  The numerator is a
  Laurent polynomial; the denominator is kept as a product of normalized
  polynomial factors with multiplicities.  No gcd is ever computed; factors are
  cancelled only by trial division, and equality is decided by expanding the
  difference over a common denominator.
* :class:`PairedNumericScalar` -- complex values at a point ``p`` and at the
  inverted point ``p^v``.  Arithmetic is componentwise and ``dualize`` swaps
  the components, which is sound because the involution is a field map.

Variables are ordered ``alpha, beta, gamma_1, ..., gamma_m``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from numbers import Complex
from typing import Dict, Optional, Sequence

from .polynomial import LaurentPoly

DEFAULT_EPS = 1e-9


class DenominatorVanishes(ZeroDivisionError):
    """A denominator is zero (or numerically below epsilon) at the requested point."""


def variable_names(m: int):
    return ["a", "b"] + [f"g{k}" for k in range(1, m + 1)]


# --------------------------------------------------------------------------
# exact backing
# --------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _factor_power(f: LaurentPoly, k: int) -> LaurentPoly:
    return f ** k


def _expand(den: Dict[LaurentPoly, int], nvars: int) -> LaurentPoly:
    out = LaurentPoly.constant(1, nvars)
    for f in sorted(den, key=LaurentPoly.key):
        out = out * _factor_power(f, den[f])
    return out


class ExactScalar:
    """Element of Q(alpha, beta, gamma) as numerator / factored denominator."""

    __slots__ = ("num", "den", "m")

    def __init__(self, num: LaurentPoly, den: Optional[Dict[LaurentPoly, int]] = None, m: Optional[int] = None):
        self.num = num
        self.den = {} if den is None or num.is_zero() else den
        self.m = num.nvars - 2 if m is None else m

    @property
    def nvars(self):
        return self.m + 2

    # construction helpers ------------------------------------------------
    def _coerce(self, other) -> "ExactScalar":
        if isinstance(other, ExactScalar):
            if other.m != self.m:
                raise ValueError(f"cannot mix scalars for m={self.m} and m={other.m}")
            return other
        if isinstance(other, (int, Fraction)):
            return ExactScalar(LaurentPoly.constant(other, self.nvars), m=self.m)
        return NotImplemented

    @staticmethod
    def _from_division(num: LaurentPoly, den_poly: LaurentPoly, den: Dict[LaurentPoly, int], m: int) -> "ExactScalar":
        """Build ``num / (den_poly * prod(den))`` with ``den_poly`` normalized into a factor."""
        c, u, f = den_poly.split_content()
        num = num.shift([-x for x in u])
        if c != 1:
            num = num.scale(Fraction(1) / Fraction(c))
        den = dict(den)
        if not f.is_constant():
            den[f] = den.get(f, 0) + 1
        return ExactScalar._cancel(num, den, m)

    @staticmethod
    def _cancel(num: LaurentPoly, den: Dict[LaurentPoly, int], m: int) -> "ExactScalar":
        if num.is_zero():
            return ExactScalar(num, {}, m)
        if den and len(num) > 1:
            den = dict(den)
            for f in sorted(den, key=LaurentPoly.key):
                while den[f]:
                    q = num.exact_quotient(f)
                    if q is None:
                        break
                    num = q
                    den[f] -= 1
                if not den[f]:
                    del den[f]
        return ExactScalar(num, den, m)

    # field operations ----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return ExactScalar._cancel(self.num + other.num, self.den, self.m)
        lcm = dict(self.den)
        for f, k in other.den.items():
            if lcm.get(f, 0) < k:
                lcm[f] = k
        n1 = self.num * _expand({f: k - self.den.get(f, 0) for f, k in lcm.items() if k > self.den.get(f, 0)}, self.nvars)
        n2 = other.num * _expand({f: k - other.den.get(f, 0) for f, k in lcm.items() if k > other.den.get(f, 0)}, self.nvars)
        return ExactScalar._cancel(n1 + n2, lcm, self.m)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.num, self.den, self.m)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return ExactScalar(LaurentPoly({}, self.nvars), {}, self.m)
        den = dict(self.den)
        for f, k in other.den.items():
            den[f] = den.get(f, 0) + k
        return ExactScalar._cancel(self.num * other.num, den, self.m)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if self.num.is_zero():
            raise DenominatorVanishes("inverse of the zero scalar")
        return ExactScalar._from_division(_expand(self.den, self.nvars), self.num, {}, self.m)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise DenominatorVanishes("division by the zero scalar")
        num = self.num * _expand(other.den, self.nvars)
        return ExactScalar._from_division(num, other.num, self.den, self.m)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if self.num.is_monomial():
            return ExactScalar(self.num ** k, {f: e * k for f, e in self.den.items()}, self.m)
        out = ExactScalar(LaurentPoly.constant(1, self.nvars), None, self.m)
        for _ in range(k):
            out = out * self
        return out

    # involution and predicates -------------------------------------------
    def dualize(self) -> "ExactScalar":
        num = self.num.dual()
        den: Dict[LaurentPoly, int] = {}
        for f, k in self.den.items():
            c, u, g = f.dual().split_content()
            # f^v = c x^u g, so 1/f^v = c^-1 x^-u / g
            num = num.shift([-k * x for x in u])
            if c != 1:
                num = num.scale(Fraction(1) / Fraction(c) ** k)
            den[g] = den.get(g, 0) + k
        return ExactScalar._cancel(num, den, self.m)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).is_zero()

    __hash__ = None

    @property
    def numerator(self) -> LaurentPoly:
        return self.num

    @property
    def denominator(self) -> LaurentPoly:
        return _expand(self.den, self.nvars)

    def evaluate(self, values, eps: float = DEFAULT_EPS):
        """Evaluate at ``values = (alpha, beta, gamma_1, ..., gamma_m)`` or a ParameterPoint.

        Exact rational inputs give an exact Fraction result.
        """
        if hasattr(values, "generator_values"):
            values = values.generator_values()
        values = list(values)
        if len(values) != self.nvars:
            raise ValueError(f"expected {self.nvars} generator values, got {len(values)}")
        exact = all(isinstance(v, (int, Fraction)) for v in values)
        if exact:
            values = [Fraction(v) for v in values]
        if any(v == 0 for v in values) and any(min(e) < 0 for e in self.num.terms):
            raise DenominatorVanishes("a generator with a negative exponent is zero")
        d = 1
        for f, k in self.den.items():
            d = d * f.evaluate(values) ** k
        if (d == 0) if exact else (abs(d) < eps):
            raise DenominatorVanishes(f"denominator vanishes at {values}")
        return self.num.evaluate(values) / d

    def to_string(self) -> str:
        names = variable_names(self.m)
        return f"({self.num.format(names)})/({self.denominator.format(names)})"

    __str__ = to_string

    def __repr__(self):
        return f"ExactScalar({self.to_string()})"


_TERM = re.compile(r"^\s*([-+]?\d+(?:/\d+)?)((?:\*[A-Za-z]\w*\^-?\d+)*)\s*$")


def _parse_poly(text: str, m: int) -> LaurentPoly:
    names = variable_names(m)
    index = {n: i for i, n in enumerate(names)}
    text = text.strip()
    if text == "0":
        return LaurentPoly({}, m + 2)
    terms = {}
    for part in text.split(" + "):
        match = _TERM.match(part)
        if match is None:
            raise ValueError(f"bad term {part!r}")
        e = [0] * (m + 2)
        for factor in filter(None, match.group(2).split("*")):
            name, k = factor.split("^")
            e[index[name]] += int(k)
        e = tuple(e)
        terms[e] = terms.get(e, 0) + Fraction(match.group(1))
    return LaurentPoly(terms, m + 2)


def parse_exact(text: str, m: int) -> ExactScalar:
    """Inverse of :meth:`ExactScalar.to_string`."""
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")") and ")/(" in text):
        raise ValueError(f"not an exact scalar string: {text!r}")
    num_text, den_text = text[1:-1].split(")/(")
    num = _parse_poly(num_text, m)
    den = _parse_poly(den_text, m)
    if den.is_zero():
        raise DenominatorVanishes("zero denominator in scalar string")
    return ExactScalar._from_division(num, den, {}, m)


class ExactField:
    """Factory for exact scalars with ``m`` gamma variables."""

    name = "exact"

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("m must be at least 1")
        self.m = m
        n = m + 2
        self.alpha = ExactScalar(LaurentPoly.generator(0, n), m=m)
        self.beta = ExactScalar(LaurentPoly.generator(1, n), m=m)
        self._gammas = [ExactScalar(LaurentPoly.generator(k + 1, n), m=m) for k in range(1, m + 1)]
        self.zero = self.const(0)
        self.one = self.const(1)

    def gamma(self, k: int) -> ExactScalar:
        """gamma_k, 1-based."""
        return self._gammas[k - 1]

    def const(self, c) -> ExactScalar:
        return ExactScalar(LaurentPoly.constant(Fraction(c), self.m + 2), m=self.m)

    def is_zero(self, s: ExactScalar) -> bool:
        return s.is_zero()

    def residual(self, s: ExactScalar) -> float:
        return 0.0 if s.is_zero() else float("inf")

    def parse(self, text: str) -> ExactScalar:
        return parse_exact(text, self.m)

    def format(self, s: ExactScalar) -> str:
        return s.to_string()

    def __repr__(self):
        return f"ExactField(m={self.m})"


# --------------------------------------------------------------------------
# numeric backing
# --------------------------------------------------------------------------

class PairedNumericScalar:
    """Complex value at ``p`` together with the value at the inverted point ``p^v``."""

    __slots__ = ("value", "dual", "eps")

    def __init__(self, value: complex, dual: complex, eps: float = DEFAULT_EPS):
        self.value = complex(value)
        self.dual = complex(dual)
        self.eps = eps

    def _coerce(self, other):
        if isinstance(other, PairedNumericScalar):
            return other
        if isinstance(other, (int, Fraction, float, complex)):
            return PairedNumericScalar(complex(other), complex(other), self.eps)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PairedNumericScalar(self.value + other.value, self.dual + other.dual, self.eps)

    __radd__ = __add__

    def __neg__(self):
        return PairedNumericScalar(-self.value, -self.dual, self.eps)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PairedNumericScalar(self.value - other.value, self.dual - other.dual, self.eps)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PairedNumericScalar(self.value * other.value, self.dual * other.dual, self.eps)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if abs(other.value) < self.eps or abs(other.dual) < self.eps:
            raise DenominatorVanishes(f"numeric denominator {other.value!r} / {other.dual!r} below {self.eps}")
        return PairedNumericScalar(self.value / other.value, self.dual / other.dual, self.eps)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def inverse(self):
        return 1 / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return PairedNumericScalar(self.value ** k, self.dual ** k, self.eps)

    def dualize(self) -> "PairedNumericScalar":
        return PairedNumericScalar(self.dual, self.value, self.eps)

    def is_zero(self) -> bool:
        """Numerically zero: both components below epsilon."""
        return abs(self.value) < self.eps and abs(self.dual) < self.eps

    def magnitude(self) -> float:
        return max(abs(self.value), abs(self.dual))

    def __complex__(self):
        return self.value

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).is_zero()

    __hash__ = None

    def to_string(self) -> str:
        return f"{format_complex(self.value)}|{format_complex(self.dual)}"

    __str__ = to_string

    def __repr__(self):
        return f"PairedNumericScalar({self.value!r}, {self.dual!r})"


def format_complex(z: complex) -> str:
    """17 significant digits, parseable by ``complex()``."""
    z = complex(z)
    return f"{z.real:.17g}{z.imag:+.17g}j"


def parse_numeric(text: str, eps: float = DEFAULT_EPS) -> PairedNumericScalar:
    value, dual = text.split("|")
    return PairedNumericScalar(complex(value), complex(dual), eps)


class NumericField:
    """Factory for paired numeric scalars at a concrete point.

    ``values`` are the generator values ``(alpha, beta, gamma_1, ..., gamma_m)``.
    """

    name = "numeric"

    def __init__(self, values: Sequence[Complex], eps: float = DEFAULT_EPS):
        values = [complex(v) for v in values]
        if len(values) < 3:
            raise ValueError("need alpha, beta and at least one gamma")
        if any(abs(v) < eps for v in values):
            raise DenominatorVanishes("generator values must be nonzero")
        self.values = values
        self.m = len(values) - 2
        self.eps = eps
        gens = [PairedNumericScalar(v, 1 / v, eps) for v in values]
        self.alpha, self.beta = gens[0], gens[1]
        self._gammas = gens[2:]
        self.zero = self.const(0)
        self.one = self.const(1)

    @classmethod
    def at(cls, point, eps: float = DEFAULT_EPS) -> "NumericField":
        """Field at a :class:`~fcmono.params.ParameterPoint`."""
        return cls(point.generator_values(), eps)

    def gamma(self, k: int) -> PairedNumericScalar:
        return self._gammas[k - 1]

    def const(self, c) -> PairedNumericScalar:
        return PairedNumericScalar(complex(c), complex(c), self.eps)

    def is_zero(self, s: PairedNumericScalar) -> bool:
        return s.is_zero()

    def residual(self, s: PairedNumericScalar) -> float:
        return s.magnitude()

    def parse(self, text: str) -> PairedNumericScalar:
        return parse_numeric(text, self.eps)

    def format(self, s: PairedNumericScalar) -> str:
        return s.to_string()

    def __repr__(self):
        return f"NumericField({self.values!r})"


def dualize(s):
    return s.dualize()


def is_zero(s) -> bool:
    return s.is_zero()


def evaluate(s: ExactScalar, values, eps: float = DEFAULT_EPS):
    return s.evaluate(values, eps)


def lift(s: ExactScalar, field: NumericField) -> PairedNumericScalar:
    """Evaluate an exact scalar at the field's point and at its inverse."""
    v = [complex(x) for x in field.values]
    return PairedNumericScalar(
        complex(s.evaluate(v, field.eps)), complex(s.evaluate([1 / x for x in v], field.eps)), field.eps
    )
