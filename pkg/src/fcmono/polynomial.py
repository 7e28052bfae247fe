"""Sparse multivariate Laurent polynomials with exact rational coefficients.

A polynomial is a mapping ``exponent tuple -> coefficient``.  Exponents may be
negative, so substituting every variable by its inverse is just a negation of
the exponent vectors.  Coefficients are ``int`` whenever possible and
``fractions.Fraction`` otherwise.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

Exponent = Tuple[int, ...]


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """Immutable sparse Laurent polynomial in ``nvars`` variables."""

    __slots__ = ("terms", "nvars", "_key")

    def __init__(self, terms: Mapping[Exponent, object], nvars: int):
        self.terms: Dict[Exponent, object] = {e: _norm(c) for e, c in terms.items() if c != 0}
        self.nvars = nvars
        self._key = None

    # constructors -------------------------------------------------------
    @classmethod
    def _raw(cls, terms: Dict[Exponent, object], nvars: int) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.terms = terms
        p.nvars = nvars
        p._key = None
        return p

    @classmethod
    def constant(cls, c, nvars: int) -> "LaurentPoly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], nvars: int, c=1) -> "LaurentPoly":
        return cls({tuple(exps): c}, nvars)

    @classmethod
    def generator(cls, i: int, nvars: int) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(e, nvars)

    # basic queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def key(self):
        if self._key is None:
            self._key = tuple(sorted(self.terms.items()))
        return self._key

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def leading(self) -> Tuple[Exponent, object]:
        """Lex-leading exponent and coefficient (first variable most significant)."""
        e = max(self.terms)
        return e, self.terms[e]

    def min_exponents(self) -> Exponent:
        return tuple(min(col) for col in zip(*self.terms))

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "LaurentPoly"):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm(s)
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out, self.nvars)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        if len(self.terms) > len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out: Dict[Exponent, object] = {}
        get = out.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return LaurentPoly({e: c for e, c in out.items() if c}, self.nvars)

    def scale(self, c) -> "LaurentPoly":
        if c == 0:
            return LaurentPoly._raw({}, self.nvars)
        return LaurentPoly._raw({e: _norm(v * c) for e, v in self.terms.items()}, self.nvars)

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with exponent vector ``exps``."""
        return LaurentPoly._raw(
            {tuple(x + y for x, y in zip(e, exps)): c for e, c in self.terms.items()}, self.nvars
        )

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            (e, c), = self.terms.items()
            return LaurentPoly({tuple(k * x for x in e): Fraction(1) / Fraction(c) ** (-k)}, self.nvars)
        out = LaurentPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def dual(self) -> "LaurentPoly":
        """Substitute every variable by its inverse."""
        return LaurentPoly._raw({tuple(-x for x in e): c for e, c in self.terms.items()}, self.nvars)

    # normal form --------------------------------------------------------
    def split_content(self) -> Tuple[object, Exponent, "LaurentPoly"]:
        """Write ``self = c * x^u * p`` with ``p`` a genuine polynomial that is
        not divisible by any variable and whose lex-leading coefficient is 1."""
        if not self.terms:
            raise ZeroDivisionError("zero polynomial has no content")
        u = self.min_exponents()
        p = self.shift([-x for x in u])
        _, c = p.leading()
        if c != 1:
            inv = Fraction(1) / Fraction(c)
            p = p.scale(inv)
        return c, u, p

    # division -----------------------------------------------------------
    def exact_quotient(self, divisor: "LaurentPoly") -> Optional["LaurentPoly"]:
        """Return ``self / divisor`` if it is a Laurent polynomial, else None."""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self
        cd, ud, d = divisor.split_content()
        up = self.min_exponents()
        p = self.shift([-x for x in up])
        q = _poly_exact_div(p.terms, d.terms)
        if q is None:
            return None
        shift = [a - b for a, b in zip(up, ud)]
        inv = Fraction(1) / Fraction(cd) if cd != 1 else 1
        return LaurentPoly(q, self.nvars).shift(shift).scale(inv)

    # evaluation ---------------------------------------------------------
    def evaluate(self, values: Sequence):
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t = t * (v ** k if k > 0 else 1 / v ** (-k))
            total = total + t
        return total

    def format(self, names: Sequence[str]) -> str:
        """Canonical text: terms sorted by exponent vector, ``c*x^e`` factors."""
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            factors = [str(c)]
            factors += [f"{n}^{k}" for n, k in zip(names, e) if k]
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self.format([f'x{i}' for i in range(self.nvars)])})"


def _poly_exact_div(p: Mapping[Exponent, object], d: Mapping[Exponent, object]):
    """Exact division in Q[x]; ``d`` is monic in lex order.  None if d does not divide p."""
    rem = dict(p)
    heap = [tuple(-x for x in e) for e in rem]
    heapq.heapify(heap)
    ld = max(d)
    cd = d[ld]
    rest = [(e, c) for e, c in d.items() if e != ld]
    quot: Dict[Exponent, object] = {}
    while rem:
        while True:
            lr = tuple(-x for x in heapq.heappop(heap))
            if lr in rem:
                break
        e = tuple(a - b for a, b in zip(lr, ld))
        if min(e) < 0:
            return None
        c = rem.pop(lr)
        if cd != 1:
            c = _norm(Fraction(c) / cd)
        quot[e] = c
        for ed, cdd in rest:
            k = tuple(a + b for a, b in zip(e, ed))
            v = rem.get(k, 0) - c * cdd
            if v:
                if k not in rem:
                    heapq.heappush(heap, tuple(-x for x in k))
                rem[k] = _norm(v)
            else:
                rem.pop(k, None)
    return quot


def product(polys: Iterable[LaurentPoly], nvars: int) -> LaurentPoly:
    out = LaurentPoly.constant(1, nvars)
    for p in polys:
        out = out * p
    return out
