"""Truncated F_C series, the local solutions F_I and their certification against the system.

Coefficient tables are exact (``Fraction``) whenever every parameter is
rational, so applying the operators to a truncated solution gives an exactly
zero residual.  Otherwise complex doubles are used.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, Sequence, Tuple

from scipy.special import gamma as _scipy_gamma

from .indexing import BinaryIndex
from .params import ParameterPoint, is_exact_number, unit_exponential


class PochhammerPole(ZeroDivisionError):
    """(c, n) vanished for a c_k that appears in a denominator."""


class GammaPole(ZeroDivisionError):
    """Gamma evaluated at a non-positive integer."""


MultiIndex = Tuple[int, ...]


# --------------------------------------------------------------------------
# domain and singular locus
# --------------------------------------------------------------------------

def base_point(m: int) -> Tuple[Fraction, ...]:
    """(1/(2m^2), ..., 1/(2m^2))."""
    return (Fraction(1, 2 * m * m),) * m


def in_domain(x: Sequence[complex]) -> bool:
    """sum_k sqrt|x_k| < 1."""
    return sum(math.sqrt(abs(complex(v))) for v in x) < 1


def singular_locus_value(x: Sequence[complex]) -> complex:
    """prod x_k * R(x), R the product of 1 + sum eps_k sqrt(x_k) over all sign patterns."""
    roots = [cmath.sqrt(complex(v)) for v in x]
    r = 1 + 0j
    for signs in product((1, -1), repeat=len(roots)):
        r *= 1 + sum(s * q for s, q in zip(signs, roots))
    for v in x:
        r *= complex(v)
    return r


# --------------------------------------------------------------------------
# special values
# --------------------------------------------------------------------------

def _nonpositive_integer(z) -> bool:
    if is_exact_number(z):
        z = Fraction(z)
        return z.denominator == 1 and z <= 0
    z = complex(z)
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


def complex_gamma(z) -> complex:
    """Gamma(z) for complex z; GammaPole at 0, -1, -2, ..."""
    if _nonpositive_integer(z):
        raise GammaPole(f"Gamma has a pole at {z}")
    if is_exact_number(z) or isinstance(z, float):
        return complex(math.gamma(float(z)))
    return complex(_scipy_gamma(complex(z)))


def pochhammer(c, n: int):
    """(c, n) = c (c+1) ... (c+n-1) by ascending product."""
    out = Fraction(1) if is_exact_number(c) else 1 + 0j
    for j in range(n):
        out *= c + j
    return out


def _pochhammer_table(c, N: int) -> list:
    out = [Fraction(1) if is_exact_number(c) else 1 + 0j]
    for j in range(N):
        out.append(out[-1] * (c + j))
    return out


def multi_indices(m: int, N: int) -> Iterator[MultiIndex]:
    """All n in N^m with |n| <= N, by total degree."""
    for total in range(N + 1):
        yield from _compositions(total, m)


def _compositions(total: int, parts: int) -> Iterator[MultiIndex]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# --------------------------------------------------------------------------
# coefficient tables
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TruncatedSeries:
    """sum over |n| <= order of coefficients[n] * x^(n + exponents)."""

    order: int
    coefficients: Dict[MultiIndex, object]
    exponents: Tuple[object, ...]

    @property
    def m(self) -> int:
        return len(self.exponents)

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.coefficients.values())

    def polynomial(self, x: Sequence[complex], shell: int = None) -> complex:
        """Value of the power-series part (no x^exponents prefactor); ``shell`` picks one total degree."""
        x = [complex(v) for v in x]
        powers = [[1 + 0j] for _ in x]
        for k, v in enumerate(x):
            for _ in range(self.order):
                powers[k].append(powers[k][-1] * v)
        total = 0j
        for n, coef in self.coefficients.items():
            if shell is not None and sum(n) != shell:
                continue
            term = complex(coef)
            for k, nk in enumerate(n):
                term *= powers[k][nk]
            total += term
        return total

    def prefactor(self, x: Sequence[complex]) -> complex:
        """prod x_k^{s_k}, principal branch."""
        out = 1 + 0j
        for v, s in zip(x, self.exponents):
            if s != 0:
                out *= complex(v) ** complex(s)
        return out

    def evaluate(self, x: Sequence[complex]) -> complex:
        return self.prefactor(x) * self.polynomial(x)

    def tail_estimate(self, x: Sequence[complex]) -> float:
        """Magnitude of the last shell; a heuristic, not a bound."""
        return abs(self.prefactor(x) * self.polynomial(x, shell=self.order))


def _all_exact(*values) -> bool:
    return all(is_exact_number(v) for v in values)


def fc_coefficients(a, b, c: Sequence, N: int, exponents: Sequence = None) -> TruncatedSeries:
    """Table of (a,|n|)(b,|n|) / prod (c_k,n_k) n_k! for |n| <= N."""
    c = tuple(c)
    m = len(c)
    exact = _all_exact(a, b, *c)
    conv = Fraction if exact else complex
    a, b = conv(a), conv(b)
    c = tuple(conv(x) for x in c)
    for k, ck in enumerate(c, start=1):
        if _nonpositive_integer(ck) and -ck < N:
            raise PochhammerPole(f"(c_{k}, n) vanishes for n > {-ck}")
    pa = _pochhammer_table(a, N)
    pb = _pochhammer_table(b, N)
    pc = [_pochhammer_table(ck, N) for ck in c]
    fact = [math.factorial(n) for n in range(N + 1)]
    coeffs = {}
    for n in multi_indices(m, N):
        den = conv(1)
        for k, nk in enumerate(n):
            den *= pc[k][nk] * fact[nk]
        s = sum(n)
        coeffs[n] = pa[s] * pb[s] / den
    exps = tuple(exponents) if exponents is not None else (Fraction(0),) * m
    return TruncatedSeries(N, coeffs, exps)


def fc_series(a, b, c: Sequence, x: Sequence[complex], N: int) -> complex:
    """Truncated F_C(a, b, c; x) by total degree N."""
    return fc_coefficients(a, b, c, N).polynomial(x)


# --------------------------------------------------------------------------
# local solutions
# --------------------------------------------------------------------------

def local_exponents(p: ParameterPoint, index: BinaryIndex) -> Tuple:
    """i_k (1 - c_k) per coordinate."""
    return tuple(i * (1 - ck) for i, ck in zip(index.bits, p.c))


def local_multiplier_exponent(p: ParameterPoint, index: BinaryIndex, k: int):
    """x with rho_k multiplying F_I by exp(2 pi i x); k is 1-based."""
    return local_exponents(p, index)[k - 1]


def local_multiplier_matches(p: ParameterPoint, index: BinaryIndex, k: int) -> bool:
    """exp(2 pi i i_k (1-c_k)) = gamma_k^{-i_k}, decided on exponents: the difference must be an integer."""
    diff = local_multiplier_exponent(p, index, k) + index.bits[k - 1] * p.c[k - 1]
    if is_exact_number(diff):
        return Fraction(diff).denominator == 1
    diff = complex(diff)
    return diff.imag == 0 and diff.real == round(diff.real)


def local_multiplier(p: ParameterPoint, index: BinaryIndex, k: int) -> complex:
    return unit_exponential(local_multiplier_exponent(p, index, k))


def solution_series(p: ParameterPoint, index: BinaryIndex, N: int) -> TruncatedSeries:
    """x^{s} F_C(a^I, b^I, c^I; x) as a table (no Gamma prefactor)."""
    a_i, b_i, c_i = p.shifted(index)
    return fc_coefficients(a_i, b_i, c_i, N, exponents=local_exponents(p, index))


def gamma_prefactor(p: ParameterPoint, index: BinaryIndex) -> complex:
    """prod Gamma((-1)^{i_k}(1 - c_k)) / (Gamma(1 - a^I) Gamma(1 - b^I))."""
    a_i, b_i, _ = p.shifted(index)
    num = 1 + 0j
    for i, ck in zip(index.bits, p.c):
        num *= complex_gamma((-1) ** i * (1 - ck))
    return num / (complex_gamma(1 - a_i) * complex_gamma(1 - b_i))


def solution_FI(p: ParameterPoint, index: BinaryIndex, x: Sequence[complex], N: int) -> complex:
    """F_I(x) truncated at total degree N."""
    pref = gamma_prefactor(p, index)
    return pref * solution_series(p, index, N).evaluate(x)


# --------------------------------------------------------------------------
# residual of the system
# --------------------------------------------------------------------------

def operator_coefficients(p: ParameterPoint, series: TruncatedSeries, k: int):
    """Yield (n, A_n, B_n, scale): the two parts of the coefficient of x^(n+s) in L_k f.

    L_k = theta_k (theta_k + c_k - 1) - x_k (theta + a)(theta + b), k 1-based;
    theta_k acts on x^(n+s) as multiplication by n_k + s_k.  Only |n| <= order
    is produced; those coefficients are fully determined by the table.
    ``scale`` bounds the rounding error: the same products taken in absolute
    values factor by factor.
    """
    j = k - 1
    s = series.exponents
    s_tot = sum(s)
    ck = p.c[j]
    for n, coef in series.coefficients.items():
        e = n[j] + s[j]
        first = e * (e + ck - 1) * coef
        scale = abs(e) * (abs(e) + abs(ck) + 1) * abs(coef)
        if n[j] == 0:
            second = 0 * coef
        else:
            prev = n[:j] + (n[j] - 1,) + n[j + 1:]
            t = sum(prev) + s_tot
            second = (t + p.a) * (t + p.b) * series.coefficients[prev]
            scale += (abs(t) + abs(p.a)) * (abs(t) + abs(p.b)) * abs(series.coefficients[prev])
        yield n, first, second, scale


def pde_residual(p: ParameterPoint, index: BinaryIndex, N: int):
    """Largest coefficient of L_k applied to the truncated F_I, over k and |n| <= N.

    On the exact path the result is a Fraction (zero when the series is a
    solution).  On the numeric path each coefficient difference is divided by
    the absolute-value size of its ingredients, so the value is a relative error.
    """
    series = solution_series(p, index, N)
    exact = series.exact and p.exact
    worst = Fraction(0) if exact else 0.0
    for k in range(1, p.m + 1):
        for _, first, second, scale in operator_coefficients(p, series, k):
            if exact:
                worst = max(worst, abs(first - second))
            elif scale:
                worst = max(worst, abs(complex(first) - complex(second)) / float(scale))
    return worst


def gauss_ratio(a, b, c, n: int):
    """(n+a)(n+b)/((n+c)(n+1)): consecutive ratio of the Gauss series."""
    return (n + a) * (n + b) / ((n + c) * (n + 1))
