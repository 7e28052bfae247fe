import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fcmono.linalg import det
from fcmono.monodromy import build_Pm
from fcmono.params import ParameterPoint
from fcmono.scalars import (DenominatorVanishes, ExactField, NumericField, PairedNumericScalar,
                            dualize, evaluate, is_zero, lift)

F1 = ExactField(1)


def rand_point(rng, m):
    return [Fraction(rng.randint(2, 40), rng.randint(1, 9)) for _ in range(m + 2)]


def test_dualize_generator():
    assert dualize(F1.gamma(1)) == 1 / F1.gamma(1)
    assert dualize(F1.one) == F1.one


def test_dualize_rational_function_by_evaluation():
    F = ExactField(1)
    s = (F.alpha - F.gamma(1)) / (F.beta - 1)
    d = dualize(s)
    rng = random.Random(5)
    for _ in range(5):
        a, b, g = rand_point(rng, 1)
        expected = (1 / a - 1 / g) / (1 / b - 1)
        assert evaluate(d, [a, b, g]) == expected


def test_evaluate_examples():
    assert evaluate(F1.gamma(1), [1, 1, 2]) == 2
    assert evaluate(F1.alpha / F1.alpha, [Fraction(3, 7), 1, 1]) == 1
    P = build_Pm(ExactField(2))
    assert evaluate(det(P), [1, 1, 2, 3]) == 4


def test_evaluate_raises_on_vanishing_denominator():
    with pytest.raises(DenominatorVanishes):
        evaluate(1 / (F1.gamma(1) - 1), [1, 1, 1])


def test_is_zero_examples():
    a = F1.alpha
    assert is_zero(a - a)
    assert not is_zero(F1.gamma(1) - 1)
    assert is_zero((a - 1) * (a + 1) - (a * a - 1))


def test_numeric_zero_and_division():
    F = NumericField([2, 3, 5])
    assert (F.alpha - F.alpha).is_zero()
    with pytest.raises(DenominatorVanishes):
        F.one / (F.alpha - F.alpha)


def test_string_round_trip():
    F = ExactField(2)
    s = (F.alpha * F.gamma(2) - Fraction(1, 3)) / ((F.beta - 1) * (F.alpha - F.gamma(1)) ** 2)
    t = F.parse(F.format(s))
    assert t == s
    assert F.format(t) == F.format(F.parse(F.format(t)))
    N = NumericField([2, 3j, 0.5, 1.5])
    x = N.alpha * N.gamma(1) + N.beta
    y = N.parse(N.format(x))
    assert y.value == x.value and y.dual == x.dual


# random expression trees ------------------------------------------------

OPS = ["+", "-", "*", "/"]


def random_expr(rng, field, depth):
    if depth == 0 or rng.random() < 0.25:
        choice = rng.randrange(field.m + 3)
        if choice == 0:
            return field.alpha
        if choice == 1:
            return field.beta
        if choice == field.m + 2:
            return field.const(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
        return field.gamma(choice - 1)
    x = random_expr(rng, field, depth - 1)
    y = random_expr(rng, field, depth - 1)
    op = rng.choice(OPS)
    if op == "/" and y.is_zero():
        op = "*"
    if op == "+":
        return x + y
    if op == "-":
        return x - y
    return x * y if op == "*" else x / y


@pytest.mark.parametrize("seed", range(4))
def test_dualize_commutes_with_evaluation(seed):
    rng = random.Random(seed)
    m = 2
    count = 0
    while count < 250:
        s = random_expr(rng, ExactField(m), 3)
        p = [complex(rng.uniform(0.5, 2), rng.uniform(-1, 1)) for _ in range(m + 2)]
        inv = [1 / v for v in p]
        try:
            lhs = complex(evaluate(dualize(s), p))
            rhs = complex(evaluate(s, inv))
        except DenominatorVanishes:
            continue
        count += 1
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


@pytest.mark.parametrize("seed", range(3))
def test_numeric_backing_matches_exact_backing(seed):
    rng = random.Random(100 + seed)
    m = 2
    for _ in range(60):
        p = [complex(rng.uniform(0.5, 2), rng.uniform(-1, 1)) for _ in range(m + 2)]
        num_field = NumericField(p)
        state = rng.getstate()
        exact = random_expr(rng, ExactField(m), 3)
        rng.setstate(state)
        numeric = random_expr(rng, num_field, 3)
        try:
            lifted = lift(exact, num_field)
        except DenominatorVanishes:
            continue
        for a, b in ((numeric.value, lifted.value), (numeric.dual, lifted.dual)):
            assert abs(a - b) <= 1e-10 * max(1.0, abs(b))


def test_paired_dualize_swaps():
    s = PairedNumericScalar(2, 0.5)
    assert s.dualize().value == 0.5 and s.dualize().dual == 2


def test_numeric_field_at_point():
    p = ParameterPoint(Fraction(1, 2), Fraction(1, 4), (Fraction(1),))
    F = NumericField.at(p)
    assert F.alpha.value == -1 and F.beta.value == 1j and F.gamma(1).value == 1


small = st.fractions(min_value=-3, max_value=3, max_denominator=5)


@given(small, small)
@settings(max_examples=40, deadline=None)
def test_cross_multiplication_equality_is_consistent(x, y):
    F = ExactField(1)
    s = (F.alpha + F.const(x)) / (F.beta + F.const(y) + 10)
    t = ((F.alpha + F.const(x)) * (F.gamma(1) + 1)) / ((F.beta + F.const(y) + 10) * (F.gamma(1) + 1))
    assert s == t and t == s
    assert not (s == s + 1)
