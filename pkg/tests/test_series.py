import math
import random
from fractions import Fraction as Fr

import mpmath
import pytest

import fcmono.series as ser
from fcmono.classify import random_irreducible_point
from fcmono.indexing import BinaryIndex, all_indices
from fcmono.monodromy import build_Mk
from fcmono.params import ParameterPoint
from fcmono.scalars import NumericField


def test_domain():
    assert ser.in_domain(ser.base_point(2))
    assert not ser.in_domain((1, 0))
    assert ser.in_domain((0, 0, 0))


def test_singular_locus():
    for x in (0.1, 0.3 + 0.2j, -2):
        assert abs(ser.singular_locus_value((x,)) - x * (1 - x)) < 1e-14
    assert ser.singular_locus_value((0, 0.1)) == 0
    assert abs(ser.singular_locus_value(ser.base_point(3))) > 0


def test_fc_series_zero_point():
    assert ser.fc_series(Fr(1, 3), Fr(2, 7), (Fr(1, 5), Fr(3, 4)), (0, 0), 10) == 1


def test_geometric_series():
    x, N = 1 / 8, 25
    assert abs(ser.fc_series(1, 1, (1,), (x,), N) - (1 - x ** (N + 1)) / (1 - x)) < 1e-14


def test_double_loop_resummation():
    a, b, c = 0.3 + 0.1j, -0.7, (0.45, 1.3 - 0.2j)
    x = (0.05, -0.03 + 0.02j)
    N = 5
    total = 0
    for n1 in range(N + 1):
        for n2 in range(N + 1 - n1):
            s = n1 + n2
            term = complex(mpmath.rf(a, s) * mpmath.rf(b, s) / (mpmath.rf(c[0], n1) * mpmath.rf(c[1], n2)
                                                                  * math.factorial(n1) * math.factorial(n2)))
            total += term * x[0] ** n1 * x[1] ** n2
    assert abs(ser.fc_series(a, b, c, x, N) - total) < 1e-14


def test_pochhammer_pole():
    with pytest.raises(ser.PochhammerPole):
        ser.fc_coefficients(1, 1, (-2,), 5)
    ser.fc_coefficients(1, 1, (-2,), 2)


def test_gamma():
    assert ser.complex_gamma(1) == 1
    assert abs(ser.complex_gamma(Fr(1, 2)) - math.sqrt(math.pi)) < 1e-15
    assert ser.complex_gamma(5) == 24
    for z in (0.3 + 2j, -2.5 + 0.1j, 7.7 - 3j):
        ref = complex(mpmath.gamma(z))
        assert abs(ser.complex_gamma(z) - ref) <= 1e-12 * abs(ref)
    for z in (0, -3, Fr(-1)):
        with pytest.raises(ser.GammaPole):
            ser.complex_gamma(z)


def test_f0_is_gauss():
    a, b, c = Fr(1, 3), Fr(2, 7), Fr(1, 5)
    p = ParameterPoint(a, b, (c,))
    x = 0.1
    ref = complex(mpmath.gamma(1 - c) / (mpmath.gamma(1 - a) * mpmath.gamma(1 - b)) * mpmath.hyp2f1(a, b, c, x))
    got = ser.solution_FI(p, BinaryIndex((0,)), (x,), 40)
    assert abs(got - ref) < 1e-12 * abs(ref)


def test_m2_value_at_base_point_against_mpmath():
    # F_C with m = 2 is Appell F4
    a, b, c1, c2 = Fr(1, 3), Fr(2, 7), Fr(1, 5), Fr(3, 4)
    x = ser.base_point(2)
    mpmath.mp.dps = 30
    ref = complex(mpmath.appellf4(a, b, c1, c2, x[0], x[1]))
    mpmath.mp.dps = 15
    got = ser.fc_series(a, b, (c1, c2), x, 60)
    assert abs(got - ref) < 1e-10


def test_gauss_ratio():
    a, b, c = Fr(1, 3), Fr(2, 7), Fr(1, 5)
    t = ser.fc_coefficients(a, b, (c,), 15)
    for n in range(15):
        assert t.coefficients[(n + 1,)] / t.coefficients[(n,)] == ser.gauss_ratio(a, b, c, n)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_truncation_monotone(m):
    rng = random.Random(m)
    p = random_irreducible_point(m, rng)
    x = ser.base_point(m)
    diffs = []
    for N in (5, 10, 15, 20):
        diffs.append(abs(ser.fc_series(p.a, p.b, p.c, x, N + 5) - ser.fc_series(p.a, p.b, p.c, x, N)))
    assert all(d2 < d1 for d1, d2 in zip(diffs, diffs[1:]) if d1 > 1e-15)


def test_pde_residual_examples():
    p = ParameterPoint(Fr(2, 9), Fr(2, 9), (Fr(2, 9),))
    assert ser.pde_residual(p, BinaryIndex((0,)), 12) == 0
    q = ParameterPoint(Fr(1, 3), Fr(2, 7), (Fr(1, 5), Fr(3, 8)))
    assert ser.pde_residual(q, BinaryIndex((1, 0)), 10) == 0
    assert ser.pde_residual(q, BinaryIndex((0, 0)), 0) == 0


def test_pde_residual_numeric_path():
    p = ParameterPoint(0.31 + 0.05j, -0.27, (0.41, 1.37 - 0.1j))
    for I in all_indices(2):
        assert ser.pde_residual(p, I, 10) < 1e-12


def test_local_multiplier():
    p = ParameterPoint(Fr(1, 3), Fr(2, 7), (Fr(1, 5), Fr(3, 8)))
    N = NumericField.at(p)
    for I in all_indices(2):
        for k in (1, 2):
            assert ser.local_multiplier_exponent(p, I, k) == I.bits[k - 1] * (1 - p.c[k - 1])
            assert ser.local_multiplier_matches(p, I, k)
            diag = build_Mk(N, k).to_numpy()
            from fcmono.indexing import position
            assert abs(ser.local_multiplier(p, I, k) - diag[position(I), position(I)]) < 1e-14


def test_tail_estimate_is_last_shell():
    t = ser.fc_coefficients(1, 1, (1,), 10)
    assert abs(t.tail_estimate((0.5,)) - 0.5 ** 10) < 1e-15
