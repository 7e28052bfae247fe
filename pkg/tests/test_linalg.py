import random

import numpy as np
import pytest
import sympy

from fcmono.linalg import Matrix, det, inverse, rank
from fcmono.scalars import DenominatorVanishes, ExactField, NumericField

from conftest import matrix_at, random_values


def random_exact_matrix(F, n, rng):
    gens = [F.alpha, F.beta] + [F.gamma(k) for k in range(1, F.m + 1)]
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            x = F.const(rng.randint(-3, 3))
            if rng.random() < 0.6:
                x = x + rng.choice(gens) * rng.randint(-2, 2)
            if rng.random() < 0.2:
                x = x / (rng.choice(gens) - 2)
            row.append(x)
        rows.append(row)
    return Matrix(rows)


@pytest.mark.parametrize("seed", range(6))
def test_exact_det_and_inverse_against_sympy(seed):
    rng = random.Random(seed)
    F = ExactField(2)
    n = rng.choice([2, 3, 4])
    A = random_exact_matrix(F, n, rng)
    d = det(A)
    for _ in range(3):
        vals = random_values(rng, 2)
        oracle = matrix_at(A, vals)
        assert sympy.Rational(d.evaluate(vals)) == oracle.det()
    if d.is_zero():
        with pytest.raises(DenominatorVanishes):
            inverse(A)
        return
    B = inverse(A)
    assert (A @ B).equals(Matrix.identity(n, F))


def test_exact_rank():
    F = ExactField(1)
    a, g = F.alpha, F.gamma(1)
    A = Matrix([[a, g, a + g], [a * a, a * g, a * a + a * g], [F.one, F.zero, F.one]])
    assert rank(A) == 2
    assert det(A).is_zero()


def test_numeric_det_inverse_match_numpy():
    rng = np.random.default_rng(3)
    F = NumericField([2, 3j, 0.5, 1.5])
    vals = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    A = Matrix([[F.const(v) for v in row] for row in vals])
    assert abs(complex(det(A).value) - np.linalg.det(vals)) < 1e-10 * abs(np.linalg.det(vals))
    inv = inverse(A).to_numpy()
    assert np.allclose(inv, np.linalg.inv(vals), atol=1e-10)


def test_transpose_and_dualize():
    F = ExactField(1)
    A = Matrix([[F.alpha, F.one], [F.zero, F.gamma(1)]])
    assert A.T[0, 1] == F.zero and A.T[1, 0] == F.one
    assert A.dualize()[0, 0] == 1 / F.alpha
