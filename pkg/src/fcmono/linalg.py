"""Dense square matrices over either scalar backing.

Exact determinants, ranks and inverses go through fraction-free elimination
on denominator-cleared rows; the numeric backing uses LAPACK (partial-pivot
LU / SVD) on the value and dual components separately.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Sequence

import numpy as np

from .polynomial import LaurentPoly
from .scalars import (
    DenominatorVanishes,
    ExactScalar,
    PairedNumericScalar,
    _expand,
)


class Matrix:
    """Row-major dense matrix of scalars.  Treated as immutable."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = [list(r) for r in rows]
        n = len(self.rows[0]) if self.rows else 0
        if any(len(r) != n for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int, field) -> "Matrix":
        return cls([[field.one if i == j else field.zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, field, ncols: int = None) -> "Matrix":
        return cls([[field.zero] * (n if ncols is None else ncols) for _ in range(n)])

    @classmethod
    def diagonal(cls, entries: Sequence, field) -> "Matrix":
        n = len(entries)
        return cls([[entries[i] if i == j else field.zero for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "Matrix":
        return cls([list(r) for r in zip(*columns)])

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def map(self, f: Callable) -> "Matrix":
        return Matrix([[f(x) for x in r] for r in self.rows])

    @property
    def T(self) -> "Matrix":
        return Matrix([list(c) for c in zip(*self.rows)])

    def dualize(self) -> "Matrix":
        return self.map(lambda s: s.dualize())

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return self.map(lambda s: -s)

    def scale(self, c) -> "Matrix":
        return self.map(lambda s: c * s)

    def __matmul__(self, other):
        if isinstance(other, Matrix) and not is_exact(self) and not is_exact(other):
            v = self.to_numpy() @ other.to_numpy()
            d = self.to_numpy(dual=True) @ other.to_numpy(dual=True)
            return _paired_from(self, v, d)
        if isinstance(other, Matrix):
            cols = list(zip(*other.rows))
            return Matrix([[_dot(r, c) for c in cols] for r in self.rows])
        return [_dot(r, other) for r in self.rows]

    def apply(self, vec: Sequence) -> list:
        return [_dot(r, vec) for r in self.rows]

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    def equals(self, other: "Matrix") -> bool:
        return (self - other).is_zero()

    def is_diagonal(self) -> bool:
        return all(x.is_zero() for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def to_numpy(self, dual: bool = False) -> np.ndarray:
        """Complex array of values (numeric backing only)."""
        return np.array([[x.dual if dual else x.value for x in r] for r in self.rows], dtype=complex)

    def __repr__(self):
        return "Matrix([\n" + ",\n".join("  [" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "\n])"


def _dot(r: Sequence, c: Sequence):
    acc = None
    for x, y in zip(r, c):
        if x.is_zero() or y.is_zero():
            continue
        t = x * y
        acc = t if acc is None else acc + t
    if acc is None:
        return r[0] * 0
    return acc


def vdot(u: Sequence, v: Sequence):
    """Bilinear ``u^T v`` (no conjugation)."""
    return _dot(u, v)


def is_exact(A: Matrix) -> bool:
    return bool(A.rows) and isinstance(A.rows[0][0], ExactScalar)


def _paired_from(A: Matrix, value: np.ndarray, dual: np.ndarray) -> Matrix:
    eps = A.rows[0][0].eps
    return Matrix([[PairedNumericScalar(v, d, eps) for v, d in zip(rv, rd)] for rv, rd in zip(value, dual)])


# --------------------------------------------------------------------------
# fraction-free elimination on cleared rows
# --------------------------------------------------------------------------

def _clear_rows(A: Matrix):
    """Return (polynomial rows, row denominators) with A[i] = P[i] / L[i]."""
    m = A.rows[0][0].m
    nvars = m + 2
    polys, lcms = [], []
    for row in A.rows:
        lcm = {}
        for s in row:
            for f, k in s.den.items():
                if lcm.get(f, 0) < k:
                    lcm[f] = k
        prow = []
        for s in row:
            extra = {f: k - s.den.get(f, 0) for f, k in lcm.items() if k > s.den.get(f, 0)}
            prow.append(s.num * _expand(extra, nvars))
        polys.append(prow)
        lcms.append(lcm)
    return polys, lcms, m


def _exact_div(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    if d.is_constant():
        (c,) = d.terms.values()
        return p.scale(Fraction(1) / Fraction(c)) if c != 1 else p
    q = p.exact_quotient(d)
    if q is None:
        raise ArithmeticError("fraction-free step produced an inexact division")
    return q


def _bareiss(rows: List[List[LaurentPoly]], nvars: int, full: bool = False):
    """Fraction-free elimination in place.

    Forward (``full=False``) returns (rank, sign, pivot columns).  With
    ``full=True`` the Gauss-Jordan variant clears above the pivots too, leaving
    every pivot equal to the last one.
    """
    n = len(rows)
    ncols = len(rows[0])
    one = LaurentPoly.constant(1, nvars)
    prev = one
    sign = 1
    r = 0
    pivots = []
    for k in range(ncols):
        if r == n:
            break
        piv = next((i for i in range(r, n) if not rows[i][k].is_zero()), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        p = rows[r][k]
        targets = range(n) if full else range(r + 1, n)
        for i in targets:
            if i == r:
                continue
            a = rows[i][k]
            row_i = rows[i]
            row_r = rows[r]
            new = []
            for j in range(ncols):
                if j < k and not full:
                    new.append(row_i[j])
                    continue
                t = p * row_i[j]
                if not a.is_zero() and not row_r[j].is_zero():
                    t = t - a * row_r[j]
                new.append(_exact_div(t, prev) if not t.is_zero() else t)
            rows[i] = new
        prev = p
        pivots.append(k)
        r += 1
    return r, sign, pivots


def _bareiss_sparse_pivot(rows: List[List[LaurentPoly]], nvars: int):
    """Forward Bareiss choosing the sparsest available pivot (row and column swaps).

    Returns (rank, sign); after full rank the determinant is ``sign * rows[n-1][n-1]``.
    """
    n = len(rows)
    prev = LaurentPoly.constant(1, nvars)
    sign = 1
    for k in range(n):
        best = None
        for i in range(k, n):
            for j in range(k, n):
                e = rows[i][j]
                if not e.is_zero() and (best is None or len(e.terms) < best[0]):
                    best = (len(e.terms), i, j)
        if best is None:
            return k, sign
        _, pi, pj = best
        if pi != k:
            rows[k], rows[pi] = rows[pi], rows[k]
            sign = -sign
        if pj != k:
            for r in rows:
                r[k], r[pj] = r[pj], r[k]
            sign = -sign
        p = rows[k][k]
        row_k = rows[k]
        for i in range(k + 1, n):
            a = rows[i][k]
            row_i = rows[i]
            new = row_i[:k + 1]
            for j in range(k + 1, n):
                t = p * row_i[j]
                if not a.is_zero() and not row_k[j].is_zero():
                    t = t - a * row_k[j]
                new.append(_exact_div(t, prev) if not t.is_zero() else t)
            rows[i] = new
        prev = p
    return n, sign


def _is_triangular(A: Matrix) -> bool:
    n = A.size
    upper = all(A.rows[i][j].is_zero() for i in range(n) for j in range(i))
    return upper or all(A.rows[i][j].is_zero() for i in range(n) for j in range(i + 1, n))


def det(A: Matrix):
    n = A.size
    if not is_exact(A):
        v = np.linalg.det(A.to_numpy())
        d = np.linalg.det(A.to_numpy(dual=True))
        return PairedNumericScalar(v, d, A.rows[0][0].eps)
    if _is_triangular(A):
        out = A.rows[0][0]
        for i in range(1, n):
            out = out * A.rows[i][i]
        return out
    polys, lcms, m = _clear_rows(A)
    nvars = m + 2
    rank, sign = _bareiss_sparse_pivot(polys, nvars)
    if rank < n:
        return ExactScalar(LaurentPoly({}, nvars), m=m)
    num = polys[n - 1][n - 1] if sign > 0 else -polys[n - 1][n - 1]
    den = {}
    for lcm in lcms:
        for f, k in lcm.items():
            den[f] = den.get(f, 0) + k
    return ExactScalar._cancel(num, den, m)


def rank(A: Matrix, tol: float = 1e-9) -> int:
    if not is_exact(A):
        s = np.linalg.svd(A.to_numpy(), compute_uv=False)
        sd = np.linalg.svd(A.to_numpy(dual=True), compute_uv=False)
        scale = max(1.0, s[0] if len(s) else 0.0, sd[0] if len(sd) else 0.0)
        return int(max((s > tol * scale).sum(), (sd > tol * scale).sum()))
    polys, _, m = _clear_rows(A)
    r, _, _ = _bareiss(polys, m + 2)
    return r


def inverse(A: Matrix) -> Matrix:
    n = A.size
    if not is_exact(A):
        try:
            v = np.linalg.inv(A.to_numpy())
            d = np.linalg.inv(A.to_numpy(dual=True))
        except np.linalg.LinAlgError as exc:
            raise DenominatorVanishes("singular matrix") from exc
        return _paired_from(A, v, d)
    polys, lcms, m = _clear_rows(A)
    nvars = m + 2
    zero = LaurentPoly({}, nvars)
    one = LaurentPoly.constant(1, nvars)
    aug = [row + [one if i == j else zero for j in range(n)] for i, row in enumerate(polys)]
    r, _, pivots = _bareiss(aug, nvars, full=True)
    if r < n or pivots[-1] >= n:
        raise DenominatorVanishes("matrix is singular")
    d = aug[0][0]
    # left block is d*I, right block is d * P^{-1}; A^{-1} = P^{-1} diag(L)
    d_scalar = ExactScalar(d, m=m)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            num = aug[i][n + j] * _expand(lcms[j], nvars)
            row.append(ExactScalar(num, m=m) / d_scalar)
        out.append(row)
    return Matrix(out)


def matrix_power(A: Matrix, k: int, field) -> Matrix:
    if k < 0:
        return matrix_power(inverse(A), -k, field)
    out = Matrix.identity(A.size, field)
    for _ in range(k):
        out = out @ A
    return out


def max_residual(A: Matrix, B: Matrix) -> float:
    """Largest entry of A - B relative to max(1, largest entry of B) (numeric)."""
    diff = A - B
    if is_exact(A):
        return 0.0 if diff.is_zero() else float("inf")
    num = max(x.magnitude() for r in diff.rows for x in r)
    scale = max([1.0] + [x.magnitude() for r in B.rows for x in r])
    return num / scale
