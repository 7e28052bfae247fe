"""Builders for the circuit matrices, intersection matrices and change of basis.

Every builder takes a field (:class:`~fcmono.scalars.ExactField` or
:class:`~fcmono.scalars.NumericField`) and returns :class:`~fcmono.linalg.Matrix`
objects indexed by :func:`~fcmono.indexing.position`.

Two bases are supported:

``plain``
    the series solutions F_I; needs gamma_k != 1.
``tilde``
    F~ = F . P_m; all matrices are built from closed forms that stay finite
    when gamma_k = 1.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple, Union

from .indexing import BinaryIndex, all_indices, below, meet, weight
from .linalg import Matrix, inverse

BASES = ("plain", "tilde")


# --------------------------------------------------------------------------
# small helpers
# --------------------------------------------------------------------------

def gamma_power(field, index: BinaryIndex):
    """prod_k gamma_k^{i_k}."""
    out = field.one
    for k, i in enumerate(index.bits, start=1):
        if i:
            out = out * field.gamma(k)
    return out


def gamma_product(field):
    return gamma_power(field, BinaryIndex((1,) * field.m))


def eigenvalue(field):
    """lambda = (-1)^(m-1) alpha^-1 beta^-1 prod gamma_k."""
    sign = 1 if field.m % 2 == 1 else -1
    return sign * gamma_product(field) / field.alpha / field.beta


def ones(field) -> list:
    return [field.one] * 2 ** field.m


def last_unit(field) -> list:
    """e_v = (0, ..., 0, 1)."""
    n = 2 ** field.m
    return [field.one if i == n - 1 else field.zero for i in range(n)]


# --------------------------------------------------------------------------
# tensor products
# --------------------------------------------------------------------------

def tensor(A: Matrix, B: Matrix) -> Matrix:
    """Block matrix whose (p, q) block is ``A * B[p, q]``.

    This is ``kron(B, A)`` in the usual convention, so in a chain
    ``X_1 (x) X_2 (x) ... (x) X_m`` the factor ``X_1`` acts on the least
    significant bit of the position.
    """
    na, ma = A.shape
    nb, mb = B.shape
    rows = []
    for p in range(nb):
        for i in range(na):
            row = []
            for q in range(mb):
                b = B.rows[p][q]
                row.extend(a * b for a in A.rows[i])
            rows.append(row)
    return Matrix(rows)


def tensor_chain(factors: Sequence[Matrix]) -> Matrix:
    out = factors[0]
    for f in factors[1:]:
        out = tensor(out, f)
    return out


def _slot_chain(field, k: int, slot: Matrix) -> Matrix:
    e2 = Matrix.identity(2, field)
    return tensor_chain([slot if j == k else e2 for j in range(1, field.m + 1)])


def _check_k(field, k: int):
    if not 1 <= k <= field.m:
        raise ValueError(f"k must be in 1..{field.m}, got {k}")


def build_Gk(field, k: int) -> Matrix:
    _check_k(field, k)
    return Matrix([[field.one, field.zero], [field.zero, 1 / field.gamma(k)]])


def build_Qk(field, k: int) -> Matrix:
    _check_k(field, k)
    return Matrix([[1 - field.gamma(k), field.one], [field.zero, field.one]])


def build_tilde_Gk(field, k: int) -> Matrix:
    _check_k(field, k)
    g_inv = 1 / field.gamma(k)
    return Matrix([[field.one, -g_inv], [field.zero, g_inv]])


# --------------------------------------------------------------------------
# plain basis
# --------------------------------------------------------------------------

def intersection_entry(field, index: BinaryIndex):
    """H_{I,I}."""
    alpha, beta = field.alpha, field.beta
    out = field.one
    for k, i in enumerate(index.bits, start=1):
        g = field.gamma(k)
        term = (-1 if i else 1) * (field.one if i else g)
        out = out * term / (g - 1)
    gi = gamma_power(field, index)
    out = out * (alpha - gi) * (beta - gi)
    return out / (alpha - gamma_product(field)) / (beta - 1)


def intersection_vector(field) -> list:
    """The diagonal h of H."""
    return [intersection_entry(field, I) for I in all_indices(field.m)]


def build_H(field) -> Matrix:
    return Matrix.diagonal(intersection_vector(field), field)


def build_Mk(field, k: int) -> Matrix:
    """Diagonal, entry gamma_k^{-i_k} at I."""
    return _slot_chain(field, k, build_Gk(field, k))


def m0_coefficient(field):
    """(beta - 1)(alpha - prod gamma) / (alpha beta)."""
    return (field.beta - 1) * (field.alpha - gamma_product(field)) / field.alpha / field.beta


def m0_weights(field) -> list:
    """Row vector ``coefficient * 1^T H``, with the common factors cancelled by hand.

    Entry J is prod_k (-1)^{j_k} gamma_k^{1-j_k}/(gamma_k - 1)
    * (alpha - gamma^J)(beta - gamma^J) / (alpha beta); it stays finite at
    alpha = prod gamma or beta = 1, where H itself does not.
    """
    alpha, beta = field.alpha, field.beta
    out = []
    for J in all_indices(field.m):
        w = field.one
        for k, j in enumerate(J.bits, start=1):
            g = field.gamma(k)
            w = w * ((-1 if j else 1) * (field.one if j else g)) / (g - 1)
        gj = gamma_power(field, J)
        out.append(w * (alpha - gj) * (beta - gj) / alpha / beta)
    return out


def build_M0(field) -> Matrix:
    """E - coefficient * 1 1^T H."""
    w = m0_weights(field)
    n = len(w)
    return Matrix([[(field.one if i == j else field.zero) - w[j] for j in range(n)] for i in range(n)])


def build_M0_transpose_form(field) -> Matrix:
    """E - coefficient * H 1 1^T, i.e. H M_0 H^{-1}; finite in the limits of the reducible cases."""
    return build_M0(field).T


def build_Pm(field) -> Matrix:
    return tensor_chain([build_Qk(field, k) for k in range(1, field.m + 1)])


def build_Pm_recursive(field) -> Matrix:
    """Block recursion P_m = [[P_{m-1}(1 - gamma_m), P_{m-1}], [O, P_{m-1}]]."""
    P = Matrix([[1 - field.gamma(1), field.one], [field.zero, field.one]])
    for k in range(2, field.m + 1):
        s = 1 - field.gamma(k)
        n = P.size
        top = [[x * s for x in r] + list(r) for r in P.rows]
        bottom = [[field.zero] * n + list(r) for r in P.rows]
        P = Matrix(top + bottom)
    return P


# --------------------------------------------------------------------------
# tilde basis
# --------------------------------------------------------------------------

def build_tilde_Mk(field, k: int) -> Matrix:
    return _slot_chain(field, k, build_tilde_Gk(field, k))


def tilde_v(field) -> list:
    """The vector v with N_0 = t(0, ..., 0, v)."""
    m = field.m
    alpha, beta = field.alpha, field.beta
    ab = alpha * beta
    out = []
    for I in all_indices(m):
        if weight(I) == 0:
            val = (alpha - 1) * (beta - 1) * gamma_product(field) / ab
            out.append(val if m % 2 == 0 else -val)
        else:
            s = weight(I)
            gi = gamma_power(field, I)
            rest = field.one
            for k, i in enumerate(I.bits, start=1):
                if not i:
                    rest = rest * field.gamma(k)
            val = (ab + (gi if s % 2 == 0 else -gi)) * rest / ab
            out.append(val if (m + s) % 2 == 0 else -val)
    return out


def build_N0(field, v: list = None) -> Matrix:
    v = tilde_v(field) if v is None else v
    n = len(v)
    return Matrix([[field.zero] * n for _ in range(n - 1)] + [list(v)])


def build_tilde_M0(field, v: list = None) -> Tuple[Matrix, list]:
    """(M~_0, v) with M~_0 = E - N_0."""
    v = tilde_v(field) if v is None else v
    n = len(v)
    return Matrix.identity(n, field) - build_N0(field, v), v


def tilde_H_entry(field, I: BinaryIndex, J: BinaryIndex):
    alpha, beta = field.alpha, field.beta
    gp = gamma_product(field)
    K = meet(I, J)
    out = field.one
    if weight(K) == 0:
        for k, (i, j) in enumerate(zip(I.bits, J.bits), start=1):
            g = field.gamma(k)
            if j:
                out = out * (-g)
            if 1 - i - j:
                out = out * (1 - g)
        return out * (alpha - 1) / (alpha - gp)
    for k, (i, j) in enumerate(zip(I.bits, J.bits), start=1):
        g = field.gamma(k)
        if j * (1 - i):
            out = out * (-g)
        if (1 - i) * (1 - j):
            out = out * (1 - g)
    gk = gamma_power(field, K)
    head = alpha * beta + (gk if weight(K) % 2 == 0 else -gk)
    return head * out / (alpha - gp) / (beta - 1)


def build_tilde_H(field) -> Matrix:
    idx = list(all_indices(field.m))
    return Matrix([[tilde_H_entry(field, I, J) for J in idx] for I in idx])


def basis_matrix(field) -> Matrix:
    """Columns M~_1^{i_1} ... M~_m^{i_m} e_v in position order."""
    tms = [build_tilde_Mk(field, k) for k in range(1, field.m + 1)]
    ev = last_unit(field)
    cols = []
    for I in all_indices(field.m):
        vec = ev
        for k in reversed(range(field.m)):
            if I.bits[k]:
                vec = tms[k].apply(vec)
        cols.append(vec)
    return Matrix.from_columns(cols)


# --------------------------------------------------------------------------
# closed-form determinants
# --------------------------------------------------------------------------
# Powers of a repeated factor are written as x**(-n) so that exact scalars keep
# the factor with a multiplicity instead of expanding it.

def det_Pm_closed(field):
    """prod_k (1 - gamma_k)^(2^(m-1))."""
    e = 2 ** (field.m - 1)
    out = field.one
    for k in range(1, field.m + 1):
        out = out * (1 - field.gamma(k)) ** e
    return out


def _alpha_beta_product(field):
    """prod_I (alpha - gamma^I)(beta - gamma^I)."""
    out = field.one
    for I in all_indices(field.m):
        gi = gamma_power(field, I)
        out = out * (field.alpha - gi) * (field.beta - gi)
    return out


def det_tilde_H_closed(field):
    n = 2 ** field.m
    gp = gamma_product(field)
    return _alpha_beta_product(field) * (field.alpha - gp) ** (-n) * (field.beta - 1) ** (-n)


def det_H_closed(field):
    m = field.m
    n, half = 2 ** m, 2 ** (m - 1)
    out = det_tilde_H_closed(field)
    for k in range(1, m + 1):
        g = field.gamma(k)
        out = out * g ** half * (g - 1) ** (-n)
    return out if (m * half) % 2 == 0 else -out


def det_basis_closed(field):
    """prod_k gamma_k^(-2^(m-1))."""
    out = field.one
    for k in range(1, field.m + 1):
        out = out * field.gamma(k) ** (-(2 ** (field.m - 1)))
    return out


# --------------------------------------------------------------------------
# identities and kernels
# --------------------------------------------------------------------------

def sum_identity_check(field, index: BinaryIndex):
    """Both sides of the summation identity over J <= I."""
    ab = field.alpha * field.beta
    lhs = field.zero
    for J in below(index):
        t1 = ab
        t2 = field.one
        for k, j in enumerate(J.bits, start=1):
            g = field.gamma(k)
            if not j:
                t1 = t1 * g
                t2 = t2 * g
            else:
                t2 = t2 * g * g
        term = t1 + t2
        lhs = lhs + (term if weight(J) % 2 == 0 else -term)
    gi = gamma_power(field, index)
    rhs = ab + (gi if weight(index) % 2 == 0 else -gi)
    for k, i in enumerate(index.bits, start=1):
        g = field.gamma(k)
        rhs = rhs * ((g - 1) if i else g)
    return lhs, rhs


def rank_one_kernel(v: Sequence, field) -> List[list]:
    """Basis of ker t(v) by pivoting on the last nonzero entry of v."""
    n = len(v)
    units = [[field.one if i == j else field.zero for i in range(n)] for j in range(n)]
    nonzero = [i for i, x in enumerate(v) if not x.is_zero()]
    if not nonzero:
        return units
    p = nonzero[-1]
    basis = []
    for j in range(n):
        if j == p:
            continue
        w = [field.zero] * n
        w[j] = v[p]
        w[p] = -v[j]
        basis.append(w)
    return basis


# --------------------------------------------------------------------------
# loop words
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class LoopWord:
    """Generators ``(label, exponent)`` with label in 0..m and exponent +-1, in traversal order."""

    letters: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        letters = tuple((int(g), int(e)) for g, e in self.letters)
        if any(e not in (1, -1) or g < 0 for g, e in letters):
            raise ValueError(f"bad letters {self.letters!r}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str) -> "LoopWord":
        """``"r0 r1^-1 r0"``; empty string is the trivial loop."""
        letters = []
        for tok in text.split():
            match = re.fullmatch(r"r(\d+)(?:\^(-?1))?", tok)
            if match is None:
                raise ValueError(f"bad loop token {tok!r}")
            letters.append((int(match.group(1)), int(match.group(2) or 1)))
        return cls(tuple(letters))

    def inverse(self) -> "LoopWord":
        return LoopWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __mul__(self, other: "LoopWord") -> "LoopWord":
        return LoopWord(self.letters + other.letters)

    def __pow__(self, k: int) -> "LoopWord":
        if k < 0:
            return self.inverse() ** (-k)
        return LoopWord(self.letters * k)

    def __str__(self):
        return " ".join(f"r{g}" if e == 1 else f"r{g}^-1" for g, e in self.letters)


def generators(field, basis: str = "plain") -> List[Matrix]:
    """[M_0, M_1, ..., M_m] in the requested basis."""
    if basis == "plain":
        return [build_M0(field)] + [build_Mk(field, k) for k in range(1, field.m + 1)]
    if basis == "tilde":
        return [build_tilde_M0(field)[0]] + [build_tilde_Mk(field, k) for k in range(1, field.m + 1)]
    raise ValueError(f"unknown basis {basis!r}")


def word_matrix(word: Union[LoopWord, str], field, basis: str = "plain", gens: List[Matrix] = None) -> Matrix:
    """Matrix of the loop: for rho_{w1} ... rho_{wn} this is M_{wn} ... M_{w1}."""
    if isinstance(word, str):
        word = LoopWord.parse(word)
    gens = generators(field, basis) if gens is None else gens
    invs: Dict[int, Matrix] = {}
    out = Matrix.identity(2 ** field.m, field)
    for g, e in word.letters:
        if g > field.m:
            raise ValueError(f"generator r{g} out of range for m={field.m}")
        if e == 1:
            mat = gens[g]
        else:
            if g not in invs:
                invs[g] = inverse(gens[g])
            mat = invs[g]
        out = mat @ out
    return out


# --------------------------------------------------------------------------
# named matrices for export
# --------------------------------------------------------------------------

def named_matrices(field, basis: str) -> Dict[str, Matrix]:
    m = field.m
    if basis == "plain":
        out = {"H": build_H(field), "M0": build_M0(field)}
        out.update({f"M{k}": build_Mk(field, k) for k in range(1, m + 1)})
        out["Pm"] = build_Pm(field)
        return out
    if basis == "tilde":
        out = {"Htilde": build_tilde_H(field), "M0": build_tilde_M0(field)[0]}
        out.update({f"M{k}": build_tilde_Mk(field, k) for k in range(1, m + 1)})
        out["N0"] = build_N0(field)
        return out
    raise ValueError(f"unknown basis {basis!r}")


def conjugate(P: Matrix, M: Matrix, P_inv: Matrix = None) -> Matrix:
    """P^{-1} M P."""
    P_inv = inverse(P) if P_inv is None else P_inv
    return P_inv @ M @ P


def congruence(P: Matrix, H: Matrix) -> Matrix:
    """t(P) H P^v."""
    return P.T @ H @ P.dualize()
