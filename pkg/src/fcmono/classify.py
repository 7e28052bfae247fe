"""Irreducibility of concrete parameters and the invariant subspaces of the reducible cases."""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .indexing import BinaryIndex, all_indices, position
from .linalg import Matrix
from .monodromy import build_M0, build_Mk
from .params import ParameterPoint, is_exact_number
from .scalars import DEFAULT_EPS, NumericField

NEAR_MISS = 1e-6
CASE_NEGATIVE = "negative-integer"
CASE_NON_NEGATIVE = "non-negative-integer"


class MultipleFailures(ValueError):
    """More than one integrality condition fails; no subspace is constructed."""


class RankToleranceAmbiguous(ArithmeticError):
    """A residual fell inside the band where rank cannot be decided."""


def shifted_parameters(p: ParameterPoint, index: BinaryIndex):
    """(a^I, b^I, c^I)."""
    return p.shifted(index)


def integer_distance(x, tol: float = DEFAULT_EPS) -> Tuple[Optional[int], float]:
    """(nearest integer if x counts as an integer else None, distance to it).

    Exact rationals are decided exactly.  Complex input needs a small imaginary
    part as well.
    """
    if is_exact_number(x):
        x = Fraction(x)
        n = round(x)
        return (int(x) if x.denominator == 1 else None), float(abs(x - n))
    z = complex(x)
    n = round(z.real)
    dist = max(abs(z.real - n), abs(z.imag))
    return (int(n) if dist < tol else None), dist


@dataclass(frozen=True)
class Failure:
    index: BinaryIndex
    which: str  # "a" or "b"
    value: int

    def to_json(self):
        return {"index": str(self.index), "which": self.which, "value": self.value}


@dataclass(frozen=True)
class NearMiss:
    index: BinaryIndex
    which: str
    distance: float

    def to_json(self):
        return {"index": str(self.index), "which": self.which, "distance": self.distance}


def _scan(p: ParameterPoint, tol: float, shifted: bool):
    failures, near = [], []
    for I in all_indices(p.m):
        if shifted:
            a_i, b_i, _ = p.shifted(I)
        else:
            s = sum(i * c for i, c in zip(I.bits, p.c))
            a_i, b_i = p.a - s, p.b - s
        for which, x in (("a", a_i), ("b", b_i)):
            n, dist = integer_distance(x, tol)
            if n is not None:
                failures.append(Failure(I, which, n))
            elif dist < NEAR_MISS:
                near.append(NearMiss(I, which, dist))
    return failures, near


def irreducibility_failures(p: ParameterPoint, tol: float = DEFAULT_EPS) -> List[Failure]:
    """All (I, a/b) with a^I or b^I an integer, in position order."""
    return _scan(p, tol, shifted=True)[0]


def near_misses(p: ParameterPoint, tol: float = DEFAULT_EPS) -> List[NearMiss]:
    """Conditions within NEAR_MISS of an integer that were not counted as failures."""
    return _scan(p, tol, shifted=True)[1]


def unshifted_failures(p: ParameterPoint, tol: float = DEFAULT_EPS) -> List[Tuple[BinaryIndex, str]]:
    """Failures of a - sum i_k c_k, b - sum i_k c_k in Z.

    a^I differs from a - sum i_k c_k by the integer |I|, so the (I, which)
    pairs agree with :func:`irreducibility_failures`.
    """
    return [(f.index, f.which) for f in _scan(p, tol, shifted=False)[0]]


@dataclass(frozen=True)
class SubspaceDescription:
    basis_label: str  # "F-basis" or "F'-basis"
    dimension: int
    indices: Tuple[BinaryIndex, ...]
    case: str
    failure: Failure

    def __post_init__(self):
        if self.dimension != len(self.indices):
            raise ValueError("dimension does not match the number of indices")

    def to_json(self):
        return {
            "basis_label": self.basis_label,
            "dimension": self.dimension,
            "indices": [str(i) for i in self.indices],
            "case": self.case,
        }


@dataclass
class ClassificationReport:
    point: ParameterPoint
    failures: List[Failure]
    c_integrality: List[int]
    lambda_is_one: bool
    invariant_subspace: Optional[SubspaceDescription] = None
    near_misses: List[NearMiss] = dc_field(default_factory=list)
    note: str = ""

    @property
    def irreducible(self) -> bool:
        return not self.failures

    @property
    def multiple_failures(self) -> bool:
        return len(self.failures) > 1

    def to_json(self):
        return {
            "parameters": self.point.to_json(),
            "irreducible": self.irreducible,
            "reducible": not self.irreducible,
            "failures": [f.to_json() for f in self.failures],
            "c_integrality": self.c_integrality,
            "lambda_is_one": self.lambda_is_one,
            "multiple_failures": self.multiple_failures,
            "invariant_subspace": None if self.invariant_subspace is None else self.invariant_subspace.to_json(),
            "near_misses": [n.to_json() for n in self.near_misses],
            "note": self.note,
        }


def subspace_for(failure: Failure, m: int) -> SubspaceDescription:
    I = failure.index
    if failure.value < 0:
        return SubspaceDescription("F-basis", 1, (I,), CASE_NEGATIVE, failure)
    rest = tuple(J for J in all_indices(m) if J != I)
    return SubspaceDescription("F'-basis", 2 ** m - 1, rest, CASE_NON_NEGATIVE, failure)


def classify(p: ParameterPoint, tol: float = DEFAULT_EPS) -> ClassificationReport:
    failures, near = _scan(p, tol, shifted=True)
    c_int = [k for k, c in enumerate(p.c, start=1) if integer_distance(c, tol)[0] is not None]
    lam_one = integer_distance(p.lambda_exponent(), tol)[0] is not None
    report = ClassificationReport(p, failures, c_int, lam_one, near_misses=near)
    if not failures:
        report.note = "irreducible"
    elif len(failures) > 1:
        report.note = "multiple failures: no invariant subspace constructed"
    elif c_int:
        report.note = "a single failure with some c_k integral: no invariant subspace constructed"
    else:
        report.invariant_subspace = subspace_for(failures[0], p.m)
        report.note = f"reducible, case {'(i)' if failures[0].value < 0 else '(ii)'}"
    return report


# --------------------------------------------------------------------------
# checking the subspace
# --------------------------------------------------------------------------

def limit_field(p: ParameterPoint, failure: Failure, eps: float = DEFAULT_EPS) -> NumericField:
    """Numeric field at p with alpha (or beta) replaced by gamma^I exactly.

    a^I in Z means alpha = prod gamma_k^{i_k}; using that product as the
    generator value makes the vanishing factor an exact floating-point zero.
    """
    gammas = p.gammas
    g = 1 + 0j
    for i, gk in zip(failure.index.bits, gammas):
        if i:
            g = g * gk
    alpha, beta = p.alpha, p.beta
    if failure.which == "a":
        alpha = g
    else:
        beta = g
    return NumericField([alpha, beta, *gammas], eps)


def subspace_generators(desc: SubspaceDescription, p: ParameterPoint) -> List[np.ndarray]:
    """Generator matrices at the limit point in the basis named by ``desc``."""
    field = limit_field(p, desc.failure)
    gens = [build_M0(field)] + [build_Mk(field, k) for k in range(1, p.m + 1)]
    if desc.basis_label == "F'-basis":
        # M' = H M H^{-1} = t(M); the transpose stays finite at the limit while H does not
        gens = [g.T for g in gens]
    return [g.to_numpy() for g in gens]


def verify_invariant_subspace(desc: Optional[SubspaceDescription], p: ParameterPoint) -> float:
    """Largest relative component outside the subspace after applying each generator."""
    if desc is None:
        raise ValueError("no invariant subspace: the point is irreducible or outside the single-failure case")
    n = 2 ** p.m
    inside = np.zeros(n, dtype=bool)
    inside[[position(I) for I in desc.indices]] = True
    worst = 0.0
    for G in subspace_generators(desc, p):
        image = G[:, inside]
        scale = max(1.0, float(np.abs(G).max()))
        leak = float(np.abs(image[~inside, :]).max()) if (~inside).any() else 0.0
        worst = max(worst, leak / scale)
    return worst


# --------------------------------------------------------------------------
# Burnside closure
# --------------------------------------------------------------------------

def _as_array(A) -> np.ndarray:
    return A.to_numpy() if isinstance(A, Matrix) else np.asarray(A, dtype=complex)


def algebra_dimension(generators: Sequence, tol: float = 1e-9, band: float = 1e-6) -> int:
    """Dimension of the span of all words in the generators and their inverses.

    Relative residuals below ``tol`` count as dependent and above ``band`` as
    new; anything in between raises :class:`RankToleranceAmbiguous`.
    """
    mats = [_as_array(g) for g in generators]
    if not mats:
        raise ValueError("need at least one generator")
    n = mats[0].shape[0]
    mats = mats + [np.linalg.inv(g) for g in mats]
    basis: List[np.ndarray] = []
    queue = [np.eye(n, dtype=complex)]

    def absorb(X: np.ndarray) -> bool:
        x = X.reshape(-1)
        norm = np.linalg.norm(x)
        if norm == 0:
            return False
        r = x.copy()
        for _ in range(2):  # re-orthogonalise once for stability
            for q in basis:
                r = r - q * np.vdot(q, r)
        rel = np.linalg.norm(r) / norm
        if rel < tol:
            return False
        if rel <= band:
            raise RankToleranceAmbiguous(f"relative residual {rel:.3e} inside ({tol:g}, {band:g}]")
        basis.append(r / np.linalg.norm(r))
        return True

    absorb(queue[0])
    steps = 0
    while queue and steps <= n * n:
        steps += 1
        nxt = []
        for X in queue:
            for G in mats:
                Y = G @ X
                if absorb(Y):
                    nxt.append(Y)
        queue = nxt
    return len(basis)


def generic_generators(p: ParameterPoint, eps: float = DEFAULT_EPS) -> List[Matrix]:
    """[M_0, ..., M_m] (plain basis) at p."""
    field = NumericField.at(p, eps)
    return [build_M0(field)] + [build_Mk(field, k) for k in range(1, p.m + 1)]


# --------------------------------------------------------------------------
# random points
# --------------------------------------------------------------------------

_DENOMS = (5, 7, 9, 11, 13, 17)


def _rand_rational(rng: random.Random) -> Fraction:
    q = rng.choice(_DENOMS)
    return Fraction(rng.randrange(-2 * q, 2 * q), q)


def random_irreducible_point(m: int, rng: random.Random, margin: float = NEAR_MISS) -> ParameterPoint:
    """Small-denominator rationals with every condition and every c_k away from Z."""
    while True:
        p = ParameterPoint(_rand_rational(rng), _rand_rational(rng), tuple(_rand_rational(rng) for _ in range(m)))
        if irreducibility_failures(p) or near_misses(p):
            continue
        if any(x.denominator == 1 for x in p.c):
            continue
        return p


def single_failure_point(index: BinaryIndex, which: str, value: int, rng: random.Random) -> ParameterPoint:
    """A point whose only failure is (index, which) with a^I (or b^I) equal to ``value``.

    All c_k stay non-integral so the subspace of the reducible case is built.
    """
    m = index.m
    shift = lambda c: sum(i * (1 - ck) for i, ck in zip(index.bits, c))
    for _ in range(1000):
        c = tuple(_rand_rational(rng) for _ in range(m))
        if any(x.denominator == 1 for x in c):
            continue
        other = _rand_rational(rng)
        pinned = value - shift(c)
        a, b = (pinned, other) if which == "a" else (other, pinned)
        p = ParameterPoint(a, b, c)
        if [(f.index, f.which, f.value) for f in irreducibility_failures(p)] == [(index, which, value)]:
            return p
    raise RuntimeError("could not sample a single-failure point")


def single_failure_families(m: int):
    """All 2^(m+1) pairs (I, which)."""
    return [(I, which) for I in all_indices(m) for which in ("a", "b")]
