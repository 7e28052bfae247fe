"""Identity suite over the exact field or at random numeric points.

Checks live in a registry (:data:`CHECKS`); each is a function of a
:class:`Context` returning a :class:`Outcome`.  :func:`run_suite` runs every
registered check, never stops at the first failure and reports residuals.
"""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from typing import Callable, List, Optional

from . import monodromy as mono
from .classify import random_irreducible_point
from .indexing import all_indices
from .linalg import Matrix, det, inverse, max_residual, rank, vdot
from .params import ParameterPoint
from .scalars import DEFAULT_EPS, ExactField, NumericField

EXACT_MAX_M = 3
NUMERIC_MAX_M = 5
MUTATIONS = ("flip-v",)


@dataclass
class Outcome:
    ok: bool
    residual: float = 0.0
    witness: str = ""
    applicable: bool = True


@dataclass
class CheckResult:
    name: str
    claim: str
    status: str  # exact-pass | numeric-pass | fail | not-applicable
    residual: Optional[float]
    witness: str
    elapsed: float

    def to_json(self, timings: bool = False):
        out = {"name": self.name, "claim": self.claim, "status": self.status,
               "residual": self.residual, "witness": self.witness}
        if timings:
            out["elapsed"] = round(self.elapsed, 6)
        return out


@dataclass
class VerificationReport:
    m: int
    backing: str
    seed: int
    points: List[dict]
    results: List[CheckResult] = dc_field(default_factory=list)
    mutation: Optional[str] = None

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def to_json(self, timings: bool = False):
        return {
            "m": self.m,
            "backing": self.backing,
            "seed": self.seed,
            "mutation": self.mutation,
            "points": self.points,
            "ok": self.ok,
            "results": [r.to_json(timings) for r in self.results],
        }

    def table(self) -> str:
        width = max(len(r.name) for r in self.results)
        lines = [f"{'check':<{width}}  {'status':<14}  {'residual':>10}  {'time':>8}  witness"]
        for r in self.results:
            res = "-" if r.residual is None else f"{r.residual:.2e}"
            lines.append(f"{r.name:<{width}}  {r.status:<14}  {res:>10}  {r.elapsed:8.3f}  {r.witness}")
        lines.append(f"{'overall':<{width}}  {'pass' if self.ok else 'FAIL'}")
        return "\n".join(lines)


# --------------------------------------------------------------------------
# context: the matrices of one field, built on demand
# --------------------------------------------------------------------------

class Context:
    def __init__(self, field, tol: float = DEFAULT_EPS, mutation: Optional[str] = None, rng: random.Random = None):
        self.field = field
        self.m = field.m
        self.n = 2 ** field.m
        self.tol = tol
        self.mutation = mutation
        self.rng = rng or random.Random(0)

    @property
    def exact(self) -> bool:
        return isinstance(self.field, ExactField)

    @cached_property
    def H(self):
        return mono.build_H(self.field)

    @cached_property
    def M(self) -> List[Matrix]:
        return mono.generators(self.field, "plain")

    @cached_property
    def v(self) -> list:
        v = mono.tilde_v(self.field)
        if self.mutation == "flip-v":
            v = [-v[0]] + v[1:]
        return v

    @cached_property
    def tM(self) -> List[Matrix]:
        tm0, _ = mono.build_tilde_M0(self.field, self.v)
        return [tm0] + [mono.build_tilde_Mk(self.field, k) for k in range(1, self.m + 1)]

    @cached_property
    def tH(self):
        return mono.build_tilde_H(self.field)

    @cached_property
    def P(self):
        return mono.build_Pm(self.field)

    @cached_property
    def P_inv(self):
        return inverse(self.P)

    @cached_property
    def ev(self):
        return mono.last_unit(self.field)

    @cached_property
    def lam(self):
        return mono.eigenvalue(self.field)

    # comparisons ------------------------------------------------------------

    def compare(self, A: Matrix, B: Matrix, label: str) -> Outcome:
        if self.exact:
            diff = A - B
            for i, row in enumerate(diff.rows):
                for j, x in enumerate(row):
                    if not x.is_zero():
                        return Outcome(False, float("inf"), f"{label}: entry ({i},{j}) differs")
            return Outcome(True)
        r = max_residual(A, B)
        return Outcome(r < self.tol, r, "" if r < self.tol else f"{label}: relative residual {r:.3e}")

    def compare_scalar(self, x, y, label: str) -> Outcome:
        if self.exact:
            ok = (x - y).is_zero()
            return Outcome(ok, 0.0 if ok else float("inf"), "" if ok else f"{label} differs")
        r = max(abs(x.value - y.value) / max(abs(y.value), 1e-300), abs(x.dual - y.dual) / max(abs(y.dual), 1e-300))
        return Outcome(r < self.tol, r, "" if r < self.tol else f"{label}: relative residual {r:.3e}")

    def vec_zero(self, vec, label: str, scale: float = 1.0) -> Outcome:
        if self.exact:
            bad = [i for i, x in enumerate(vec) if not x.is_zero()]
            return Outcome(not bad, 0.0 if not bad else float("inf"), "" if not bad else f"{label}: entry {bad[0]} nonzero")
        r = max(x.magnitude() for x in vec) / max(scale, 1.0)
        return Outcome(r < self.tol, r, "" if r < self.tol else f"{label}: residual {r:.3e}")


def combine(outcomes: List[Outcome]) -> Outcome:
    bad = [o for o in outcomes if not o.ok]
    res = max((o.residual for o in outcomes), default=0.0)
    return Outcome(not bad, res, bad[0].witness if bad else "")


def _mag(x) -> float:
    """Size used to normalise numeric residuals; exact scalars need none."""
    return x.magnitude() if hasattr(x, "magnitude") else 1.0


def _scale(M: Matrix) -> float:
    return max(_mag(x) for r in M.rows for x in r)


# --------------------------------------------------------------------------
# checks
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    name: str
    claim: str
    run: Callable[[Context], Outcome]
    exact_max_m: int = EXACT_MAX_M


CHECKS: List[Check] = []


def register(name: str, claim: str, exact_max_m: int = EXACT_MAX_M):
    def deco(fn):
        CHECKS.append(Check(name, claim, fn, exact_max_m))
        return fn
    return deco


def _commuting(ctx: Context, mats: List[Matrix], label: str) -> Outcome:
    outs = []
    for j in range(1, ctx.m + 1):
        for k in range(j + 1, ctx.m + 1):
            outs.append(ctx.compare(mats[j] @ mats[k], mats[k] @ mats[j], f"{label}{j}{label}{k}"))
    return combine(outs)


@register("commutativity", "circuits around the coordinate axes commute")
def check_commutativity(ctx: Context) -> Outcome:
    return combine([_commuting(ctx, ctx.M, "M"), _commuting(ctx, ctx.tM, "Mt")])


@register("braid", "(rho_0 rho_k)^2 = (rho_k rho_0)^2 for m >= 2")
def check_braid(ctx: Context) -> Outcome:
    if ctx.m < 2:
        return Outcome(True, applicable=False, witness="relation only holds for m >= 2")
    outs = []
    for basis, gens in (("plain", ctx.M), ("tilde", ctx.tM)):
        for k in range(1, ctx.m + 1):
            left = mono.LoopWord(((0, 1), (k, 1))) ** 2
            right = mono.LoopWord(((k, 1), (0, 1))) ** 2
            A = mono.word_matrix(left, ctx.field, basis, gens)
            B = mono.word_matrix(right, ctx.field, basis, gens)
            outs.append(ctx.compare(A, B, f"{basis} k={k}"))
    return combine(outs)


def _invariance(ctx: Context, mats: List[Matrix], H: Matrix, label: str) -> Outcome:
    return combine([ctx.compare(M.T @ H @ M.dualize(), H, f"{label}{i}") for i, M in enumerate(mats)])


@register("invariance-plain", "t(M_i) H M_i^v = H")
def check_invariance_plain(ctx: Context) -> Outcome:
    return _invariance(ctx, ctx.M, ctx.H, "M")


@register("invariance-tilde", "t(M~_i) H~ M~_i^v = H~")
def check_invariance_tilde(ctx: Context) -> Outcome:
    return _invariance(ctx, ctx.tM, ctx.tH, "Mt")


@register("pm-recursion", "tensor-product P_m equals the block recursion")
def check_pm_recursion(ctx: Context) -> Outcome:
    return ctx.compare(ctx.P, mono.build_Pm_recursive(ctx.field), "P_m")


@register("conjugation", "M~_i = P_m^-1 M_i P_m")
def check_conjugation(ctx: Context) -> Outcome:
    outs = [ctx.compare(ctx.P_inv @ M @ ctx.P, tM, f"M{i}") for i, (M, tM) in enumerate(zip(ctx.M, ctx.tM))]
    return combine(outs)


@register("congruence", "H~ = t(P_m) H P_m^v")
def check_congruence(ctx: Context) -> Outcome:
    return ctx.compare(mono.congruence(ctx.P, ctx.H), ctx.tH, "H~")


@register("det-Pm", "det P_m = prod (1 - gamma_k)^(2^(m-1))")
def check_det_pm(ctx: Context) -> Outcome:
    return ctx.compare_scalar(det(ctx.P), mono.det_Pm_closed(ctx.field), "det P_m")


@register("det-H", "closed form of det H")
def check_det_h(ctx: Context) -> Outcome:
    return ctx.compare_scalar(det(ctx.H), mono.det_H_closed(ctx.field), "det H")


@register("det-Htilde", "det H~ = prod (alpha - gamma^I)(beta - gamma^I) / ((alpha - prod gamma)(beta - 1))^(2^m)")
def check_det_htilde(ctx: Context) -> Outcome:
    return ctx.compare_scalar(det(ctx.tH), mono.det_tilde_H_closed(ctx.field), "det H~")


@register("det-basis", "det of the vectors M~^I e_v is prod gamma_k^(-2^(m-1))")
def check_det_basis(ctx: Context) -> Outcome:
    return ctx.compare_scalar(det(mono.basis_matrix(ctx.field)), mono.det_basis_closed(ctx.field), "det basis")


@register("sum-identity", "alternating sum over J <= I", exact_max_m=4)
def check_sum_identity(ctx: Context) -> Outcome:
    outs = []
    for I in all_indices(ctx.m):
        lhs, rhs = mono.sum_identity_check(ctx.field, I)
        outs.append(ctx.compare_scalar(lhs, rhs, f"I={I}"))
    return combine(outs)


def _rank_is(ctx: Context, A: Matrix, expected: int, label: str) -> Outcome:
    r = rank(A, ctx.tol)
    return Outcome(r == expected, 0.0, "" if r == expected else f"{label}: rank {r}, expected {expected}")


@register("eigen-tilde", "M~_0 - E has rank 1; its fixed space is ker t(v) = H~-orthogonal of e_v; M~_0 e_v = lambda e_v")
def check_eigen_tilde(ctx: Context) -> Outcome:
    E = Matrix.identity(ctx.n, ctx.field)
    D = ctx.tM[0] - E
    outs = [_rank_is(ctx, D, 1, "M~_0 - E")]
    image = ctx.tM[0].apply(ctx.ev)
    outs.append(ctx.vec_zero([x - ctx.lam * e for x, e in zip(image, ctx.ev)], "M~_0 e_v - lambda e_v"))
    kernel = mono.rank_one_kernel(ctx.v, ctx.field)
    if len(kernel) != ctx.n - 1:
        outs.append(Outcome(False, float("inf"), f"ker t(v) has {len(kernel)} vectors"))
    h_ev = ctx.tH.apply([x.dualize() for x in ctx.ev])
    scale = _scale(D) * _scale(ctx.tH)
    for w in kernel:
        wscale = max(1.0, max(_mag(x) for x in w))
        outs.append(ctx.vec_zero(D.apply(w), "(M~_0 - E) w", scale * wscale))
        outs.append(ctx.vec_zero([vdot(w, h_ev)], "t(w) H~ e_v", scale * wscale))
    return combine(outs)


@register("eigen-plain", "M_0 1 = lambda 1; M_0 fixes every w with t(1) H w = 0")
def check_eigen_plain(ctx: Context) -> Outcome:
    ones = mono.ones(ctx.field)
    outs = [ctx.vec_zero([x - ctx.lam for x in ctx.M[0].apply(ones)], "M_0 1 - lambda 1", _scale(ctx.M[0]))]
    h = mono.intersection_vector(ctx.field)
    # t(1) H w = sum h_I w_I; a kernel basis pivots on the last entry
    for j in range(ctx.n - 1):
        w = [ctx.field.zero] * ctx.n
        w[j] = h[-1]
        w[-1] = -h[j]
        D = ctx.M[0].apply(w)
        wscale = max(1.0, _mag(h[-1]), _mag(h[j]))
        outs.append(ctx.vec_zero([x - y for x, y in zip(D, w)], f"(M_0 - E) w_{j}", _scale(ctx.M[0]) * wscale))
    return combine(outs)


@register("transpose-form", "H M_i H^-1 = t(M_i)")
def check_transpose_form(ctx: Context) -> Outcome:
    h = mono.intersection_vector(ctx.field)
    H_inv = Matrix.diagonal([1 / x for x in h], ctx.field)
    outs = [ctx.compare(ctx.H @ M @ H_inv, M.T, f"M{i}") for i, M in enumerate(ctx.M)]
    return combine(outs)


def _random_vector(ctx: Context) -> list:
    return [ctx.field.const(Fraction(ctx.rng.randint(-9, 9), ctx.rng.randint(1, 5))) for _ in range(ctx.n)]


@register("irreducibility-step-i", "for N_0 w != 0, w - M~_0 w is a nonzero multiple of e_v")
def check_step_i(ctx: Context) -> Outcome:
    N0 = mono.build_N0(ctx.field, ctx.v)
    outs = []
    tried = 0
    while tried < 3:
        w = _random_vector(ctx)
        nw = N0.apply(w)
        if all(x.is_zero() for x in nw):
            continue
        tried += 1
        diff = [x - y for x, y in zip(w, ctx.tM[0].apply(w))]
        outs.append(ctx.vec_zero(diff[:-1], "w - M~_0 w off e_v", max(1.0, _mag(diff[-1]))))
        outs.append(Outcome(not diff[-1].is_zero(), 0.0, "" if not diff[-1].is_zero() else "mu vanished"))
    return combine(outs)


def _specialize(ctx: Context, A: Matrix, rng: random.Random) -> Optional[Matrix]:
    """A at a random rational point (None if a denominator vanishes there)."""
    values = [Fraction(rng.randint(2, 60), rng.randint(1, 13)) for _ in range(ctx.m + 2)]
    field = _RationalField()
    try:
        rows = [[field.wrap(x.evaluate(values)) for x in r] for r in A.rows]
    except ZeroDivisionError:
        return None
    return Matrix(rows)


@register("irreducibility-step-ii", "pairings of ker t(v) with the vectors M~^I e_v force w = 0")
def check_step_ii(ctx: Context) -> Outcome:
    B = mono.basis_matrix(ctx.field)
    G = ctx.tH @ B.dualize()
    if not ctx.exact:
        return _rank_is(ctx, G, ctx.n, "H~ B^v")
    # the rank at a rational specialisation is a lower bound for the generic rank
    rng = random.Random(ctx.rng.random())
    for _ in range(5):
        S = _specialize(ctx, G, rng)
        if S is not None and _rational_rank(S) == ctx.n:
            return Outcome(True)
    return Outcome(False, float("inf"), "H~ B^v not of full rank at the sampled specialisations")


class _RationalField:
    def wrap(self, x):
        return Fraction(x)


def _rational_rank(A: Matrix) -> int:
    rows = [list(r) for r in A.rows]
    n, ncols = len(rows), len(rows[0])
    r = 0
    for k in range(ncols):
        piv = next((i for i in range(r, n) if rows[i][k] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, n):
            f = rows[i][k] / rows[r][k]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


# --------------------------------------------------------------------------
# runner
# --------------------------------------------------------------------------

def check_names() -> List[str]:
    return [c.name for c in CHECKS]


def sample_points(m: int, seed: int, count: int) -> List[ParameterPoint]:
    rng = random.Random(seed)
    return [random_irreducible_point(m, rng) for _ in range(count)]


def _make_context(m: int, backing: str, point: Optional[ParameterPoint], tol: float, mutation, seed: int) -> Context:
    field = ExactField(m) if backing == "exact" else NumericField.at(point)
    return Context(field, tol, mutation, random.Random(seed))


def _run_check(check: Check, contexts: List[Context]) -> CheckResult:
    start = time.perf_counter()
    exact = contexts[0].exact
    if exact and contexts[0].m > check.exact_max_m:
        return CheckResult(check.name, check.claim, "not-applicable", None,
                           f"exact run limited to m <= {check.exact_max_m}", time.perf_counter() - start)
    outs = []
    for ctx in contexts:
        try:
            outs.append(check.run(ctx))
        except Exception as exc:  # a crash is a failure entry, never an abort
            outs.append(Outcome(False, float("inf"), f"{type(exc).__name__}: {exc}"))
    elapsed = time.perf_counter() - start
    if not all(o.applicable for o in outs):
        return CheckResult(check.name, check.claim, "not-applicable", None, outs[0].witness, elapsed)
    total = combine(outs)
    if not total.ok:
        return CheckResult(check.name, check.claim, "fail", total.residual, total.witness, elapsed)
    if exact:
        return CheckResult(check.name, check.claim, "exact-pass", 0.0, "", elapsed)
    return CheckResult(check.name, check.claim, "numeric-pass", total.residual, "", elapsed)


def _worker(args):
    name, m, backing, seed, points, tol, mutation = args
    check = next(c for c in CHECKS if c.name == name)
    pts = [ParameterPoint(p[0], p[1], p[2]) for p in points] if points else [None]
    contexts = [_make_context(m, backing, p, tol, mutation, seed) for p in pts]
    return _run_check(check, contexts)


def run_suite(m: int, backing: str = "exact", seed: int = 0, points: int = 1,
              tol: float = DEFAULT_EPS, mutation: Optional[str] = None,
              checks: Optional[List[str]] = None, workers: int = 1) -> VerificationReport:
    """Run the registered checks.

    Exact runs need m <= 3 and use one symbolic context.  Numeric runs sample
    ``points`` random admissible parameter points from ``seed`` and report the
    worst residual over them.
    """
    if backing not in ("exact", "numeric"):
        raise ValueError(f"unknown backing {backing!r}")
    if m < 1:
        raise ValueError("m must be at least 1")
    if backing == "exact" and m > EXACT_MAX_M:
        raise ValueError(f"exact backing supports m <= {EXACT_MAX_M}")
    if backing == "numeric" and m > NUMERIC_MAX_M:
        raise ValueError(f"numeric backing supports m <= {NUMERIC_MAX_M}")
    if mutation is not None and mutation not in MUTATIONS:
        raise ValueError(f"unknown mutation {mutation!r}")
    selected = CHECKS if checks is None else [c for c in CHECKS if c.name in checks]
    if checks is not None and len(selected) != len(set(checks)):
        unknown = set(checks) - {c.name for c in CHECKS}
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    pts = sample_points(m, seed, points) if backing == "numeric" else []
    report = VerificationReport(m, backing, seed, [p.to_json() for p in pts], mutation=mutation)
    if workers > 1:
        raw = [(p.a, p.b, p.c) for p in pts]
        jobs = [(c.name, m, backing, seed, raw, tol, mutation) for c in selected]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = {r.name: r for r in pool.map(_worker, jobs)}
    else:
        contexts = [_make_context(m, backing, p, tol, mutation, seed) for p in (pts or [None])]
        results = {c.name: _run_check(c, contexts) for c in selected}
    report.results = [results[c.name] for c in selected]
    return report
