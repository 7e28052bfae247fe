"""Command-line interface.

    fcmono matrices --m 2 --basis tilde --name Htilde --backing exact
    fcmono verify   --m 2 --backing exact
    fcmono classify --m 1 --a -1 --b 1/3 --c 1/5
    fcmono series   --a 1/3 --b 2/7 --c 1/5 --index 1 --N 20
    fcmono export   --m 2 --out tests/golden

Exit status: 0 success, 1 a check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

from . import classify as cls
from . import series as ser
from .export import dumps, matrix_to_json, write_all
from .indexing import BinaryIndex
from .monodromy import BASES, named_matrices
from .params import ParameterPoint, parse_param
from .scalars import DEFAULT_EPS, DenominatorVanishes, ExactField, NumericField
from .verify import EXACT_MAX_M, MUTATIONS, NUMERIC_MAX_M, check_names, run_suite

TOL_ENV = "FC_MONO_TOL"


class UsageError(Exception):
    pass


def default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_EPS
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"{TOL_ENV} must be a number, got {raw!r}")
    if not tol > 0:
        raise UsageError(f"{TOL_ENV} must be positive")
    return tol


def _point(args, m: Optional[int] = None) -> ParameterPoint:
    if args.a is None or args.b is None or not args.c:
        raise UsageError("parameters --a, --b and --c are required")
    try:
        c = tuple(parse_param(x) for x in args.c)
        p = ParameterPoint(parse_param(args.a), parse_param(args.b), c)
    except ValueError as exc:
        raise UsageError(f"bad parameter: {exc}")
    if m is not None and p.m != m:
        raise UsageError(f"--c has {p.m} values but --m is {m}")
    return p


def _has_params(args) -> bool:
    return any(x is not None and x != [] for x in (args.a, args.b, args.c))


def _field(args, tol: float):
    if args.backing == "exact":
        if _has_params(args):
            raise UsageError("--backing exact is symbolic and takes no --a/--b/--c")
        if args.m > EXACT_MAX_M:
            raise UsageError(f"exact backing supports m <= {EXACT_MAX_M}")
        return ExactField(args.m)
    return NumericField.at(_point(args, args.m), tol)


def _emit(obj, text: str, fmt: str):
    sys.stdout.write(dumps(obj) if fmt == "json" else text + "\n")


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def cmd_matrices(args, tol: float) -> int:
    field = _field(args, tol)
    mats = named_matrices(field, args.basis)
    if args.name:
        if args.name not in mats:
            raise UsageError(f"no matrix {args.name!r} in basis {args.basis}; choose from {', '.join(mats)}")
        mats = {args.name: mats[args.name]}
    objs = [matrix_to_json(field.m, args.basis, name, M, field) for name, M in mats.items()]
    text = "\n\n".join(f"{o['basis']} {o['name']}:\n" + "\n".join("  " + ", ".join(r) for r in o["entries"]) for o in objs)
    _emit(objs[0] if args.name else objs, text, args.format)
    return 0


def cmd_verify(args, tol: float) -> int:
    if args.backing == "exact" and args.m > EXACT_MAX_M:
        raise UsageError(f"exact backing supports m <= {EXACT_MAX_M}")
    if args.m > NUMERIC_MAX_M:
        raise UsageError(f"numeric backing supports m <= {NUMERIC_MAX_M}")
    checks = args.check or None
    if checks:
        unknown = sorted(set(checks) - set(check_names()))
        if unknown:
            raise UsageError(f"unknown checks {unknown}; known: {', '.join(check_names())}")
    report = run_suite(args.m, args.backing, seed=args.seed, points=args.points, tol=tol,
                       mutation=args.mutation, checks=checks, workers=args.workers)
    _emit(report.to_json(args.timings), report.table(), args.format)
    return 0 if report.ok else 1


def _report_table(rep: cls.ClassificationReport, residual) -> str:
    lines = [f"parameters      {rep.point}",
             f"irreducible     {rep.irreducible}",
             "failures        " + (", ".join(f"I={f.index} {f.which}^I={f.value}" for f in rep.failures) or "none"),
             "c integral      " + (", ".join(f"c{k}" for k in rep.c_integrality) or "none"),
             f"lambda = 1      {rep.lambda_is_one}"]
    sub = rep.invariant_subspace
    if sub is not None:
        lines.append(f"subspace        {sub.case}, {sub.basis_label}, dim {sub.dimension}: "
                     + " ".join(str(i) for i in sub.indices))
    if residual is not None:
        lines.append(f"residual        {residual:.3e}")
    if rep.near_misses:
        lines.append("near misses     " + ", ".join(f"I={n.index} {n.which} ({n.distance:.1e})" for n in rep.near_misses))
    lines.append(f"note            {rep.note}")
    return "\n".join(lines)


def cmd_classify(args, tol: float) -> int:
    p = _point(args, args.m)
    rep = cls.classify(p, tol)
    obj = rep.to_json()
    residual = None
    if args.check_subspace:
        if rep.invariant_subspace is None:
            raise UsageError("--check-subspace needs a reducible point with a single failure")
        residual = cls.verify_invariant_subspace(rep.invariant_subspace, p)
        obj["subspace_residual"] = residual
    _emit(obj, _report_table(rep, residual), args.format)
    if residual is not None and not residual < tol:
        return 1
    return 0


def _points_arg(raw: Optional[List[str]], m: int):
    if not raw:
        return [ser.base_point(m)]
    out = []
    for item in raw:
        coords = tuple(parse_param(x) for x in item.split(","))
        if len(coords) != m:
            raise UsageError(f"point {item!r} has {len(coords)} coordinates, expected {m}")
        out.append(coords)
    return out


def _coord_str(x) -> str:
    return str(x) if not isinstance(x, complex) else repr(x)


def cmd_series(args, tol: float) -> int:
    p = _point(args, args.m)
    index = None
    if args.index is not None:
        try:
            index = BinaryIndex.parse(args.index)
        except ValueError as exc:
            raise UsageError(str(exc))
        if index.m != p.m:
            raise UsageError(f"--index has length {index.m}, expected {p.m}")
    if args.N < 0:
        raise UsageError("--N must be non-negative")
    records = []
    if index is None:
        table = ser.fc_coefficients(p.a, p.b, p.c, args.N)
        pref = 1
    else:
        table = ser.solution_series(p, index, args.N)
        pref = ser.gamma_prefactor(p, index)
    for x in _points_arg(args.x, p.m):
        value = complex(pref * table.evaluate(x))
        rec = {
            "point": [_coord_str(v) for v in x],
            "in_domain": ser.in_domain(x),
            "value": [float(f"{value.real:.17g}"), float(f"{value.imag:.17g}")],
            "truncation_order": args.N,
            "estimated_tail": float(f"{abs(pref) * table.tail_estimate(x):.17g}"),
        }
        if index is not None:
            rec["index"] = str(index)
        records.append(rec)
    out = {"parameters": p.to_json(), "records": records}
    status = 0
    if args.residual and index is not None:
        res = ser.pde_residual(p, index, args.N)
        out["pde_residual"] = float(res)
        status = 0 if (res == 0 or float(res) < tol) else 1
    text = "\n".join(f"x={r['point']}  value={complex(*r['value']):.17g}  tail~{r['estimated_tail']:.2e}" for r in records)
    if "pde_residual" in out:
        text += f"\npde residual {out['pde_residual']:.3e}"
    _emit(out, text, args.format)
    return status


def cmd_export(args, tol: float) -> int:
    field = _field(args, tol)
    bases = BASES if args.basis is None else (args.basis,)
    paths = write_all(field, args.out, bases)
    for path in paths:
        print(path)
    return 0


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def _add_params(p: argparse.ArgumentParser):
    p.add_argument("--a", help="parameter a ('p/q' exact, decimal or complex)")
    p.add_argument("--b", help="parameter b")
    p.add_argument("--c", nargs="+", default=[], help="c_1 ... c_m")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fcmono", description="Monodromy of the Lauricella F_C system.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt="json"):
        p.add_argument("--format", choices=("json", "table"), default=fmt)

    mp = sub.add_parser("matrices", help="print builder output")
    mp.add_argument("--m", type=int, required=True)
    mp.add_argument("--basis", choices=BASES, default="plain")
    mp.add_argument("--name", help="H, M0, M1.., Pm (plain) or Htilde, M0, M1.., N0 (tilde)")
    mp.add_argument("--backing", choices=("exact", "numeric"), default="exact")
    _add_params(mp)
    common(mp)

    vp = sub.add_parser("verify", help="run the identity suite")
    vp.add_argument("--m", type=int, required=True)
    vp.add_argument("--backing", choices=("exact", "numeric"), default="exact")
    vp.add_argument("--seed", type=int, default=0)
    vp.add_argument("--points", type=int, default=1, help="random points (numeric backing)")
    vp.add_argument("--mutation", choices=MUTATIONS)
    vp.add_argument("--check", action="append", help="run only this check (repeatable)")
    vp.add_argument("--workers", type=int, default=1)
    vp.add_argument("--timings", action="store_true", help="include elapsed times in JSON")
    common(vp, "table")

    cp = sub.add_parser("classify", help="irreducibility report")
    cp.add_argument("--m", type=int)
    _add_params(cp)
    cp.add_argument("--check-subspace", action="store_true", help="also measure the subspace residual")
    common(cp)

    sp = sub.add_parser("series", help="evaluate F_C or F_I")
    sp.add_argument("--m", type=int)
    _add_params(sp)
    sp.add_argument("--index", help="bit string I; omit for F_C itself")
    sp.add_argument("--x", action="append", help="comma-separated point (repeatable); default base point")
    sp.add_argument("--N", type=int, default=20)
    sp.add_argument("--residual", action="store_true", help="also report the PDE residual (needs --index)")
    common(sp)

    ep = sub.add_parser("export", help="write golden JSON fixtures")
    ep.add_argument("--m", type=int, required=True)
    ep.add_argument("--basis", choices=BASES)
    ep.add_argument("--backing", choices=("exact", "numeric"), default="exact")
    ep.add_argument("--out", required=True)
    _add_params(ep)
    return parser


HANDLERS = {
    "matrices": cmd_matrices,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "series": cmd_series,
    "export": cmd_export,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "m", None) is not None and args.m < 1:
            raise UsageError("--m must be at least 1")
        tol = getattr(args, "tol", None) or default_tol()
        return HANDLERS[args.command](args, tol)
    except UsageError as exc:
        print(f"fcmono {args.command}: {exc}", file=sys.stderr)
        return 2
    except (DenominatorVanishes, ser.GammaPole, ser.PochhammerPole) as exc:
        print(f"fcmono {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
