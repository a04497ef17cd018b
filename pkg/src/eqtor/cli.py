"""Command-line front end: verify suites, print generator actions, expand functions.

Exit codes: 0 all checks pass, 1 a relation check failed, 2 usage or
parameter error.  Complex values are given as ``re,im`` pairs (a bare float
is accepted); a JSON config file may supply the same fields, with flags
taking precedence.  EQTOR_THREADS caps suite parallelism.
"""

from __future__ import annotations

import argparse
import cmath
import json
import random
import sys

from .ellcore import (BalanceError, ParameterError, Params, PoleProximityError,
                      gkernel_branches, pf_expand, pochratio_series, qpoch, theta)
from .fock01 import (FockBasisVector, PhiAction, VectorBasis,
                     apply_xminus, apply_xplus, phi_action, vector_rep_apply)
from .partitions import ColoredPartition
from .relcheck import (RelationReport, SuiteConfig, fock_suite, heisenberg_suite,
                       level1_suite, reports_to_json, vector_suite)

USAGE_ERROR = 2
RELATION_ERROR = 1


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected 're' or 're,im', got {text!r}")


def fmt_complex(z: complex) -> str:
    return f"{z.real:+.12g}{z.imag:+.12g}j"


def build_params(args) -> Params:
    fields: dict = {}
    cfgfile = getattr(args, "config", None)
    if cfgfile:
        with open(cfgfile, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        for name in ("q", "kappa", "p", "u"):
            if name in raw:
                v = raw[name]
                fields[name] = complex(v[0], v[1]) if isinstance(v, list) else complex(v)
        for name in ("trunc_M", "tol", "seed", "level_k"):
            if name in raw:
                fields[name] = raw[name]
    for name in ("q", "kappa", "p", "u"):
        v = getattr(args, name, None)
        if v is not None:
            fields[name] = v
    for name in ("trunc_M", "tol", "seed"):
        v = getattr(args, name.lower(), None) if name != "trunc_M" else getattr(args, "terms", None)
        if v is not None:
            fields[name] = v
    return Params(**fields)


def add_param_flags(sub) -> None:
    sub.add_argument("--q", type=parse_complex, help="deformation parameter (re,im)")
    sub.add_argument("--kappa", type=parse_complex, help="cyclic twist parameter (re,im)")
    sub.add_argument("--p", type=parse_complex, help="elliptic nome (re,im)")
    sub.add_argument("--u", type=parse_complex, help="spectral parameter (re,im)")
    sub.add_argument("--terms", type=int, help="product/series truncation length")
    sub.add_argument("--tol", type=float, help="pass/fail tolerance")
    sub.add_argument("--seed", type=int, help="sampling seed")
    sub.add_argument("--config", help="JSON file with the same fields; flags win")
    sub.add_argument("--json", action="store_true", help="emit a JSON report")
    sub.add_argument("--output", help="write the report to this path")


def emit_reports(reports: list[RelationReport], args) -> int:
    if args.json:
        text = reports_to_json(reports)
    else:
        lines = []
        for r in reports:
            lines.append(f"{r.status.upper():4s} {r.relation_id:16s} rep={r.rep} "
                         f"samples={r.samples} skipped={r.skipped} "
                         f"max_residual={r.max_residual:.3e} worst={r.worst_case}")
        text = "\n".join(lines)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    return 0 if all(r.status == "pass" for r in reports) else RELATION_ERROR


def cmd_verify(args) -> int:
    try:
        params = build_params(args)
    except (ParameterError, ValueError) as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    cfg = SuiteConfig(max_size=args.max_size, window=args.window, degree=args.degree,
                      tol=params.tol, seed=params.seed)
    reports: list[RelationReport] = []
    try:
        if args.suite in ("fock", "all"):
            reports += fock_suite(params, args.N, args.k, cfg)
        if args.suite in ("vector", "all"):
            reports += vector_suite(params, args.N, args.k, cfg)
        if args.suite in ("heisenberg", "all"):
            reports += heisenberg_suite(params, args.type, degree=args.degree,
                                        window=args.window, cfg=cfg)
        if args.suite in ("level1", "all"):
            reports += level1_suite(params, args.type, args.a, degree=args.degree,
                                    window=args.window, cfg=cfg)
    except (ParameterError, ValueError) as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    return emit_reports(reports, args)


def cmd_act(args) -> int:
    try:
        params = build_params(args)
        lam = ColoredPartition.from_string(args.partition, args.N, args.k)
    except (ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    rows: list[dict] = []
    if args.rep == "fock":
        v = FockBasisVector(lam, FockBasisVector.vacuum(args.N, args.k).weight)
        if args.gen in ("x+", "x-"):
            out = (apply_xplus if args.gen == "x+" else apply_xminus)(args.color, v, params)
            for t in out:
                sup = t.supports[0].value(params)
                rows.append({
                    "support": [sup.real, sup.imag],
                    "coeff": [t.coeff.real, t.coeff.imag],
                    "result": str(t.payload.partition),
                    "weight_shift": {"root": t.payload.weight.root, "rq": t.payload.weight.rq},
                })
        elif args.gen == "phi":
            act = phi_action(args.color, v, params)
            for nsh, dsh in zip(act.spec.numer_shifts, act.spec.denom_shifts):
                nv, dv = nsh.value(params), dsh.value(params)
                rows.append({"theta_numer": [nv.real, nv.imag],
                             "theta_denom": [dv.real, dv.imag]})
            rows.append({"scalar": [act.spec.scalar_prefactor.real,
                                    act.spec.scalar_prefactor.imag],
                         "weight_shift": {"root": act.weight_shift.root,
                                          "rq": act.weight_shift.rq}})
        else:
            print(f"unknown generator {args.gen!r}", file=sys.stderr)
            return USAGE_ERROR
    elif args.rep == "vector":
        basis = VectorBasis(args.index, args.N, args.k)
        out = vector_rep_apply(args.gen, args.color, basis, params)
        if isinstance(out, PhiAction):
            rows.append({"scalar": [out.spec.scalar_prefactor.real,
                                    out.spec.scalar_prefactor.imag],
                         "factors": len(out.spec.numer_shifts)})
        else:
            for t in out:
                sup = t.supports[0].value(params)
                rows.append({"support": [sup.real, sup.imag],
                             "coeff": [t.coeff.real, t.coeff.imag],
                             "result": t.payload.index})
    else:
        print(f"unknown rep {args.rep!r}", file=sys.stderr)
        return USAGE_ERROR
    if args.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
    elif not rows:
        print("(empty)")
    else:
        for row in rows:
            print("  ".join(f"{k}={v}" for k, v in row.items()))
    return 0


def cmd_expand(args) -> int:
    try:
        params = build_params(args)
    except (ParameterError, ValueError) as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    terms = params.trunc_M
    try:
        if args.func == "theta":
            val = theta(args.z, params.p, terms) if args.z != 0 else None
            if val is None:
                raise ValueError("theta argument must be nonzero")
            print(fmt_complex(val))
        elif args.func == "qpoch":
            print(fmt_complex(qpoch(args.z, args.s if args.s is not None else params.p, terms)))
        elif args.func == "gkernel":
            s = args.s if args.s is not None else params.p
            series, poch = gkernel_branches(args.z, s, args.b, params.q, terms)
            if args.check:
                print(f"series     = {fmt_complex(series)}")
                print(f"pochhammer = {fmt_complex(poch)}")
                print(f"|diff|     = {abs(series - poch):.3e}")
            else:
                print(fmt_complex(poch))
        elif args.func == "ratio":
            coeffs = pochratio_series(args.a, args.b2, args.s if args.s is not None else params.p,
                                      args.order)
            for n, c in enumerate(coeffs):
                print(f"c[{n}] = {fmt_complex(c)}")
        elif args.func == "pf":
            rng = random.Random(params.seed)
            worst = 0.0
            for _ in range(args.samples):
                a = [cmath.rect(rng.uniform(0.5, 1.5), rng.uniform(0, 2 * cmath.pi))
                     for _ in range(args.n)]
                b = [cmath.rect(rng.uniform(0.5, 1.5), rng.uniform(0, 2 * cmath.pi))
                     for _ in range(args.n)]
                for _ in range(10):
                    t = cmath.rect(rng.uniform(0.5, 1.5), rng.uniform(0, 2 * cmath.pi))
                    prod_a = t
                    for x in a:
                        prod_a *= x
                    prod_b = 1.0 + 0j
                    for x in b:
                        prod_b *= x
                    try:
                        lhs, rhs = pf_expand(a, b + [prod_a / prod_b], t, params)
                    except PoleProximityError:
                        continue
                    worst = max(worst, abs(lhs - rhs) / (1 + abs(lhs)))
            print(f"max residual over {args.samples} balanced instances: {worst:.3e}")
        else:
            print(f"unknown function {args.func!r}", file=sys.stderr)
            return USAGE_ERROR
    except (ValueError, BalanceError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    return 0


def cmd_report(args) -> int:
    """Render a JSON report file as delimited text (CSV) and a summary table."""
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    cols = ["relation_id", "rep", "samples", "skipped", "max_residual", "status"]
    lines = [",".join(cols)]
    for row in data:
        lines.append(",".join(str(row.get(c, "")) for c in cols))
    text = "\n".join(lines)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    failed = [row for row in data if row.get("status") != "pass"]
    print(f"# {len(data) - len(failed)}/{len(data)} relations pass")
    return 0 if not failed else RELATION_ERROR


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eqtor",
                                 description="elliptic toroidal-algebra relation checker")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a relation-verification suite")
    v.add_argument("suite", choices=("fock", "vector", "heisenberg", "level1", "all"))
    v.add_argument("--N", type=int, default=3, help="number of colors (fock/vector)")
    v.add_argument("--k", type=int, default=0, help="root color (fock/vector)")
    v.add_argument("--type", default="A2", help="affine type tag (heisenberg/level1)")
    v.add_argument("--a", type=int, default=0, help="fundamental index (level1)")
    v.add_argument("--max-size", dest="max_size", type=int, default=6)
    v.add_argument("--degree", type=int, default=4)
    v.add_argument("--window", type=int, default=6)
    add_param_flags(v)
    v.set_defaults(handler=cmd_verify)

    a = sub.add_parser("act", help="print a generator action on a basis vector")
    a.add_argument("--rep", default="fock", choices=("fock", "vector"))
    a.add_argument("--gen", required=True, choices=("x+", "x-", "phi"))
    a.add_argument("--color", type=int, default=0)
    a.add_argument("--partition", default="", help="comma-separated parts, e.g. 3,1,1")
    a.add_argument("--index", type=int, default=0, help="basis index (vector rep)")
    a.add_argument("--N", type=int, default=3)
    a.add_argument("--k", type=int, default=0)
    add_param_flags(a)
    a.set_defaults(handler=cmd_act)

    e = sub.add_parser("expand", help="evaluate special functions")
    e.add_argument("func", choices=("theta", "qpoch", "gkernel", "ratio", "pf"))
    e.add_argument("--z", type=parse_complex, default=complex(0.5, 0.1))
    e.add_argument("--s", type=parse_complex, default=None)
    e.add_argument("--b", type=int, default=2)
    e.add_argument("--a", dest="a", type=parse_complex, default=complex(0.2, 0.0))
    e.add_argument("--b2", type=parse_complex, default=complex(0.5, 0.0))
    e.add_argument("--order", type=int, default=8)
    e.add_argument("--n", type=int, default=3)
    e.add_argument("--samples", type=int, default=10)
    e.add_argument("--check", action="store_true", help="print both branches and their gap")
    add_param_flags(e)
    e.set_defaults(handler=cmd_expand)

    r = sub.add_parser("report", help="render a JSON report as CSV")
    r.add_argument("input", help="JSON report file")
    r.add_argument("--output", help="write the CSV here")
    r.set_defaults(handler=cmd_report)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
