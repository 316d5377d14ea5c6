"""Command line interface: ``fusionring {fuse,verify,smatrix,paths,table}``.

Exit codes: 0 success, 1 usage or guard error, 2 a verification failed or
methods disagreed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

import numpy as np

from .config import MAX_VERLINDE_RANK, TOL
from .core import (
    FusionContext,
    InvalidPartitionError,
    format_partition,
    format_weight,
    parse_partition,
    parse_weight,
    partition_to_weight,
    weight_to_partition,
)
from .fusion_verlinde import RankTooLarge, s_matrix
from .identities import METHODS, available_methods, cross_validate
from .symfunc import FusionExpansion
from .vertex_model import count_paths, hook_content_sum

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2

# largest basis we are willing to sweep over from the command line
MAX_BASIS = 400


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _context(args) -> FusionContext:
    if args.n < 2 or args.k < 0:
        raise UsageError(f"need n >= 2 and k >= 0, got n={args.n} k={args.k}")
    ctx = FusionContext(args.n, args.k)
    if ctx.dim > MAX_BASIS:
        raise UsageError(f"level-{args.k} basis for n={args.n} has {ctx.dim} weights (limit {MAX_BASIS})")
    return ctx


def _partition(text: str, ctx: FusionContext):
    if text is None:
        raise UsageError("missing partition argument")
    text = text.strip()
    if text.startswith("["):
        return weight_to_partition(parse_weight(text), ctx)
    return ctx.check(parse_partition(text))


def _terms_text(exp: FusionExpansion) -> list[str]:
    if not exp:
        return ["0"]
    return [f"{format_partition(lam)}: {c}" for lam, c in exp.sorted_items()]


def cmd_fuse(args) -> int:
    ctx = _context(args)
    lam, mu = _partition(args.lam, ctx), _partition(args.mu, ctx)
    if args.method == "all":
        names = available_methods(ctx)
    else:
        if args.method == "verlinde" and ctx.n > MAX_VERLINDE_RANK:
            raise UsageError(f"verlinde needs n <= {MAX_VERLINDE_RANK}")
        names = [args.method]
    results = {name: METHODS[name](lam, mu, ctx) for name in names}
    first = results[names[0]]
    agreeing = sum(1 for r in results.values() if dict(r) == dict(first))
    if args.format == "json":
        out = first.to_dict()
        if args.method == "all":
            out["methods"] = {name: r.to_dict()["terms"] for name, r in results.items()}
            out["agree"] = agreeing == len(names)
        print(json.dumps(out))
    else:
        print("\n".join(_terms_text(first)))
        if args.method == "all":
            verdict = "AGREE" if agreeing == len(names) else "DISAGREE"
            print(f"{verdict}({agreeing}/{len(names)})")
            if agreeing != len(names):
                for name, r in results.items():
                    print(f"  {name}: " + "; ".join(_terms_text(r)))
    return EXIT_OK if agreeing == len(names) else EXIT_FAIL


def cmd_verify(args) -> int:
    ctx = _context(args)
    tol = TOL
    if args.tolerance is not None:
        t = args.tolerance
        tol = replace(TOL, unitarity=t, spectral=t, s_from_bethe=t, bethe_residual=t)
    report = cross_validate(ctx, jobs=args.jobs, tol=tol)
    print(report.to_json() if args.format == "json" else report.to_text())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_smatrix(args) -> int:
    ctx = _context(args)
    s = s_matrix(ctx)
    if args.format == "json":
        print(json.dumps({
            "n": ctx.n,
            "k": ctx.k,
            "basis": [list(p) for p in ctx.partitions],
            "matrix": [[[float(v.real), float(v.imag)] for v in row] for row in s],
        }))
        return EXIT_OK
    labels = [format_partition(p) for p in ctx.partitions]
    print("basis: " + "  ".join(labels))
    for label, row in zip(labels, s):
        cells = "  ".join(f"{v.real:+.6f}{v.imag:+.6f}i" for v in row)
        print(f"{label:>8}  {cells}")
    return EXIT_OK


def cmd_paths(args) -> int:
    ctx = _context(args)
    mu = partition_to_weight(_partition(args.mu, ctx), ctx)
    nu = partition_to_weight(_partition(args.nu, ctx), ctx)
    degrees = [args.d] if args.d is not None else list(range(ctx.n * ctx.k + 1))
    fuse = METHODS[args.method if args.method in METHODS else "bethe"]
    rows = []
    for d in degrees:
        if d < 0:
            raise UsageError("d must be nonnegative")
        rows.append((d, count_paths(mu, nu, d, ctx), hook_content_sum(mu, nu, d, ctx, fuse)))
    ok = all(c == h for _, c, h in rows)
    if args.format == "json":
        print(json.dumps({
            "n": ctx.n, "k": ctx.k, "mu": list(mu), "nu": list(nu),
            "rows": [{"d": d, "configurations": c, "hook_content_sum": int(h) if h.denominator == 1 else str(h)} for d, c, h in rows],
            "equal": ok,
        }))
    else:
        print(f"mu={format_weight(mu)} nu={format_weight(nu)}")
        for d, c, h in rows:
            print(f"d={d}  {c}  {h}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_table(args) -> int:
    ctx = _context(args)
    fuse = METHODS[args.method if args.method in METHODS else "bethe"]
    labels = [format_partition(p) for p in ctx.partitions]
    tables = {}
    for a, lam in enumerate(ctx.partitions):
        mat = np.zeros((ctx.dim, ctx.dim), dtype=int)
        for b, mu in enumerate(ctx.partitions):
            for nu, c in fuse(lam, mu, ctx).items():
                mat[ctx.partition_index[nu], b] = c
        tables[labels[a]] = mat
    if args.format == "json":
        print(json.dumps({
            "n": ctx.n, "k": ctx.k, "basis": [list(p) for p in ctx.partitions],
            "matrices": {lab: m.tolist() for lab, m in tables.items()},
        }))
        return EXIT_OK
    width = max(len(x) for x in labels)
    for lab, mat in tables.items():
        print(f"N[{lab}]  (rows nu, columns mu)")
        print(" " * (width + 2) + " ".join(f"{x:>{width}}" for x in labels))
        for rl, row in zip(labels, mat):
            print(f"{rl:>{width}}  " + " ".join(f"{v:>{width}}" for v in row))
        print()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fusionring", description="su(n) level-k fusion rings")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--tolerance", type=float, default=None)
        return p

    methods = tuple(METHODS) + ("all",)
    p = common(sub.add_parser("fuse", help="fusion product of two weights"))
    p.add_argument("--lambda", dest="lam", required=True, help='partition such as "3,1" or "0"')
    p.add_argument("--mu", required=True)
    p.add_argument("--method", choices=methods, default="bethe")
    p.set_defaults(func=cmd_fuse)

    p = common(sub.add_parser("verify", help="run every consistency check"))
    p.set_defaults(func=cmd_verify)

    p = common(sub.add_parser("smatrix", help="print the S-matrix"))
    p.set_defaults(func=cmd_smatrix)

    p = common(sub.add_parser("paths", help="lattice configuration counts"))
    p.add_argument("--mu", required=True, help='partition "3,1" or Dynkin labels "[1,2,1]"')
    p.add_argument("--nu", required=True)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--method", choices=tuple(METHODS), default="bethe")
    p.set_defaults(func=cmd_paths)

    p = common(sub.add_parser("table", help="all fusion matrices"))
    p.add_argument("--method", choices=tuple(METHODS), default="bethe")
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidPartitionError, RankTooLarge, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
