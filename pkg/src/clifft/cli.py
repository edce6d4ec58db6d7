"""Command-line harness.

Subcommands: roots (classify/verify/sample), split, cft, convolve (plus
convolve verify-theorem), check, plot-manifold, and gen-field for producing
signal files from the shell.  Report-producing paths write machine-readable
output (JSON/CSV) and render a matplotlib PNG alongside it.

Exit codes: 0 success, 1 check failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import Algebra
from .convolution import convolve, verify_convolution_theorem
from .errors import ClifftError
from .field import (
    GridGeometry,
    field_norm,
    generate,
    load_field,
    save_field,
)
from .roots import classify_algebra, load_roots, sample_root, save_roots
from .split import split_field
from .suite import SuiteConfig, run_suite
from .transform import cft_forward, cft_inverse, make_plan


def _axes_arg(text: str) -> frozenset[int]:
    text = text.strip()
    if not text or text == "none":
        return frozenset()
    return frozenset(int(tok) for tok in text.split(","))


def _load_one_root(path: str):
    roots = load_roots(path)
    if not roots:
        raise ClifftError(f"{path}: no root records")
    return roots[0]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clifft", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    roots = sub.add_parser("roots", help="classify algebras; verify and sample roots of -1")
    roots_sub = roots.add_subparsers(dest="roots_command", required=True)

    rc = roots_sub.add_parser("classify", help="matrix-ring class of Cl(p,q)")
    rc.add_argument("p", type=int)
    rc.add_argument("q", type=int)

    rv = roots_sub.add_parser("verify", help="re-verify a JSON root record file")
    rv.add_argument("file")
    rv.add_argument("--tol", type=float, default=1e-10)

    rs = roots_sub.add_parser("sample", help="sample roots by seeded conjugation")
    rs.add_argument("p", type=int)
    rs.add_argument("q", type=int)
    rs.add_argument("--seed", type=int, default=0)
    rs.add_argument("--count", type=int, default=1)
    rs.add_argument("--out", required=True)

    sp = sub.add_parser("split", help="split a field into its plus/minus halves")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--f", dest="froot", required=True)
    sp.add_argument("--g", dest="groot", required=True)
    sp.add_argument("--out-plus", required=True)
    sp.add_argument("--out-minus", required=True)

    cft = sub.add_parser("cft", help="two-sided transform of a field file")
    cft.add_argument("direction", choices=["forward", "inverse"])
    cft.add_argument("--in", dest="infile", required=True)
    cft.add_argument("--f", dest="froot", required=True)
    cft.add_argument("--g", dest="groot", required=True)
    cft.add_argument("--left-axes", type=_axes_arg, default=frozenset({1}))
    cft.add_argument("--mode", choices=["fft", "direct"], default=None)
    cft.add_argument("--out", required=True)

    conv = sub.add_parser("convolve", help="cyclic convolution; verify-theorem checks the spectrum law")
    conv.add_argument("action", nargs="?", choices=["verify-theorem"], default=None)
    conv.add_argument("--a", dest="afile", required=True)
    conv.add_argument("--b", dest="bfile", required=True)
    conv.add_argument("--out")
    conv.add_argument("--f", dest="froot")
    conv.add_argument("--g", dest="groot")
    conv.add_argument("--left-axes", type=_axes_arg, default=frozenset({1}))
    conv.add_argument("--report")

    chk = sub.add_parser("check", help="run the property-check suites")
    chk.add_argument("--suite", action="append", dest="suites", default=None,
                     choices=["core", "roots", "split", "cft", "theorems", "convolution"])
    chk.add_argument("--seed", type=int, default=7)
    chk.add_argument("--report", help="write JSON here, plus CSV and PNG siblings")
    chk.add_argument("--tolerance-scale", type=float, default=1.0)
    chk.add_argument("--no-figure", action="store_true")

    pm = sub.add_parser("plot-manifold", help="n=2 root-manifold slice as CSV (+ PNG)")
    pm.add_argument("p", type=int)
    pm.add_argument("q", type=int)
    pm.add_argument("--out", required=True)
    pm.add_argument("--samples", type=int, default=41)
    pm.add_argument("--extent", type=float, default=1.5)
    pm.add_argument("--no-figure", action="store_true")

    gf = sub.add_parser("gen-field", help="write a generated signal to a field file")
    gf.add_argument("kind", choices=["delta", "constant", "gaussian", "random"])
    gf.add_argument("p", type=int)
    gf.add_argument("q", type=int)
    gf.add_argument("--dims", required=True, help="comma-separated samples per axis")
    gf.add_argument("--quadrature", nargs=2, type=float, metavar=("LO", "HI"),
                    help="uniform domain [LO, HI) on every axis (default: cyclic grid)")
    gf.add_argument("--seed", type=int, default=0)
    gf.add_argument("--sigma", type=float, default=1.0)
    gf.add_argument("--out", required=True)

    return parser


def _cmd_roots(args) -> int:
    if args.roots_command == "classify":
        rc = classify_algebra(Algebra(args.p, args.q))
        print(json.dumps({"p": args.p, "q": args.q, "s8": rc.s8, "ring": rc.ring, "d": rc.d}, sort_keys=True))
        return 0
    if args.roots_command == "verify":
        roots = load_roots(args.file, tol=args.tol)
        for k, r in enumerate(roots):
            print(json.dumps({"index": k, "residual": r.residual, "spec": r.spec, "kind": r.kind}, sort_keys=True))
        return 0
    algebra = Algebra(args.p, args.q)
    roots = [sample_root(algebra, args.seed + k) for k in range(args.count)]
    save_roots(args.out, roots)
    print(f"wrote {len(roots)} root records to {args.out}")
    return 0


def _cmd_split(args) -> int:
    h = load_field(args.infile)
    f = _load_one_root(args.froot)
    g = _load_one_root(args.groot)
    hp, hm = split_field(h, f, g)
    save_field(hp, args.out_plus)
    save_field(hm, args.out_minus)
    print(f"wrote {args.out_plus} and {args.out_minus}")
    return 0


def _cmd_cft(args) -> int:
    h = load_field(args.infile)
    f = _load_one_root(args.froot)
    g = _load_one_root(args.groot)
    plan = make_plan(f, g, h.grid, left_axes=args.left_axes, mode=args.mode)
    out = cft_forward(h, plan) if args.direction == "forward" else cft_inverse(h, plan)
    save_field(out, args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_convolve(args, parser) -> int:
    a = load_field(args.afile)
    b = load_field(args.bfile)
    if args.action == "verify-theorem":
        if not (args.froot and args.groot and args.report):
            parser.error("convolve verify-theorem needs --f, --g, and --report")
        f = _load_one_root(args.froot)
        g = _load_one_root(args.groot)
        plan = make_plan(f, g, a.grid, left_axes=args.left_axes)
        report = verify_convolution_theorem(a, b, plan)
        payload = {
            "max_rel_error": report.max_rel_error,
            "norm_rel_error": report.norm_rel_error,
            "term_norms": list(report.term_norms),
            "lhs_norm": field_norm(report.lhs),
            "phase_note": report.phase_note,
        }
        Path(args.report).write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n", encoding="utf-8")
        print(f"norm_rel_error = {report.norm_rel_error:.3e}; report written to {args.report}")
        return 0 if report.norm_rel_error <= 1e-9 else 1
    if not args.out:
        parser.error("convolve needs --out")
    save_field(convolve(a, b), args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_check(args) -> int:
    cfg = SuiteConfig(
        seed=args.seed,
        suites=tuple(args.suites) if args.suites else SuiteConfig().suites,
        tolerance_scale=args.tolerance_scale,
    )
    report = run_suite(cfg)
    width = max((len(r.name) for r in report.results), default=10)
    for r in report.results:
        err = "-" if r.max_error is None else f"{r.max_error:.3e}"
        tol = "-" if r.tolerance is None else f"{r.tolerance:.1e}"
        line = f"{r.status.upper():8s} {r.name:{width}s} max_error={err:>10s} tolerance={tol}"
        if r.reason:
            line += f"  ({r.reason})"
        print(line)
    c = report.counts
    print(f"summary: {c['pass']} pass, {c['fail']} fail, {c['skipped']} skipped")
    if args.report:
        out = Path(args.report)
        out.write_text(json.dumps(report.to_dict(), indent=1, sort_keys=True) + "\n", encoding="utf-8")
        from .plotting import render_report_figure, write_report_csv

        write_report_csv(report, out.with_suffix(".csv"))
        if not args.no_figure:
            render_report_figure(report, out.with_suffix(".png"))
        print(f"report written to {out} (+ .csv{'' if args.no_figure else ', .png'})")
    return 0 if report.ok else 1


def _cmd_plot_manifold(args) -> int:
    from .plotting import emit_plot_data, render_manifold_figure

    out = Path(args.out)
    points = emit_plot_data((args.p, args.q), out, samples=args.samples, extent=args.extent)
    print(f"wrote {len(points)} points to {out}")
    if not args.no_figure:
        png = out.with_suffix(".png")
        render_manifold_figure(points, png, title=f"square roots of -1 in Cl({args.p},{args.q})")
        print(f"figure written to {png}")
    return 0


def _cmd_gen_field(args) -> int:
    algebra = Algebra(args.p, args.q)
    dims = tuple(int(d) for d in args.dims.split(","))
    if args.quadrature:
        lo, hi = args.quadrature
        grid = GridGeometry.quadrature(dims, (lo,) * len(dims), (hi,) * len(dims))
    else:
        grid = GridGeometry(dims=dims, mode="cyclic")
    params = {}
    if args.kind == "random":
        params["seed"] = args.seed
    elif args.kind == "gaussian":
        params["sigmas"] = args.sigma
    h = generate(args.kind, algebra, grid, **params)
    save_field(h, args.out)
    print(f"wrote {args.out}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "roots":
            return _cmd_roots(args)
        if args.command == "split":
            return _cmd_split(args)
        if args.command == "cft":
            return _cmd_cft(args)
        if args.command == "convolve":
            return _cmd_convolve(args, parser)
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "plot-manifold":
            return _cmd_plot_manifold(args)
        if args.command == "gen-field":
            return _cmd_gen_field(args)
    except (ClifftError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
