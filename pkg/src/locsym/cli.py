"""Command-line front end.

Subcommands: gen-symbol, recover, impulse, deconvolve, bench.  Exit codes:
0 success, 2 validation error, 3 numerical failure.  Estimates are written
as PGM (viewable) plus CSV (exact) with a JSON sidecar embedding the full
resolved configuration, so every run is self-describing.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import __version__
from .bench import (SCHEMA_VERSION, bench_all, parse_window, report_csv,
                    report_text, window_system_from_config)
from .core import WindowSystem, dft_basis, hermite_system, standard_basis
from .errors import NumericalError, ValidationError
from .mapio import load_map, save_csv, save_pgm
from .operator import build_locop, eigendecompose, load_locop, save_locop
from .recovery import (deconvolve, gp_recover, impulse_kernel, pt_recover,
                       was_recover, wawd_recover, wn_recover)
from .symbols import SymbolSpec, compress_positive_frequency, gen_symbol


def _limit_threads(threads: int):
    if threads <= 0:
        return
    try:
        import threadpoolctl
    except ImportError:
        return
    threadpoolctl.threadpool_limits(threads)


def _parse_basis(spec: str, size: int):
    if spec == "standard":
        return standard_basis(size)
    if spec == "dft":
        return dft_basis(size)
    if spec.startswith("hermite:"):
        body = spec.split(":", 1)[1]
        try:
            count_part, at = body.split("@") if "@" in body else (body, "0,0")
            count = int(count_part)
            n0, m0 = (int(v) for v in at.split(","))
        except ValueError as exc:
            raise ValidationError(f"bad basis spec {spec!r}") from exc
        return hermite_system(size, count, (n0, m0))
    raise ValidationError(f"unknown basis {spec!r}")


def _parse_region(spec: str, size: int):
    try:
        n0, m0, n1, m1 = (int(v) for v in spec.split(","))
    except ValueError as exc:
        raise ValidationError(f"bad region {spec!r}, expected n0,m0,n1,m1") from exc
    points = [(n % size, m % size)
              for n in range(n0, n1 + 1) for m in range(m0, m1 + 1)]
    if not points:
        raise ValidationError(f"region {spec!r} is empty")
    return points


def _write_outputs(grid, out: str, sidecar: dict, value_range):
    base = out[:-4] if out.lower().endswith((".pgm", ".csv")) else out
    save_pgm(grid, base + ".pgm", value_range)
    save_csv(grid, base + ".csv")
    with open(base + ".json", "w") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _cmd_gen_symbol(args) -> int:
    params = json.loads(args.params) if args.params else {}
    if args.kind == "circle" and args.radius is not None:
        params.setdefault("radius", args.radius)
    spec = SymbolSpec(args.kind, args.size, params,
                      (args.range_lo, args.range_hi))
    grid = gen_symbol(spec)
    save_pgm(grid, args.out, spec.value_range)
    if args.csv:
        save_csv(grid, args.csv)
    return 0


def _cmd_recover(args) -> int:
    value_range = (args.range_lo, args.range_hi)
    symbol = load_map(args.symbol, value_range)
    if symbol.shape[0] != args.size:
        raise ValidationError(
            f"symbol size {symbol.shape[0]} != --size {args.size}"
        )
    if args.compress_positive_frequency:
        symbol = compress_positive_frequency(symbol)
    windows = window_system_from_config(args.window.split(","), args.size)
    phi = (parse_window(args.recon_window, args.size)
           if args.recon_window else windows.windows[0])

    tic = time.perf_counter()
    if args.operator:
        op = load_locop(args.operator)
        if op.size != args.size:
            raise ValidationError("loaded operator size mismatch")
    else:
        op = build_locop(symbol, windows)
    if args.dump_operator:
        save_locop(op, args.dump_operator)

    spectrum = None
    terms = args.eigs or args.size
    meta = {
        "schema_version": SCHEMA_VERSION,
        "version": __version__,
        "method": args.method,
        "size": args.size,
        "symbol": args.symbol,
        "symbol_hash": op.symbol_hash,
        "window": args.window,
        "recon_window": args.recon_window,
        "value_range": list(value_range),
        "compress_positive_frequency": args.compress_positive_frequency,
    }
    if args.method == "wn":
        result = wn_recover(op, phi, args.noise_draws, args.sigma2, args.seed)
        meta.update(draws=args.noise_draws, sigma2=args.sigma2, seed=args.seed,
                    sigma2_hat=result.meta["noise_var_hat"])
    elif args.method in ("was", "wawd"):
        spectrum = eigendecompose(op)
        if args.method == "was":
            result = was_recover(spectrum, WindowSystem.single(phi), terms)
        else:
            result = wawd_recover(spectrum, terms)
        meta.update(eig_terms=terms, eig_tail_mass=result.meta["eig_tail_mass"])
    elif args.method == "pt":
        basis = _parse_basis(args.basis, args.size)
        result = pt_recover(op, basis, phi)
        meta.update(basis=args.basis)
    elif args.method == "gp":
        region = _parse_region(args.region, args.size) if args.region else None
        result = gp_recover(op, phi, region)
        meta.update(region=args.region)
    else:  # argparse choices should prevent this
        raise ValidationError(f"unknown method {args.method!r}")
    meta["seconds"] = time.perf_counter() - tic

    out_range = value_range
    if args.method in ("wn", "pt"):
        out_range = (0.0, max(1.0, value_range[1] ** 2))
    _write_outputs(result.estimate, args.out, meta, out_range)
    return 0


def _cmd_impulse(args) -> int:
    windows = window_system_from_config(args.window.split(","), args.size)
    phi = (parse_window(args.recon_window, args.size)
           if args.recon_window else windows.windows[0])
    kernel = impulse_kernel(windows, phi, mode=args.mode,
                            estimator=args.estimator)
    sidecar = {
        "schema_version": SCHEMA_VERSION,
        "mode": args.mode,
        "estimator": args.estimator,
        "window": args.window,
        "size": args.size,
        "kernel_mass": float(kernel.sum()),
    }
    _write_outputs(kernel, args.out, sidecar, (0.0, float(kernel.max()) or 1.0))
    return 0


def _cmd_deconvolve(args) -> int:
    est = load_map(args.est, (args.range_lo, args.range_hi))
    kernel = load_map(args.kernel)
    out = deconvolve(est, kernel, args.eps)
    sidecar = {
        "schema_version": SCHEMA_VERSION,
        "est": args.est,
        "kernel": args.kernel,
        "eps": args.eps,
    }
    _write_outputs(out, args.out, sidecar, (args.range_lo, args.range_hi))
    return 0


def _cmd_bench(args) -> int:
    with open(args.config) as fh:
        config = json.load(fh)
    if config.get("schema_version", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise ValidationError(
            f"unsupported config schema_version {config.get('schema_version')!r}"
        )
    report = bench_all(config)
    import os

    os.makedirs(args.out, exist_ok=True)
    with open(os.path.join(args.out, "report.json"), "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    with open(os.path.join(args.out, "report.txt"), "w") as fh:
        fh.write(report_text(report))
    with open(os.path.join(args.out, "report.csv"), "w") as fh:
        fh.write(report_csv(report))
    sys.stdout.write(report_text(report))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="locsym",
        description="Time-frequency localization operators and symbol recovery.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--threads", type=int, default=0,
                        help="cap BLAS/FFT threads (0 = auto)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-symbol", help="generate a synthetic symbol")
    p.add_argument("--kind", required=True,
                   choices=["circle", "gaussians", "star", "lines_circles",
                            "blurred_lines_circles", "tiles", "bitmap"])
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--radius", type=float, help="circle radius override")
    p.add_argument("--params", help="kind parameters as a JSON object")
    p.add_argument("--range-lo", type=float, default=0.0)
    p.add_argument("--range-hi", type=float, default=1.0)
    p.add_argument("--out", required=True, help="output PGM path")
    p.add_argument("--csv", help="also write exact CSV here")
    p.set_defaults(func=_cmd_gen_symbol)

    p = sub.add_parser("recover", help="build the operator and run a method")
    p.add_argument("--method", required=True,
                   choices=["wn", "was", "wawd", "pt", "gp"])
    p.add_argument("--symbol", required=True, help="symbol file (PGM or CSV)")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--window", default="gauss",
                   help="analysis window(s), comma-separated: gauss, hermite:k")
    p.add_argument("--recon-window", dest="recon_window",
                   help="reconstruction window (default: first analysis window)")
    p.add_argument("--K", dest="noise_draws", type=int, default=100,
                   help="white-noise realizations")
    p.add_argument("--sigma2", type=float, default=1.0, help="noise variance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eigs", type=int, help="eigenpairs for was/wawd (default L)")
    p.add_argument("--basis", default="standard",
                   help="pt basis: standard | dft | hermite:N@n,m")
    p.add_argument("--region", help="gp region n0,m0,n1,m1 (inclusive)")
    p.add_argument("--range-lo", type=float, default=0.0)
    p.add_argument("--range-hi", type=float, default=1.0)
    p.add_argument("--compress-positive-frequency", action="store_true",
                   help="zero the upper frequency half of the symbol first")
    p.add_argument("--operator", help="reuse a dumped operator instead of building")
    p.add_argument("--dump-operator", help="dump the built operator here")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_recover)

    p = sub.add_parser("impulse", help="impulse-response kernel of the pipeline")
    p.add_argument("--mode", required=True, choices=["analytic", "measured"])
    p.add_argument("--estimator", default="gp", choices=["gp", "was"])
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--window", default="gauss")
    p.add_argument("--recon-window", dest="recon_window")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_impulse)

    p = sub.add_parser("deconvolve", help="divide out a blurring kernel")
    p.add_argument("--est", required=True, help="estimate file (CSV preferred)")
    p.add_argument("--kernel", required=True)
    p.add_argument("--eps", type=float, required=True,
                   help="relative spectral threshold in (0, 1)")
    p.add_argument("--range-lo", type=float, default=0.0)
    p.add_argument("--range-hi", type=float, default=1.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_deconvolve)

    p = sub.add_parser("bench", help="full multi-method comparison run")
    p.add_argument("--config", required=True, help="JSON config path")
    p.add_argument("--out", required=True, help="report directory")
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _limit_threads(args.threads)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
