"""Command line entry point: ``tsgauss analyze|fetch|synth|utc``."""

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from .errors import TsGaussError
from .ingest import fetch_station, to_csv_text
from .pipeline import RunConfig, analyze_batch
from .report import emit_report
from .synth import KINDS, GeneratorSpec
from .timefmt import format_utc

log = logging.getLogger("tsgauss")

EXIT_PARTIAL = 3


def read_config_file(path):
    """``key=value`` lines; ``#`` comments; keys use flag names with - or _."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SystemExit(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.lstrip("-").replace("-", "_")] = value
    return out


def _bool(text):
    return str(text).strip().lower() in ("1", "true", "yes", "on")


def _add_analyze(sub):
    p = sub.add_parser("analyze", help="run the Gaussianity pipeline on CSV records")
    p.add_argument("--input", nargs="+", default=None, help="CSV files or directories of *.csv")
    p.add_argument("--n-max", type=int, default=30000)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--lb-h", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rp-projections", type=int, default=1)
    p.add_argument("--cap-fdr", action="store_true", default=False)
    p.add_argument("--independent-fdr", action="store_true", default=False,
                   help="use c(m)=1 (Benjamini-Hochberg) instead of the dependent-case factor")
    p.add_argument("--fill-value", type=float, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", dest="format", choices=("csv", "json", "md"), default="csv")
    p.add_argument("--output", default=None, help="write the report here instead of stdout")
    p.add_argument("--config", default=None, help="key=value file; flags given here override it")
    return p


def _expand_inputs(inputs):
    paths = []
    for item in inputs:
        path = Path(item)
        if path.is_dir():
            paths.extend(sorted(str(p) for p in path.glob("*.csv")))
        else:
            paths.append(str(path))
    return paths


def cmd_analyze(args):
    paths = _expand_inputs(args.input or [])
    if not paths:
        raise SystemExit("analyze: no input files")
    cfg = RunConfig(
        inputs=tuple(paths), n_max=args.n_max, alpha=args.alpha, lb_h=args.lb_h, seed=args.seed,
        rp_projections=args.rp_projections, cap_fdr=args.cap_fdr, independent_fdr=args.independent_fdr,
        fill_value=args.fill_value, workers=args.workers, fmt=args.format,
    )
    reports = analyze_batch(paths, cfg)
    data = emit_report(reports, cfg.fmt, cfg.header(), cfg.alpha)
    _write(data, args.output)
    failed = [r for r in reports if r.verdict == "Error"]
    for r in failed:
        log.warning("station %s failed: %s", r.station_id, r.error)
    return EXIT_PARTIAL if failed else 0


def cmd_fetch(args):
    try:
        series = fetch_station(args.station, args.base_url, n_max=args.n_max)
    except TsGaussError as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return 1
    _write(to_csv_text(series).encode(), args.output)
    return 0


def cmd_synth(args):
    params = {}
    if args.ar:
        params["ar"] = tuple(args.ar)
    if args.ma:
        params["ma"] = tuple(args.ma)
    if args.theta is not None:
        params["theta"] = args.theta
    spec = GeneratorSpec(args.kind, args.n, params, args.seed)
    series = spec.draw(np.random.default_rng(args.seed), station_id=args.kind)
    _write(to_csv_text(series).encode(), args.output)
    return 0


def cmd_utc(args):
    for s in args.seconds:
        print(format_utc(s))
    return 0


def _write(data, path):
    if path:
        Path(path).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def build_parser():
    parser = argparse.ArgumentParser(prog="tsgauss", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_analyze(sub)

    f = sub.add_parser("fetch", help="download a station record as CSV")
    f.add_argument("--station", required=True)
    f.add_argument("--base-url", required=True, help="OPeNDAP root, e.g. .../thredds/dodsC/cdip/realtime")
    f.add_argument("--n-max", type=int, default=30000)
    f.add_argument("--output", default=None)

    s = sub.add_parser("synth", help="generate a synthetic series as CSV")
    s.add_argument("--kind", choices=KINDS, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--ar", type=float, nargs="*", default=())
    s.add_argument("--ma", type=float, nargs="*", default=())
    s.add_argument("--theta", type=float, default=None)
    s.add_argument("--output", default=None)

    u = sub.add_parser("utc", help="print UTC seconds as GMT dates")
    u.add_argument("seconds", type=int, nargs="+")
    return parser


_CONFIG_TYPES = {
    "input": lambda v: v.split(),
    "n_max": int, "alpha": float, "lb_h": int, "seed": int, "rp_projections": int,
    "cap_fdr": _bool, "independent_fdr": _bool, "fill_value": float, "workers": int,
    "format": str, "output": str,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.command == "analyze" and args.config:
        file_values = read_config_file(args.config)
        unknown = set(file_values) - set(_CONFIG_TYPES)
        if unknown:
            raise SystemExit(f"unknown config keys: {', '.join(sorted(unknown))}")
        analyze = parser._subparsers._group_actions[0].choices["analyze"]
        analyze.set_defaults(**{k: _CONFIG_TYPES[k](v) for k, v in file_values.items()})
        args = parser.parse_args(argv)
    handler = {"analyze": cmd_analyze, "fetch": cmd_fetch, "synth": cmd_synth, "utc": cmd_utc}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
