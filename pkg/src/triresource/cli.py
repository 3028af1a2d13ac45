"""Command-line interface: ``measure``, ``sample``, ``verify`` and ``figure``.

Exit codes: 0 success / all relations pass, 1 verification failure,
2 usage or parse error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from triresource import kernels
from triresource.config import DEFAULT_TOLERANCES
from triresource.errors import TriresourceError
from triresource.figures import FigureId, FigureSpec, inside_fraction, make_figure
from triresource.measures import profile
from triresource.output import SAMPLE_COLUMNS, SAMPLE_HEADER, RunMetadata, write_csv
from triresource.relations import verify_ensemble
from triresource.states import SamplerConfig, haar_amplitudes, make_state, parse_state

DEFAULT_SEED = 2022
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return value


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _count(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("count must be >= 0")
    return value


def _parse_inline(text: str):
    try:
        values = [complex(tok.strip().replace(" ", "")) for tok in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse amplitudes {text!r}: {exc}") from exc
    return make_state(values)


def cmd_measure(args) -> int:
    if (args.state is None) == (args.amplitudes is None):
        raise UsageError("give exactly one of a state file or --amplitudes")
    if args.amplitudes is not None:
        state = _parse_inline(args.amplitudes)
    else:
        text = sys.stdin.read() if args.state == "-" else Path(args.state).read_text()
        try:
            state = parse_state(text)
        except (ValueError, TypeError, KeyError) as exc:
            raise UsageError(f"{args.state}: {exc}") from exc
    result = profile(state).to_dict()
    result["amplitudes"] = [[float(z.real), float(z.imag)] for z in state.amplitudes]
    result["norm_factor"] = state.norm_factor
    result["metadata"] = RunMetadata.now(seed=None, n_samples=1).to_dict()
    print(json.dumps({k: float(v) if hasattr(v, "dtype") else v for k, v in result.items()}, indent=2))
    return EXIT_OK


def cmd_sample(args) -> int:
    config = SamplerConfig(args.seed, args.n)
    metadata = RunMetadata(seed=config.seed, n_samples=config.count, timestamp=_stamp(args))
    amps = haar_amplitudes(config.seed, 0, config.count)
    table = kernels.profile_table(amps)[:, : len(SAMPLE_COLUMNS)]
    write_csv(args.out, SAMPLE_HEADER, table, metadata)
    print(f"wrote {config.count} rows to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    config = SamplerConfig(args.seed, args.n)
    report = verify_ensemble(config, args.tol, workers=args.workers)
    report.metadata = RunMetadata.now(
        seed=config.seed, n_samples=config.count, tolerances={**DEFAULT_TOLERANCES.as_dict(), "theorem": args.tol}
    ).to_dict()
    text = json.dumps(report.to_dict(), indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    for rid in report.relations:
        print(f"{'PASS' if report.passed(rid) else 'FAIL'} {rid.value}", file=sys.stderr)
    return EXIT_OK if report.all_passed else EXIT_FAIL


def cmd_figure(args) -> int:
    try:
        which = list(FigureId) if args.which == "all" else [FigureId.parse(args.which)]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    for fig in which:
        svg, csv = args.out, args.csv
        if len(which) > 1:
            outdir = Path(args.out or ".")
            outdir.mkdir(parents=True, exist_ok=True)
            svg, csv = outdir / f"{fig.value}.svg", outdir / f"{fig.value}.csv"
        if svg is None and csv is None:
            svg = Path(f"{fig.value}.svg")
        spec = FigureSpec(fig, args.n, args.seed, Path(csv) if csv else None, Path(svg) if svg else None)
        points, _ = make_figure(spec, timestamp=_stamp(args))
        frac = inside_fraction(fig, points)
        print(f"{fig.value}: {len(points)} points, inside region: {frac:.6f}", file=sys.stderr)
    return EXIT_OK


def _stamp(args) -> str | None:
    return RunMetadata.now(seed=None, n_samples=0).timestamp if getattr(args, "timestamp", False) else None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="triresource", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="all resource measures of one state, as JSON")
    p.add_argument("state", nargs="?", help="state file (JSON or 8 lines 're im'); '-' for stdin")
    p.add_argument("--amplitudes", help="eight comma-separated complex numbers, e.g. '1,0,0,0,0,0,0,1j'")
    p.set_defaults(func=cmd_measure)

    def ensemble_flags(p, default_n):
        p.add_argument("--n", type=_count, default=default_n, help=f"number of Haar samples (default {default_n})")
        p.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help=f"RNG seed (default {DEFAULT_SEED})")

    p = sub.add_parser("sample", help="Haar ensemble measures to CSV")
    ensemble_flags(p, 100_000)
    p.add_argument("--out", "--csv", dest="out", required=True, help="output CSV path")
    p.add_argument("--timestamp", action="store_true", help="record wall-clock time (output no longer byte-reproducible)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", help="check every theorem and identity on a Haar ensemble")
    ensemble_flags(p, 100_000)
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOLERANCES.theorem, help="inequality slack tolerance")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figure", help="scatter CSV + SVG for one of the five figures")
    p.add_argument("--which", required=True, help="F1..F5, a full id like F4_s_fill, or 'all'")
    ensemble_flags(p, 100_000)
    p.add_argument("--out", help="SVG path (a directory with --which all)")
    p.add_argument("--csv", help="scatter CSV path")
    p.add_argument("--timestamp", action="store_true", help="record wall-clock time in the outputs")
    p.set_defaults(func=cmd_figure)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, TriresourceError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc.filename or ''}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
