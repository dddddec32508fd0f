"""Command-line interface: ``rpys analyze`` and ``rpys fixture``.

Exit codes: 0 ok, 2 input error, 3 empty analysis, 4 bad flags.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .exceptions import EmptyCorpus, EmptyRange, InputError, SpecOverflow
from .fixture import FixtureSpec, default_spec, generate_fixture
from .ingest import read_corpus
from .pipeline import analyze
from .report import emit_plot_svg, emit_report_md, emit_spectrum_csv, fmt_real
from .spectrum import AnalysisConfig
from .validation import window_to_halfwidth

log = logging.getLogger("rpys")

EXIT_OK, EXIT_INPUT, EXIT_EMPTY, EXIT_FLAGS = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FLAGS, f"{self.prog}: error: {message}\n")


def _infer_format(path) -> str:
    return "jsonl" if str(path).lower().endswith((".jsonl", ".json", ".ndjson")) else "wos"


def use_color(stream=None, environ=None) -> bool:
    environ = os.environ if environ is None else environ
    stream = stream or sys.stdout
    return "RPYS_NO_COLOR" not in environ and hasattr(stream, "isatty") and stream.isatty()


def format_summary(report, color=False) -> str:
    bold, red, reset = ("\033[1m", "\033[31m", "\033[0m") if color else ("", "", "")
    stats = report.corpus
    lines = [
        f"{bold}records{reset} {stats.n_records}  {bold}references{reset} {stats.n_references}  "
        + "  ".join(f"{k}={v}" for k, v in stats.tallies.items()),
        f"{bold}counted{reset} {report.total} in {report.min_year}-{report.max_year}",
    ]
    if not report.peaks:
        lines.append("no peaks detected")
    for p in report.peaks:
        top = p.top_clusters[0][0].canonical_key.label()
        lines.append(f"{red}{p.year}{reset}  count={p.count}  deviation={fmt_real(p.deviation)}  "
                     f"top={top}  share={p.top_count}/{p.count} ({p.top_share:.3f})")
    return "\n".join(lines)


def run_analysis(input_path, fmt, cfg, out_spectrum=None, out_report=None, out_plot=None,
                 n_jobs=1):
    """Run the full pipeline on a file and write the requested outputs."""
    corpus = read_corpus(input_path, fmt)
    result = analyze(corpus, cfg, n_jobs=n_jobs)
    outputs = {
        out_spectrum: lambda: emit_spectrum_csv(result.spectrum),
        out_report: lambda: emit_report_md(result.report),
        out_plot: lambda: emit_plot_svg(result.spectrum, result.report.peaks),
    }
    for path, emit in outputs.items():
        if path:
            Path(path).write_bytes(emit())
    return result


def _cmd_analyze(args) -> int:
    input_path = args.input or args.input_pos
    if not input_path:
        raise _FlagError("an input file is required (--input PATH)")
    try:
        cfg = AnalysisConfig(
            min_year=args.min_year,
            max_year=args.max_year,
            window_halfwidth=window_to_halfwidth(args.window),
            min_peak_count=args.min_peak_count,
            deviation_mode=args.deviation,
            count_multiplicity=args.count_multiplicity,
            fuzzy_threshold=args.fuzzy_threshold,
            top_k=args.top_k,
        )
    except ValueError as exc:
        raise _FlagError(str(exc)) from None
    fmt = args.format or _infer_format(input_path)
    result = run_analysis(input_path, fmt, cfg, args.out_spectrum, args.out_report,
                          args.out_plot, n_jobs=args.jobs)
    print(format_summary(result.report, color=use_color()))
    return EXIT_OK


def _cmd_fixture(args) -> int:
    if args.default == bool(args.spec):
        raise _FlagError("give exactly one of --spec PATH or --default")
    if args.default:
        spec = default_spec(args.seed if args.seed is not None else 0)
    else:
        try:
            spec = FixtureSpec.from_json(Path(args.spec).read_text(encoding="utf-8"))
        except (ValueError, TypeError) as exc:
            if isinstance(exc, SpecOverflow):
                raise
            raise _FlagError(f"bad fixture spec {args.spec}: {exc}") from None
        if args.seed is not None:
            spec = FixtureSpec(**{**spec.__dict__, "seed": args.seed})
    data = generate_fixture(spec, args.format)
    Path(args.out).write_bytes(data)
    log.info("wrote %s (%d bytes)", args.out, len(data))
    return EXIT_OK


class _FlagError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rpys", description="Reference Publication Year Spectroscopy")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="build the spectrum and report peaks")
    a.add_argument("input_pos", nargs="?", metavar="INPUT")
    a.add_argument("--input", help="corpus file")
    a.add_argument("--format", choices=["wos", "jsonl"],
                   help="input format (default: from the file extension)")
    a.add_argument("--min-year", type=int, default=1800)
    a.add_argument("--max-year", type=int, default=1960)
    a.add_argument("--window", type=int, default=5, help="full median window width, odd or 0")
    a.add_argument("--min-peak-count", type=int, default=10)
    a.add_argument("--deviation", choices=["signed", "absolute"], default="signed")
    a.add_argument("--count-multiplicity", action="store_true",
                   help="count every citation occurrence, not citing records per work")
    a.add_argument("--fuzzy-threshold", type=int, default=0)
    a.add_argument("--top-k", type=int, default=5)
    a.add_argument("--jobs", type=int, default=1, help="worker processes for reference parsing")
    a.add_argument("--out-spectrum")
    a.add_argument("--out-report")
    a.add_argument("--out-plot")
    a.set_defaults(func=_cmd_analyze)

    f = sub.add_parser("fixture", help="write a synthetic corpus")
    f.add_argument("--spec", help="fixture spec JSON")
    f.add_argument("--default", action="store_true", help="use the Darwin-finches default spec")
    f.add_argument("--format", choices=["wos", "jsonl"], default="wos")
    f.add_argument("--seed", type=int)
    f.add_argument("--out", required=True)
    f.set_defaults(func=_cmd_fixture)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except _FlagError as exc:
        print(f"rpys: error: {exc}", file=sys.stderr)
        return EXIT_FLAGS
    except (InputError, OSError, SpecOverflow) as exc:
        print(f"rpys: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (EmptyCorpus, EmptyRange) as exc:
        name = getattr(args, "input", None) or getattr(args, "input_pos", None) or ""
        print(f"rpys: {name}: {exc}", file=sys.stderr)
        return EXIT_EMPTY


if __name__ == "__main__":
    sys.exit(main())
