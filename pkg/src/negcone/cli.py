"""Command-line interface for negcone.

Every subcommand writes a deterministic byte stream to stdout (or to
``--out``); logs go to stderr.  Exit status is 0 on success, 2 for domain
errors, 3 for range errors and 64 for usage errors.  Ranges are written
``a..b`` or ``a..b:step``; pass negative bounds as ``--s=-8..34``.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from negcone import __version__
from negcone.config import Settings, load_settings
from negcone.deps import check_and_report
from negcone.errors import DomainError, NegconeError, RangeError

_logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_RANGE = 3
EXIT_USAGE = 64
EXIT_DEPENDENCIES = 1

KINDS = ("hf2", "hz", "ha")


class UsageError(Exception):
    """Bad command line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def setup_logging(loglevel: Optional[int]) -> None:
    """Setup basic logging on stderr.

    Args:
        loglevel: Minimum loglevel for emitting messages
    """
    logformat = "[%(asctime)s] %(levelname)s:%(name)s:%(message)s"
    logging.basicConfig(
        level=loglevel or logging.WARNING,
        stream=sys.stderr,
        format=logformat,
        datefmt="%Y-%m-%d %H:%M:%S",
    )


def _common(default_format: str) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("tsv", "svg"), default=default_format, help="output format")
    common.add_argument("--out", type=Path, help="write output to PATH instead of stdout")
    common.add_argument("--cache", type=Path, help="chart cache directory")
    common.add_argument("--curated", type=Path, help="curated differentials table")
    common.add_argument("--progress", action="store_true", help="show progress on stderr")
    return common


def _sw(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--s", dest="s_range", help="stem range a..b")
    parser.add_argument("--w", dest="w_range", help="weight range a..b")


def _stem_fil(parser: argparse.ArgumentParser, stem: Optional[str], fil: str) -> None:
    parser.add_argument("--stem", dest="stem_range", default=stem, help="stem range a..b")
    parser.add_argument("--fil", dest="fil_range", default=fil, help="filtration range a..b")


def _add_chart_targets(sub, common: argparse.ArgumentParser) -> None:
    p = sub.add_parser("hurewicz", parents=[common], help="Hurewicz image chart")
    p.add_argument("kind", choices=KINDS)
    _sw(p)
    p = sub.add_parser("coefficients", parents=[common], help="coefficient groups chart")
    p.add_argument("kind", choices=KINDS)
    _sw(p)
    p = sub.add_parser("zeroline", parents=[common], help="zero line of the Adams E2-page")
    _sw(p)
    p = sub.add_parser("fate", parents=[common], help="fates along one coweight")
    p.add_argument("--coweight", type=int, required=True)
    p = sub.add_parser("ext-sphere", parents=[common], help="Ext of the sphere")
    _stem_fil(p, "0..20", "0..10")
    p = sub.add_parser("ext-stunted", parents=[common], help="Ext of a stunted projective spectrum")
    p.add_argument("spectrum", help="RP[a..b] or RP[a..inf]")
    _stem_fil(p, None, "0..8")


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with every subcommand."""
    parser = _Parser(prog="negcone", description="negcone - Hurewicz images in the C2-equivariant negative cone")
    parser.add_argument("--version", action="version", version=f"negcone {__version__}")
    parser.add_argument(
        "-v",
        "--verbose",
        dest="loglevel",
        help="set loglevel to INFO",
        action="store_const",
        const=logging.INFO,
    )
    parser.add_argument(
        "-vv",
        "--very-verbose",
        dest="loglevel",
        help="set loglevel to DEBUG",
        action="store_const",
        const=logging.DEBUG,
    )

    tsv = _common("tsv")
    svg = _common("svg")
    subparsers = parser.add_subparsers(dest="command", help="Command to execute")

    p = subparsers.add_parser("psi", parents=[tsv], help="Radon-Hurwitz numbers")
    p.add_argument("range", nargs="?", default="2..32", help="n range a..b[:step]")
    p.add_argument("--step", type=int, default=None, help="step, 2 unless given in the range")

    _add_chart_targets(subparsers, tsv)

    p = subparsers.add_parser("classify", parents=[tsv], help="fate of filtration-0 classes")
    p.add_argument("--coweight", type=int)
    p.add_argument("--s", dest="s", type=int)
    p.add_argument("--w", dest="w", type=int)

    p = subparsers.add_parser("splits", parents=[tsv], help="cell splitting predicates")
    p.add_argument("which", choices=("top", "bottom"))
    p.add_argument("first", type=int, help="n for top, bottom cell for bottom")
    p.add_argument("second", type=int, help="bottom cell for top, top cell for bottom")

    p = subparsers.add_parser("vf", parents=[tsv], help="vector fields on spheres")
    p.add_argument("n", type=int, help="sphere dimension")

    p = subparsers.add_parser("qmap", parents=[tsv], help="check the equivariant quadratic map")
    p.add_argument("n", type=int, help="sphere dimension")
    p.add_argument("--k", type=int, help="number of fields, maximal by default")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    chart = subparsers.add_parser("chart", help="draw a chart (SVG by default)")
    _add_chart_targets(chart.add_subparsers(dest="target", required=True), svg)

    return parser


def parse_args(args: List[str]) -> argparse.Namespace:
    """Parse command line parameters.

    Args:
        args: Command line parameters as list of strings

    Returns:
        Command line parameters namespace
    """
    return build_parser().parse_args(args)


def _range(text: Optional[str], default: Tuple[int, int]) -> Tuple[int, int]:
    from negcone.chart import parse_range

    if text is None:
        return default
    lo, hi, _ = parse_range(text)
    return lo, hi


def _write(data: bytes, out: Optional[Path]) -> None:
    if out is not None:
        from negcone.utils import atomic_write

        atomic_write(out, data)
        _logger.info(f"Wrote {out}")
        return
    sys.stdout.buffer.write(data)
    sys.stdout.flush()


def _tsv(header: List[str], rows: List[List[object]]) -> bytes:
    lines = ["\t".join(header)] + ["\t".join("" if c is None else str(c) for c in row) for row in rows]
    return ("\n".join(lines) + "\n").encode("utf-8")


def _emit(chart, args: argparse.Namespace) -> None:
    from negcone.emitters import get_emitter

    _write(get_emitter(args.format).emit(chart), args.out)


def _curated(settings: Settings):
    from negcone.classification import load_curated_table

    return load_curated_table(settings.curated_path)


def _build_chart(target: str, args: argparse.Namespace, settings: Settings):
    from negcone import chart as charts
    from negcone.cache import cached_chart

    if target == "hurewicz":
        return charts.hurewicz_chart(
            args.kind,
            _range(args.s_range, settings.s_range),
            _range(args.w_range, settings.w_range),
            _curated(settings),
        )
    if target == "coefficients":
        return charts.coefficient_chart(
            args.kind, _range(args.s_range, settings.s_range), _range(args.w_range, settings.w_range)
        )
    if target == "zeroline":
        return charts.zeroline_chart(_range(args.s_range, settings.s_range), _range(args.w_range, settings.w_range))
    if target == "fate":
        return charts.fate_chart(args.coweight, _curated(settings))
    if target == "ext-sphere":
        from negcone.lambda_algebra import ext_sphere_chart

        min_stem, max_stem = _range(args.stem_range, (0, 20))
        min_fil, max_fil = _range(args.fil_range, (0, 10))
        ext = cached_chart(
            settings.cache_dir,
            f"ext-S0-{min_stem}-{max_stem}-{min_fil}-{max_fil}",
            lambda: ext_sphere_chart(max_stem, max_fil, settings, args.progress, min_stem, min_fil),
        )
        return ext.to_chart()
    from negcone.stunted import StuntedSpectrum, ext_stunted_chart

    spec = StuntedSpectrum.parse(args.spectrum)
    lo, hi = _range(args.stem_range, (spec.bottom, spec.bottom + 10))
    min_fil, max_fil = _range(args.fil_range, (0, 8))
    ext = cached_chart(
        settings.cache_dir,
        f"ext-{spec.descriptor}-{lo}-{hi}-{min_fil}-{max_fil}",
        lambda: ext_stunted_chart(spec, hi, max_fil, lo, settings, args.progress, min_fil),
    )
    return ext.to_chart()


def _psi(args: argparse.Namespace) -> bytes:
    from negcone.arith import psi
    from negcone.chart import parse_range

    lo, hi, step = parse_range(args.range)
    if ":" not in args.range:
        step = 2 if args.step is None else args.step
    if step <= 0:
        raise DomainError(f"step must be positive, got {step}")
    return _tsv(["n", "psi"], [[n, psi(n)] for n in range(lo, hi + 1, step)])


def _classify(args: argparse.Namespace, settings: Settings) -> bytes:
    from negcone.classification import BiDegree, classify_fil0, coweight_fates

    curated = _curated(settings)
    if args.coweight is not None:
        rows = coweight_fates(args.coweight, curated)
    elif args.s is not None and args.w is not None:
        deg = BiDegree(args.s, args.w)
        rows = [(deg, classify_fil0(deg, curated))]
    else:
        raise UsageError("classify needs --coweight or both --s and --w")
    header = ["s", "w", "status", "length", "target", "provenance"]
    return _tsv(
        header,
        [
            [d.s, d.w, f.status.value, f.known_length, f.known_target_label, f.provenance.value]
            for d, f in rows
        ],
    )


def _splits(args: argparse.Namespace) -> bytes:
    from negcone.stunted import bottom_cell_splits, top_cell_splits

    if args.which == "top":
        n, bottom = args.first, args.second
        result = top_cell_splits(n, bottom)
        return _tsv(["n", "bottom", "top_cell_splits"], [[n, bottom, str(result).lower()]])
    bottom, top = args.first, args.second
    result = bottom_cell_splits(bottom, top)
    return _tsv(["bottom", "top", "bottom_cell_splits"], [[bottom, top, str(result).lower()]])


def _vf(args: argparse.Namespace) -> bytes:
    from negcone.hurwitz_radon import export_family, hurwitz_radon_family, verify_family

    if args.n < 0:
        raise DomainError(f"sphere dimension must be nonnegative, got {args.n}")
    family = hurwitz_radon_family(args.n + 1)
    report = verify_family(family)
    if args.out is not None:
        export_family(family, args.out)
        _logger.info(f"Exported {len(family)} matrices to {args.out}")
    return _tsv(["n", "m", "k", "verified"], [[args.n, args.n + 1, len(family), str(report.ok).lower()]])


def _qmap(args: argparse.Namespace) -> bytes:
    import numpy as np

    from negcone.hurwitz_radon import (
        QuadraticMapSpec,
        quadratic_map_eval,
        sample_rational_points,
        top_cell_inverse,
    )

    spec = QuadraticMapSpec.build(args.n, args.k)
    points = sample_rational_points(spec.source_dimension, args.samples, seed=args.seed, unit=True)
    norm_ok = True
    worst = 0.0
    for p in points:
        image = quadratic_map_eval(spec, p[: spec.n + 1], p[spec.n + 1:])
        norm_ok &= sum(c * c for c in image) == 1
        u = np.array([float(c) for c in image[:-1]])
        y = float(image[-1])
        if y > -0.99:
            v, xs = top_cell_inverse(spec, u, y)
            back = np.array(quadratic_map_eval(spec, list(v), list(xs)), dtype=float)
            worst = max(worst, float(np.max(np.abs(back - np.append(u, y)))))
    header = ["n", "k", "samples", "norm_identity", "max_roundtrip_error"]
    return _tsv(header, [[spec.n, spec.k, len(points), str(norm_ok).lower(), f"{worst:.3e}"]])


def _dispatch(args: argparse.Namespace, settings: Settings) -> None:
    command = args.command
    if command == "psi":
        _write(_psi(args), args.out)
    elif command in ("hurewicz", "coefficients", "zeroline", "fate", "ext-sphere", "ext-stunted"):
        _emit(_build_chart(command, args, settings), args)
    elif command == "chart":
        _emit(_build_chart(args.target, args, settings), args)
    elif command == "classify":
        _write(_classify(args, settings), args.out)
    elif command == "splits":
        _write(_splits(args), args.out)
    elif command == "vf":
        _write(_vf(args), None)
    elif command == "qmap":
        _write(_qmap(args), args.out)
    else:
        raise UsageError(f"unknown command: {command}")


def main(args: List[str]) -> int:
    """Main entry point allowing external calls.

    Args:
        args: Command line parameters as list of strings

    Returns:
        The exit status
    """
    try:
        parsed_args = parse_args(args)
    except UsageError as e:
        print(f"negcone: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    setup_logging(parsed_args.loglevel)
    _logger.debug("Starting negcone...")
    if not check_and_report():
        return EXIT_DEPENDENCIES

    if parsed_args.command is None:
        build_parser().print_help(sys.stderr)
        return EXIT_USAGE

    try:
        settings = load_settings().with_overrides(
            cache_dir=getattr(parsed_args, "cache", None),
            curated_path=getattr(parsed_args, "curated", None),
        )
        _dispatch(parsed_args, settings)
    except UsageError as e:
        _logger.error(str(e))
        print(f"negcone: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as e:
        _logger.error(f"Domain error: {e}")
        print(f"negcone: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except RangeError as e:
        _logger.error(f"Range error: {e}")
        print(f"negcone: {e}", file=sys.stderr)
        return EXIT_RANGE
    except NegconeError as e:
        _logger.error(f"{type(e).__name__}: {e}")
        print(f"negcone: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def run() -> None:
    """Entry point for console_scripts."""
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    run()
