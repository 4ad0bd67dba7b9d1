"""
Command-line front end.

    cubic-invariants classify <ode> [--point X,Y]
    cubic-invariants invariants <ode> [--scheme sd|bgd|both] [--point X,Y]
    cubic-invariants compare <ode>
    cubic-invariants transform <ode> <map>
    cubic-invariants check-weights <ode> <map> [--points N]
    cubic-invariants special-verify
    cubic-invariants fuzz [--seed S] [--trials N] [--degree D] [--workers W]

Exit status is 0 when every check passed, 1 when any identity FAILED and 2 on usage,
file or parse errors. Reports go to stdout, logs to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from collections.abc import Callable
from collections.abc import Sequence
from fractions import Fraction

from cubic_ode_invariants import __version__
from cubic_ode_invariants.analysis.compare import check_weights
from cubic_ode_invariants.analysis.compare import classify
from cubic_ode_invariants.analysis.compare import verify_identities
from cubic_ode_invariants.analysis.fuzz import fuzz
from cubic_ode_invariants.analysis.special import special_suite
from cubic_ode_invariants.config import ConfigurationError
from cubic_ode_invariants.config import Settings
from cubic_ode_invariants.core.enums import ExitCode
from cubic_ode_invariants.core.enums import OutputFormat
from cubic_ode_invariants.core.enums import Scheme
from cubic_ode_invariants.core.expr import ExpressionError
from cubic_ode_invariants.core.files import read_ode
from cubic_ode_invariants.core.files import read_transformation
from cubic_ode_invariants.core.ode import TransformationError
from cubic_ode_invariants.core.ode import pullback
from cubic_ode_invariants.invariants.catalog import invariant_values
from cubic_ode_invariants.results.report import RunReport

logger = logging.getLogger(__name__)


class UsageError(Exception):
    """Raised for malformed command lines instead of exiting the interpreter."""

    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def parse_point(text: str) -> tuple[Fraction, Fraction]:
    """
    Parse ``X,Y`` with rational components.

    Example:
        >>> parse_point("1/2,0")
        (Fraction(1, 2), Fraction(0, 1))
    """
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected X,Y, got {text!r}")
    try:
        return Fraction(parts[0].strip()), Fraction(parts[1].strip())
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"invalid point {text!r}: {e}") from e


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], help="Report format (default: text)")
    parser.add_argument("--seed", type=int, help="Seed of probe lattices and random corpora (default: 0)")
    parser.add_argument("--tolerance", type=float, help="Relative tolerance of numeric checks (default: 1e-9)")
    parser.add_argument("--timing", action="store_true", default=None, help="Record wall-clock time in the report")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cubic-invariants", description="Point invariants of y'' = P + 3Qy' + 3Ry'^2 + Sy'^3")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    command = commands.add_parser("classify", help="Maximal degeneration or general position")
    command.add_argument("ode", help="ODE file")
    command.add_argument("--point", type=parse_point, help="Test general position at X,Y")
    _common(command)

    command = commands.add_parser("invariants", help="Evaluate the invariant families")
    command.add_argument("ode", help="ODE file")
    command.add_argument("--scheme", choices=[s.value for s in Scheme], help="Families to compute (default: both)")
    command.add_argument("--point", type=parse_point, help="Evaluate at X,Y instead of symbolically")
    _common(command)

    command = commands.add_parser("compare", help="Run the full identity suite")
    command.add_argument("ode", help="ODE file")
    _common(command)

    command = commands.add_parser("transform", help="Print the pulled-back ODE")
    command.add_argument("ode", help="ODE file")
    command.add_argument("map", help="Transformation file")
    _common(command)

    command = commands.add_parser("check-weights", help="Check transformation laws under a map")
    command.add_argument("ode", help="ODE file")
    command.add_argument("map", help="Transformation file")
    command.add_argument("--points", type=int, help="Matched points for numeric laws (default: 20)")
    _common(command)

    command = commands.add_parser("special-verify", help="Replay the special-coordinates derivation")
    _common(command)

    command = commands.add_parser("fuzz", help="Random polynomial ODEs through the identity suite")
    command.add_argument("--trials", type=int, help="Number of random equations (default: 25)")
    command.add_argument("--degree", type=int, help="Maximal total degree of coefficients (default: 2)")
    command.add_argument("--workers", type=int, help="Worker processes (default: 1)")
    _common(command)
    return parser


def configure_logging(verbosity: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(asctime)s %(levelname)s %(name)s: %(message)s", force=True
    )


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _classify(args, settings: Settings) -> RunReport:
    ode = read_ode(args.ode)
    verdict = classify(ode, args.point, seed=settings.seed, probes=settings.probes)
    logger.info("verdict for %s: %s", ode.name, verdict)
    return RunReport.build(verdict=verdict)


def _invariants(args, settings: Settings) -> RunReport:
    ode = read_ode(args.ode)
    verdict = classify(ode, args.point, seed=settings.seed, probes=settings.probes)
    sd, bgd = invariant_values(ode, settings.scheme)
    return RunReport.build(verdict=verdict, scalars_sd=sd, scalars_bgd=bgd, point=args.point)


def _compare(args, settings: Settings) -> RunReport:
    ode = read_ode(args.ode)
    verdict = classify(ode, seed=settings.seed, probes=settings.probes)
    return RunReport.build(verdict=verdict, identities=verify_identities(ode, settings))


def _check_weights(args, settings: Settings) -> RunReport:
    ode = read_ode(args.ode)
    t = read_transformation(args.map)
    t.validate(settings.points, settings.seed, settings.tolerance)
    return RunReport.build(identities=check_weights(ode, t, settings))


def _special_verify(_args, settings: Settings) -> RunReport:
    return RunReport.build(identities=special_suite(settings))


def _fuzz(_args, settings: Settings) -> RunReport:
    trials = fuzz(settings)
    return RunReport.build(identities=[report for trial in trials for report in trial.labelled()])


COMMANDS: dict[str, Callable[[argparse.Namespace, Settings], RunReport]] = {
    "classify": _classify,
    "invariants": _invariants,
    "compare": _compare,
    "check-weights": _check_weights,
    "special-verify": _special_verify,
    "fuzz": _fuzz,
}


def _transform(args, settings: Settings) -> str:
    ode = read_ode(args.ode)
    t = read_transformation(args.map)
    t.validate(settings.points, settings.seed, settings.tolerance)
    pulled = pullback(ode, t)
    name = f"{ode.name} under {t.name}"
    if settings.output_format is OutputFormat.json:
        return json.dumps({"name": name, **pulled.to_text()}, sort_keys=True, indent=2) + "\n"
    lines = [f"# name: {name}"] + [f"{key} = {value}" for key, value in pulled.to_text().items()]
    return "\n".join(lines) + "\n"


def run(args: argparse.Namespace, settings: Settings) -> tuple[str, ExitCode]:
    """Execute one parsed command; returns the text for stdout and the exit status."""
    start = time.perf_counter()
    logger.info("%s started", args.command)
    if args.command == "transform":
        return _transform(args, settings), ExitCode.ok

    report = COMMANDS[args.command](args, settings)
    if settings.timing:
        report = report.with_timing(round((time.perf_counter() - start) * 1000, 3))
    status = ExitCode.ok if report.passed else ExitCode.failed
    logger.info("%s finished: %d identities, %d failed", args.command, len(report.identities), len(report.failures))
    output = report.to_json() + "\n" if settings.output_format is OutputFormat.json else report.to_text()
    return output, status


def main(argv: Sequence[str] | None = None) -> int:
    """
    Entry point of the ``cubic-invariants`` console script.

    Args:
        argv: Arguments without the program name; defaults to ``sys.argv[1:]``

    Returns:
        Exit status
    """
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"cubic-invariants: error: {e}", file=sys.stderr)
        return ExitCode.usage
    configure_logging(args.verbose)
    try:
        settings = Settings.from_namespace(args)
        output, status = run(args, settings)
    except (ConfigurationError, ExpressionError, TransformationError) as e:
        print(f"cubic-invariants: error: {e}", file=sys.stderr)
        return ExitCode.usage
    sys.stdout.write(output)
    return status


if __name__ == "__main__":
    sys.exit(main())
