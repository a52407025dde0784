"""Shared CLI plumbing: argument groups, config resolution, records, exit codes."""

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from .. import __version__
from ..circle.integral import IntegralTruncation
from ..circle.predict import DiagonalProblem, Truncation
from ..circle.series import SeriesTruncation
from ..core.budget import Budget, get_budget
from ..core.errors import (
    BudgetExceeded,
    CampanaError,
    DomainError,
    NumericalDisagreement,
    SpecFileError,
)
from ..core.orbifold import CampanaOrbifold
from ..core.presets import get_preset, list_presets
from ..core.spec_file import load_orbifold

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_BUDGET = 4
EXIT_DISAGREEMENT = 5


def int_list(text: str) -> List[int]:
    """Parse "1,1,-2" into [1, 1, -2]."""
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")


def float_list(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'")


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got '{text}'")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def add_orbifold_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("orbifold")
    group.add_argument("--spec", metavar="FILE", help="JSON file {\"k\": .., \"c\": [..], \"m\": [..]}")
    group.add_argument("--preset", choices=list_presets(), help="Named configuration")
    group.add_argument("--quadratic7", dest="preset", action="store_const", const="quadratic7",
                       help="Shortcut for --preset quadratic7")
    group.add_argument("--k", type=int, help="Degree k")
    group.add_argument("--c", type=int_list, help="Coefficients, e.g. --c=1,1,-2")
    group.add_argument("--m", type=int_list, help="Weights, e.g. --m=2,2,2")


def add_problem_arguments(parser: argparse.ArgumentParser) -> None:
    """Orbifold flags plus the direct (d, zeta, m~) form of a diagonal problem."""
    add_orbifold_arguments(parser)
    group = parser.add_argument_group("diagonal problem")
    group.add_argument("--d", type=int_list, help="Coefficients d_i (overrides the orbifold)")
    group.add_argument("--zeta", type=int_list, help="Scalings zeta_i (default all 1)")
    group.add_argument("--m-tilde", type=int_list, help="Exponents m~_i")


def add_output_arguments(parser: argparse.ArgumentParser, default: str = "json") -> None:
    group = parser.add_argument_group("output")
    group.add_argument("--format", choices=["json", "csv", "text"], default=default,
                       help=f"Output format (default: {default})")
    group.add_argument("--out", metavar="PATH", help="Append output to PATH instead of stdout")


def add_budget_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("budget")
    group.add_argument("--budget-mem", type=int, metavar="N",
                       help="Max entries held in a meet-in-the-middle table or histogram")
    group.add_argument("--budget-ops", type=int, metavar="N", help="Max enumeration steps")


def add_parallel_arguments(parser: argparse.ArgumentParser) -> None:
    add_threads_argument(parser.add_argument_group("parallelism"))


def add_threads_argument(group) -> None:
    """Worker cap; results never depend on it."""
    group.add_argument("--threads", type=positive_int, default=1, help="Worker threads (default: 1)")


def add_truncation_arguments(
    parser: argparse.ArgumentParser,
    mode_flags: Sequence[str] = ("--series-mode",),
    method_flags: Sequence[str] = ("--integral-method",),
) -> None:
    """Series and integral cut-offs; defaults come from the truncation dataclasses."""
    series = SeriesTruncation()
    integral = IntegralTruncation()
    group = parser.add_argument_group("truncation")
    group.add_argument(*mode_flags, dest="series_mode", choices=["qsum", "euler"],
                       default=series.mode, help="Singular series evaluation")
    group.add_argument("--qmax", type=int, default=series.q_max, help="Last modulus (qsum)")
    group.add_argument("--pmax", type=int, default=series.prime_cap, help="Prime cap (euler)")
    group.add_argument("--level", type=int, default=series.level, help="Prime-power level (euler)")
    group.add_argument(*method_flags, dest="integral_method", choices=["slab", "oscillatory"],
                       default=integral.method, help="Singular integral method")
    group.add_argument("--samples", type=int, default=integral.samples, help="Monte Carlo samples")
    group.add_argument("--seed", type=int, default=integral.seed, help="Monte Carlo seed")
    group.add_argument("--shards", type=int, default=integral.shards)
    group.add_argument("--lambda-cutoff", type=float, default=integral.lambda_cutoff)
    group.add_argument("--rcap", type=int, default=Truncation().r_cap,
                       help="Weight cap for the (s, t, v~) sums")
    add_threads_argument(group)


def resolve_orbifold(args) -> CampanaOrbifold:
    if getattr(args, "spec", None):
        return load_orbifold(args.spec)
    if getattr(args, "preset", None):
        return get_preset(args.preset).to_orbifold()
    if args.k is None or args.c is None or args.m is None:
        raise SpecFileError("give --spec FILE, --preset NAME, or all of --k, --c and --m")
    try:
        return CampanaOrbifold.from_lists(args.k, args.c, args.m)
    except DomainError as e:
        raise SpecFileError(f"invalid orbifold: {e}") from e


def resolve_problem(args) -> DiagonalProblem:
    """Diagonal problem from --d/--m-tilde, or from an orbifold (d = c, m~ = k m)."""
    if args.d is not None:
        if args.m_tilde is None:
            raise SpecFileError("--d needs --m-tilde")
        zeta = args.zeta if args.zeta is not None else [1] * len(args.d)
        try:
            return DiagonalProblem(tuple(args.d), tuple(zeta), tuple(args.m_tilde))
        except DomainError as e:
            raise SpecFileError(str(e)) from e
    O = resolve_orbifold(args)
    zeta = args.zeta if args.zeta is not None else [1] * len(O.c)
    return DiagonalProblem(O.c, tuple(zeta), tuple(O.k * mi for mi in O.m))


def resolve_budget(args) -> Budget:
    return get_budget().with_caps(
        max_candidates=getattr(args, "budget_mem", None),
        max_operations=getattr(args, "budget_ops", None),
    )


def resolve_truncation(args, method: Optional[str] = None) -> Truncation:
    try:
        return Truncation(
            series=SeriesTruncation(
                mode=args.series_mode, q_max=args.qmax, prime_cap=args.pmax, level=args.level
            ),
            integral=IntegralTruncation(
                method=method or args.integral_method,
                samples=args.samples,
                seed=args.seed,
                shards=args.shards,
                lambda_cutoff=args.lambda_cutoff,
            ),
            r_cap=args.rcap,
        )
    except DomainError as e:
        raise SpecFileError(str(e)) from e


def _plain(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, float) and value != value:
        return None
    if isinstance(value, float) and value in (float("inf"), float("-inf")):
        return str(value)
    return value


def make_record(command: str, config: Dict[str, Any], result: Any) -> Dict[str, Any]:
    """Self-describing output record: command, resolved config, version, result."""
    return _plain({"command": command, "version": __version__, "config": config, "result": result})


def _csv_text(rows: Sequence[Dict[str, Any]]) -> str:
    buffer = io.StringIO()
    if not rows:
        return ""
    fields = list(rows[0].keys())
    writer = csv.DictWriter(buffer, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in row.items()})
    return buffer.getvalue()


def emit(
    args,
    record: Dict[str, Any],
    text: Optional[str] = None,
    rows: Optional[Sequence[Dict[str, Any]]] = None,
) -> None:
    """Write a record as a JSON line, CSV (rows, or the flattened result) or text."""
    if args.format == "json":
        output = json.dumps(record, sort_keys=True) + "\n"
    elif args.format == "csv":
        table = rows if rows is not None else [record["result"]]
        output = _csv_text([_plain(row) for row in table])
    else:
        output = (text if text is not None else json.dumps(record, sort_keys=True, indent=2)) + "\n"

    if args.out:
        with Path(args.out).open("a") as handle:
            handle.write(output)
        logger.debug(f"Wrote {args.format} output to {args.out}")
    else:
        sys.stdout.write(output)


def run_guarded(command: Callable[[Any], int], args) -> int:
    """Run a command body, mapping the error hierarchy to exit codes."""
    try:
        return command(args)
    except SpecFileError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as e:
        witness = f" (witness prime {e.witness})" if e.witness is not None else ""
        print(f"ERROR: {e}{witness}", file=sys.stderr)
        return EXIT_DOMAIN
    except BudgetExceeded as e:
        print(f"ERROR: Budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except NumericalDisagreement as e:
        print(f"ERROR: Numerical disagreement: {e}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    except CampanaError as e:
        print(f"ERROR: {type(e).__name__}: {e}", file=sys.stderr)
        logger.debug("Unclassified campana error", exc_info=True)
        return EXIT_UNEXPECTED
