"""
Command line entry point

    python -m glider roots FAMILY RANK
    python -m glider embed check|elements (FAMILY N M | --diagonal-sl2-so4 | --spec FILE) [--anchor head|tail]
    python -m glider glider verify|classify|witness SPEC [--degree-bound N]
    python -m glider orbits list|hasse FAMILY RANK [--dot]
    python -m glider orbits reachable FAMILY N M [--coeffs a,b,c] [--seed N] [--jobs N]

Every command prints a CommandResult as JSON (or DOT text for --dot).
Exit codes: 0 ok, 1 usage error, 2 spec error.
"""

import argparse
import logging
import sys
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

from .config import get_config, parse_coefficients
from .embedding import (
    Embedding,
    canonical_for,
    check_condition_one,
    diagonal_sl2_in_so4,
    embedding_element_count_formula,
    embedding_elements,
)
from .errors import FamilyMismatch, GliderError, InvalidRank, RankOrder, UsageError
from .models import CommandResult
from .nilpotent_orbits import hasse, hasse_dot, orbit_labels, reachability_report
from .root_system import build_for, cartan_matrix
from .serialization import dumps, load_embedding_spec, load_glider_spec
from .uea import clear_caches
from .verma_glider import classify_irreducible, subfragment_witness, verify_glider

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SPEC = 2

USAGE_ERRORS = (UsageError, InvalidRank, FamilyMismatch, RankOrder)


class GliderArgumentParser(argparse.ArgumentParser):
    """argparse that raises UsageError instead of exiting"""

    def error(self, message: str):
        raise UsageError(message)


# ============================================================================
# Commands
# ============================================================================

def cmd_roots(args: argparse.Namespace) -> Dict[str, Any]:
    system = build_for(args.family, args.rank)
    return {
        "algebra": system.kind.label,
        "simple_roots": system.simple_roots,
        "positive_roots": system.positive_roots,
        "count": len(system.positive_roots),
        "rho": system.rho,
        "cartan_matrix": cartan_matrix(system),
    }


def _embedding(args: argparse.Namespace) -> Embedding:
    if args.diagonal_sl2_so4:
        return diagonal_sl2_in_so4()
    if args.spec:
        return load_embedding_spec(args.spec)
    if args.family is None or args.n is None or args.m is None:
        raise UsageError("give FAMILY N M, --diagonal-sl2-so4 or --spec FILE")
    return canonical_for(args.family, args.n, args.m, args.anchor)


def cmd_embed(args: argparse.Namespace) -> Dict[str, Any]:
    e = _embedding(args)
    payload: Dict[str, Any] = {"embedding": e.name}
    if args.action == "check":
        report = check_condition_one(e)
        payload.update(holds=report.holds, collisions=report.collisions)
        return payload
    elements = embedding_elements(e)
    payload.update(elements=elements, count=len(elements))
    if not (args.diagonal_sl2_so4 or args.spec):
        formula = embedding_element_count_formula(args.family, args.n, args.m)
        payload.update(formula=formula, formula_agrees=formula == len(elements))
    return payload


def cmd_glider(args: argparse.Namespace) -> Dict[str, Any]:
    spec = load_glider_spec(args.spec)
    payload: Dict[str, Any] = {"spec": spec.name or str(args.spec)}
    if args.action == "verify":
        report = verify_glider(spec, degree_bound=args.degree_bound)
        payload.update(report=report, ok=report.ok)
    elif args.action == "classify":
        payload.update(classification=classify_irreducible(spec))
    else:
        payload.update(witnesses=subfragment_witness(spec, degree_bound=args.degree_bound))
    return payload


def cmd_orbits(args: argparse.Namespace) -> Dict[str, Any]:
    if args.action == "list":
        labels = orbit_labels(args.family, args.rank)
        return {"labels": labels, "count": len(labels)}
    if args.action == "hasse":
        poset = hasse(args.family, args.rank)
        return {"poset": poset, "dot": hasse_dot(poset)}
    if args.m is None:
        raise UsageError("orbits reachable needs FAMILY N M")
    report = reachability_report(
        args.family, args.rank, args.m, coefficients=args.coeffs, seed=args.seed, jobs=args.jobs
    )
    return {"report": report, "agrees": report.agrees}


COMMANDS: Dict[str, Callable[[argparse.Namespace], Dict[str, Any]]] = {
    "roots": cmd_roots,
    "embed": cmd_embed,
    "glider": cmd_glider,
    "orbits": cmd_orbits,
}


# ============================================================================
# Parser
# ============================================================================

def _coefficients(raw: str):
    try:
        return parse_coefficients(raw)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _non_negative(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {raw!r}") from exc
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {value}")
    return value


def build_parser() -> GliderArgumentParser:
    parser = GliderArgumentParser(prog="glider", description="Glider representations over chains of classical Lie algebras")
    parser.add_argument("--verbose", "-v", action="count", default=0, help="INFO with -v, DEBUG with -vv")
    parser.add_argument("--json", action="store_true", help="Accepted and ignored; output is JSON unless --dot is given")
    commands = parser.add_subparsers(dest="command", required=True)

    roots = commands.add_parser("roots", help="Simple and positive roots of one algebra")
    roots.add_argument("family")
    roots.add_argument("rank", type=int)

    embed = commands.add_parser("embed", help="Condition (1) and embedding elements")
    embed.add_argument("action", choices=["check", "elements"])
    embed.add_argument("family", nargs="?")
    embed.add_argument("n", type=int, nargs="?")
    embed.add_argument("m", type=int, nargs="?")
    embed.add_argument("--diagonal-sl2-so4", action="store_true")
    embed.add_argument("--spec", help="Embedding spec JSON file")
    embed.add_argument("--anchor", choices=["head", "tail"], default="head")

    glider = commands.add_parser("glider", help="Verma glider checks on a JSON spec")
    glider.add_argument("action", choices=["verify", "classify", "witness"])
    glider.add_argument("spec")
    glider.add_argument("--degree-bound", type=_non_negative)

    orbits = commands.add_parser("orbits", help="Nilpotent orbit labels, Hasse diagrams, reachability")
    orbits.add_argument("action", choices=["list", "hasse", "reachable"])
    orbits.add_argument("family")
    orbits.add_argument("rank", type=int, help="Rank, or the source rank N for reachable")
    orbits.add_argument("m", type=int, nargs="?", help="Target rank M for reachable")
    orbits.add_argument("--dot", action="store_true", help="Print the Hasse diagram as DOT")
    orbits.add_argument("--coeffs", type=_coefficients)
    orbits.add_argument("--seed", type=_non_negative)
    orbits.add_argument("--jobs", type=_non_negative, help="Process pool size, 0 or 1 runs in process")
    return parser


def _configure_logging(verbose: int) -> None:
    level = {0: get_config()["log_level"], 1: "INFO"}.get(verbose, "DEBUG")
    logging.basicConfig(level=level, format="%(asctime)s %(name)s %(levelname)s %(message)s", stream=sys.stderr)


# ============================================================================
# Entry point
# ============================================================================

def run(argv: Optional[Sequence[str]] = None) -> Tuple[int, CommandResult, Optional[str]]:
    """
    Parse and run one command

    Returns:
        (exit code, CommandResult, DOT text or None)
    """
    parser = build_parser()
    tokens = list(argv) if argv is not None else sys.argv[1:]
    name = next((t for t in tokens if not t.startswith("-")), "")
    try:
        args = parser.parse_args(tokens)
        _configure_logging(args.verbose)
        clear_caches()
        payload = COMMANDS[args.command](args)
    except USAGE_ERRORS as exc:
        return EXIT_USAGE, CommandResult(command=name, status="error", diagnostics=[str(exc)]), None
    except GliderError as exc:
        logger.info("%s failed: %s", name, exc)
        return EXIT_SPEC, CommandResult(command=name, status="error", diagnostics=[str(exc)]), None
    dot = payload.get("dot") if getattr(args, "dot", False) else None
    return EXIT_OK, CommandResult(command=args.command, status="ok", payload=payload), dot


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, result, dot = run(argv)
    print(dot if dot is not None else dumps(result))
    return code
