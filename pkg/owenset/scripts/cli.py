#!/usr/bin/env python
"""Command-line front end for leximin and leximax Owen imputations.

Instances are JSON files or built-in fixtures (``fixture:fig-flow``, ``fixture:path-5``).
Exit codes: 0 on success, 1 when a check answers no, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path

from owenset.core.config import settings
from owenset.core.constants import EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, METHODS
from owenset.core.errors import AgentBoundExceeded, OwenSetError, ParseError
from owenset.schemas import ResultReport, parse_rational
from owenset.services.common import Imputation
from owenset.services.fixtures import resolve_instance
from owenset.services.games import Game, get_game
from owenset.services.leximin import Dominated, verify_leximin
from owenset.services.verify import CoreViolation, GameInstance, verify_core

logger = logging.getLogger(__name__)

COMMANDS = ("leximin", "leximax", "owen-check", "core-check", "value", "certify")


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(
        prog="owenset", description="Leximin and leximax Owen imputations of network games"
    )
    parser.add_argument("command", choices=COMMANDS, help="What to compute or check")
    parser.add_argument(
        "instance", help="Instance file path, or fixture:<name> for a built-in instance"
    )
    parser.add_argument(
        "--method",
        choices=METHODS,
        default=None,
        help="Solution method (default: combinatorial for maxflow, lp otherwise)",
    )
    parser.add_argument(
        "--format",
        choices=["human", "machine"],
        default="human",
        dest="output_format",
        help="Human-readable text or exact JSON",
    )
    parser.add_argument("--seed", type=int, default=0, help="Seed of the sampling checks")
    parser.add_argument(
        "--max-agents",
        type=int,
        default=settings.MAX_AGENTS,
        help="Agent bound of exhaustive core checks",
    )
    parser.add_argument(
        "--samples",
        type=int,
        default=settings.VERIFY_SAMPLES,
        help="Owen-set samples drawn by certify",
    )
    parser.add_argument("--shares", type=Path, default=None, help="JSON file of name -> share")
    parser.add_argument(
        "--share",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="One agent's share; repeatable, unmentioned agents get 0",
    )
    parser.add_argument("--verbose", action="store_true", help="Log solver progress")
    return parser.parse_args(argv)


def read_shares(args: argparse.Namespace, instance: GameInstance) -> Imputation:
    """Shares given with --shares and --share, keyed by agent id.

    Raises:
        ParseError: If a name is unknown, a value is not an exact rational or none given.
    """
    raw: dict[str, object] = {}
    if args.shares is not None:
        try:
            loaded = json.loads(args.shares.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"{args.shares}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ParseError(f"{args.shares}: expected an object of name -> share")
        raw.update(loaded)
    for item in args.share:
        name, separator, value = item.partition("=")
        if not separator:
            raise ParseError(f"--share {item!r} is not NAME=VALUE")
        raw[name.strip()] = value.strip()
    if not raw:
        raise ParseError("No shares given; use --shares FILE or --share NAME=VALUE")

    index = {instance.agent_name(agent): agent for agent in instance.agents}
    shares: Imputation = {agent: Fraction(0) for agent in instance.agents}
    for name, value in raw.items():
        if name not in index:
            raise ParseError(f"Unknown agent {name!r}")
        try:
            shares[index[name]] = parse_rational(value)
        except ValueError as exc:
            raise ParseError(f"Share of {name!r}: {exc}") from exc
    return shares


def named(instance: GameInstance, shares: Imputation) -> dict[str, Fraction]:
    return {instance.agent_name(agent): shares[agent] for agent in instance.agents}


def _core_check(
    game: Game, instance: GameInstance, shares: Imputation, max_agents: int, report: ResultReport
) -> None:
    if len(instance.agents) > max_agents:
        raise AgentBoundExceeded(
            f"{len(instance.agents)} agents exceed the core-check bound {max_agents}"
        )
    verdict = verify_core(instance, shares, max_agents=max_agents)
    report.verdicts["core"] = not isinstance(verdict, CoreViolation)
    if isinstance(verdict, CoreViolation):
        members = ",".join(instance.agent_name(a) for a in sorted(verdict.coalition))
        relation = "cost" if game.name == "branching" else "value"
        report.reasons.append(
            f"coalition {{{members}}} has {relation} {verdict.value} but share {verdict.share}"
        )


def run(args: argparse.Namespace) -> ResultReport:
    """Execute one command and collect its report."""
    document, instance = resolve_instance(args.instance)
    game = get_game(document.game)
    method = args.method or game.default_method
    report = ResultReport(command=args.command, game=document.game, worth=instance.worth)

    if args.command in ("leximin", "leximax", "certify"):
        compute = game.leximax if args.command == "leximax" else game.leximin
        computation = compute(instance, method)
        report.method = computation.method
        report.shares = named(instance, computation.shares)
        report.certificate = computation.certificate
        report.agree = computation.agree
        if args.command == "certify":
            _certify(args, game, instance, computation.shares, report)
    elif args.command == "owen-check":
        shares = read_shares(args, instance)
        report.shares = named(instance, shares)
        verdict = game.owen_check(instance, shares)
        report.verdicts["owen"] = verdict.member
        if verdict.member:
            report.certificate = game.describe_certificate(instance, verdict.certificate)
        else:
            report.reasons.append(verdict.reason)
    elif args.command == "core-check":
        shares = read_shares(args, instance)
        report.shares = named(instance, shares)
        _core_check(game, instance, shares, args.max_agents, report)
    return report


def _certify(
    args: argparse.Namespace,
    game: Game,
    instance: GameInstance,
    shares: Imputation,
    report: ResultReport,
) -> None:
    verdict = game.owen_check(instance, shares)
    report.verdicts["owen"] = verdict.member
    if not verdict.member:
        report.reasons.append(verdict.reason)
    if len(instance.agents) <= args.max_agents:
        _core_check(game, instance, shares, args.max_agents, report)
    else:
        logger.warning(f"Skipping the core check: more than {args.max_agents} agents")
    problem = game.owen_problem(instance)
    if problem is None:
        logger.warning("Skipping leximin sampling: the Owen set is too large to enumerate")
        return
    sampled = verify_leximin(problem, shares, args.samples, args.seed)
    report.verdicts["leximin"] = not isinstance(sampled, Dominated)
    if isinstance(sampled, Dominated):
        witness = {instance.agent_name(a): str(v) for a, v in sampled.witness.items()}
        report.reasons.append(f"dominated by the Owen imputation {witness}")


def main(argv: Sequence[str] | None = None) -> int:
    args = parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else settings.LOG_LEVEL,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    started = time.perf_counter()
    try:
        report = run(args)
    except OwenSetError as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report.elapsed_seconds = time.perf_counter() - started

    if args.output_format == "machine":
        print(report.to_machine())
    else:
        print(report.to_human())
    return EXIT_OK if report.passed else EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
