#!/usr/bin/env python3

import os
import argparse
import sys
import logging
import toml

from typing import Optional

from g2check.modules import commands
from g2check.modules.algebra_file import AlgebraFileError
from g2check.modules.catalog import UnknownAlgebraError
from g2check.modules.color import Color, paint
from g2check.modules.config import get_data_directory, load_settings
from g2check.modules.exact_linalg import DegenerateFormError, DimensionMismatchError, NonSymmetricError
from g2check.modules.lie_algebra import InvarianceError, JacobiError
from g2check.modules.report import ReportTree

INPUT_ERRORS = (
    AlgebraFileError,
    JacobiError,
    InvarianceError,
    DegenerateFormError,
    NonSymmetricError,
    DimensionMismatchError,
    OSError,
)


class UsageError(ValueError):
    pass


def check_minimum(value: Optional[int], minimum: int, flag: str) -> None:
    if value is not None and value < minimum:
        raise UsageError(f"{flag} must be at least {minimum}")


def print_header(version: str) -> None:
    """
    Prints the g2check banner including version.
    """
    banner = r"""
                 ___     _           _
             __ |_  )__ | |_  ___ __| |__
            / _` / // _|| ' \/ -_) _| / /
            \__, /___\__||_||_\___\__|_\_\  v{VERSION}
            |___/
            """.format(
        VERSION=version
    )
    title = r"""
                    {banner}
            ###########################################################
            #  g2check - exact checks for invariant split G2 structures #
            #  Help : use -h for help text                             #
            ###########################################################
            """
    print(title.format(banner=paint(banner, Color.CYAN)))


def get_version() -> str:
    config_file_path = os.path.join(os.path.dirname(os.path.realpath(__file__)), "pyproject.toml")
    try:
        with open(config_file_path, "r") as f:
            data = toml.load(f)
            return data["project"]["version"]
    except Exception as e:
        raise Exception("unable to find version from pyproject.toml.\n", e)


def dispatch(args: argparse.Namespace):
    """
    Runs the selected subcommand; returns a Report, or a document for the
    subcommands that print one.
    """
    settings = load_settings()
    jobs = args.jobs if args.jobs is not None else settings.jobs
    settings.jobs = jobs
    if args.command == "analyze":
        return commands.analyze(args.file)
    if args.command == "obstruct":
        return commands.obstruct(args.file)
    if args.command == "verify-paper":
        check_minimum(args.trials, 1, "--trials")
        check_minimum(args.samples, 0, "--samples")
        if args.trials is not None:
            settings.search_trials = args.trials
        if args.samples is not None:
            settings.refutation_samples = args.samples
        if args.seed is not None:
            settings.seed = args.seed
        return commands.verify_paper(settings)
    if args.command == "g2":
        return commands.g2_check() if args.action == "check" else commands.g2_dump()
    if args.command == "rank-classify":
        check_minimum(args.bound, 2, "--bound")
        return commands.rank_classify(args.bound, jobs)
    if args.command == "search":
        trials = args.trials if args.trials is not None else settings.search_trials
        check_minimum(trials, 1, "--trials")
        check_minimum(args.samples, 0, "--samples")
        seed = args.seed if args.seed is not None else settings.seed
        return commands.search(trials, seed, jobs, args.samples)
    if args.command == "catalog":
        if args.action == "list":
            return commands.catalog_list()
        return commands.catalog_export(args.name, args.epsilon)
    raise Exception(f"unknown command {args.command}")


def run(arg_parser: argparse.ArgumentParser, version: str, argv: Optional[list[str]] = None) -> int:
    args = arg_parser.parse_args(argv)

    # setup logging
    date_fmt = "%d-%b-%y %H:%M:%S"
    logging_fmt = "%(asctime)s - %(levelname)s - %(message)s"
    logging_lvl = logging.DEBUG if args.v else logging.INFO
    logging.basicConfig(level=logging_lvl, format=logging_fmt, datefmt=date_fmt)

    # Print version then exit
    if args.version:
        print(f"g2check Version: {version}")
        return 0

    if not args.command:
        arg_parser.print_help()
        return 2

    prints_document = (args.command, getattr(args, "action", None)) in (("g2", "dump"), ("catalog", "export"))
    if not args.quiet and args.format == "human" and not prints_document:
        print_header(version)

    try:
        result = dispatch(args)
    except UnknownAlgebraError as err:
        print(f"error: {err.args[0]}", file=sys.stderr)
        return 2
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except INPUT_ERRORS as err:
        logging.error(f"{args.command}: {err}")
        witness = getattr(err, "witness", None)
        if witness:
            print(f"witness: {', '.join(witness)}", file=sys.stderr)
        return 1

    if isinstance(result, str):
        print(result, end="")
        return 0

    # save data if desired
    if args.save:
        result.save(get_data_directory())

    if args.format == "machine":
        result.show("machine")
    else:
        result.show("human")
        if args.command == "verify-paper":
            tree = ReportTree(result)
            tree.load()
            print(tree.render())

    return result.exit_code()


def set_arguments() -> argparse.ArgumentParser:
    """
    Parses user flags passed to g2check
    """
    parser = argparse.ArgumentParser(
        prog="g2check", description="Exact verification of invariant torsion-free split G2 structures."
    )
    parser.add_argument("--format", type=str, choices=["human", "machine"], default="human", help="Report format")
    parser.add_argument("--save", action="store_true", help="Save the machine report in the data directory")
    parser.add_argument("--jobs", type=int, help="Worker processes for searches (default G2CHECK_JOBS or 1)")
    parser.add_argument("-q", "--quiet", action="store_true")
    parser.add_argument("--version", action="store_true", help="Show current version of g2check.")
    parser.add_argument("-v", action="store_true", help="verbose logging")

    subparsers = parser.add_subparsers(dest="command")

    analyze = subparsers.add_parser("analyze", help="Structure, Witt decomposition and geometry of an algebra file")
    analyze.add_argument("file", type=str)

    obstruct = subparsers.add_parser("obstruct", help="Embedding obstruction for an algebra file")
    obstruct.add_argument("file", type=str)

    verify = subparsers.add_parser("verify-paper", help="Run every check and the final case analysis")
    verify.add_argument("--trials", type=int, help="Subalgebra search trials (default G2CHECK_SEARCH_TRIALS)")
    verify.add_argument("--samples", type=int, help="Refutation and dimension-4 samples (default G2CHECK_REFUTATION_SAMPLES)")
    verify.add_argument("--seed", type=int, help="Master seed (default G2CHECK_SEED)")

    g2 = subparsers.add_parser("g2", help="Checks on the g2(2) matrix model")
    g2.add_argument("action", choices=["check", "dump"])

    classify = subparsers.add_parser("rank-classify", help="Exhaustive rank-two classification sweep in m")
    classify.add_argument("--bound", type=int, default=2)

    search = subparsers.add_parser("search", help="Randomized search for a constant rank-two subalgebra of m")
    search.add_argument("--trials", type=int)
    search.add_argument("--seed", type=int)
    search.add_argument("--samples", type=int, help="Also refute this many random three-dimensional subspaces")

    catalog = subparsers.add_parser("catalog", help="Catalog algebras")
    catalog_actions = catalog.add_subparsers(dest="action", required=True)
    export = catalog_actions.add_parser("export", help="Print a catalog algebra as an algebra file")
    export.add_argument("name", type=str)
    export.add_argument("--epsilon", type=int, choices=[1, -1])
    catalog_actions.add_parser("list", help="List the seven-dimensional candidates")

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    try:
        return run(set_arguments(), get_version(), argv)
    except KeyboardInterrupt:
        print("Interrupt received! Exiting cleanly...")
        return 130


if __name__ == "__main__":
    sys.exit(main())
