"""
survey-fs - command-line entry point
Feature selection and classification benchmark for nominal survey data

Exit codes: 0 success, 1 data or runtime error, 2 usage error.
"""

import argparse
import logging
import sys
from typing import List, Optional

from cli import COMMANDS
from cli.common import UsageError
from config import LOG_FORMAT, LOG_LEVEL, TOOL_NAME, TOOL_VERSION
from core.errors import SurveyFSError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=TOOL_NAME,
        description="Rank nominal survey attributes and benchmark classifiers on top-k subsets",
    )
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {TOOL_VERSION}")
    subparsers = parser.add_subparsers(dest="command", metavar="{generate,rank,evaluate,sweep}")
    subparsers.required = True
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def configure_logging(args: argparse.Namespace) -> None:
    # Los logs van a stderr; stdout queda para los resultados
    level = LOG_LEVEL
    if getattr(args, "verbose", False):
        level = "DEBUG"
    elif getattr(args, "quiet", False):
        level = "WARNING"
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    configure_logging(args)
    logger.debug(f" {TOOL_NAME} {TOOL_VERSION}: {args.command} (seed={args.seed})")

    try:
        return args.handler(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"{TOOL_NAME} {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (SurveyFSError, OSError) as e:
        logger.error(f" {args.command} failed: {e}")
        print(f"{TOOL_NAME} {args.command}: error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
