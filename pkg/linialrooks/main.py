"""
linialrooks command-line entry point.

    python -m linialrooks.main boards rook-vector --family linial --n 4 --t 1
"""

import sys
import time
from typing import Optional, Sequence

from loguru import logger

from linialrooks import __version__
from linialrooks.commands import arrangements, bijection, boards, gessel, graphs, series, trees, verify
from linialrooks.commands.common import EngineArgumentParser, common_options
from linialrooks.config import get_settings
from linialrooks.errors import EngineError
from linialrooks.models.schemas import CommandResult, CommandStatus, OutputFormat, VerificationReport, VerifyAllReport
from linialrooks.utils.formatting import render

COMMAND_GROUPS = (boards, trees, bijection, gessel, arrangements, graphs, series, verify)


# ─── Logging ──────────────────────────────────────────────────────────────────

def configure_logging(level: Optional[str] = None) -> None:
    logger.remove()
    logger.add(sys.stderr, level=(level or get_settings().log_level).upper())


# ─── Parser ───────────────────────────────────────────────────────────────────

def build_parser() -> EngineArgumentParser:
    parser = EngineArgumentParser(
        prog="linialrooks",
        description="Exact rook theory, plane k-ary trees and truncated affine arrangements.",
    )
    parser.add_argument("--version", action="version", version=f"linialrooks {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = common_options()
    for group in COMMAND_GROUPS:
        group.register(subparsers, common)
    return parser


def _failed(payload) -> bool:
    return isinstance(payload, (VerificationReport, VerifyAllReport)) and payload.status != "pass"


# ─── Runner ───────────────────────────────────────────────────────────────────

def run(argv: Optional[Sequence[str]] = None) -> CommandResult:
    configure_logging()
    started = time.perf_counter()
    output_format = OutputFormat.JSON

    def elapsed() -> float:
        return round((time.perf_counter() - started) * 1000, 3)

    try:
        args = build_parser().parse_args(argv)
        output_format = args.output_format
        if args.log_level:
            configure_logging(args.log_level)
        payload = args.handler(args)
        status = CommandStatus.VERIFICATION_FAILED if _failed(payload) else CommandStatus.OK
        logger.debug(f"[CLI] {args.command} {getattr(args, 'action', '')} status={status.value}")
        return CommandResult(status=status, payload=payload, elapsed=elapsed(), output_format=output_format)

    except SystemExit as e:
        # --help and --version print and exit 0 from inside argparse
        status = CommandStatus.OK if not e.code else CommandStatus.INVALID_INPUT
        return CommandResult(status=status, elapsed=elapsed())

    except EngineError as e:
        logger.debug(f"[CLI] {type(e).__name__}: {e.detail}")
        return CommandResult(status=e.status, elapsed=elapsed(), output_format=output_format, detail=e.detail)

    # ─── Global Error Handler ─────────────────────────────────────────────────
    except Exception as e:
        logger.exception(f"[CLI] unhandled error: {e}")
        return CommandResult(
            status=CommandStatus.VERIFICATION_FAILED,
            elapsed=elapsed(),
            output_format=output_format,
            detail=f"unexpected error: {e}",
        )


def main(argv: Optional[Sequence[str]] = None) -> None:
    result = run(argv)
    if result.payload is not None:
        sys.stdout.write(render(result.payload, result.output_format) + "\n")
        sys.stdout.flush()
    if result.detail:
        sys.stderr.write(f"linialrooks: {result.status.value}: {result.detail}\n")
    sys.exit(result.exit_code)


if __name__ == "__main__":
    main()
