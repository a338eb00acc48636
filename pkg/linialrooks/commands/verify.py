import asyncio

from linialrooks.errors import InvalidInputError
from linialrooks.services.verification import SUITES, verify_all


def run_all(args):
    if args.max_n < 2:
        raise InvalidInputError(f"--max-n must be at least 2, got {args.max_n}")
    return asyncio.run(verify_all(args.max_n, args.suite or None))


def register(subparsers, common):
    parser = subparsers.add_parser("verify", help="Cross-verification suites")
    actions = parser.add_subparsers(dest="action", required=True)
    sub = actions.add_parser("all", parents=[common])
    sub.add_argument("--max-n", type=int, default=5)
    sub.add_argument("--suite", action="append", choices=list(SUITES), help="Repeatable; defaults to every suite")
    sub.set_defaults(handler=run_all)
