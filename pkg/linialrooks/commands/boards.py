from fractions import Fraction

from loguru import logger

from linialrooks.commands.common import int_list, rational, read_json
from linialrooks.errors import InvalidInputError
from linialrooks.models.schemas import BoardFamily, BoardJSON
from linialrooks.services.boards import (
    Board,
    factorial_polynomial,
    family_board,
    gjw_factorial_polynomial,
    rook_numbers,
    skew_ferrers,
)


# ─── Board selection ──────────────────────────────────────────────────────────

def board_from_args(args) -> Board:
    if args.input:
        return Board.from_json(BoardJSON.model_validate(read_json(args.input)))
    if args.lam:
        return skew_ferrers(int_list(args.lam), int_list(args.mu) if args.mu else ())
    if args.family:
        if args.n is None:
            raise InvalidInputError("--family needs --n")
        return family_board(args.family, args.t, args.n)
    raise InvalidInputError("choose a board with --family, --lambda or --input")


def _exact(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else str(value)


# ─── Handlers ─────────────────────────────────────────────────────────────────

def rook_vector(args):
    board = board_from_args(args)
    vector = rook_numbers(board, max_rows=args.max_states)
    logger.info(f"[Boards] rook-vector rows={board.row_count} cells={len(board.cells)}")
    return vector.to_json()


def factorial_poly(args):
    board = board_from_args(args)
    poly = factorial_polynomial(board, m=args.m, max_rows=args.max_states)
    if args.eval is not None:
        return {"t": _exact(args.eval), "value": _exact(Fraction(poly(args.eval)))}
    return poly.to_json()


def gjw_poly(args):
    board = board_from_args(args)
    return gjw_factorial_polynomial(board, max_rows=args.max_states).to_json()


def register(subparsers, common):
    parser = subparsers.add_parser("boards", help="Rook numbers and factorial polynomials of boards")
    actions = parser.add_subparsers(dest="action", required=True)

    def add(name, handler, help_text):
        sub = actions.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("--family", type=BoardFamily, choices=list(BoardFamily))
        sub.add_argument("--n", type=int)
        sub.add_argument("--t", type=int, default=0)
        sub.add_argument("--lambda", dest="lam", help="Comma-separated parts, e.g. 6,5,4")
        sub.add_argument("--mu", help="Comma-separated parts of the removed shape")
        sub.add_argument("--input", help="Board JSON file, or - for stdin")
        sub.set_defaults(handler=handler)
        return sub

    add("rook-vector", rook_vector, "Rook numbers r_0..r_m")
    factorial = add("factorial-poly", factorial_poly, "R_m(x, B)")
    factorial.add_argument("--m", type=int, default=None, help="Defaults to the row count")
    factorial.add_argument("--eval", type=rational, default=None, help="Report R(T, B) instead of the polynomial")
    add("gjw-poly", gjw_poly, "Partition-lattice form of R(x, B)")
