from fractions import Fraction

from linialrooks.commands.common import assignments, variables_from
from linialrooks.services.bijection import gessel_polynomial


def gessel(args):
    poly = gessel_polynomial(args.n, args.k, max_enum=args.max_enum)
    if args.eval is None:
        return poly.to_json(args.n)
    ones = [Fraction(1)] * args.k
    u, v = variables_from(assignments(args.eval), args.k, ones, ones)
    value = Fraction(poly.evaluate(u, v))
    return {
        "n": args.n,
        "k": args.k,
        "u": [str(x) for x in u],
        "v": [str(x) for x in v],
        "value": str(value.numerator) if value.denominator == 1 else str(value),
    }


def register(subparsers, common):
    parser = subparsers.add_parser("gessel", parents=[common], help="Gessel polynomial G_{n,k}")
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--k", type=int, required=True)
    parser.add_argument("--eval", default=None, help="Evaluate at u1=..,v1=..; unnamed variables are 1")
    parser.set_defaults(handler=gessel)
