from fractions import Fraction

from linialrooks.commands.common import assignments, variables_from
from linialrooks.errors import InvalidInputError
from linialrooks.services.series import IDENTITIES


def verify(args):
    params = assignments(args.params) if args.params else {}
    identity = args.identity
    if identity == "ltree-egf":
        return IDENTITIES[identity](args.k, args.order, max_enum=args.max_enum)
    if identity == "f-equation":
        return IDENTITIES[identity](args.k, args.order)
    if identity == "drake":
        default_u = [Fraction(1, i + 1) for i in range(1, args.k + 1)]
        default_v = [Fraction(i + 1) for i in range(1, args.k + 1)]
        u, v = variables_from(params, args.k, default_u, default_v)
        return IDENTITIES[identity](args.k, u, v, args.order)
    if args.k != 2:
        raise InvalidInputError("gessel-k2 is the k = 2 identity; pass --k 2 or omit --k")
    ones = [Fraction(1)] * 2
    (u1, u2), (v1, v2) = variables_from(params, 2, ones, ones)
    return IDENTITIES[identity](u1, u2, v1, v2, args.order)


def register(subparsers, common):
    parser = subparsers.add_parser("series", help="Generating-function identities")
    actions = parser.add_subparsers(dest="action", required=True)
    sub = actions.add_parser("verify", parents=[common])
    sub.add_argument("--identity", choices=list(IDENTITIES), required=True)
    sub.add_argument("--k", type=int, default=2)
    sub.add_argument("--order", type=int, default=8)
    sub.add_argument("--params", default=None, help="u1=1/2,v1=2,...")
    sub.set_defaults(handler=verify)
