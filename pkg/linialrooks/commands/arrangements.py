from loguru import logger

from linialrooks.errors import InvalidInputError
from linialrooks.services.arrangements import (
    BoundType,
    ChiMethod,
    TruncatedAffineSpec,
    bounded_region_sequence,
    describe,
    region_counts_json,
    region_sequence,
    sequence_count,
)

FAMILIES = ("linial", "shi", "braid", "affine")


def spec_from_args(args) -> TruncatedAffineSpec:
    if args.family == "linial":
        return TruncatedAffineSpec.linial(args.n, args.a)
    if args.family == "shi":
        return TruncatedAffineSpec.shi(args.n)
    if args.family == "braid":
        return TruncatedAffineSpec.braid(args.n)
    if args.b is None:
        raise InvalidInputError("--family affine needs --b")
    return TruncatedAffineSpec(args.n, args.a, args.b)


def charpoly(args):
    return describe(spec_from_args(args), args.method)


def regions(args):
    return region_counts_json(spec_from_args(args), args.method)


def bounded_seq(args):
    """Extended Linial region and bounded-region counts for n = 1..--n."""
    if args.family != "linial":
        raise InvalidInputError("bounded-seq is defined for the extended Linial family only")
    bounded = bounded_region_sequence(args.a, args.n)
    total = region_sequence(args.a, args.n)
    logger.info(f"[Arrangements] bounded-seq a={args.a} n_max={args.n}")
    return {
        "n": list(range(1, args.n + 1)),
        "bounded": [str(x) for x in bounded],
        "regions": [str(x) for x in total],
    }


def sequences(args):
    if args.family != "linial":
        raise InvalidInputError("sequences are defined for the extended Linial family only")
    found = sequence_count(args.n, args.a, args.bound, max_enum=args.max_enum)
    return {"n": args.n, "a": args.a, "bound": args.bound.value, "count": str(found)}


def register(subparsers, common):
    parser = subparsers.add_parser("arrangements", help="Truncated affine arrangements")
    actions = parser.add_subparsers(dest="action", required=True)
    for name, handler, help_text in (
        ("charpoly", charpoly, "Characteristic polynomial and region counts"),
        ("regions", regions, "Regions and bounded regions"),
        ("bounded-seq", bounded_seq, "Region counts for n = 1..N"),
        ("sequences", sequences, "Region counts by direct sequence search"),
    ):
        sub = actions.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("--family", choices=FAMILIES, default="linial")
        sub.add_argument("--n", type=int, required=True)
        sub.add_argument("--a", type=int, default=1)
        sub.add_argument("--b", type=int, default=None)
        sub.add_argument("--method", type=ChiMethod, choices=list(ChiMethod), default=ChiMethod.FORMULA)
        if name == "sequences":
            sub.add_argument("--bound", type=BoundType, choices=list(BoundType), default=BoundType.BOUNDED)
        sub.set_defaults(handler=handler)
