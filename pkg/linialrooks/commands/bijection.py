"""
`bijection forward` maps a colored placement (or a flat one, through phi) to
its tree; `bijection inverse` maps tree JSON back to the colored placement.
"""

from loguru import logger

from linialrooks.commands.common import read_json
from linialrooks.errors import InvalidInputError
from linialrooks.models.schemas import ColoredPlacementJSON, FlatPlacementJSON, TreeJSON
from linialrooks.services.bijection import ColoredPlacement, FlatPlacement, exc_sub, phi, psi, psi_inverse
from linialrooks.services.trees import PlaneKaryTree, statistics


def _placement(data) -> ColoredPlacement:
    if not isinstance(data, dict):
        raise InvalidInputError("placement input must be a JSON object")
    if "g" in data:
        return ColoredPlacement.from_json(ColoredPlacementJSON.model_validate(data))
    if "f" in data:
        return phi(FlatPlacement.from_json(FlatPlacementJSON.model_validate(data)))
    raise InvalidInputError('placement JSON needs a "g" or an "f" list')


def forward(args):
    g = _placement(read_json(args.input))
    tree = psi(g)
    exc, sub = exc_sub(g)
    stats = statistics(tree)
    logger.info(f"[Bijection] forward n={g.n} k={g.k} root={tree.root} exc={exc} sub={sub}")
    return {
        "tree": tree.to_json(),
        "exc": list(exc),
        "sub": list(sub),
        "dsc": list(stats.dsc),
        "asc": list(stats.asc),
    }


def inverse(args):
    tree = PlaneKaryTree.from_json(TreeJSON.model_validate(read_json(args.input)))
    g = psi_inverse(tree)
    logger.info(f"[Bijection] inverse n={tree.n} k={tree.k} root={tree.root}")
    return g.to_json()


def register(subparsers, common):
    parser = subparsers.add_parser("bijection", help="Colored placements <-> plane k-ary trees")
    actions = parser.add_subparsers(dest="action", required=True)
    for name, handler in (("forward", forward), ("inverse", inverse)):
        sub = actions.add_parser(name, parents=[common])
        sub.add_argument("--input", required=True, help="JSON file, or - for stdin")
        sub.set_defaults(handler=handler)
