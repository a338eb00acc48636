from linialrooks.models.schemas import TreeClass
from linialrooks.services.trees import count_class, enumerate_plane_trees


def count(args):
    return count_class(args.n, args.k, args.tree_class, max_enum=args.max_enum).to_json()


def list_trees(args):
    trees = enumerate_plane_trees(args.n, args.k, args.tree_class, max_enum=args.max_enum)
    return {"class": args.tree_class.value, "n": args.n, "k": args.k, "trees": [t.to_json() for t in trees]}


def register(subparsers, common):
    parser = subparsers.add_parser("trees", help="Labeled plane k-ary trees and their classes")
    actions = parser.add_subparsers(dest="action", required=True)
    for name, handler, help_text in (
        ("count", count, "Class size: closed form, cross-checked by enumeration"),
        ("list", list_trees, "Every tree of the class as tree JSON"),
    ):
        sub = actions.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("--class", dest="tree_class", type=TreeClass, choices=list(TreeClass), default=TreeClass.ALL)
        sub.add_argument("--n", type=int, required=True)
        sub.add_argument("--k", type=int, required=True)
        sub.set_defaults(handler=handler)
