from loguru import logger

from linialrooks.services.graphs import (
    chromatic_polynomial,
    complement,
    complement_chromatic_via_rooks,
    linial_graph,
    matching_numbers,
    maximum_matching_json,
)

GRAPHS = ("linial", "complement")


def _graph(args):
    graph = linial_graph(args.t, args.n)
    return complement(graph) if args.graph == "complement" else graph


def chromatic(args):
    graph = _graph(args)
    poly = chromatic_polynomial(graph, max_vertices=args.max_vertices)
    payload = {"graph": graph.to_json(), "chromatic": poly.to_json()}
    if args.graph == "complement":
        payload["matches_rook_form"] = poly == complement_chromatic_via_rooks(args.t, args.n)
    logger.info(f"[Graphs] chromatic {args.graph} t={args.t} n={args.n} degree={poly.degree}")
    return payload


def matchings(args):
    graph = _graph(args)
    numbers = matching_numbers(graph, max_rows=args.max_states, max_vertices=args.max_vertices)
    best = maximum_matching_json(graph, numbers)
    return {"size": best.size, "count": best.count, "by_size": [str(c) for c in numbers]}


def register(subparsers, common):
    parser = subparsers.add_parser("graphs", help="Linial graphs G_{t,n} and their complements")
    actions = parser.add_subparsers(dest="action", required=True)
    for name, handler, default in (("chromatic", chromatic, "complement"), ("matchings", matchings, "linial")):
        sub = actions.add_parser(name, parents=[common])
        sub.add_argument("--n", type=int, required=True)
        sub.add_argument("--t", type=int, default=0)
        sub.add_argument("--graph", choices=GRAPHS, default=default)
        sub.add_argument("--max-vertices", type=int, default=None,
                         help="Vertex cap for deletion-contraction and the generic matching DP")
        sub.set_defaults(handler=handler)
