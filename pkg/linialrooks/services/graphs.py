"""
Linial graphs G_{t,n}, their complements, chromatic polynomials and matchings.

G_{t,n} is bipartite. A1 = {v_1, ..., v_{2n-4+t}} stands for the columns
2..2n-3+t of the Linial board L_{t,n} (column c is v_{c-1}) and A2 vertex
v_{2n-4+t+i} stands for row i. A2 vertex i is joined to exactly the columns
of row i.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Optional

import networkx as nx
from loguru import logger

from linialrooks.config import get_settings
from linialrooks.errors import InvalidInputError, check_cap
from linialrooks.models.schemas import GraphJSON, MatchingJSON
from linialrooks.services.algebra import IntegerPolynomial, X, falling_factorial
from linialrooks.services.arrangements import TruncatedAffineSpec, charpoly_formula
from linialrooks.services.boards import factorial_polynomial, linial_board


# ─── Graphs ───────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class SimpleGraph:
    vertex_count: int
    edges: frozenset[tuple[int, int]]
    parts: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None

    def __post_init__(self):
        if self.vertex_count < 0:
            raise InvalidInputError("vertex count must be nonnegative")
        clean = set()
        for u, v in self.edges:
            if u == v:
                raise InvalidInputError(f"self-loop at vertex {u}")
            if not (1 <= u <= self.vertex_count and 1 <= v <= self.vertex_count):
                raise InvalidInputError(f"edge ({u}, {v}) leaves [1..{self.vertex_count}]")
            clean.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(clean))

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        return cls(vertex_count, frozenset(tuple(e) for e in edges))

    @classmethod
    def complete(cls, vertex_count: int) -> "SimpleGraph":
        return cls(vertex_count, frozenset(
            (u, v) for u in range(1, vertex_count + 1) for v in range(u + 1, vertex_count + 1)
        ))

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Bitmask of neighbours, bit u-1 for vertex u."""
        adj = [0] * self.vertex_count
        for u, v in self.edges:
            adj[u - 1] |= 1 << (v - 1)
            adj[v - 1] |= 1 << (u - 1)
        return tuple(adj)

    def neighbours(self, v: int) -> list[int]:
        mask = self.adjacency[v - 1]
        return [u + 1 for u in range(self.vertex_count) if mask >> u & 1]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def to_json(self) -> GraphJSON:
        return GraphJSON(vertices=self.vertex_count, edges=sorted(self.edges))

    @classmethod
    def from_json(cls, data: GraphJSON) -> "SimpleGraph":
        return cls.from_edges(data.vertices, data.edges)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.vertex_count + 1))
        graph.add_edges_from(self.edges)
        return graph


def linial_graph(t: int, n: int) -> SimpleGraph:
    if n < 2 or t < 0:
        raise InvalidInputError(f"Linial graph needs n >= 2 and t >= 0, got n={n}, t={t}")
    left = 2 * n - 4 + t
    if left < 1:
        raise InvalidInputError(f"Linial graph G_{{{t},{n}}} has an empty column side")
    edges = {
        (j, left + i)
        for i in range(1, n)
        for j in range(i, n - 2 + t + i)
    }
    parts = (tuple(range(1, left + 1)), tuple(range(left + 1, left + n)))
    return SimpleGraph(left + n - 1, frozenset(edges), parts)


def complement(graph: SimpleGraph) -> SimpleGraph:
    v = graph.vertex_count
    return SimpleGraph(v, frozenset(
        (a, b) for a in range(1, v + 1) for b in range(a + 1, v + 1) if (a, b) not in graph.edges
    ))


# ─── Chromatic polynomials ────────────────────────────────────────────────────

def _drop_vertex(adj: tuple[int, ...], v: int) -> tuple[int, ...]:
    low = (1 << v) - 1
    out = []
    for i, mask in enumerate(adj):
        if i != v:
            out.append((mask & low) | ((mask >> (v + 1)) << v))
    return tuple(out)


def _contract(adj: tuple[int, ...], u: int, v: int) -> tuple[int, ...]:
    """Merge v into u, keeping the graph simple."""
    merged = list(adj)
    union = (adj[u] | adj[v]) & ~(1 << u) & ~(1 << v)
    merged[u] = union
    for w in range(len(adj)):
        if union >> w & 1:
            merged[w] |= 1 << u
    return _drop_vertex(tuple(merged), v)


def _toggle_edge(adj: tuple[int, ...], u: int, v: int) -> tuple[int, ...]:
    out = list(adj)
    out[u] ^= 1 << v
    out[v] ^= 1 << u
    return tuple(out)


@lru_cache(maxsize=None)
def _chromatic(adj: tuple[int, ...]) -> IntegerPolynomial:
    size = len(adj)
    degrees = [bin(m).count("1") for m in adj]
    edge_count = sum(degrees) // 2
    if edge_count == 0:
        return IntegerPolynomial.monomial(size)
    if edge_count == size * (size - 1) // 2:
        return falling_factorial(size)

    for v, d in enumerate(degrees):
        if d == 0:
            return X * _chromatic(_drop_vertex(adj, v))
    for v, d in enumerate(degrees):
        if d == size - 1:
            return X * _chromatic(_drop_vertex(adj, v)).compose_linear(1, -1)

    if edge_count > size * (size - 1) // 4:
        # denser than its complement: P(G) = P(G + e) + P(G / e) for a non-edge e at vertex 0
        u = 0
        v = next(w for w in range(1, size) if not adj[u] >> w & 1)
        return _chromatic(_toggle_edge(adj, u, v)) + _chromatic(_contract(adj, u, v))

    u = max(range(size), key=lambda i: degrees[i])
    v = next(w for w in range(size) if adj[u] >> w & 1)
    return _chromatic(_toggle_edge(adj, u, v)) - _chromatic(_contract(adj, u, v))


def chromatic_polynomial(graph: SimpleGraph, max_vertices: int | None = None) -> IntegerPolynomial:
    cap = max_vertices if max_vertices is not None else get_settings().max_chromatic_vertices
    check_cap("chromatic polynomial vertices", graph.vertex_count, cap)
    poly = _chromatic(graph.adjacency)
    logger.debug(f"[Graphs] chromatic V={graph.vertex_count} E={len(graph.edges)} memo={_chromatic.cache_info().currsize}")
    return poly


# ─── Matchings ────────────────────────────────────────────────────────────────

def _bipartite_matching_numbers(graph: SimpleGraph, rows: tuple[int, ...]) -> list[int]:
    """Row-by-row over the smaller side; the state is the set of used partners."""
    states: dict[int, int] = {0: 1}
    for r in rows:
        nxt = dict(states)
        partners = graph.adjacency[r - 1]
        for used, count in states.items():
            free = partners & ~used
            while free:
                bit = free & -free
                nxt[used | bit] = nxt.get(used | bit, 0) + count
                free ^= bit
        states = nxt
    numbers = [0] * (len(rows) + 1)
    for used, count in states.items():
        numbers[bin(used).count("1")] += count
    return numbers


def generic_matching_numbers(adj: tuple[int, ...]) -> list[int]:
    size = len(adj)

    @lru_cache(maxsize=None)
    def by_size(alive: int) -> tuple[int, ...]:
        if not alive:
            return (1,)
        v = (alive & -alive).bit_length() - 1
        rest = alive & ~(1 << v)
        skip = list(by_size(rest))
        partners = adj[v] & rest
        while partners:
            bit = partners & -partners
            sub = by_size(rest & ~bit)
            if len(skip) < len(sub) + 1:
                skip.extend([0] * (len(sub) + 1 - len(skip)))
            for k, c in enumerate(sub):
                skip[k + 1] += c
            partners ^= bit
        return tuple(skip)

    return list(by_size((1 << size) - 1))


def matching_numbers(
    graph: SimpleGraph,
    max_rows: int | None = None,
    max_vertices: int | None = None,
) -> list[int]:
    """
    Number of matchings of each size 0, 1, 2, ..., trailing zeros removed.
    Bipartite graphs whose smaller side fits max_rows use the row DP; anything
    else goes through the generic DP, capped at max_vertices.
    """
    settings = get_settings()
    row_cap = max_rows if max_rows is not None else settings.max_matching_rows
    vertex_cap = max_vertices if max_vertices is not None else settings.max_generic_matching_vertices
    if graph.parts is not None and min(len(p) for p in graph.parts) <= row_cap:
        rows = min(graph.parts, key=len)
        numbers = _bipartite_matching_numbers(graph, rows)
    else:
        check_cap("matching vertices", graph.vertex_count, vertex_cap)
        numbers = generic_matching_numbers(graph.adjacency)
    while len(numbers) > 1 and numbers[-1] == 0:
        numbers.pop()
    return numbers


def count_maximum_matchings(
    graph: SimpleGraph,
    max_rows: int | None = None,
    max_vertices: int | None = None,
) -> tuple[int, int]:
    numbers = matching_numbers(graph, max_rows=max_rows, max_vertices=max_vertices)
    return len(numbers) - 1, numbers[-1]


def maximum_matching_json(graph: SimpleGraph, numbers: list[int] | None = None) -> MatchingJSON:
    if numbers is None:
        numbers = matching_numbers(graph)
    size, count = len(numbers) - 1, numbers[-1]
    return MatchingJSON(size=size, count=str(count))


def maximum_matching_size_networkx(graph: SimpleGraph) -> int:
    return len(nx.max_weight_matching(graph.to_networkx(), maxcardinality=True))


# ─── Chromatic polynomial of the complement, via the board ────────────────────

def complement_chromatic_via_rooks(t: int, n: int) -> IntegerPolynomial:
    """(x)_{2n-4+t} · R(x - 2n + 4 - t, L_{t,n})."""
    left = 2 * n - 4 + t
    rook_part = factorial_polynomial(linial_board(t, n)).compose_linear(1, -left)
    return falling_factorial(left) * rook_part


def complement_chromatic_via_charpoly(t: int, n: int, a: int = 1) -> IntegerPolynomial:
    """(x)_{2n-4+t} · (-1)^(n-1) χ^{a-1,a+1}((a+1)n - 3 - x), for any a >= 1."""
    chi = charpoly_formula(TruncatedAffineSpec.linial(n, a))
    signed = chi.compose_linear(-1, (a + 1) * n - 3).scale((-1) ** (n - 1))
    return falling_factorial(2 * n - 4 + t) * signed
