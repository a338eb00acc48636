"""
Rook placements and plane k-ary trees.

phi folds a placement f: [n-1] -> [kn] into colored form g(i) = (a, b)
(column a of block b). psi reads g as a decorated digraph i -> a with edge
label b, cuts one edge on every cycle and chains the resulting trees into a
single plane k-ary tree. psi_inverse undoes the chaining using the
left-to-right maxima of the spine.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from math import prod
from typing import Iterator

import networkx as nx
from loguru import logger

from linialrooks.config import get_settings
from linialrooks.errors import InvalidInputError, check_cap
from linialrooks.models.schemas import ColoredPlacementJSON, FlatPlacementJSON
from linialrooks.services.algebra import MultivariatePolynomial, WeakComposition
from linialrooks.services.trees import PlaneKaryTree, left_to_right_maxima, spine


# ─── Placements ───────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class FlatPlacement:
    n: int
    k: int
    f: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise InvalidInputError(f"placement needs n >= 1 and k >= 1, got n={self.n}, k={self.k}")
        f = tuple(self.f)
        if len(f) != self.n - 1:
            raise InvalidInputError(f"f must have {self.n - 1} values, got {len(f)}")
        if any(not 1 <= x <= self.k * self.n for x in f):
            raise InvalidInputError(f"f values must lie in [1..{self.k * self.n}]")
        if len(set(f)) != len(f):
            raise InvalidInputError("f is not injective")
        object.__setattr__(self, "f", f)

    def to_json(self) -> FlatPlacementJSON:
        return FlatPlacementJSON(n=self.n, k=self.k, f=list(self.f))

    @classmethod
    def from_json(cls, data: FlatPlacementJSON) -> "FlatPlacement":
        return cls(data.n, data.k, tuple(data.f))


@dataclass(frozen=True)
class ColoredPlacement:
    n: int
    k: int
    g: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise InvalidInputError(f"placement needs n >= 1 and k >= 1, got n={self.n}, k={self.k}")
        g = tuple((int(a), int(b)) for a, b in self.g)
        if len(g) != self.n - 1:
            raise InvalidInputError(f"g must have {self.n - 1} values, got {len(g)}")
        for i, (a, b) in enumerate(g, start=1):
            if not 1 <= a <= self.n or not 1 <= b <= self.k:
                raise InvalidInputError(f"g({i}) = ({a}, {b}) is outside [1..{self.n}] x [1..{self.k}]")
        if len(set(g)) != len(g):
            raise InvalidInputError("g is not injective")
        object.__setattr__(self, "g", g)

    def __call__(self, i: int) -> tuple[int, int]:
        return self.g[i - 1]

    def to_json(self) -> ColoredPlacementJSON:
        return ColoredPlacementJSON(n=self.n, k=self.k, g=[tuple(p) for p in self.g])

    @classmethod
    def from_json(cls, data: ColoredPlacementJSON) -> "ColoredPlacement":
        return cls(data.n, data.k, tuple(tuple(p) for p in data.g))


def phi(f: FlatPlacement) -> ColoredPlacement:
    n = f.n
    return ColoredPlacement(n, f.k, tuple((x - n * ((x - 1) // n), -(-x // n)) for x in f.f))


def phi_inverse(g: ColoredPlacement) -> FlatPlacement:
    return FlatPlacement(g.n, g.k, tuple(a + (b - 1) * g.n for a, b in g.g))


def exc_sub(g: ColoredPlacement) -> tuple[WeakComposition, WeakComposition]:
    """exc[j] counts i with g(i) = (a, j), a > i; sub[j] those with a <= i."""
    exc = [0] * g.k
    sub = [0] * g.k
    for i, (a, b) in enumerate(g.g, start=1):
        if a > i:
            exc[b - 1] += 1
        else:
            sub[b - 1] += 1
    return tuple(exc), tuple(sub)


# ─── Decorated digraph ────────────────────────────────────────────────────────

@dataclass(frozen=True)
class DecoratedDigraph:
    placement: ColoredPlacement

    @property
    def n(self) -> int:
        return self.placement.n

    def target(self, i: int) -> int:
        return self.placement(i)[0]

    def label(self, i: int) -> int:
        return self.placement(i)[1]

    @cached_property
    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Directed cycles, each listed from its largest vertex; ordered by that vertex."""
        state = [0] * (self.n + 1)  # 0 new, 1 on current walk, 2 done
        found = []
        for start in range(1, self.n):
            walk = []
            v = start
            while v != self.n and state[v] == 0:
                state[v] = 1
                walk.append(v)
                v = self.target(v)
            if v != self.n and state[v] == 1:
                cycle = walk[walk.index(v):]
                top = cycle.index(max(cycle))
                found.append(tuple(cycle[top:] + cycle[:top]))
            for u in walk:
                state[u] = 2
        return tuple(sorted(found, key=lambda c: c[0]))

    def component_count(self) -> int:
        """Every cycle spans one component; the component of n is the only acyclic one."""
        return len(self.cycles) + 1

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(1, self.n + 1))
        for i in range(1, self.n):
            graph.add_edge(i, self.target(i), label=self.label(i))
        return graph


def weak_component_count(g: ColoredPlacement) -> int:
    return nx.number_weakly_connected_components(DecoratedDigraph(g).to_networkx())


# ─── psi and its inverse ──────────────────────────────────────────────────────

def psi(g: ColoredPlacement) -> PlaneKaryTree:
    digraph = DecoratedDigraph(g)
    edges = {i: g(i) for i in range(1, g.n)}
    maxima = [c[0] for c in digraph.cycles] + [g.n]
    cuts = [edges.pop(here) for here in maxima[:-1]]
    for following, cut in zip(maxima[1:], cuts):
        edges[following] = cut
    return PlaneKaryTree.from_edges(g.n, g.k, maxima[0], edges)


def psi_inverse(tree: PlaneKaryTree) -> ColoredPlacement:
    path = spine(tree)
    records = left_to_right_maxima(path)
    g = {v: tree.edge(v) for v in range(1, tree.n + 1) if v != tree.root}
    for s, t in zip(records, records[1:]):
        _, c = tree.edge(path[t - 1])
        g[path[s - 1]] = (path[t - 2], c)
    g.pop(tree.n, None)
    return ColoredPlacement(tree.n, tree.k, tuple(g[i] for i in range(1, tree.n)))


# ─── Enumeration and Gessel polynomials ───────────────────────────────────────

def colored_placement_total(n: int, k: int) -> int:
    return prod(k * n - i for i in range(n - 1))


def enumerate_colored_placements(n: int, k: int, max_enum: int | None = None) -> Iterator[ColoredPlacement]:
    cap = max_enum if max_enum is not None else get_settings().max_enum
    check_cap("colored placements", colored_placement_total(n, k), cap)
    cells = [(a, b) for a in range(1, n + 1) for b in range(1, k + 1)]
    for g in permutations(cells, n - 1):
        yield ColoredPlacement(n, k, g)


def enumerate_flat_placements(n: int, k: int, max_enum: int | None = None) -> Iterator[FlatPlacement]:
    cap = max_enum if max_enum is not None else get_settings().max_enum
    check_cap("flat placements", colored_placement_total(n, k), cap)
    for f in permutations(range(1, k * n + 1), n - 1):
        yield FlatPlacement(n, k, f)


def gessel_polynomial(n: int, k: int, max_enum: int | None = None) -> MultivariatePolynomial:
    """Σ over colored placements of u^exc v^sub."""
    if n < 1 or k < 1:
        raise InvalidInputError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    cap = max_enum if max_enum is not None else get_settings().max_enum
    check_cap("colored placements", colored_placement_total(n, k), cap)
    cells = [(a, b) for a in range(1, n + 1) for b in range(1, k + 1)]
    counter: Counter = Counter()
    for g in permutations(cells, n - 1):
        exps = [0] * (2 * k)
        for i, (a, b) in enumerate(g, start=1):
            exps[b - 1 if a > i else k + b - 1] += 1
        counter[tuple(exps)] += 1
    logger.info(f"[Bijection] gessel n={n} k={k} monomials={len(counter)}")
    return MultivariatePolynomial.from_counter(k, counter)


def homogenized_eulerian(n: int) -> MultivariatePolynomial:
    """Σ over permutations of [n] of u1^des u2^asc, as a polynomial in the k = 2 variables."""
    counter: Counter = Counter()
    for sigma in permutations(range(1, n + 1)):
        des = sum(1 for x, y in zip(sigma, sigma[1:]) if x > y)
        counter[(des, n - 1 - des, 0, 0)] += 1
    return MultivariatePolynomial.from_counter(2, counter)
