"""
Labeled rooted plane k-ary trees.

Every non-root node sits in one of the k child slots of its parent; slot 1 is
the leftmost child and slot k the rightmost. An edge is an i-descent when the
child in slot i is smaller than its parent and an i-ascent when it is larger.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import comb, prod
from typing import Callable, Iterator, Mapping, Optional, Sequence

from loguru import logger

from linialrooks.config import get_settings
from linialrooks.errors import IntegrityError, InvalidInputError, VerificationError, check_cap
from linialrooks.models.schemas import ClassCountJSON, TreeClass, TreeJSON, TreeNodeJSON
from linialrooks.services.algebra import MultivariatePolynomial, WeakComposition
from linialrooks.services.boards import linial_placement_count

EdgePredicate = Callable[[int, int, int], bool]


# ─── Types ────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class PlaneKaryTree:
    n: int
    k: int
    root: int
    parent: tuple[int, ...]  # parent[label - 1]; 0 for the root
    slot: tuple[int, ...]  # slot[label - 1]; 0 for the root

    def __post_init__(self):
        n, k = self.n, self.k
        if n < 1 or k < 1:
            raise InvalidInputError(f"tree needs n >= 1 and k >= 1, got n={n}, k={k}")
        if len(self.parent) != n or len(self.slot) != n:
            raise InvalidInputError(f"parent/slot lists must have length {n}")
        if not 1 <= self.root <= n:
            raise InvalidInputError(f"root {self.root} is outside [1..{n}]")
        if self.parent[self.root - 1] != 0 or self.slot[self.root - 1] != 0:
            raise InvalidInputError("root must not have a parent")
        taken: set[tuple[int, int]] = set()
        for v in range(1, n + 1):
            if v == self.root:
                continue
            p, s = self.parent[v - 1], self.slot[v - 1]
            if not 1 <= p <= n or p == v:
                raise InvalidInputError(f"node {v} has invalid parent {p}")
            if not 1 <= s <= k:
                raise InvalidInputError(f"node {v} has slot {s} outside [1..{k}]")
            if (p, s) in taken:
                raise InvalidInputError(f"slot {s} of node {p} holds two children")
            taken.add((p, s))
        for v in range(1, n + 1):
            seen = set()
            u = v
            while u != self.root:
                if u in seen:
                    raise InvalidInputError(f"node {v} does not reach the root")
                seen.add(u)
                u = self.parent[u - 1]

    @classmethod
    def from_edges(cls, n: int, k: int, root: int, edges: Mapping[int, tuple[int, int]]) -> "PlaneKaryTree":
        """edges maps each non-root label to its (parent, slot)."""
        parent = [0] * n
        slot = [0] * n
        for v, (p, s) in edges.items():
            if not 1 <= v <= n:
                raise InvalidInputError(f"label {v} is outside [1..{n}]")
            parent[v - 1], slot[v - 1] = p, s
        missing = set(range(1, n + 1)) - set(edges) - {root}
        if missing:
            raise InvalidInputError(f"labels {sorted(missing)} have no parent")
        return cls(n, k, root, tuple(parent), tuple(slot))

    @cached_property
    def children(self) -> dict[int, dict[int, int]]:
        """children[v][slot] = child label."""
        out: dict[int, dict[int, int]] = {v: {} for v in range(1, self.n + 1)}
        for v in range(1, self.n + 1):
            if v != self.root:
                out[self.parent[v - 1]][self.slot[v - 1]] = v
        return out

    def edge(self, v: int) -> tuple[int, int]:
        return self.parent[v - 1], self.slot[v - 1]

    def canonical_key(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.parent, self.slot))

    def to_json(self) -> TreeJSON:
        nodes = [
            TreeNodeJSON(label=v, parent=self.parent[v - 1], slot=self.slot[v - 1])
            for v in range(1, self.n + 1)
            if v != self.root
        ]
        return TreeJSON(n=self.n, k=self.k, root=self.root, nodes=nodes)

    @classmethod
    def from_json(cls, data: TreeJSON) -> "PlaneKaryTree":
        edges: dict[int, tuple[int, int]] = {}
        for node in data.nodes:
            if node.label in edges:
                raise InvalidInputError(f"node {node.label} appears more than once")
            edges[node.label] = (node.parent, node.slot)
        return cls.from_edges(data.n, data.k, data.root, edges)


@dataclass(frozen=True)
class TreeStatistics:
    dsc: WeakComposition
    asc: WeakComposition

    @property
    def exponents(self) -> tuple[int, ...]:
        """Exponent vector of u^dsc v^asc."""
        return self.dsc + self.asc


# ─── Statistics ───────────────────────────────────────────────────────────────

def statistics(tree: PlaneKaryTree) -> TreeStatistics:
    dsc = [0] * tree.k
    asc = [0] * tree.k
    for v in range(1, tree.n + 1):
        if v == tree.root:
            continue
        p, s = tree.edge(v)
        if p > v:
            dsc[s - 1] += 1
        else:
            asc[s - 1] += 1
    return TreeStatistics(tuple(dsc), tuple(asc))


def spine(tree: PlaneKaryTree) -> tuple[int, ...]:
    """Labels on the path from the root to node n."""
    path = [tree.n]
    while path[-1] != tree.root:
        path.append(tree.parent[path[-1] - 1])
    return tuple(reversed(path))


def left_to_right_maxima(sequence: Sequence[int]) -> tuple[int, ...]:
    """1-based indices i with a_i larger than every earlier entry; the last index is always included."""
    if not sequence:
        raise InvalidInputError("left-to-right maxima of an empty sequence")
    out = []
    best = None
    for i, a in enumerate(sequence, start=1):
        if best is None or a > best:
            out.append(i)
            best = a
    if out[-1] != len(sequence):
        out.append(len(sequence))
    return tuple(out)


# ─── Classes ──────────────────────────────────────────────────────────────────

def class_edge_predicate(tree_class: TreeClass, n: int, k: int) -> Optional[EdgePredicate]:
    """
    Predicate on (parent, child, slot) that holds for every edge of a tree in
    the class. None for the unrestricted class.
    """
    tree_class = TreeClass(tree_class)
    if tree_class is TreeClass.ALL:
        return None
    if tree_class is TreeClass.INCREASING:
        return lambda p, c, s: c > p
    if tree_class is TreeClass.RIGHT_INCREASING:
        return lambda p, c, s: s != k or c > p

    def local_bst(p: int, c: int, s: int) -> bool:
        if s == 1 and c > p:
            return False
        if s == k and c < p:
            return False
        return True

    if tree_class is TreeClass.LTREE:
        return local_bst

    def bordered(p: int, c: int, s: int) -> bool:
        if p == 1 and s == k:
            return False
        if p == n and s == 1:
            return False
        return local_bst(p, c, s)

    return bordered


def is_in_class(tree: PlaneKaryTree, tree_class: TreeClass) -> bool:
    tree_class = TreeClass(tree_class)
    if tree.k < 2 and tree_class is not TreeClass.ALL:
        raise InvalidInputError("tree classes need k >= 2")
    if tree_class is TreeClass.LTREE_B and tree.n == 1:
        return False
    ok = class_edge_predicate(tree_class, tree.n, tree.k)
    if ok is None:
        return True
    for v in range(1, tree.n + 1):
        if v != tree.root:
            p, s = tree.edge(v)
            if not ok(p, v, s):
                return False
    return True


# ─── Enumeration ──────────────────────────────────────────────────────────────

def plane_tree_total(n: int, k: int) -> int:
    """(kn)(kn-1)...(kn-n+2)."""
    return prod(k * n - i for i in range(n - 1))


def _grow(n: int, k: int, edge_ok: Optional[EdgePredicate]) -> Iterator[tuple[int, list[int], list[int]]]:
    """
    Grows every tree breadth first: each queued node fills its slots 1..k in
    order, each slot either left empty or given an unused label. Yields the
    shared (root, parent, slot) buffers; callers copy what they keep.
    """
    parent = [0] * n
    slot = [0] * n
    used = [False] * (n + 1)

    for root in range(1, n + 1):
        used[root] = True
        queue = [root]

        def fill(qi: int, s: int, remaining: int):
            if remaining == 0:
                yield root, parent, slot
                return
            if qi == len(queue):
                return
            v = queue[qi]
            nqi, ns = (qi, s + 1) if s < k else (qi + 1, 1)
            yield from fill(nqi, ns, remaining)
            for u in range(1, n + 1):
                if used[u] or (edge_ok is not None and not edge_ok(v, u, s)):
                    continue
                used[u] = True
                parent[u - 1], slot[u - 1] = v, s
                queue.append(u)
                yield from fill(nqi, ns, remaining - 1)
                queue.pop()
                parent[u - 1], slot[u - 1] = 0, 0
                used[u] = False

        yield from fill(0, 1, n - 1)
        used[root] = False


def enumerate_plane_trees(
    n: int,
    k: int,
    tree_class: TreeClass = TreeClass.ALL,
    max_enum: int | None = None,
) -> list[PlaneKaryTree]:
    """All trees of the class, sorted by their (parent, slot) lists."""
    if n < 1 or k < 1:
        raise InvalidInputError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    cap = max_enum if max_enum is not None else get_settings().max_enum
    tree_class = TreeClass(tree_class)
    if tree_class is TreeClass.ALL:
        check_cap("plane trees", plane_tree_total(n, k), cap)
    elif k < 2:
        raise InvalidInputError("tree classes need k >= 2")
    if tree_class is TreeClass.LTREE_B and n == 1:
        return []

    out = []
    for root, parent, slot in _grow(n, k, class_edge_predicate(tree_class, n, k)):
        out.append(PlaneKaryTree(n, k, root, tuple(parent), tuple(slot)))
        if len(out) > cap:
            check_cap(f"{tree_class.value} trees", len(out), cap)
    out.sort(key=PlaneKaryTree.canonical_key)
    return out


def count_trees_by_enumeration(n: int, k: int, tree_class: TreeClass, max_enum: int | None = None) -> int:
    cap = max_enum if max_enum is not None else get_settings().max_enum
    tree_class = TreeClass(tree_class)
    if tree_class is not TreeClass.ALL and k < 2:
        raise InvalidInputError("tree classes need k >= 2")
    if tree_class is TreeClass.LTREE_B and n == 1:
        return 0
    count = 0
    for _ in _grow(n, k, class_edge_predicate(tree_class, n, k)):
        count += 1
        if count > cap:
            check_cap(f"{tree_class.value} trees", count, cap)
    return count


# ─── Closed forms ─────────────────────────────────────────────────────────────

def ltree_count_formula(n: int, k: int) -> int:
    """l_{n,k} = (1/2^n) Σ_j C(n,j) (1+(k-2)n+j)^(n-1)."""
    total = sum(comb(n, j) * (1 + (k - 2) * n + j) ** (n - 1) for j in range(n + 1))
    if total % 2 ** n:
        raise IntegrityError(f"ltree closed form for n={n}, k={k} is not an integer")
    return total // 2 ** n


def class_count_formula(n: int, k: int, tree_class: TreeClass) -> int:
    tree_class = TreeClass(tree_class)
    if tree_class is TreeClass.ALL:
        return plane_tree_total(n, k)
    if k < 2:
        raise InvalidInputError("tree classes need k >= 2")
    if tree_class is TreeClass.INCREASING:
        return prod(1 + i * (k - 1) for i in range(1, n))
    if tree_class is TreeClass.RIGHT_INCREASING:
        return ((k - 1) * n + 1) ** (n - 1)
    if tree_class is TreeClass.LTREE:
        return ltree_count_formula(n, k)
    if n == 1:
        return 0
    return linial_placement_count(n, (k - 2) * n)


@dataclass(frozen=True)
class ClassCount:
    tree_class: TreeClass
    n: int
    k: int
    count: int
    closed_form: Optional[int]
    enumerated: Optional[int]

    def to_json(self) -> ClassCountJSON:
        return ClassCountJSON(
            tree_class=self.tree_class,
            n=self.n,
            k=self.k,
            count=str(self.count),
            closed_form=None if self.closed_form is None else str(self.closed_form),
            enumerated=None if self.enumerated is None else str(self.enumerated),
        )


def count_class(n: int, k: int, tree_class: TreeClass, max_enum: int | None = None) -> ClassCount:
    """
    Closed form, cross-checked against pruned enumeration whenever the class
    size is within the enumeration cap.
    """
    if n < 1:
        raise InvalidInputError(f"need n >= 1, got n={n}")
    tree_class = TreeClass(tree_class)
    cap = max_enum if max_enum is not None else get_settings().max_enum
    closed = class_count_formula(n, k, tree_class)
    enumerated = None
    if closed <= cap:
        enumerated = count_trees_by_enumeration(n, k, tree_class, max_enum=cap)
        if enumerated != closed:
            logger.warning(f"[Trees] class={tree_class.value} n={n} k={k} closed={closed} enumerated={enumerated}")
            raise VerificationError(
                f"{tree_class.value} count mismatch at n={n}: closed form {closed}, enumeration {enumerated}",
                first_mismatch=n,
            )
    logger.info(f"[Trees] count class={tree_class.value} n={n} k={k} count={closed}")
    return ClassCount(tree_class, n, k, closed, closed, enumerated)


def gessel_polynomial_from_trees(n: int, k: int, max_enum: int | None = None) -> MultivariatePolynomial:
    """Σ over all plane k-ary trees of u^dsc v^asc."""
    cap = max_enum if max_enum is not None else get_settings().max_enum
    check_cap("plane trees", plane_tree_total(n, k), cap)
    counter: Counter = Counter()
    for root, parent, slot in _grow(n, k, None):
        dsc = [0] * k
        asc = [0] * k
        for v in range(1, n + 1):
            if v == root:
                continue
            if parent[v - 1] > v:
                dsc[slot[v - 1] - 1] += 1
            else:
                asc[slot[v - 1] - 1] += 1
        counter[tuple(dsc) + tuple(asc)] += 1
    return MultivariatePolynomial.from_counter(k, counter)
