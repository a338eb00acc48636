"""
Boards and rook theory.

A board is a finite set of cells (row, column) with rows numbered bottom to
top. Skew Ferrers boards take λ/μ with λ listed largest part first; the LAST
part of λ becomes board row 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from loguru import logger

from linialrooks.config import get_settings
from linialrooks.errors import IntegrityError, InvalidInputError, InvalidShapeError, check_cap
from linialrooks.models.schemas import BoardFamily, BoardJSON, BoardRowJSON, RookVectorJSON
from linialrooks.services.algebra import (
    ONE,
    X,
    IntegerPolynomial,
    Rational,
    falling_factorial,
    partition_lattice_sum,
)


# ─── Types ────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Board:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(sorted(set(r))) for r in self.rows)
        for i, r in enumerate(rows, start=1):
            if r and r[0] < 1:
                raise InvalidInputError(f"row {i} has a column below 1")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_intervals(cls, intervals: Iterable[tuple[int, int]]) -> "Board":
        """Rows bottom to top as inclusive column intervals; (1, 0) is an empty row."""
        return cls(tuple(tuple(range(lo, hi + 1)) for lo, hi in intervals))

    @classmethod
    def from_cells(cls, cells: Iterable[tuple[int, int]]) -> "Board":
        cells = list(cells)
        if any(r < 1 or c < 1 for r, c in cells):
            raise InvalidInputError("cells must have positive row and column")
        m = max((r for r, _ in cells), default=0)
        rows: list[list[int]] = [[] for _ in range(m)]
        for r, c in cells:
            rows[r - 1].append(c)
        return cls(tuple(tuple(r) for r in rows))

    @property
    def row_count(self) -> int:
        return len(self.rows)

    @cached_property
    def cells(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, c) for i, r in enumerate(self.rows, start=1) for c in r)

    @cached_property
    def columns(self) -> tuple[int, ...]:
        return tuple(sorted({c for r in self.rows for c in r}))

    def row(self, i: int) -> tuple[int, ...]:
        return self.rows[i - 1]

    def is_contiguous(self) -> bool:
        return all(not r or r[-1] - r[0] + 1 == len(r) for r in self.rows)

    def to_json(self) -> BoardJSON:
        if self.is_contiguous():
            return BoardJSON(rows=[
                BoardRowJSON(from_=r[0], to=r[-1]) if r else BoardRowJSON(from_=1, to=0)
                for r in self.rows
            ])
        return BoardJSON(cells=list(self.cells))

    @classmethod
    def from_json(cls, data: BoardJSON) -> "Board":
        if data.cells is not None:
            return cls.from_cells(data.cells)
        return cls.from_intervals((r.from_, r.to) for r in data.rows)


@dataclass(frozen=True)
class RookVector:
    counts: tuple[int, ...]

    def __post_init__(self):
        if not self.counts or self.counts[0] != 1:
            raise IntegrityError("rook vector must start with r_0 = 1")

    def __getitem__(self, k: int) -> int:
        return self.counts[k] if 0 <= k < len(self.counts) else 0

    def __len__(self) -> int:
        return len(self.counts)

    def to_json(self) -> RookVectorJSON:
        return RookVectorJSON(r=[str(c) for c in self.counts])


# ─── Constructors ─────────────────────────────────────────────────────────────

def _check_partition(name: str, parts: Sequence[int]) -> tuple[int, ...]:
    parts = tuple(parts)
    if any(p < 0 for p in parts):
        raise InvalidShapeError(f"{name} has a negative part: {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise InvalidShapeError(f"{name} is not weakly decreasing: {parts}")
    return parts


def skew_ferrers(lam: Sequence[int], mu: Sequence[int] = ()) -> Board:
    lam = _check_partition("lambda", lam)
    mu = _check_partition("mu", mu)
    if len(mu) > len(lam):
        raise InvalidShapeError(f"mu {mu} has more parts than lambda {lam}")
    mu = mu + (0,) * (len(lam) - len(mu))
    for i, (l, s) in enumerate(zip(lam, mu), start=1):
        if s > l:
            raise InvalidShapeError(f"mu_{i}={s} exceeds lambda_{i}={l}")
    m = len(lam)
    return Board(tuple(tuple(range(mu[m - i] + 1, lam[m - i] + 1)) for i in range(1, m + 1)))


def ferrers(lam: Sequence[int]) -> Board:
    return skew_ferrers(lam, ())


def _check_family_args(t: int, n: int) -> None:
    if n < 2:
        raise InvalidInputError(f"board families need n >= 2, got n={n}")
    if t < 0:
        raise InvalidInputError(f"board families need t >= 0, got t={t}")


def catalan_board(t: int, n: int) -> Board:
    _check_family_args(t, n)
    return Board(tuple(tuple(range(1, n - 1 + t)) for _ in range(n - 1)))


def _shi_lambda(t: int, n: int) -> tuple[int, ...]:
    return tuple(range(2 * n - 3 + t, n - 2 + t, -1))


def shi_board(t: int, n: int) -> Board:
    _check_family_args(t, n)
    return skew_ferrers(_shi_lambda(t, n))


def linial_board(t: int, n: int) -> Board:
    _check_family_args(t, n)
    return skew_ferrers(_shi_lambda(t, n), tuple(range(n - 1, 0, -1)))


FAMILY_BUILDERS = {
    BoardFamily.CATALAN: catalan_board,
    BoardFamily.SHI: shi_board,
    BoardFamily.LINIAL: linial_board,
}


def family_board(family: BoardFamily, t: int, n: int) -> Board:
    return FAMILY_BUILDERS[BoardFamily(family)](t, n)


# ─── Rook numbers ─────────────────────────────────────────────────────────────

def rook_numbers(board: Board, max_rows: int | None = None) -> RookVector:
    """
    Column-sweep DP. The state is the bitmask of rows that already hold a
    rook; each column either stays empty or takes one rook in a free row.
    """
    m = board.row_count
    check_cap("rook DP rows", m, max_rows if max_rows is not None else get_settings().max_rook_rows)

    rows_by_column: dict[int, list[int]] = {}
    for i, c in board.cells:
        rows_by_column.setdefault(c, []).append(i - 1)

    states: dict[int, int] = {0: 1}
    for c in board.columns:
        nxt = dict(states)
        for mask, count in states.items():
            for r in rows_by_column[c]:
                bit = 1 << r
                if not mask & bit:
                    nxt[mask | bit] = nxt.get(mask | bit, 0) + count
        states = nxt

    counts = [0] * (m + 1)
    for mask, count in states.items():
        counts[bin(mask).count("1")] += count
    logger.debug(f"[Boards] rook DP rows={m} columns={len(board.columns)} states={len(states)}")
    return RookVector(tuple(counts))


def rook_numbers_by_subsets(board: Board, max_cells: int = 20) -> RookVector:
    """Brute force over every subset of cells."""
    cells = board.cells
    check_cap("brute-force board cells", len(cells), max_cells)
    counts = [0] * (board.row_count + 1)
    for size in range(len(counts)):
        for subset in combinations(cells, size):
            if len({r for r, _ in subset}) == size and len({c for _, c in subset}) == size:
                counts[size] += 1
    return RookVector(tuple(counts))


def enumerate_max_placements(board: Board, max_enum: int | None = None) -> list[tuple[int, ...]]:
    """Every placement with one rook per row, as the tuple of columns for rows 1..m."""
    cap = max_enum if max_enum is not None else get_settings().max_enum
    total = rook_numbers(board)[board.row_count]
    check_cap("maximal placements", total, cap)

    out: list[tuple[int, ...]] = []
    chosen: list[int] = []
    used: set[int] = set()

    def place(i: int):
        if i == board.row_count:
            out.append(tuple(chosen))
            return
        for c in board.rows[i]:
            if c not in used:
                used.add(c)
                chosen.append(c)
                place(i + 1)
                chosen.pop()
                used.remove(c)

    place(0)
    return out


# ─── Factorial polynomials ────────────────────────────────────────────────────

def factorial_polynomial(board: Board, m: int | None = None, max_rows: int | None = None) -> IntegerPolynomial:
    """R_m(x, B) = Σ_k r_k(B) (x)_{m-k}."""
    if m is None:
        m = board.row_count
    if m < board.row_count:
        raise InvalidInputError(f"m={m} is smaller than the row count {board.row_count}")
    r = rook_numbers(board, max_rows=max_rows)
    total = IntegerPolynomial(())
    for k, rk in enumerate(r.counts):
        if rk:
            total = total + falling_factorial(m - k).scale(rk)
    return total


def v_stat(board: Board, subset: Iterable[int]) -> int:
    """Number of columns shared by every row in the subset."""
    subset = set(subset)
    if not subset:
        raise InvalidInputError("v statistic needs a nonempty row set")
    if min(subset) < 1 or max(subset) > board.row_count:
        raise InvalidInputError(f"rows {sorted(subset)} are outside [1..{board.row_count}]")
    common = set(board.row(min(subset)))
    for i in subset:
        common &= set(board.row(i))
    return len(common)


def gjw_factorial_polynomial(board: Board, max_rows: int | None = None) -> IntegerPolynomial:
    """Σ over set partitions σ of the rows of μ(0̂,σ) Π_{A∈σ} (x + v_B(A))."""
    m = board.row_count
    check_cap("partition-lattice rows", m, max_rows if max_rows is not None else get_settings().max_gjw_rows)
    if m == 0:
        return ONE
    return partition_lattice_sum(m, lambda block: X + v_stat(board, block), max_size=m)


# ─── Closed form for R(t, L_{0,n}) ────────────────────────────────────────────

def linial_factorial_closed_form(n: int, t: Rational) -> Rational:
    """(1/2^n) Σ_j C(n,j) (t-1+j)^(n-1), exactly."""
    if n < 2:
        raise InvalidInputError(f"closed form needs n >= 2, got n={n}")
    t = Fraction(t)
    value = sum(comb(n, j) * (t - 1 + j) ** (n - 1) for j in range(n + 1)) / 2 ** n
    return value.numerator if value.denominator == 1 else value


def linial_placement_count(n: int, t: int) -> int:
    """R(t, L_{0,n}) at an integer t, which must come out integral."""
    value = Fraction(linial_factorial_closed_form(n, t))
    if value.denominator != 1:
        raise IntegrityError(f"closed form R({t}, L_0,{n}) = {value} is not an integer")
    return value.numerator


def linial_factorial_closed_form_polynomial(n: int) -> IntegerPolynomial:
    if n < 2:
        raise InvalidInputError(f"closed form needs n >= 2, got n={n}")
    total = IntegerPolynomial(())
    for j in range(n + 1):
        total = total + (X + (j - 1)) ** (n - 1) * comb(n, j)
    scale = 2 ** n
    if any(c % scale for c in total.coefficients):
        raise IntegrityError(f"closed form for n={n} is not an integer polynomial")
    return IntegerPolynomial(tuple(c // scale for c in total.coefficients))
