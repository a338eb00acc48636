"""
Truncated affine arrangements A^{a,b}_{n-1}: hyperplanes x_i - x_j = -a+1, ..., b-1
for 1 <= i < j <= n, restricted to the sum-zero subspace.

Characteristic polynomials come either from closed forms (braid, Shi and the
extended Linial family) or from counting points over Z_q for several primes q
and interpolating.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from loguru import logger
from sympy import nextprime

from linialrooks.config import get_settings
from linialrooks.errors import IntegrityError, InvalidInputError, UnsupportedArrangementError, check_cap
from linialrooks.models.schemas import ArrangementJSON, RegionCountJSON
from linialrooks.services.algebra import (
    ONE,
    X,
    IntegerPolynomial,
    interpolate,
    partition_lattice_sum,
    to_integer_polynomial,
)
from linialrooks.services.boards import (
    factorial_polynomial,
    linial_board,
    linial_placement_count,
)


class ChiMethod(str, Enum):
    FORMULA = "formula"
    FINITE_FIELD = "finite-field"


class BoundType(str, Enum):
    REGIONS = "regions"
    BOUNDED = "bounded"


@dataclass(frozen=True)
class TruncatedAffineSpec:
    n: int
    a: int
    b: int

    def __post_init__(self):
        if self.n < 2:
            raise InvalidInputError(f"arrangement needs n >= 2, got n={self.n}")
        if self.a < 0 or self.b < 0 or self.a + self.b < 2:
            raise InvalidInputError(f"need a, b >= 0 with a + b >= 2, got a={self.a}, b={self.b}")

    @classmethod
    def linial(cls, n: int, a: int) -> "TruncatedAffineSpec":
        """The extended Linial arrangement, i.e. A^{a-1,a+1}."""
        if a < 1:
            raise InvalidInputError(f"extended Linial parameter must be >= 1, got a={a}")
        return cls(n, a - 1, a + 1)

    @classmethod
    def shi(cls, n: int) -> "TruncatedAffineSpec":
        return cls(n, 1, 2)

    @classmethod
    def braid(cls, n: int) -> "TruncatedAffineSpec":
        return cls(n, 1, 1)

    @property
    def offsets(self) -> range:
        return range(-self.a + 1, self.b)

    @property
    def linial_parameter(self) -> Optional[int]:
        return self.a + 1 if self.b == self.a + 2 else None

    @property
    def dimension(self) -> int:
        return self.n - 1


# ─── Closed forms ─────────────────────────────────────────────────────────────

def _linial_board_polynomial(n: int) -> IntegerPolynomial:
    """R(t, L_{0,n}) as a polynomial in t."""
    return factorial_polynomial(linial_board(0, n))


def charpoly_formula(spec: TruncatedAffineSpec) -> IntegerPolynomial:
    n = spec.n
    if (spec.a, spec.b) == (1, 1):
        chi = ONE
        for j in range(1, n):
            chi = chi * (X - j)
        return chi
    if (spec.a, spec.b) == (1, 2):
        return (X - n) ** (n - 1)
    a = spec.linial_parameter
    if a is None:
        raise UnsupportedArrangementError(
            f"no closed form for (a,b)=({spec.a},{spec.b}); use the finite-field method"
        )
    # (-1)^(n-1) chi(q) = R(1 + (a-1)n - q, L_{0,n})
    return _linial_board_polynomial(n).compose_linear(-1, 1 + (a - 1) * n).scale((-1) ** (n - 1))


# ─── Finite-field point counting ──────────────────────────────────────────────

def count_points(spec: TruncatedAffineSpec, q: int) -> int:
    """
    Points of Z_q^(n-1) off every hyperplane, with x_n pinned to 0. The
    coordinates are assigned from x_{n-1} down to x_1, carrying the bitmask of
    values already forbidden for the next one.
    """
    full = (1 << q) - 1
    base = 0
    for d in spec.offsets:
        base |= 1 << (d % q)
    shifted = [((base << s) | (base >> (q - s))) & full if s else base for s in range(q)]

    def assign(remaining: int, forbidden: int) -> int:
        if remaining == 1:
            return q - bin(forbidden).count("1")
        total = 0
        for x in range(q):
            if not forbidden >> x & 1:
                total += assign(remaining - 1, forbidden | shifted[x])
        return total

    return assign(spec.n - 1, base)


def finite_field_primes(spec: TruncatedAffineSpec, count: int, after: int | None = None) -> list[int]:
    q = after if after is not None else (spec.a + spec.b) * spec.n
    primes = []
    for _ in range(count):
        q = int(nextprime(q))
        primes.append(q)
    return primes


def _interpolate_charpoly(spec: TruncatedAffineSpec, primes: Sequence[int]) -> IntegerPolynomial:
    points = []
    for q in primes:
        value = count_points(spec, q)
        logger.debug(f"[Arrangements] n={spec.n} a={spec.a} b={spec.b} q={q} points={value}")
        points.append((q, value))
    chi = to_integer_polynomial(interpolate(points))
    if chi.degree != spec.n - 1 or chi.leading_coefficient != 1:
        raise IntegrityError(
            f"finite-field interpolant {chi} is not monic of degree {spec.n - 1}; primes {list(primes)} too small?"
        )
    return chi


def charpoly_finite_field(
    spec: TruncatedAffineSpec,
    max_n: int | None = None,
    cross_check: bool | None = None,
) -> IntegerPolynomial:
    settings = get_settings()
    check_cap("finite-field n", spec.n, max_n if max_n is not None else settings.max_finite_field_n)
    primes = finite_field_primes(spec, spec.n)
    chi = _interpolate_charpoly(spec, primes)
    if settings.finite_field_cross_check if cross_check is None else cross_check:
        second = _interpolate_charpoly(spec, finite_field_primes(spec, spec.n, after=primes[-1]))
        if second != chi:
            logger.warning(f"[Arrangements] prime sets disagree: {chi} vs {second}")
            raise IntegrityError(f"finite-field counts depend on the primes: {chi} vs {second}")
    return chi


def charpoly(spec: TruncatedAffineSpec, method: ChiMethod = ChiMethod.FORMULA) -> IntegerPolynomial:
    method = ChiMethod(method)
    chi = charpoly_formula(spec) if method is ChiMethod.FORMULA else charpoly_finite_field(spec)
    logger.info(f"[Arrangements] chi n={spec.n} a={spec.a} b={spec.b} method={method.value}: {chi.format('q')}")
    return chi


# ─── Regions ──────────────────────────────────────────────────────────────────

def regions_from_charpoly(chi: IntegerPolynomial, dimension: int) -> tuple[int, int]:
    sign = (-1) ** dimension
    regions, bounded = sign * chi(-1), sign * chi(1)
    if regions < 0 or bounded < 0 or bounded > regions:
        raise IntegrityError(f"region counts ({regions}, {bounded}) are inconsistent")
    return regions, bounded


def regions(spec: TruncatedAffineSpec, method: ChiMethod = ChiMethod.FORMULA) -> int:
    return regions_from_charpoly(charpoly(spec, method), spec.dimension)[0]


def bounded_regions(spec: TruncatedAffineSpec, method: ChiMethod = ChiMethod.FORMULA) -> int:
    return regions_from_charpoly(charpoly(spec, method), spec.dimension)[1]


def describe(spec: TruncatedAffineSpec, method: ChiMethod = ChiMethod.FORMULA) -> ArrangementJSON:
    chi = charpoly(spec, method)
    r, b = regions_from_charpoly(chi, spec.dimension)
    return ArrangementJSON(n=spec.n, a=spec.a, b=spec.b, chi=chi.to_json("q"), regions=str(r), bounded=str(b))


def region_counts_json(spec: TruncatedAffineSpec, method: ChiMethod = ChiMethod.FORMULA) -> RegionCountJSON:
    r, b = regions_from_charpoly(charpoly(spec, method), spec.dimension)
    return RegionCountJSON(regions=str(r), bounded=str(b))


def bounded_region_sequence(a: int, n_max: int) -> list[int]:
    """Bounded regions of the extended Linial arrangement for n = 1..n_max; n = 1 gives 0."""
    if a < 1 or n_max < 1:
        raise InvalidInputError(f"need a >= 1 and n_max >= 1, got a={a}, n_max={n_max}")
    return [0] + [linial_placement_count(n, (a - 1) * n) for n in range(2, n_max + 1)]


def region_sequence(a: int, n_max: int) -> list[int]:
    """Regions of the extended Linial arrangement for n = 1..n_max; n = 1 gives 1."""
    if a < 1 or n_max < 1:
        raise InvalidInputError(f"need a >= 1 and n_max >= 1, got a={a}, n_max={n_max}")
    return [1] + [linial_placement_count(n, (a - 1) * n + 2) for n in range(2, n_max + 1)]


def sequence_count(n: int, a: int, bound_type: BoundType, max_enum: int | None = None) -> int:
    """
    Sequences (x_1..x_{n-1}) with 1 <= x_i <= M and all x_i + i distinct, where
    M = an for regions and an - 2 for bounded regions. Counted by direct search.
    """
    if n < 2 or a < 1:
        raise InvalidInputError(f"need n >= 2 and a >= 1, got n={n}, a={a}")
    bound = a * n if BoundType(bound_type) is BoundType.REGIONS else a * n - 2
    if bound < 1:
        return 0
    cap = max_enum if max_enum is not None else get_settings().max_sequence_enum
    check_cap("sequence search space", bound ** (n - 1), cap)

    used: set[int] = set()

    def extend(i: int) -> int:
        if i == n:
            return 1
        total = 0
        for x in range(1, bound + 1):
            if x + i not in used:
                used.add(x + i)
                total += extend(i + 1)
                used.remove(x + i)
        return total

    return extend(1)


# ─── Partition-lattice forms ──────────────────────────────────────────────────

def catalan_lattice_form(n: int) -> IntegerPolynomial:
    """Σ_σ μ(0̂,σ) Π_{A∈σ} (t + n - 2), which equals R(t, C_{0,n})."""
    return partition_lattice_sum(n - 1, lambda block: X + (n - 2))


def shi_lattice_form(n: int) -> IntegerPolynomial:
    """Σ_σ μ(0̂,σ) Π_{A∈σ} (t + n - 2 + min A), which equals R(t, S_{0,n})."""
    return partition_lattice_sum(n - 1, lambda block: X + (n - 2 + min(block)))


def linial_lattice_charpoly(n: int, a: int) -> IntegerPolynomial:
    """χ of the extended Linial arrangement from Σ_σ μ Π_{A∈σ} (an - q - 1 + min A - max A)."""
    signed = partition_lattice_sum(n - 1, lambda block: -X + (a * n - 1 + min(block) - max(block)))
    return signed.scale((-1) ** (n - 1))


def ltree_lattice_count(n: int) -> int:
    """Σ_σ μ Π_{A∈σ} (n + min A - max A), which counts local binary search trees on n nodes."""
    if n == 1:
        return 1
    return partition_lattice_sum(n - 1, lambda block: IntegerPolynomial((n + min(block) - max(block),)))(0)


def catalan_from_braid(t: int, n: int) -> int:
    """R(t, C_{0,n}) = (-1)^(n-1) χ^{1,1}(1 - t)."""
    return (-1) ** (n - 1) * charpoly_formula(TruncatedAffineSpec.braid(n))(1 - t)


def shi_from_charpoly(t: int, n: int) -> int:
    """R(t, S_{0,n}) = (-1)^(n-1) χ^{1,2}(1 - t)."""
    return (-1) ** (n - 1) * charpoly_formula(TruncatedAffineSpec.shi(n))(1 - t)
