"""
Exact arithmetic substrate shared by every other service.

Integer polynomials (dense, low degree first), falling factorials, exact
interpolation, set partitions of [m] with their Möbius values on the partition
lattice, and the multivariate polynomials that hold Gessel polynomials.
Nothing here ever touches floating point.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Iterator, Mapping, Sequence, Union

from loguru import logger

from linialrooks.config import get_settings
from linialrooks.errors import IntegrityError, InvalidInputError, check_cap
from linialrooks.models.schemas import GesselJSON, MonomialJSON, PolynomialJSON

Rational = Union[int, Fraction]
WeakComposition = tuple[int, ...]


def _exact(value: Rational) -> Rational:
    """Collapse integral Fractions back to int so results compare cleanly."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


# ─── Integer polynomials ──────────────────────────────────────────────────────

@dataclass(frozen=True)
class IntegerPolynomial:
    coefficients: tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = tuple(self.coefficients)
        for c in coeffs:
            if isinstance(c, bool) or not isinstance(c, int):
                raise InvalidInputError(f"coefficient {c!r} is not an integer")
        end = len(coeffs)
        while end and coeffs[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "coefficients", coeffs[:end])

    @classmethod
    def constant(cls, c: int) -> "IntegerPolynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "IntegerPolynomial":
        return cls((0,) * degree + (c,))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading_coefficient(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def __getitem__(self, i: int) -> int:
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else 0

    # arithmetic

    @staticmethod
    def _coerce(other) -> "IntegerPolynomial":
        if isinstance(other, IntegerPolynomial):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return IntegerPolynomial((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        return IntegerPolynomial(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    __radd__ = __add__

    def __neg__(self):
        return IntegerPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, IntegerPolynomial):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return ZERO
        check_cap("polynomial degree", self.degree + other.degree, get_settings().max_degree)
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return IntegerPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise InvalidInputError("negative polynomial power")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c: int) -> "IntegerPolynomial":
        return IntegerPolynomial(tuple(c * a for a in self.coefficients))

    def compose(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        """p(other(x)) by Horner's rule."""
        result = ZERO
        for c in reversed(self.coefficients):
            result = result * other + c
        return result

    def compose_linear(self, alpha: int, beta: int) -> "IntegerPolynomial":
        """p(alpha*x + beta), expanded."""
        return self.compose(IntegerPolynomial((beta, alpha)))

    def __call__(self, t: Rational) -> Rational:
        acc: Rational = 0
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return _exact(acc)

    # serialization

    def to_json(self, variable: str = "x") -> PolynomialJSON:
        return PolynomialJSON(variable=variable, coefficients=[str(c) for c in self.coefficients] or ["0"])

    @classmethod
    def from_json(cls, data: PolynomialJSON) -> "IntegerPolynomial":
        try:
            return cls(tuple(int(c) for c in data.coefficients))
        except ValueError as e:
            raise InvalidInputError(f"polynomial coefficient is not a decimal integer: {e}")

    def __str__(self) -> str:
        return self.format("x")

    def format(self, variable: str = "x") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for d in range(self.degree, -1, -1):
            c = self.coefficients[d]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                power = variable if d == 1 else f"{variable}^{d}"
                body = power if mag == 1 else f"{mag}{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


ZERO = IntegerPolynomial(())
ONE = IntegerPolynomial((1,))
X = IntegerPolynomial((0, 1))


def poly_eval(p: IntegerPolynomial, t: Rational) -> Rational:
    return p(t)


def poly_add(p: IntegerPolynomial, q: IntegerPolynomial) -> IntegerPolynomial:
    return p + q


def poly_multiply(p: IntegerPolynomial, q: IntegerPolynomial) -> IntegerPolynomial:
    return p * q


def poly_scale(p: IntegerPolynomial, c: int) -> IntegerPolynomial:
    return p.scale(c)


def compose_linear(p: IntegerPolynomial, alpha: int, beta: int) -> IntegerPolynomial:
    return p.compose_linear(alpha, beta)


@lru_cache(maxsize=None)
def falling_factorial(j: int) -> IntegerPolynomial:
    """(x)_j = x(x-1)...(x-j+1); (x)_0 = 1."""
    if j < 0:
        raise InvalidInputError(f"falling factorial of negative order {j}")
    result = ONE
    for i in range(j):
        result = result * IntegerPolynomial((-i, 1))
    return result


def interpolate(points: Sequence[tuple[Rational, Rational]]) -> list[Fraction]:
    """
    Exact interpolation through (x, y) points by Newton divided differences.
    Returns rational coefficients, low degree first, trailing zeros removed.
    """
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise InvalidInputError("interpolation nodes must be distinct")
    coef = [Fraction(y) for _, y in points]
    n = len(points)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])

    result = [Fraction(0)]
    for i in range(n - 1, -1, -1):
        shifted = [Fraction(0)] + result
        for d, c in enumerate(result):
            shifted[d] -= xs[i] * c
        shifted[0] += coef[i]
        result = shifted
    while len(result) > 1 and result[-1] == 0:
        result.pop()
    return result


def to_integer_polynomial(coefficients: Sequence[Rational]) -> IntegerPolynomial:
    out = []
    for i, c in enumerate(coefficients):
        c = Fraction(c)
        if c.denominator != 1:
            raise IntegrityError(f"coefficient of x^{i} is {c}, not an integer")
        out.append(c.numerator)
    return IntegerPolynomial(tuple(out))


# ─── Set partitions ───────────────────────────────────────────────────────────

@dataclass(frozen=True)
class SetPartition:
    m: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise InvalidInputError("set partition has an empty block")
            for e in b:
                if e in seen:
                    raise InvalidInputError(f"element {e} appears in two blocks")
                seen.add(e)
        if seen != set(range(1, self.m + 1)):
            raise InvalidInputError(f"blocks do not cover [1..{self.m}]")
        object.__setattr__(self, "blocks", blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def refines(self, other: "SetPartition") -> bool:
        """True when every block of self lies inside a block of other."""
        owner = {}
        for idx, b in enumerate(other.blocks):
            for e in b:
                owner[e] = idx
        return all(len({owner[e] for e in b}) == 1 for b in self.blocks)

    def __str__(self) -> str:
        sep = "" if self.m < 10 else ","
        return "/".join(sep.join(str(e) for e in b) for b in self.blocks) or "∅"


def _restricted_growth_strings(m: int) -> Iterator[tuple[int, ...]]:
    if m == 0:
        yield ()
        return
    word = [0] * m

    def grow(i: int, top: int):
        if i == m:
            yield tuple(word)
            return
        for v in range(top + 2):
            word[i] = v
            yield from grow(i + 1, max(top, v))

    yield from grow(1, 0)


def enumerate_set_partitions(m: int, max_size: int | None = None) -> list[SetPartition]:
    """All partitions of [m], each once, in restricted-growth order."""
    if m < 0:
        raise InvalidInputError(f"partition size must be nonnegative, got {m}")
    check_cap("set partition size", m, max_size if max_size is not None else get_settings().max_partition_size)
    return list(_partitions_cached(m))


@lru_cache(maxsize=16)
def _partitions_cached(m: int) -> tuple[SetPartition, ...]:
    out = []
    for word in _restricted_growth_strings(m):
        blocks: dict[int, list[int]] = {}
        for element, b in enumerate(word, start=1):
            blocks.setdefault(b, []).append(element)
        out.append(SetPartition(m, tuple(tuple(v) for v in blocks.values())))
    logger.debug(f"[Algebra] enumerated Π_{m}: {len(out)} partitions")
    return tuple(out)


def mobius_bottom(sigma: SetPartition) -> int:
    """μ(0̂, σ) on the partition lattice: Π over blocks of (-1)^(|A|-1) (|A|-1)!."""
    value = 1
    for b in sigma.blocks:
        size = len(b)
        value *= (-1) ** (size - 1) * factorial(size - 1)
    return value


def mobius_by_recursion(m: int) -> dict[SetPartition, int]:
    """μ(0̂, σ) for every σ in Π_m, computed from the refinement order alone."""
    partitions = sorted(enumerate_set_partitions(m), key=len, reverse=True)
    mu: dict[SetPartition, int] = {}
    for sigma in partitions:
        if len(sigma) == m:
            mu[sigma] = 1
            continue
        mu[sigma] = -sum(v for tau, v in mu.items() if len(tau) > len(sigma) and tau.refines(sigma))
    return mu


def partition_lattice_sum(
    m: int,
    weight: Callable[[tuple[int, ...]], IntegerPolynomial],
    max_size: int | None = None,
) -> IntegerPolynomial:
    """Σ_{σ ∈ Π_m} μ(0̂,σ) Π_{A ∈ σ} weight(A)."""
    cache: dict[tuple[int, ...], IntegerPolynomial] = {}
    total = ZERO
    for sigma in enumerate_set_partitions(m, max_size=max_size):
        term = ONE
        for b in sigma.blocks:
            w = cache.get(b)
            if w is None:
                w = cache[b] = weight(b)
            term = term * w
        total = total + term.scale(mobius_bottom(sigma))
    return total


# ─── Weak compositions / multivariate polynomials ─────────────────────────────

def weak_composition(parts: Sequence[int], k: int) -> WeakComposition:
    parts = tuple(parts)
    if len(parts) != k or any(p < 0 for p in parts):
        raise InvalidInputError(f"{parts} is not a weak composition with {k} parts")
    return parts


@dataclass(frozen=True, eq=False)
class MultivariatePolynomial:
    """
    Integer polynomial in u_1..u_k, v_1..v_k. Exponent vectors list the u
    exponents first, then the v exponents.
    """

    k: int
    terms: Mapping[tuple[int, ...], int]

    def __post_init__(self):
        clean = {}
        for exps, c in self.terms.items():
            exps = tuple(exps)
            if len(exps) != 2 * self.k:
                raise InvalidInputError(f"exponent vector {exps} has length != {2 * self.k}")
            if c:
                clean[exps] = clean.get(exps, 0) + c
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c})

    @classmethod
    def from_counter(cls, k: int, counter: Counter) -> "MultivariatePolynomial":
        return cls(k, dict(counter))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultivariatePolynomial):
            return NotImplemented
        return self.k == other.k and self.terms == other.terms

    def __add__(self, other: "MultivariatePolynomial") -> "MultivariatePolynomial":
        merged = Counter(self.terms)
        merged.update(other.terms)
        return MultivariatePolynomial(self.k, dict(merged))

    def variable_index(self, name: str) -> int:
        kind, idx = name[0], int(name[1:])
        if kind not in "uv" or not 1 <= idx <= self.k:
            raise InvalidInputError(f"unknown variable {name!r} for k={self.k}")
        return idx - 1 if kind == "u" else self.k + idx - 1

    def coefficient(self, u: WeakComposition, v: WeakComposition) -> int:
        return self.terms.get(tuple(u) + tuple(v), 0)

    def total(self) -> int:
        return sum(self.terms.values())

    def evaluate(self, u: Sequence[Rational], v: Sequence[Rational]) -> Rational:
        values = [Fraction(x) for x in list(u) + list(v)]
        if len(values) != 2 * self.k:
            raise InvalidInputError(f"expected {self.k} u-values and {self.k} v-values")
        acc = Fraction(0)
        for exps, c in self.terms.items():
            term = Fraction(c)
            for val, e in zip(values, exps):
                if e:
                    term *= val ** e
            acc += term
        return _exact(acc)

    def swap(self, first: str, second: str) -> "MultivariatePolynomial":
        """Formal substitution exchanging two variables, e.g. swap('u2', 'v1')."""
        i, j = self.variable_index(first), self.variable_index(second)
        out = {}
        for exps, c in self.terms.items():
            e = list(exps)
            e[i], e[j] = e[j], e[i]
            out[tuple(e)] = c
        return MultivariatePolynomial(self.k, out)

    def to_json(self, n: int) -> GesselJSON:
        terms = [
            MonomialJSON(u=list(e[: self.k]), v=list(e[self.k:]), coefficient=str(c))
            for e, c in sorted(self.terms.items())
        ]
        return GesselJSON(n=n, k=self.k, terms=terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = [f"u{i}" for i in range(1, self.k + 1)] + [f"v{i}" for i in range(1, self.k + 1)]
        chunks = []
        for exps, c in sorted(self.terms.items(), reverse=True):
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e]
            mono = "*".join(factors)
            if not mono:
                chunks.append(str(c))
            elif c == 1:
                chunks.append(mono)
            else:
                chunks.append(f"{c}*{mono}")
        return " + ".join(chunks)
