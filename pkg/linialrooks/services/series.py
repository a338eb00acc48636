"""
Truncated power series over exact rationals, and the generating-function
identities checked against the tree and placement counts.

Coefficients are ordinary: c_n is the coefficient of x^n. Exponential
generating functions go through from_egf / egf_coefficients explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Optional, Sequence

from loguru import logger

from linialrooks.config import get_settings
from linialrooks.errors import InvalidInputError, NotInvertibleError, check_cap
from linialrooks.models.schemas import TreeClass, VerificationReport
from linialrooks.services.algebra import Rational
from linialrooks.services.bijection import gessel_polynomial
from linialrooks.services.trees import count_trees_by_enumeration, ltree_count_formula


# ─── Series type ──────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class TruncatedPowerSeries:
    order: int
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if self.order < 0:
            raise InvalidInputError(f"series order must be nonnegative, got {self.order}")
        coeffs = [Fraction(c) for c in self.coefficients[: self.order + 1]]
        coeffs += [Fraction(0)] * (self.order + 1 - len(coeffs))
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_coefficients(cls, coefficients: Sequence[Rational], order: int) -> "TruncatedPowerSeries":
        return cls(order, tuple(coefficients))

    @classmethod
    def constant(cls, c: Rational, order: int) -> "TruncatedPowerSeries":
        return cls(order, (c,))

    @classmethod
    def x(cls, order: int) -> "TruncatedPowerSeries":
        return cls(order, (0, 1))

    @classmethod
    def from_egf(cls, values: Sequence[Rational], order: int) -> "TruncatedPowerSeries":
        """values[n] is n! times the coefficient of x^n."""
        return cls(order, tuple(Fraction(v) / factorial(n) for n, v in enumerate(values)))

    def egf_coefficients(self) -> list[Fraction]:
        return [c * factorial(n) for n, c in enumerate(self.coefficients)]

    def __getitem__(self, n: int) -> Fraction:
        return self.coefficients[n] if 0 <= n <= self.order else Fraction(0)

    def _like(self, coefficients) -> "TruncatedPowerSeries":
        return TruncatedPowerSeries(self.order, tuple(coefficients))

    def _coerce(self, other) -> "TruncatedPowerSeries":
        if isinstance(other, TruncatedPowerSeries):
            if other.order != self.order:
                return TruncatedPowerSeries(min(self.order, other.order), other.coefficients)
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedPowerSeries.constant(other, self.order)
        return NotImplemented

    # arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        return TruncatedPowerSeries(order, tuple(self[i] + other[i] for i in range(order + 1)))

    __radd__ = __add__

    def __neg__(self):
        return self._like(-c for c in self.coefficients)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._like(c * other for c in self.coefficients)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        out = [Fraction(0)] * (order + 1)
        for i in range(order + 1):
            a = self[i]
            if a:
                for j in range(order + 1 - i):
                    out[i + j] += a * other[j]
        return TruncatedPowerSeries(order, tuple(out))

    __rmul__ = __mul__

    def reciprocal(self) -> "TruncatedPowerSeries":
        c0 = self[0]
        if c0 == 0:
            raise InvalidInputError("reciprocal needs a nonzero constant term")
        out = [1 / c0]
        for n in range(1, self.order + 1):
            out.append(-sum(self[k] * out[n - k] for k in range(1, n + 1)) / c0)
        return self._like(out)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.reciprocal() ** (-e)
        result = TruncatedPowerSeries.constant(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def derivative(self) -> "TruncatedPowerSeries":
        return self._like(n * self[n] for n in range(1, self.order + 1))

    def integral(self) -> "TruncatedPowerSeries":
        return self._like([Fraction(0)] + [self[n] / (n + 1) for n in range(self.order)])

    def exp(self) -> "TruncatedPowerSeries":
        if self[0] != 0:
            raise InvalidInputError("exp needs a zero constant term")
        out = [Fraction(1)]
        for n in range(1, self.order + 1):
            out.append(sum(k * self[k] * out[n - k] for k in range(1, n + 1)) / n)
        return self._like(out)

    def log(self) -> "TruncatedPowerSeries":
        if self[0] != 1:
            raise InvalidInputError("log needs constant term 1")
        return (self.derivative() * self.reciprocal()).integral()

    def compose(self, inner: "TruncatedPowerSeries") -> "TruncatedPowerSeries":
        """self(inner(x)); inner must vanish at 0."""
        if inner[0] != 0:
            raise InvalidInputError("composition needs an inner series with zero constant term")
        order = min(self.order, inner.order)
        inner = TruncatedPowerSeries(order, inner.coefficients)
        result = TruncatedPowerSeries.constant(self[order], order)
        for n in range(order - 1, -1, -1):
            result = result * inner + self[n]
        return result

    def first_mismatch(self, other: "TruncatedPowerSeries") -> Optional[int]:
        order = min(self.order, other.order)
        for n in range(order + 1):
            if self[n] != other[n]:
                return n
        return None

    def __str__(self) -> str:
        terms = [f"{c}*x^{n}" if n else str(c) for n, c in enumerate(self.coefficients) if c]
        return (" + ".join(terms) or "0") + f" + O(x^{self.order + 1})"


def log1p_linear(alpha: Rational, order: int) -> TruncatedPowerSeries:
    """log(1 + alpha*x)."""
    alpha = Fraction(alpha)
    return TruncatedPowerSeries(order, tuple(
        [Fraction(0)] + [(-1) ** (n + 1) * alpha ** n / n for n in range(1, order + 1)]
    ))


def compositional_inverse(f: TruncatedPowerSeries) -> TruncatedPowerSeries:
    """g with f(g(x)) = x, solved one coefficient at a time."""
    if f[0] != 0:
        raise NotInvertibleError("compositional inverse needs f(0) = 0")
    if f[1] == 0:
        raise NotInvertibleError("compositional inverse needs f'(0) != 0")
    g = [Fraction(0), 1 / f[1]] + [Fraction(0)] * (f.order - 1)
    for m in range(2, f.order + 1):
        current = f.compose(TruncatedPowerSeries(f.order, tuple(g)))
        g[m] = -current[m] / f[1]
    return TruncatedPowerSeries(f.order, tuple(g[: f.order + 1]))


# ─── Identities ───────────────────────────────────────────────────────────────

def _report(identity: str, order: int, mismatch: Optional[int]) -> VerificationReport:
    status = "pass" if mismatch is None else "fail"
    if mismatch is not None:
        logger.warning(f"[Series] {identity} order={order} fails at n={mismatch}")
    else:
        logger.debug(f"[Series] {identity} order={order} passes")
    return VerificationReport(identity=identity, order=order, status=status, first_mismatch=mismatch)


def _check_order(order: int) -> None:
    if order < 0:
        raise InvalidInputError(f"order must be nonnegative, got {order}")
    check_cap("series order", order, get_settings().max_series_order)


def ltree_egf(k: int, order: int) -> TruncatedPowerSeries:
    """Compositional inverse of 2 log(1+x) / ((1+x)^(k-2) (2+x))."""
    if k < 2:
        raise InvalidInputError("local binary search trees need k >= 2")
    one_plus_x = TruncatedPowerSeries(order, (1, 1))
    f = 2 * log1p_linear(1, order) / (one_plus_x ** (k - 2) * TruncatedPowerSeries(order, (2, 1)))
    return compositional_inverse(f)


def verify_ltree_egf(k: int, order: int, max_enum: int | None = None) -> VerificationReport:
    """
    n! [x^n] of the ltree EGF against the closed-form count, and against tree
    enumeration while the class stays within the enumeration cap.
    """
    _check_order(order)
    cap = max_enum if max_enum is not None else get_settings().max_verify_enum
    coefficients = ltree_egf(k, max(order, 1)).egf_coefficients()
    for n in range(1, order + 1):
        expected = ltree_count_formula(n, k)
        if coefficients[n] != expected:
            return _report(f"ltree-egf k={k}", order, n)
        if expected <= cap and count_trees_by_enumeration(n, k, TreeClass.LTREE, max_enum=cap) != expected:
            return _report(f"ltree-egf k={k}", order, n)
    return _report(f"ltree-egf k={k}", order, None)


def verify_f_equation(k: int, order: int) -> VerificationReport:
    """f^2 = exp(x (f^(k-2) + f^(k-1))) with f = 1 + ltree EGF."""
    _check_order(order)
    if order == 0:
        return _report(f"f-equation k={k}", order, None)
    f = ltree_egf(k, order) + 1
    lhs = f * f
    rhs = (TruncatedPowerSeries.x(order) * (f ** (k - 2) + f ** (k - 1))).exp()
    return _report(f"f-equation k={k}", order, lhs.first_mismatch(rhs))


@lru_cache(maxsize=64)
def _gessel(n: int, k: int):
    return gessel_polynomial(n, k)


def gessel_egf(k: int, u: Sequence[Rational], v: Sequence[Rational], order: int) -> TruncatedPowerSeries:
    """Σ_{n>=1} G_{n,k}(u, v) x^n / n!."""
    values = [Fraction(0)] + [_gessel(n, k).evaluate(u, v) for n in range(1, order + 1)]
    return TruncatedPowerSeries.from_egf(values, order)


def drake_series(k: int, u: Sequence[Rational], v: Sequence[Rational], order: int) -> TruncatedPowerSeries:
    """
    H(x) = Σ_i (v_i - u_i)^(k-2) [log(1 + v_i x) - log(1 + u_i x)] Π_{j≠i} 1/Z_ij(x)
    with Z_ij(x) = (v_i u_j - u_i v_j) x + (v_i - v_j) - (u_i - u_j).
    """
    u = [Fraction(x) for x in u]
    v = [Fraction(x) for x in v]
    if len(u) != k or len(v) != k:
        raise InvalidInputError(f"need {k} u-values and {k} v-values")
    total = TruncatedPowerSeries.constant(0, order)
    for i in range(k):
        weight = (v[i] - u[i]) ** (k - 2) if k > 2 else Fraction(1)
        term = (log1p_linear(v[i], order) - log1p_linear(u[i], order)) * weight
        for j in range(k):
            if j == i:
                continue
            constant = (v[i] - v[j]) - (u[i] - u[j])
            if constant == 0:
                raise InvalidInputError(f"Z({i + 1},{j + 1}) has zero constant term; parameters are not generic")
            z = TruncatedPowerSeries(order, (constant, v[i] * u[j] - u[i] * v[j]))
            term = term * z.reciprocal()
        total = total + term
    return total


def verify_drake_inverse(
    k: int,
    u: Sequence[Rational],
    v: Sequence[Rational],
    order: int,
) -> VerificationReport:
    """H(P_k(x)) = x, where P_k is the Gessel EGF at the same parameters."""
    _check_order(order)
    h = drake_series(k, u, v, order)
    p = gessel_egf(k, u, v, order)
    return _report(f"drake k={k}", order, h.compose(p).first_mismatch(TruncatedPowerSeries.x(order)))


def verify_gessel_k2_equation(
    u1: Rational,
    u2: Rational,
    v1: Rational,
    v2: Rational,
    order: int,
) -> VerificationReport:
    """
    (1 + v1 B)(1 + u2 B) / ((1 + v2 B)(1 + u1 B)) = exp([(v1 u2 - v2 u1) B + v1 - v2 - u1 + u2] x)
    for B the k = 2 Gessel EGF.
    """
    _check_order(order)
    u1, u2, v1, v2 = (Fraction(c) for c in (u1, u2, v1, v2))
    b = gessel_egf(2, (u1, u2), (v1, v2), order)
    lhs = (b * v1 + 1) * (b * u2 + 1) / ((b * v2 + 1) * (b * u1 + 1))
    exponent = TruncatedPowerSeries.x(order) * (b * (v1 * u2 - v2 * u1) + (v1 - v2 - u1 + u2))
    return _report("gessel-k2", order, lhs.first_mismatch(exponent.exp()))


IDENTITIES: dict[str, Callable[..., VerificationReport]] = {
    "ltree-egf": verify_ltree_egf,
    "f-equation": verify_f_equation,
    "drake": verify_drake_inverse,
    "gessel-k2": verify_gessel_k2_equation,
}
