"""
LinialRooks Tests — exact algebra: polynomials, set partitions, Möbius values
"""

from collections import Counter
from fractions import Fraction

import pytest

from linialrooks.errors import IntegrityError, InvalidInputError, ResourceLimitError
from linialrooks.services.algebra import (
    ONE,
    X,
    IntegerPolynomial,
    MultivariatePolynomial,
    SetPartition,
    enumerate_set_partitions,
    falling_factorial,
    interpolate,
    mobius_bottom,
    mobius_by_recursion,
    partition_lattice_sum,
    to_integer_polynomial,
    weak_composition,
)


class TestIntegerPolynomial:
    def test_trailing_zeros_are_dropped(self):
        p = IntegerPolynomial((1, 2, 0, 0))
        assert p.coefficients == (1, 2)
        assert p.degree == 1

    def test_zero_polynomial(self):
        assert IntegerPolynomial((0,)).is_zero
        assert IntegerPolynomial(()).degree == -1
        assert str(IntegerPolynomial(())) == "0"

    def test_rejects_non_integer_coefficients(self):
        with pytest.raises(InvalidInputError):
            IntegerPolynomial((1, Fraction(1, 2)))

    def test_arithmetic(self):
        p = X + 1
        assert (p * p).coefficients == (1, 2, 1)
        assert (p - p).is_zero
        assert (p ** 3).coefficients == (1, 3, 3, 1)
        assert (3 - X).coefficients == (3, -1)

    def test_evaluation_is_exact(self):
        p = X * X - 2
        assert p(3) == 7
        assert p(Fraction(1, 2)) == Fraction(-7, 4)
        assert isinstance(p(Fraction(4, 2)), int)

    def test_compose_linear(self):
        # (x)_2 at x - 1 is (x - 1)(x - 2)
        assert falling_factorial(2).compose_linear(1, -1).coefficients == (2, -3, 1)

    def test_format(self):
        assert (X ** 3 + X.scale(6) * X + X.scale(15) + 14).format("q") == "q^3 + 6q^2 + 15q + 14"
        assert str(-X + 1) == "-x + 1"

    def test_json(self):
        p = X ** 2 - 3
        assert p.to_json().coefficients == ["-3", "0", "1"]
        assert IntegerPolynomial.from_json(p.to_json()) == p


class TestFallingFactorial:
    def test_small_orders(self):
        assert falling_factorial(0) == ONE
        assert falling_factorial(3).coefficients == (0, 2, -3, 1)

    def test_values_at_integers(self):
        assert falling_factorial(4)(6) == 360
        assert falling_factorial(4)(3) == 0

    def test_negative_order(self):
        with pytest.raises(InvalidInputError):
            falling_factorial(-1)


class TestInterpolation:
    def test_recovers_integer_polynomial(self):
        p = X ** 3 - X.scale(2) + 5
        points = [(q, p(q)) for q in (2, 3, 5, 7)]
        assert to_integer_polynomial(interpolate(points)) == p

    def test_non_integer_interpolant_is_an_integrity_error(self):
        coefficients = interpolate([(0, 0), (2, 1)])
        assert coefficients == [0, Fraction(1, 2)]
        with pytest.raises(IntegrityError):
            to_integer_polynomial(coefficients)

    def test_repeated_nodes(self):
        with pytest.raises(InvalidInputError):
            interpolate([(1, 1), (1, 2)])


class TestSetPartitions:
    @pytest.mark.parametrize("m, bell", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52)])
    def test_bell_numbers(self, m, bell):
        assert len(enumerate_set_partitions(m)) == bell

    def test_each_partition_once(self):
        parts = enumerate_set_partitions(4)
        assert len(set(parts)) == len(parts)

    def test_blocks_must_cover(self):
        with pytest.raises(InvalidInputError):
            SetPartition(3, ((1, 2),))

    def test_overlapping_blocks(self):
        with pytest.raises(InvalidInputError):
            SetPartition(3, ((1, 2), (2, 3)))

    def test_size_cap(self):
        with pytest.raises(ResourceLimitError):
            enumerate_set_partitions(5, max_size=4)

    def test_refines(self):
        fine = SetPartition(3, ((1,), (2,), (3,)))
        coarse = SetPartition(3, ((1, 3), (2,)))
        assert fine.refines(coarse)
        assert not coarse.refines(fine)
        assert str(coarse) == "13/2"


class TestMobius:
    def test_top_element(self):
        top = SetPartition(4, ((1, 2, 3, 4),))
        assert mobius_bottom(top) == -6

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    def test_product_formula_matches_recursion(self, m):
        recursive = mobius_by_recursion(m)
        assert all(mobius_bottom(sigma) == value for sigma, value in recursive.items())

    def test_lattice_sum_of_x_is_falling_factorial(self):
        # Σ μ(0̂,σ) x^{|σ|} = (x)_m
        assert partition_lattice_sum(4, lambda block: X) == falling_factorial(4)


class TestMultivariatePolynomial:
    def test_zero_terms_are_dropped(self):
        p = MultivariatePolynomial(1, {(1, 0): 2, (0, 1): 0})
        assert p.terms == {(1, 0): 2}

    def test_evaluate_and_swap(self):
        p = MultivariatePolynomial.from_counter(2, Counter({(1, 0, 0, 0): 1, (0, 1, 0, 0): 3}))
        assert p.evaluate((2, 5), (0, 0)) == 17
        swapped = p.swap("u2", "v1")
        assert swapped.coefficient((1, 0), (0, 0)) == 1
        assert swapped.coefficient((0, 0), (1, 0)) == 3

    def test_unknown_variable(self):
        p = MultivariatePolynomial(2, {})
        with pytest.raises(InvalidInputError):
            p.variable_index("w1")

    def test_weak_composition(self):
        assert weak_composition([0, 2], 2) == (0, 2)
        with pytest.raises(InvalidInputError):
            weak_composition([1, -1], 2)
