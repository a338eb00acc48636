"""
LinialRooks Tests — truncated affine arrangements and region counts
"""

from fractions import Fraction
from unittest.mock import patch

import pytest

from linialrooks.errors import IntegrityError, InvalidInputError, ResourceLimitError, UnsupportedArrangementError
from linialrooks.services.algebra import X, IntegerPolynomial
from linialrooks.services.arrangements import (
    BoundType,
    ChiMethod,
    TruncatedAffineSpec,
    bounded_region_sequence,
    bounded_regions,
    catalan_lattice_form,
    charpoly,
    charpoly_finite_field,
    charpoly_formula,
    count_points,
    describe,
    finite_field_primes,
    linial_lattice_charpoly,
    ltree_lattice_count,
    region_sequence,
    regions,
    regions_from_charpoly,
    sequence_count,
    shi_lattice_form,
)
from linialrooks.services.boards import catalan_board, factorial_polynomial, shi_board
from linialrooks.services.trees import ltree_count_formula


class TestSpec:
    def test_linial_family(self):
        spec = TruncatedAffineSpec.linial(4, 1)
        assert (spec.a, spec.b) == (0, 2)
        assert list(spec.offsets) == [1]
        assert spec.linial_parameter == 1

    def test_shi_and_braid(self):
        assert list(TruncatedAffineSpec.shi(3).offsets) == [0, 1]
        assert list(TruncatedAffineSpec.braid(3).offsets) == [0]

    def test_needs_two_coordinates(self):
        with pytest.raises(InvalidInputError):
            TruncatedAffineSpec(1, 1, 1)

    def test_needs_a_plus_b_at_least_two(self):
        with pytest.raises(InvalidInputError):
            TruncatedAffineSpec(3, 1, 0)

    def test_linial_parameter_positive(self):
        with pytest.raises(InvalidInputError):
            TruncatedAffineSpec.linial(3, 0)


class TestCharpolyFormula:
    def test_linial_three(self):
        assert charpoly_formula(TruncatedAffineSpec.linial(3, 1)).coefficients == (3, -3, 1)

    def test_shi_three(self):
        assert charpoly_formula(TruncatedAffineSpec.shi(3)) == (X - 3) ** 2

    def test_braid_three(self):
        assert charpoly_formula(TruncatedAffineSpec.braid(3)) == (X - 1) * (X - 2)

    def test_unsupported(self):
        with pytest.raises(UnsupportedArrangementError):
            charpoly_formula(TruncatedAffineSpec(3, 2, 2))

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    @pytest.mark.parametrize("a", [1, 2, 3])
    def test_monic_of_dimension_degree(self, n, a):
        chi = charpoly_formula(TruncatedAffineSpec.linial(n, a))
        assert chi.degree == n - 1
        assert chi.leading_coefficient == 1


class TestFiniteField:
    def test_point_count(self):
        assert count_points(TruncatedAffineSpec.braid(2), 5) == 4
        assert count_points(TruncatedAffineSpec.linial(3, 1), 7) == 49 - 21 + 3

    def test_primes_exceed_bound(self):
        spec = TruncatedAffineSpec(3, 2, 4)
        primes = finite_field_primes(spec, 3)
        assert primes == [19, 23, 29]

    @pytest.mark.parametrize("a, b", [(1, 1), (1, 2), (0, 2), (1, 3), (2, 4)])
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_matches_formula(self, n, a, b):
        spec = TruncatedAffineSpec(n, a, b)
        assert charpoly_finite_field(spec) == charpoly_formula(spec)

    def test_arbitrary_pair(self):
        chi = charpoly(TruncatedAffineSpec(3, 2, 2), ChiMethod.FINITE_FIELD)
        assert chi.degree == 2
        assert chi.leading_coefficient == 1

    def test_size_cap(self):
        with pytest.raises(ResourceLimitError):
            charpoly_finite_field(TruncatedAffineSpec.braid(5), max_n=4)


class TestRegions:
    @pytest.mark.parametrize("n, expected", [(2, (2, 0)), (3, (7, 1)), (4, (36, 4))])
    def test_linial(self, n, expected):
        spec = TruncatedAffineSpec.linial(n, 1)
        assert (regions(spec), bounded_regions(spec)) == expected

    def test_braid_is_factorial(self):
        assert regions(TruncatedAffineSpec.braid(4)) == 24

    def test_shi_regions(self):
        assert regions(TruncatedAffineSpec.shi(4)) == 5 ** 3

    def test_inconsistent_counts(self):
        with pytest.raises(IntegrityError):
            regions_from_charpoly(IntegerPolynomial((5, 1)), 1)

    def test_describe_payload(self):
        data = describe(TruncatedAffineSpec.linial(4, 1))
        assert data.regions == "36"
        assert data.bounded == "4"
        assert data.chi.variable == "q"


class TestSequences:
    def test_bounded_sequence(self):
        assert bounded_region_sequence(1, 8) == [0, 0, 1, 4, 26, 212, 2108, 24720]

    def test_region_sequence(self):
        assert region_sequence(1, 5) == [1, 2, 7, 36, 246]

    def test_sequences_reject_non_integer_closed_form(self):
        with patch("linialrooks.services.boards.linial_factorial_closed_form", return_value=Fraction(1, 2)):
            with pytest.raises(IntegrityError):
                bounded_region_sequence(1, 3)
            with pytest.raises(IntegrityError):
                region_sequence(1, 3)

    @pytest.mark.parametrize("n, bound, count", [
        (3, BoundType.REGIONS, 7), (3, BoundType.BOUNDED, 1),
        (4, BoundType.REGIONS, 36), (4, BoundType.BOUNDED, 4),
    ])
    def test_direct_search(self, n, bound, count):
        assert sequence_count(n, 1, bound) == count

    def test_search_cap(self):
        with pytest.raises(ResourceLimitError):
            sequence_count(6, 2, BoundType.REGIONS, max_enum=1000)


class TestLatticeForms:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_catalan_and_shi(self, n):
        assert catalan_lattice_form(n) == factorial_polynomial(catalan_board(0, n))
        assert shi_lattice_form(n) == factorial_polynomial(shi_board(0, n))

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    @pytest.mark.parametrize("a", [1, 2])
    def test_linial_charpoly(self, n, a):
        assert linial_lattice_charpoly(n, a) == charpoly_formula(TruncatedAffineSpec.linial(n, a))

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_ltree_count(self, n):
        assert ltree_lattice_count(n) == ltree_count_formula(n, 2)
