"""
LinialRooks Tests — boards, rook numbers and factorial polynomials
"""

from fractions import Fraction
from unittest.mock import patch

import pytest

from linialrooks.errors import IntegrityError, InvalidInputError, InvalidShapeError, ResourceLimitError
from linialrooks.models.schemas import BoardFamily, BoardJSON
from linialrooks.services.arrangements import catalan_from_braid, shi_from_charpoly
from linialrooks.services.boards import (
    Board,
    catalan_board,
    enumerate_max_placements,
    factorial_polynomial,
    family_board,
    ferrers,
    gjw_factorial_polynomial,
    linial_board,
    linial_factorial_closed_form,
    linial_factorial_closed_form_polynomial,
    linial_placement_count,
    rook_numbers,
    rook_numbers_by_subsets,
    shi_board,
    skew_ferrers,
    v_stat,
)


@pytest.fixture
def l14():
    return linial_board(1, 4)


class TestBoardShapes:
    def test_linial_rows_bottom_to_top(self, l14):
        assert l14.rows == ((2, 3, 4), (3, 4, 5), (4, 5, 6))
        assert l14.columns == (2, 3, 4, 5, 6)

    def test_skew_ferrers_matches_linial(self, l14):
        assert skew_ferrers([6, 5, 4], [3, 2, 1]) == l14

    def test_catalan_is_a_rectangle(self):
        assert catalan_board(1, 3).rows == ((1, 2), (1, 2))

    def test_shi_is_a_staircase(self):
        assert shi_board(0, 3).rows == ((1, 2), (1, 2, 3))

    def test_family_lookup(self, l14):
        assert family_board(BoardFamily.LINIAL, 1, 4) == l14
        assert family_board("shi", 0, 3) == shi_board(0, 3)

    def test_not_decreasing(self):
        with pytest.raises(InvalidShapeError):
            skew_ferrers([2, 3])

    def test_mu_exceeds_lambda(self):
        with pytest.raises(InvalidShapeError):
            skew_ferrers([3, 1], [2, 2])

    def test_family_needs_n_at_least_two(self):
        with pytest.raises(InvalidInputError):
            linial_board(0, 1)

    def test_json_intervals(self, l14):
        data = l14.to_json()
        assert [(r.from_, r.to) for r in data.rows] == [(2, 4), (3, 5), (4, 6)]
        assert Board.from_json(data) == l14

    def test_json_alias(self, l14):
        dumped = l14.to_json().model_dump(by_alias=True, exclude_none=True)
        assert dumped["rows"][0] == {"from": 2, "to": 4}
        parsed = BoardJSON.model_validate({"rows": [{"from": 2, "to": 4}]})
        assert Board.from_json(parsed).rows == ((2, 3, 4),)

    def test_arbitrary_cells(self):
        board = Board.from_cells([(1, 1), (1, 3), (2, 2)])
        assert not board.is_contiguous()
        assert Board.from_json(board.to_json()) == board


class TestRookNumbers:
    def test_linial_example(self, l14):
        assert rook_numbers(l14).counts == (1, 9, 22, 14)
        assert rook_numbers(l14).to_json().r == ["1", "9", "22", "14"]

    def test_out_of_range_index(self, l14):
        assert rook_numbers(l14)[7] == 0

    def test_matches_subset_brute_force(self):
        board = skew_ferrers([5, 4, 4, 2], [2, 1])
        assert rook_numbers(board) == rook_numbers_by_subsets(board)

    def test_empty_board(self):
        assert rook_numbers(Board(())).counts == (1,)

    def test_row_cap(self, l14):
        with pytest.raises(ResourceLimitError):
            rook_numbers(l14, max_rows=2)

    def test_maximal_placements(self, l14):
        placements = enumerate_max_placements(l14)
        assert len(placements) == 14
        assert all(len(set(p)) == 3 for p in placements)

    def test_maximal_placements_l24(self):
        placements = enumerate_max_placements(linial_board(2, 4))
        assert len(placements) == 36
        assert len(set(placements)) == 36

    def test_maximal_placements_single_cell(self):
        assert enumerate_max_placements(skew_ferrers([1])) == [(1,)]

    def test_empty_row_has_no_maximal_placement(self):
        board = linial_board(0, 2)
        assert rook_numbers(board).to_json().r == ["1", "0"]
        assert enumerate_max_placements(board) == []


class TestFactorialPolynomial:
    def test_linial_example(self, l14):
        r = factorial_polynomial(l14)
        assert r.coefficients == (14, 15, 6, 1)
        assert r(1) == 36
        assert r(-1) == 4

    def test_m_must_cover_rows(self, l14):
        with pytest.raises(InvalidInputError):
            factorial_polynomial(l14, m=2)

    def test_larger_m_multiplies_degree(self, l14):
        assert factorial_polynomial(l14, m=4).degree == 4

    def test_rectangle_product_form(self):
        # R(x, C_{0,n}) = x (x+1) ... (x+n-2)
        for n in range(2, 6):
            r = factorial_polynomial(catalan_board(0, n))
            for t in range(0, 5):
                assert r(t) == catalan_from_braid(t, n)

    def test_shi_from_charpoly(self):
        for n in range(2, 6):
            r = factorial_polynomial(shi_board(0, n))
            assert all(r(t) == shi_from_charpoly(t, n) for t in range(0, 5))


class TestGJW:
    def test_linial_example(self, l14):
        assert gjw_factorial_polynomial(l14) == factorial_polynomial(l14)

    @pytest.mark.parametrize("lam, mu", [([4, 4, 3], [1]), ([5, 3, 3, 1], [2, 2]), ([3, 2, 1], [])])
    def test_skew_boards(self, lam, mu):
        board = skew_ferrers(lam, mu)
        assert gjw_factorial_polynomial(board) == factorial_polynomial(board)

    def test_v_statistic(self, l14):
        assert v_stat(l14, {1, 2}) == 2
        assert v_stat(l14, {1, 3}) == 1
        assert v_stat(l14, {2}) == 3

    def test_v_statistic_bad_rows(self, l14):
        with pytest.raises(InvalidInputError):
            v_stat(l14, set())
        with pytest.raises(InvalidInputError):
            v_stat(l14, {4})


class TestLinialClosedForm:
    def test_value(self):
        assert linial_factorial_closed_form(3, 2) == 7

    def test_rational_argument(self):
        value = linial_factorial_closed_form(2, Fraction(1, 2))
        assert value == Fraction(1, 2)

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_matches_board(self, n):
        assert linial_factorial_closed_form_polynomial(n) == factorial_polynomial(linial_board(0, n))

    def test_ferrers_straight_shape(self):
        # increasing-tree board (k(n-1), ..., k) with n = 3, k = 2
        board = ferrers([4, 2])
        assert rook_numbers(board)[2] == 2 * 3

    @pytest.mark.parametrize("n, t, count", [(4, 0, 4), (4, 2, 36), (3, 2, 7)])
    def test_placement_count(self, n, t, count):
        assert linial_placement_count(n, t) == count

    def test_placement_count_must_be_integral(self):
        with patch("linialrooks.services.boards.linial_factorial_closed_form", return_value=Fraction(7, 2)):
            with pytest.raises(IntegrityError):
                linial_placement_count(4, 0)
