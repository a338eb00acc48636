"""
Cross-verification suites behind `verify all`.

Each suite is a plain synchronous function returning a SuiteReport; verify_all
dispatches them to a pool of `verify_workers` threads and gathers the
reports in a fixed order.
"""

from __future__ import annotations

import asyncio
import random
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import partial
from itertools import combinations
from math import comb, factorial, prod
from typing import Callable, Iterable, Optional

from loguru import logger

from linialrooks.config import get_settings
from linialrooks.errors import EngineError, ResourceLimitError
from linialrooks.models.schemas import SuiteReport, TreeClass, VerificationReport, VerifyAllReport
from linialrooks.services import algebra, arrangements, bijection, boards, graphs, series, trees
from linialrooks.services.algebra import X, IntegerPolynomial
from linialrooks.services.arrangements import BoundType, TruncatedAffineSpec


def _run_sync(executor: ThreadPoolExecutor, fn, *args, **kwargs):
    """Run a blocking suite on the given pool."""
    return asyncio.get_running_loop().run_in_executor(executor, partial(fn, *args, **kwargs))


def _check(identity: str, order: int, cases: Iterable[tuple[int, Callable[[], bool]]]) -> VerificationReport:
    """Runs (order, predicate) cases in sequence and stops at the first failing order."""
    try:
        for n, holds in cases:
            if not holds():
                logger.warning(f"[Verify] {identity} fails at {n}")
                return VerificationReport(identity=identity, order=order, status="fail", first_mismatch=n)
    except ResourceLimitError as e:
        # a cap hit says nothing about the identity
        logger.info(f"[Verify] {identity} skipped: {e.detail}")
        return VerificationReport(identity=identity, order=order, status="skipped")
    except EngineError as e:
        logger.warning(f"[Verify] {identity} raised {type(e).__name__}: {e.detail}")
        return VerificationReport(identity=identity, order=order, status="fail", first_mismatch=None)
    return VerificationReport(identity=identity, order=order, status="pass")


def _suite(name: str, checks: list[VerificationReport], started: float) -> SuiteReport:
    status = "fail" if any(c.failed for c in checks) else "pass"
    logger.debug(f"[Verify] suite={name} status={status} checks={len(checks)} took={time.perf_counter() - started:.2f}s")
    return SuiteReport(suite=name, status=status, checks=checks)


def _random_skew_shape(rng: random.Random, rows: int, top: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    lam = sorted((rng.randint(1, top) for _ in range(rows)), reverse=True)
    mu = sorted((rng.randint(0, part) for part in lam), reverse=True)
    mu = [min(m, l) for m, l in zip(mu, lam)]
    return tuple(lam), tuple(mu)


# ─── exact-algebra ────────────────────────────────────────────────────────────

def algebra_suite(max_n: int) -> SuiteReport:
    started = time.perf_counter()
    rng = random.Random(get_settings().random_seed)
    top = min(max_n + 2, 7)

    def mobius_agrees(m: int) -> bool:
        by_recursion = algebra.mobius_by_recursion(m)
        return all(algebra.mobius_bottom(s) == v for s, v in by_recursion.items())

    def falling_values(j: int) -> bool:
        return all(algebra.falling_factorial(j)(t) == prod(t - i for i in range(j)) for t in range(-5, 11))

    def product_is_exact(_: int) -> bool:
        p = IntegerPolynomial(tuple(rng.randint(-9, 9) for _ in range(5)))
        q = IntegerPolynomial(tuple(rng.randint(-9, 9) for _ in range(4)))
        points = [Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(20)]
        return all((p * q)(t) == p(t) * q(t) for t in points)

    checks = [
        _check("mobius closed form = lattice recursion", top, ((m, partial(mobius_agrees, m)) for m in range(1, top + 1))),
        _check(
            "Σ μ(0,σ) x^|σ| = (x)_m",
            top,
            ((m, partial(lambda m: algebra.partition_lattice_sum(m, lambda _: X) == algebra.falling_factorial(m), m))
             for m in range(1, top + 1)),
        ),
        _check("falling factorial values", 6, ((j, partial(falling_values, j)) for j in range(7))),
        _check("polynomial products are exact", 10, ((i, partial(product_is_exact, i)) for i in range(10))),
    ]
    return _suite("exact-algebra", checks, started)


# ─── boards ───────────────────────────────────────────────────────────────────

def boards_suite(max_n: int) -> SuiteReport:
    started = time.perf_counter()
    rng = random.Random(get_settings().random_seed)
    top = min(max_n + 2, 7)

    def small_board_agrees(_: int) -> bool:
        cells = {(rng.randint(1, 3), rng.randint(1, 4)) for _ in range(rng.randint(1, 8))}
        board = boards.Board.from_cells(cells)
        return boards.rook_numbers(board) == boards.rook_numbers_by_subsets(board)

    def gjw_agrees(_: int) -> bool:
        lam, mu = _random_skew_shape(rng, rng.randint(1, 6), 9)
        board = boards.skew_ferrers(lam, mu)
        return boards.factorial_polynomial(board) == boards.gjw_factorial_polynomial(board)

    def shift_law(n: int) -> bool:
        base = boards.factorial_polynomial(boards.linial_board(0, n))
        return all(
            boards.factorial_polynomial(boards.linial_board(t, n)) == base.compose_linear(1, t) for t in range(7)
        )

    def closed_form(n: int) -> bool:
        poly = boards.factorial_polynomial(boards.linial_board(0, n))
        return poly == boards.linial_factorial_closed_form_polynomial(n) and all(
            boards.linial_factorial_closed_form(n, t) == poly(t) for t in range(3 * n + 1)
        )

    def catalan_shi(n: int) -> bool:
        return all(
            boards.rook_numbers(boards.catalan_board(t, n))[n - 1] == prod(t + n - 1 - j for j in range(1, n))
            and boards.rook_numbers(boards.shi_board(t, n))[n - 1] == (t + n - 1) ** (n - 1)
            for t in range(6)
        )

    def v_formula(n: int) -> bool:
        board = boards.linial_board(0, n)
        return all(
            boards.v_stat(board, subset) == max(0, n - 2 - (max(subset) - min(subset)))
            for size in range(1, n)
            for subset in combinations(range(1, n), size)
        )

    checks = [
        _check("L_{1,4} rook vector = (1,9,22,14)", 4,
               [(4, lambda: boards.rook_numbers(boards.linial_board(1, 4)).counts == (1, 9, 22, 14))]),
        _check("rook DP = brute force", 8, ((i, partial(small_board_agrees, i)) for i in range(30))),
        _check("factorial polynomial = partition-lattice sum", 6, ((i, partial(gjw_agrees, i)) for i in range(200))),
        _check("R(x, L_{t,n}) = R(x + t, L_{0,n})", top, ((n, partial(shift_law, n)) for n in range(2, top + 1))),
        _check("closed form for R(t, L_{0,n})", top + 1, ((n, partial(closed_form, n)) for n in range(2, top + 2))),
        _check("Catalan and Shi placement counts", top, ((n, partial(catalan_shi, n)) for n in range(2, top + 1))),
        _check("v statistic on L_{0,n}", 8, ((n, partial(v_formula, n)) for n in range(2, 9))),
    ]
    return _suite("boards", checks, started)


# ─── trees ────────────────────────────────────────────────────────────────────

def trees_suite(max_n: int) -> SuiteReport:
    started = time.perf_counter()
    cap = get_settings().max_verify_enum
    small = min(max_n, 4)

    def totals(n: int) -> bool:
        return all(
            len(trees.enumerate_plane_trees(n, k, max_enum=cap)) == trees.plane_tree_total(n, k) for k in (2, 3)
        )

    def sizes(n: int) -> bool:
        for tree in trees.enumerate_plane_trees(n, 2, max_enum=cap):
            stats = trees.statistics(tree)
            if sum(stats.dsc) + sum(stats.asc) != n - 1:
                return False
        return True

    bounded_intro = [0, 0, 1, 4, 26, 212]

    def boards_agree(n: int) -> bool:
        for a in (1, 2):
            ltree = trees.count_class(n, a + 1, TreeClass.LTREE, max_enum=cap).count
            ltree_b = trees.count_class(n, a + 1, TreeClass.LTREE_B, max_enum=cap).count
            spec = TruncatedAffineSpec.linial(n, a)
            r, b = arrangements.regions_from_charpoly(arrangements.charpoly_formula(spec), spec.dimension)
            if ltree != boards.rook_numbers(boards.linial_board((a - 1) * n + 2, n))[n - 1] or ltree != r:
                return False
            bounded_rooks = boards.rook_numbers(boards.linial_board((a - 1) * n, n))[n - 1]
            if ltree_b != bounded_rooks or ltree_b != b:
                return False
        return True

    def increasing(n: int) -> bool:
        for k in (2, 3):
            count = trees.count_class(n, k, TreeClass.INCREASING, max_enum=cap).count
            board = boards.ferrers(tuple(k * i for i in range(n - 1, 0, -1)))
            if count != boards.rook_numbers(board)[n - 1]:
                return False
        return True

    def right_increasing(n: int) -> bool:
        return all(trees.count_class(n, k, TreeClass.RIGHT_INCREASING, max_enum=cap).enumerated is not None
                   for k in (2, 3))

    def gessel_from_trees(n: int) -> bool:
        return all(
            trees.gessel_polynomial_from_trees(n, k) == bijection.gessel_polynomial(n, k) for k in (2, 3)
        )

    checks = [
        _check("plane tree totals", small, ((n, partial(totals, n)) for n in range(1, small + 1))),
        _check("|dsc| + |asc| = n - 1", small, ((n, partial(sizes, n)) for n in range(1, small + 1))),
        _check(
            "ltree-b counts 0, 0, 1, 4, 26, 212",
            6,
            ((n, partial(lambda n: trees.count_class(n, 2, TreeClass.LTREE_B, max_enum=cap).count
                         == bounded_intro[n - 1], n))
             for n in range(1, min(max_n + 1, 6) + 1)),
        ),
        _check("tree classes = Linial placements = regions", max_n,
               ((n, partial(boards_agree, n)) for n in range(2, max_n + 1))),
        _check("increasing trees", max_n, ((n, partial(increasing, n)) for n in range(2, max_n + 1))),
        _check("right-increasing trees", max_n, ((n, partial(right_increasing, n)) for n in range(1, max_n + 1))),
        _check("Gessel polynomial from trees = from placements", min(max_n, 4),
               ((n, partial(gessel_from_trees, n)) for n in range(1, min(max_n, 4) + 1))),
    ]
    return _suite("trees", checks, started)


# ─── bijection ────────────────────────────────────────────────────────────────

PSI_CASES = ((2, 2), (3, 2), (4, 2), (5, 2), (3, 3), (4, 3))


def bijection_suite(max_n: int) -> SuiteReport:
    started = time.perf_counter()
    top = min(max_n + 1, 6)

    def phi_roundtrip(n: int) -> bool:
        return all(
            bijection.phi_inverse(bijection.phi(f)) == f
            for k in (2, 3)
            for f in bijection.enumerate_flat_placements(n, k)
        )

    def psi_case(n: int, k: int) -> bool:
        for g in bijection.enumerate_colored_placements(n, k):
            tree = bijection.psi(g)
            if bijection.psi_inverse(tree) != g:
                return False
            if bijection.psi(bijection.psi_inverse(tree)) != tree:
                return False
            exc, sub = bijection.exc_sub(g)
            stats = trees.statistics(tree)
            if exc != stats.dsc or sub != stats.asc:
                return False
            records = len(trees.left_to_right_maxima(trees.spine(tree)))
            if records != bijection.DecoratedDigraph(g).component_count():
                return False
            if records != bijection.weak_component_count(g):
                return False
        return True

    def specializations(n: int) -> bool:
        g = bijection.gessel_polynomial(n, 2)
        catalan = comb(2 * n, n) // (n + 1)
        return (
            g.evaluate((1, 1), (1, 1)) == factorial(n) * catalan
            and g.evaluate((1, 1), (1, 0)) == (n + 1) ** (n - 1)
            and g.evaluate((1, 0), (1, 0)) == factorial(n)
            and g.swap("u2", "v1") == g
        )

    def eulerian(n: int) -> bool:
        g = bijection.gessel_polynomial(n, 2)
        no_sub = algebra.MultivariatePolynomial(2, {e: c for e, c in g.terms.items() if e[2] == e[3] == 0})
        return no_sub == bijection.homogenized_eulerian(n)

    cases = [(n, k) for n, k in PSI_CASES if n <= max_n]
    checks = [
        _check("phi roundtrip", min(max_n, 4), ((n, partial(phi_roundtrip, n)) for n in range(1, min(max_n, 4) + 1))),
        _check("psi bijection, statistics and components", max((n for n, _ in cases), default=0),
               ((n, partial(psi_case, n, k)) for n, k in cases)),
        _check("G_{2,2} = u1 + u2 + v1 + v2", 2, [(2, lambda: bijection.gessel_polynomial(2, 2) == algebra.MultivariatePolynomial(
            2, {(1, 0, 0, 0): 1, (0, 1, 0, 0): 1, (0, 0, 1, 0): 1, (0, 0, 0, 1): 1}))]),
        _check("Gessel k=2 specializations and symmetry", top, ((n, partial(specializations, n)) for n in range(1, top + 1))),
        _check("G_{n,2}(u1,u2,0,0) = homogenized Eulerian", top, ((n, partial(eulerian, n)) for n in range(1, top + 1))),
    ]
    return _suite("bijection", checks, started)


# ─── arrangements ─────────────────────────────────────────────────────────────

FINITE_FIELD_FAMILIES = ((1, 1), (1, 2), (0, 2), (1, 3), (2, 4))


def arrangements_suite(max_n: int) -> SuiteReport:
    started = time.perf_counter()
    field_top = min(max_n, 5)
    lattice_top = min(max_n + 1, 6)
    sequence_cap = get_settings().max_sequence_enum
    sequence_cases = [(n, a) for n in range(2, max_n + 1) for a in (1, 2) if (a * n) ** (n - 1) <= sequence_cap]

    def oracle(n: int) -> bool:
        return all(
            arrangements.charpoly_formula(TruncatedAffineSpec(n, a, b))
            == arrangements.charpoly_finite_field(TruncatedAffineSpec(n, a, b))
            for a, b in FINITE_FIELD_FAMILIES
        )

    def linial_regions(n: int, expected: tuple[int, int]) -> bool:
        spec = TruncatedAffineSpec.linial(n, 1)
        return arrangements.regions_from_charpoly(arrangements.charpoly_formula(spec), spec.dimension) == expected

    def sequences(n: int, a: int) -> bool:
        spec = TruncatedAffineSpec.linial(n, a)
        r, b = arrangements.regions_from_charpoly(arrangements.charpoly_formula(spec), spec.dimension)
        return (
            arrangements.sequence_count(n, a, BoundType.REGIONS) == r
            and arrangements.sequence_count(n, a, BoundType.BOUNDED) == b
        )

    def lattice_forms(n: int) -> bool:
        return (
            arrangements.catalan_lattice_form(n) == boards.factorial_polynomial(boards.catalan_board(0, n))
            and arrangements.shi_lattice_form(n) == boards.factorial_polynomial(boards.shi_board(0, n))
            and all(
                arrangements.linial_lattice_charpoly(n, a)
                == arrangements.charpoly_formula(TruncatedAffineSpec.linial(n, a))
                for a in (1, 2)
            )
            and all(
                arrangements.catalan_from_braid(t, n) == boards.rook_numbers(boards.catalan_board(t, n))[n - 1]
                and arrangements.shi_from_charpoly(t, n) == boards.rook_numbers(boards.shi_board(t, n))[n - 1]
                for t in range(4)
            )
        )

    checks = [
        _check("chi^{0,2} for n=3 is q^2 - 3q + 3", 3,
               [(3, lambda: arrangements.charpoly_formula(TruncatedAffineSpec(3, 0, 2)) == IntegerPolynomial((3, -3, 1)))]),
        _check("closed form = finite-field count", field_top,
               ((n, partial(oracle, n)) for n in range(2, field_top + 1))),
        _check("Linial regions (2,0), (7,1), (36,4)", 4,
               ((n, partial(linial_regions, n, e)) for n, e in ((2, (2, 0)), (3, (7, 1)), (4, (36, 4))))),
        _check("bounded regions 0, 0, 1, 4, 26, 212, 2108, 24720", 8,
               [(8, lambda: arrangements.bounded_region_sequence(1, 8) == [0, 0, 1, 4, 26, 212, 2108, 24720])]),
        _check("sequence counts = region counts", max((n for n, _ in sequence_cases), default=0),
               ((n, partial(sequences, n, a)) for n, a in sequence_cases)),
        _check("partition-lattice forms", lattice_top, ((n, partial(lattice_forms, n)) for n in range(2, lattice_top + 1))),
        _check("ltree counts from the partition lattice", 7,
               ((n, partial(lambda n: arrangements.ltree_lattice_count(n) == trees.ltree_count_formula(n, 2), n))
                for n in range(1, 8))),
    ]
    return _suite("arrangements", checks, started)


# ─── linial-graphs ────────────────────────────────────────────────────────────

def graphs_suite(max_n: int) -> SuiteReport:
    started = time.perf_counter()
    top = min(max_n, 5)

    def golden() -> bool:
        expected = algebra.falling_factorial(3) * IntegerPolynomial((3, -3, 1))
        return graphs.chromatic_polynomial(graphs.complement(graphs.linial_graph(1, 3))) == expected

    def chromatic_identity(n: int) -> bool:
        for t in range(4):
            if 2 * n - 4 + t < 1:
                continue
            poly = graphs.chromatic_polynomial(graphs.complement(graphs.linial_graph(t, n)))
            if poly != graphs.complement_chromatic_via_rooks(t, n):
                return False
            if any(poly != graphs.complement_chromatic_via_charpoly(t, n, a) for a in (1, 2)):
                return False
            signs_alternate = all(c * (-1) ** (poly.degree - i) >= 0 for i, c in enumerate(poly.coefficients))
            if poly.leading_coefficient != 1 or poly(0) != 0 or not signs_alternate:
                return False
        return True

    def matchings(n: int) -> bool:
        for t in range(4):
            if 2 * n - 4 + t < 1:
                continue
            graph = graphs.linial_graph(t, n)
            rooks = list(boards.rook_numbers(boards.linial_board(t, n)).counts)
            while len(rooks) > 1 and rooks[-1] == 0:
                rooks.pop()
            if graphs.matching_numbers(graph) != rooks:
                return False
            if graphs.count_maximum_matchings(graph)[0] != graphs.maximum_matching_size_networkx(graph):
                return False
            if graph.vertex_count <= get_settings().max_generic_matching_vertices:
                if graphs.generic_matching_numbers(graph.adjacency)[: len(rooks)] != rooks:
                    return False
        return True

    def regions_by_matchings(n: int) -> bool:
        for a in (1, 2):
            spec = TruncatedAffineSpec.linial(n, a)
            r, b = arrangements.regions_from_charpoly(arrangements.charpoly_formula(spec), spec.dimension)
            if graphs.count_maximum_matchings(graphs.linial_graph((a - 1) * n + 2, n))[1] != r:
                return False
            if 2 * n - 4 + (a - 1) * n >= 1 and b > 0:
                if graphs.count_maximum_matchings(graphs.linial_graph((a - 1) * n, n))[1] != b:
                    return False
        return True

    checks = [
        _check("c(x, complement G_{1,3}) = x(x-1)(x-2)(x^2-3x+3)", 3, [(3, golden)]),
        _check("complement chromatic = falling factorial x rook polynomial", top,
               ((n, partial(chromatic_identity, n)) for n in range(2, top + 1))),
        _check("matchings of G_{t,n} = rook numbers of L_{t,n}", top,
               ((n, partial(matchings, n)) for n in range(2, top + 1))),
        _check("maximum matchings count regions", top,
               ((n, partial(regions_by_matchings, n)) for n in range(2, top + 1))),
        _check("G_{2,4} and G_{0,4} have 36 and 4 maximum matchings", 4, [(4, lambda: (
            graphs.count_maximum_matchings(graphs.linial_graph(2, 4)) == (3, 36)
            and graphs.count_maximum_matchings(graphs.linial_graph(0, 4)) == (3, 4)
        ))]),
    ]
    return _suite("linial-graphs", checks, started)


# ─── series ───────────────────────────────────────────────────────────────────

DRAKE_PARAMETERS = (
    (2, (Fraction(1, 2), Fraction(1, 3)), (2, 3), 5),
    (2, (1, 0), (0, 1), 6),
    (3, (0, Fraction(1, 2), Fraction(1, 3)), (1, 2, 5), 4),
)

GESSEL_K2_PARAMETERS = (
    (1, 1, 1, 1),
    (1, 0, 1, 0),
    (Fraction(1, 2), 2, 3, Fraction(1, 3)),
)


def series_suite(max_n: int) -> SuiteReport:
    started = time.perf_counter()
    rng = random.Random(get_settings().random_seed)

    def inverse_roundtrip(_: int) -> bool:
        order = 10
        lead = rng.choice([Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2)])
        coeffs = [0, lead] + [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(order - 1)]
        f = series.TruncatedPowerSeries(order, tuple(coeffs))
        g = series.compositional_inverse(f)
        x = series.TruncatedPowerSeries.x(order)
        return f.compose(g) == x and g.compose(f) == x

    def exp_log(_: int) -> bool:
        order = 10
        coeffs = [1] + [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(order)]
        g = series.TruncatedPowerSeries(order, tuple(coeffs))
        return g.log().exp() == g

    checks = [
        _check("compositional inverse roundtrip", 10, ((i, partial(inverse_roundtrip, i)) for i in range(10))),
        _check("exp(log g) = g", 10, ((i, partial(exp_log, i)) for i in range(10))),
    ]
    checks += [series.verify_ltree_egf(k, 7) for k in (2, 3)]
    checks += [series.verify_f_equation(k, 8) for k in (2, 3)]
    checks += [series.verify_drake_inverse(k, u, v, order) for k, u, v, order in DRAKE_PARAMETERS]
    checks += [series.verify_gessel_k2_equation(*params, 6) for params in GESSEL_K2_PARAMETERS]
    return _suite("series", checks, started)


SUITES: dict[str, Callable[[int], SuiteReport]] = {
    "exact-algebra": algebra_suite,
    "boards": boards_suite,
    "trees": trees_suite,
    "bijection": bijection_suite,
    "arrangements": arrangements_suite,
    "linial-graphs": graphs_suite,
    "series": series_suite,
}


async def verify_all(max_n: int, suites: Optional[list[str]] = None) -> VerifyAllReport:
    names = suites or list(SUITES)
    workers = get_settings().verify_workers
    logger.info(f"[Verify] running {len(names)} suites with max_n={max_n} workers={workers}")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        reports = await asyncio.gather(*(_run_sync(executor, SUITES[name], max_n) for name in names))
    status = "pass" if all(r.status == "pass" for r in reports) else "fail"
    logger.info(f"[Verify] overall status={status}")
    return VerifyAllReport(max_n=max_n, status=status, suites=list(reports))
