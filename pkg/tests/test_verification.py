"""
LinialRooks Tests — cross-verification suites and the concurrent runner
"""

import time
from concurrent.futures import ThreadPoolExecutor
from unittest.mock import patch

import pytest

from linialrooks.config import get_settings
from linialrooks.errors import IntegrityError, ResourceLimitError
from linialrooks.models.schemas import SuiteReport, VerificationReport
from linialrooks.services import verification
from linialrooks.services.verification import SUITES, verify_all


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def _failing_suite(max_n: int) -> SuiteReport:
    check = VerificationReport(identity="always fails", order=max_n, status="fail", first_mismatch=2)
    return SuiteReport(suite="broken", status="fail", checks=[check])


class TestCheckHelper:
    def test_stops_at_first_failure(self):
        report = verification._check("demo", 5, [(1, lambda: True), (2, lambda: False), (3, lambda: True)])
        assert report.status == "fail"
        assert report.first_mismatch == 2

    def test_pass(self):
        report = verification._check("demo", 2, [(1, lambda: True), (2, lambda: True)])
        assert report.passed

    def test_engine_errors_become_failures(self):
        def blow_up():
            raise IntegrityError("non-integer interpolant")

        report = verification._check("demo", 1, [(1, blow_up)])
        assert report.status == "fail"
        assert report.first_mismatch is None

    def test_cap_hit_is_skipped(self):
        def too_big():
            raise ResourceLimitError("thing", 10, 5)

        report = verification._check("demo", 1, [(1, too_big)])
        assert report.status == "skipped"
        assert not report.failed

    def test_skipped_check_keeps_suite_passing(self):
        checks = [
            VerificationReport(identity="a", order=1, status="pass"),
            VerificationReport(identity="b", order=1, status="skipped"),
        ]
        assert verification._suite("demo", checks, time.perf_counter()).status == "pass"


class TestSuites:
    @pytest.mark.parametrize("name", ["exact-algebra", "boards", "bijection", "linial-graphs"])
    def test_small_suites_pass(self, name):
        report = SUITES[name](3)
        failing = [c.identity for c in report.checks if not c.passed]
        assert report.status == "pass", failing

    def test_trees_suite(self):
        assert SUITES["trees"](3).status == "pass"

    def test_arrangements_suite(self):
        assert SUITES["arrangements"](3).status == "pass"

    def test_sequence_check_stays_inside_the_search_cap(self, monkeypatch):
        # (2 * 3)^2 = 36 is over the cap, so n = 3 with a = 2 is left out
        monkeypatch.setenv("LINIALROOKS_MAX_SEQUENCE_ENUM", "10")
        get_settings.cache_clear()
        report = SUITES["arrangements"](3)
        sequences = next(c for c in report.checks if c.identity == "sequence counts = region counts")
        assert sequences.status == "pass"
        assert sequences.order == 3
        assert report.status == "pass"

    def test_bijection_suite_at_five(self):
        report = SUITES["bijection"](5)
        psi = next(c for c in report.checks if c.identity.startswith("psi bijection"))
        assert psi.order == 5
        assert report.status == "pass", [c.identity for c in report.checks if not c.passed]

    def test_gjw_sample_size(self):
        check = next(c for c in SUITES["boards"](3).checks if c.identity.startswith("factorial polynomial"))
        assert check.passed
        with patch.object(verification.boards, "gjw_factorial_polynomial",
                          wraps=verification.boards.gjw_factorial_polynomial) as gjw:
            verification.boards_suite(3)
        assert gjw.call_count == 200

    def test_series_suite(self):
        assert SUITES["series"](3).status == "pass"


class TestVerifyAll:
    @pytest.mark.asyncio
    async def test_all_suites_pass(self):
        report = await verify_all(3)
        assert report.status == "pass"
        assert [s.suite for s in report.suites] == list(SUITES)

    @pytest.mark.asyncio
    async def test_selected_suites_keep_order(self):
        report = await verify_all(3, ["boards", "exact-algebra"])
        assert [s.suite for s in report.suites] == ["boards", "exact-algebra"]

    @pytest.mark.asyncio
    async def test_one_failing_suite_fails_the_run(self):
        with patch.dict(SUITES, {"broken": _failing_suite}):
            report = await verify_all(3, ["exact-algebra", "broken"])
        assert report.status == "fail"
        assert report.suites[1].checks[0].first_mismatch == 2

    @pytest.mark.asyncio
    async def test_pool_size_follows_settings(self, monkeypatch):
        monkeypatch.setenv("LINIALROOKS_VERIFY_WORKERS", "2")
        get_settings.cache_clear()
        with patch.object(verification, "ThreadPoolExecutor", wraps=ThreadPoolExecutor) as pool:
            report = await verify_all(3, ["exact-algebra"])
        pool.assert_called_once_with(max_workers=2)
        assert report.status == "pass"
