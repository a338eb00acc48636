"""
LinialRooks Tests — command-line runner, exit codes and output formats
"""

import json
from unittest.mock import patch

import pytest

from linialrooks.config import get_settings
from linialrooks.main import main, run
from linialrooks.models.schemas import CommandStatus
from linialrooks.utils.formatting import render


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def _payload(result):
    return json.loads(render(result.payload))


# ─── Runner ───────────────────────────────────────────────────────────────────

class TestRun:
    def test_rook_vector(self):
        result = run(["boards", "rook-vector", "--family", "linial", "--n", "4", "--t", "1"])
        assert result.status == CommandStatus.OK
        assert result.exit_code == 0
        assert _payload(result) == {"r": ["1", "9", "22", "14"]}

    def test_factorial_eval(self):
        result = run(["boards", "factorial-poly", "--family", "linial", "--n", "4", "--t", "1", "--eval", "1"])
        assert _payload(result) == {"t": "1", "value": "36"}

    def test_lambda_board(self):
        result = run(["boards", "rook-vector", "--lambda", "2,1"])
        assert _payload(result) == {"r": ["1", "3", "1"]}

    def test_regions(self):
        result = run(["arrangements", "regions", "--family", "linial", "--n", "4", "--a", "1"])
        assert _payload(result) == {"regions": "36", "bounded": "4"}

    def test_bounded_sequence(self):
        result = run(["arrangements", "bounded-seq", "--n", "5"])
        assert _payload(result)["bounded"] == ["0", "0", "1", "4", "26"]

    def test_affine_needs_b(self):
        result = run(["arrangements", "charpoly", "--family", "affine", "--n", "3"])
        assert result.status == CommandStatus.INVALID_INPUT
        assert "--b" in result.detail

    def test_tree_count(self):
        result = run(["trees", "count", "--class", "ltree", "--n", "4", "--k", "2"])
        assert _payload(result)["count"] == "36"

    def test_matchings(self):
        result = run(["graphs", "matchings", "--n", "4", "--t", "2"])
        assert _payload(result)["count"] == "36"


class TestErrors:
    def test_unknown_command(self):
        result = run(["bogus"])
        assert result.status == CommandStatus.INVALID_INPUT
        assert result.exit_code == 2

    def test_missing_required_option(self):
        assert run(["gessel", "--n", "3"]).status == CommandStatus.INVALID_INPUT

    def test_resource_limit(self):
        result = run(["boards", "rook-vector", "--family", "linial", "--n", "4", "--max-states", "2"])
        assert result.status == CommandStatus.RESOURCE_LIMIT
        assert result.exit_code == 3
        assert result.payload is None

    def test_matchings_honour_caps(self):
        args = ["graphs", "matchings", "--n", "4", "--t", "2", "--max-states", "2"]
        assert run(args).status == CommandStatus.OK
        assert run([*args, "--max-vertices", "8"]).status == CommandStatus.RESOURCE_LIMIT

    def test_chromatic_vertex_cap(self):
        result = run(["graphs", "chromatic", "--n", "4", "--t", "1", "--max-vertices", "3"])
        assert result.status == CommandStatus.RESOURCE_LIMIT

    def test_cap_from_environment(self, monkeypatch):
        monkeypatch.setenv("LINIALROOKS_MAX_ROOK_ROWS", "2")
        get_settings.cache_clear()
        result = run(["boards", "rook-vector", "--family", "linial", "--n", "4"])
        assert result.status == CommandStatus.RESOURCE_LIMIT

    def test_unexpected_error(self):
        with patch("linialrooks.commands.boards.rook_numbers", side_effect=RuntimeError("boom")):
            result = run(["boards", "rook-vector", "--family", "linial", "--n", "3"])
        assert result.status == CommandStatus.VERIFICATION_FAILED
        assert result.detail == "unexpected error: boom"

    def test_version(self):
        assert run(["--version"]).status == CommandStatus.OK


# ─── Output formats ───────────────────────────────────────────────────────────

class TestFormats:
    def test_json_is_compact(self):
        result = run(["boards", "rook-vector", "--family", "linial", "--n", "4", "--t", "1"])
        assert render(result.payload, result.output_format) == '{"r":["1","9","22","14"]}'

    def test_csv(self):
        result = run(["boards", "rook-vector", "--family", "linial", "--n", "4", "--t", "1", "--format", "csv"])
        assert render(result.payload, result.output_format) == "index,r\n0,1\n1,9\n2,22\n3,14"

    def test_csv_with_n_column(self):
        result = run(["arrangements", "bounded-seq", "--n", "3", "--format", "csv"])
        lines = render(result.payload, result.output_format).splitlines()
        assert lines == ["n,bounded,regions", "1,0,1", "2,0,2", "3,1,7"]

    def test_latex(self):
        result = run(["boards", "rook-vector", "--family", "linial", "--n", "4", "--t", "1", "--format", "latex"])
        text = render(result.payload, result.output_format)
        assert text.startswith("\\begin{tabular}{rr}")
        assert "3 & 14 \\\\" in text
        assert text.endswith("\\end{tabular}")


# ─── Bijection and polynomials ────────────────────────────────────────────────

class TestBijectionCommands:
    def test_forward_and_back(self, tmp_path):
        placement = tmp_path / "g.json"
        placement.write_text(json.dumps({"n": 2, "k": 2, "g": [[1, 1]]}))
        forward = _payload(run(["bijection", "forward", "--input", str(placement)]))
        assert forward["tree"]["root"] == 1
        assert forward["asc"] == [1, 0]
        assert forward["exc"] == forward["dsc"]

        tree = tmp_path / "tree.json"
        tree.write_text(json.dumps(forward["tree"]))
        inverse = _payload(run(["bijection", "inverse", "--input", str(tree)]))
        assert inverse == {"n": 2, "k": 2, "g": [[1, 1]]}

    def test_flat_input(self, tmp_path):
        placement = tmp_path / "f.json"
        placement.write_text(json.dumps({"n": 6, "k": 2, "f": [1, 8, 6, 12, 7]}))
        result = run(["bijection", "forward", "--input", str(placement)])
        assert result.status == CommandStatus.OK
        assert _payload(result)["tree"]["n"] == 6

    def test_bad_json(self, tmp_path):
        broken = tmp_path / "broken.json"
        broken.write_text("{")
        assert run(["bijection", "forward", "--input", str(broken)]).status == CommandStatus.INVALID_INPUT

    def test_missing_file(self, tmp_path):
        missing = str(tmp_path / "nope.json")
        assert run(["bijection", "inverse", "--input", missing]).status == CommandStatus.INVALID_INPUT


class TestGesselCommand:
    def test_all_ones(self):
        assert _payload(run(["gessel", "--n", "3", "--k", "2", "--eval", ""]))["value"] == "30"

    def test_parking_specialization(self):
        assert _payload(run(["gessel", "--n", "3", "--k", "2", "--eval", "v2=0"]))["value"] == "16"

    def test_unknown_variable(self):
        assert run(["gessel", "--n", "3", "--k", "2", "--eval", "u3=1"]).status == CommandStatus.INVALID_INPUT


class TestVerificationCommands:
    def test_series_verify(self):
        result = run(["series", "verify", "--identity", "f-equation", "--k", "2", "--order", "6"])
        assert result.status == CommandStatus.OK
        assert _payload(result)["status"] == "pass"

    def test_gessel_k2_needs_k_two(self):
        result = run(["series", "verify", "--identity", "gessel-k2", "--k", "3"])
        assert result.status == CommandStatus.INVALID_INPUT

    def test_verify_all_subset(self):
        result = run(["verify", "all", "--max-n", "3", "--suite", "boards"])
        assert result.status == CommandStatus.OK
        assert [s["suite"] for s in _payload(result)["suites"]] == ["boards"]

    def test_verify_all_with_small_sequence_cap(self, monkeypatch):
        monkeypatch.setenv("LINIALROOKS_MAX_SEQUENCE_ENUM", "10")
        get_settings.cache_clear()
        result = run(["verify", "all", "--max-n", "3", "--suite", "arrangements"])
        assert result.status == CommandStatus.OK
        assert _payload(result)["status"] == "pass"

    def test_verify_all_needs_max_n(self):
        assert run(["verify", "all", "--max-n", "1"]).status == CommandStatus.INVALID_INPUT


# ─── Process entry ────────────────────────────────────────────────────────────

class TestMain:
    def test_success_writes_stdout(self, capsys):
        with pytest.raises(SystemExit) as exit_info:
            main(["arrangements", "regions", "--n", "4"])
        assert exit_info.value.code == 0
        assert capsys.readouterr().out == '{"regions":"36","bounded":"4"}\n'

    def test_failure_writes_stderr(self, capsys):
        with pytest.raises(SystemExit) as exit_info:
            main(["boards", "rook-vector", "--family", "linial", "--n", "4", "--max-states", "2"])
        assert exit_info.value.code == 3
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "linialrooks: resource-limit:" in captured.err
