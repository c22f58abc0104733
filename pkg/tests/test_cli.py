import json

import pytest

from normcat import config
from normcat.cli import format_record, main
from normcat.__version__ import __version__

GROUP_DOC = {
    "kind": "grp",
    "objects": {"A": {"named": "Z2"}, "B": {"named": "S3"}},
    "morphisms": {"f": {"dom": "A", "cod": "B", "map": ["0", "(0 1)"]}},
}


@pytest.fixture
def doc_path(tmp_path):
    path = tmp_path / "transposition.json"
    path.write_text(json.dumps(GROUP_DOC), encoding="utf-8")
    return path


@pytest.fixture
def failing_record():
    return {"statement": "quillen/set", "status": "FAIL", "detail": "mocked", "witness": {}, "seconds": 0.25}


class TestFormatting:
    def test_text_line(self, failing_record):
        assert format_record(failing_record, False, False) == "FAIL          quillen/set  mocked"
        assert format_record(failing_record, False, True).endswith("mocked  (0.250s)")

    def test_json_line(self, failing_record):
        assert json.loads(format_record(failing_record, True, False)) == {
            "detail": "mocked",
            "statement": "quillen/set",
            "status": "FAIL",
            "witness": {},
        }
        assert json.loads(format_record(failing_record, True, True))["seconds"] == 0.25


class TestUsage:
    def test_version(self, capsys):
        assert main(["--version"]) == 0
        assert __version__ in capsys.readouterr().out

    def test_missing_command(self):
        assert main([]) == 2

    def test_unknown_suite(self, capsys):
        assert main(["verify", "everything"]) == 2
        assert "normcat: Unknown suite 'everything'" in capsys.readouterr().err

    def test_unknown_kind(self, capsys):
        assert main(["random", "ring"]) == 2
        assert "Unknown instance kind 'ring'" in capsys.readouterr().err


class TestDecompose:
    def test_text_report(self, capsys, doc_path):
        assert main(["decompose", str(doc_path), "f"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("PASS          decompose/grp  f")
        assert any(line.startswith("  pi ") for line in lines)
        assert "  comparison: true" in lines

    def test_json_report(self, capsys, doc_path):
        assert main(["--json", "decompose", str(doc_path), "f"]) == 0
        (line,) = capsys.readouterr().out.splitlines()
        record = json.loads(line)
        assert record["status"] == "PASS"
        assert "seconds" not in record
        assert record["witness"]["N"] == ["e", "(0 1)", "(0 2)", "(1 2)", "(0 1 2)", "(0 2 1)"]
        assert record["witness"]["normal_mono"] is False

    def test_unknown_morphism(self, capsys, doc_path):
        assert main(["decompose", str(doc_path), "g"]) == 2
        assert "normcat: Unknown morphism 'g'" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["decompose", str(tmp_path / "missing.json"), "f"]) == 2

    def test_invalid_json(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{", encoding="utf-8")
        assert main(["decompose", str(path), "f"]) == 2
        assert "at line 1" in capsys.readouterr().err


class TestOtherCommands:
    def test_cross_check(self, capsys, doc_path):
        assert main(["cross-check", str(doc_path)]) == 0
        assert capsys.readouterr().out.splitlines() == ["PASS          cross-check/f  grp"]

    def test_random_is_seeded(self, capsys):
        assert main(["random", "set", "--seed", "3", "--count", "2"]) == 0
        first = capsys.readouterr().out
        assert main(["random", "set", "--seed", "3", "--count", "2"]) == 0
        assert capsys.readouterr().out == first
        assert [json.loads(line)["kind"] for line in first.splitlines()] == ["set", "set"]

    def test_verify_exit_status(self, capsys, mocker, failing_record):
        run_suite = mocker.patch("normcat.cli.run_suite", return_value=[failing_record])
        assert main(["verify", "quillen", "--max-order", "3"]) == 1
        assert run_suite.call_args.args[0] == "quillen"
        assert run_suite.call_args.args[1].max_order == 3
        assert capsys.readouterr().out.startswith("FAIL")

    def test_verify_bounds(self, mocker):
        run_suite = mocker.patch("normcat.cli.run_suite", return_value=[])
        assert main(["verify", "slice-grp", "--max-order", "6", "--squares", "9"]) == 0
        settings = run_suite.call_args.args[1]
        assert (settings.max_order, settings.grp_order, settings.squares) == (6, 6, 9)
        assert main(["verify", "slice-grp"]) == 0
        assert run_suite.call_args.args[1].grp_order == config.GRP_ORDER

    def test_expected_failures_pass(self, mocker, failing_record):
        record = dict(failing_record, status="EXPECTED-FAIL")
        mocker.patch("normcat.cli.run_suite", return_value=[record])
        assert main(["verify", "quillen"]) == 0
