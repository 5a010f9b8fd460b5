"""
Tests for the stratmoments CLI.

Covers:
- Golden outputs of expect / decompose / table / simulate
- JSON documents
- Exit codes (0 success, 2 usage, 3 resource cap)
- Determinism of simulate across --threads
"""

import json

import pytest

from stratmoments.cli import EXIT_CAP, EXIT_OK, EXIT_USAGE, main


@pytest.fixture(autouse=True)
def isolated_cwd(tmp_path, monkeypatch):
    """Run every command in an empty directory (no stratmoments.yaml)."""
    monkeypatch.chdir(tmp_path)
    return tmp_path


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# Tests: expect
# ---------------------------------------------------------------------------

class TestExpectCommand:
    """stratmoments expect"""

    @pytest.mark.parametrize("word, expected", [
        ("0,1,1,0,0", "1/48 * t^4"),
        ("0,1,1,0,0,1", "0"),
        ("2,2,1,1,3,3", "1/48 * t^3"),
        ("2,2,0,1,1,3,3,0,0,0", "1/40320 * t^7"),
        ("", "1"),
    ])
    def test_golden_outputs(self, capsys, word, expected):
        code, out, _ = _run(capsys, "expect", "--word", word)
        assert code == EXIT_OK
        assert out.strip() == expected

    def test_value_at_t(self, capsys):
        code, out, _ = _run(capsys, "expect", "--word", "2,2,0,1,1,3,3,0,0,0", "--t", "1")
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == "1/40320 * t^7"
        assert lines[-1] == "t=1: 1/40320"

    def test_json(self, capsys):
        code, out, _ = _run(capsys, "expect", "--word", "1,1", "--t", "2", "--format", "json")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["word"] == [1, 1]
        assert data["coeff"] == "1/2"
        assert data["power"] == 1
        assert data["value"] == "1"

    def test_json_without_t_has_no_value(self, capsys):
        _, out, _ = _run(capsys, "expect", "--word", "0,1", "--format", "json")
        data = json.loads(out)
        assert data == {"word": [0, 1], "coeff": "0", "power": 0}

    def test_parse_error(self, capsys):
        code, out, err = _run(capsys, "expect", "--word", "1,x")
        assert code == EXIT_USAGE
        assert "'x'" in err
        assert out == ""

    def test_negative_t(self, capsys):
        code, _, err = _run(capsys, "expect", "--word", "1,1", "--t", "-1")
        assert code == EXIT_USAGE
        assert "t >= 0" in err

    def test_bad_t(self, capsys):
        code, _, _ = _run(capsys, "expect", "--word", "1,1", "--t", "abc")
        assert code == EXIT_USAGE

    def test_missing_config(self, capsys):
        code, out, err = _run(capsys, "expect", "--word", "1,1", "--config", "missing.yaml")
        assert code == EXIT_USAGE
        assert "missing.yaml" in err
        assert out == ""

    def test_invalid_config(self, capsys, isolated_cwd):
        (isolated_cwd / "stratmoments.yaml").write_text("simulation:\n  threads: -1\n")
        code, _, _ = _run(capsys, "expect", "--word", "1,1")
        assert code == EXIT_USAGE

    def test_missing_word_flag(self):
        with pytest.raises(SystemExit) as exc_info:
            main(["expect"])
        assert exc_info.value.code == EXIT_USAGE


# ---------------------------------------------------------------------------
# Tests: decompose
# ---------------------------------------------------------------------------

class TestDecomposeCommand:
    """stratmoments decompose"""

    @pytest.mark.parametrize("word, expected", [
        ("1,1", "I[1,1] + 1/2 I[0]"),
        ("0,1", "I[0,1]"),
        ("1,1,1", "I[1,1,1] + 1/2 I[0,1] + 1/2 I[1,0]"),
        ("", "I[]"),
    ])
    def test_golden_outputs(self, capsys, word, expected):
        code, out, _ = _run(capsys, "decompose", "--word", word)
        assert code == EXIT_OK
        assert out.strip() == expected

    def test_json(self, capsys):
        code, out, _ = _run(capsys, "decompose", "--word", "1,1,1", "--format", "json")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["word"] == [1, 1, 1]
        assert data["terms"] == [
            {"word": [0, 1], "coeff": "1/2"},
            {"word": [1, 0], "coeff": "1/2"},
            {"word": [1, 1, 1], "coeff": "1"},
        ]

    def test_length_cap(self, capsys):
        code, _, err = _run(capsys, "decompose", "--word", ",".join(["1"] * 17))
        assert code == EXIT_CAP
        assert "cap" in err

    def test_term_cap_from_config(self, capsys, isolated_cwd):
        config = isolated_cwd / "tight.yaml"
        config.write_text("limits:\n  decomposition_max_terms: 2\n")
        code, _, _ = _run(capsys, "decompose", "--word", "1,1,1", "--config", str(config))
        assert code == EXIT_CAP

    def test_parse_error(self, capsys):
        code, _, _ = _run(capsys, "decompose", "--word", "1,-2")
        assert code == EXIT_USAGE

    def test_missing_config(self, capsys):
        code, _, err = _run(capsys, "decompose", "--word", "1", "--config", "missing.yaml")
        assert code == EXIT_USAGE
        assert "missing.yaml" in err

    def test_invalid_config(self, capsys, isolated_cwd):
        (isolated_cwd / "stratmoments.yaml").write_text("limits:\n  decomposition_max_len: -3\n")
        code, _, err = _run(capsys, "decompose", "--word", "1")
        assert code == EXIT_USAGE
        assert "decomposition_max_len" in err


# ---------------------------------------------------------------------------
# Tests: table
# ---------------------------------------------------------------------------

class TestTableCommand:
    """stratmoments table"""

    def test_rows_for_length_two(self, capsys):
        code, out, _ = _run(capsys, "table", "--max-len", "2", "--drivers", "1", "--format", "json")
        assert code == EXIT_OK
        rows = json.loads(out)["rows"]
        assert [r["word"] for r in rows] == [[], [0], [0, 0], [1, 1]]
        assert rows[3] == {
            "word": [1, 1], "p_num": 1, "p_den": 2, "q": 1, "coeff": "1/2", "power": 1,
        }

    def test_single_row_for_length_zero(self, capsys):
        _, out, _ = _run(capsys, "table", "--max-len", "0", "--drivers", "1", "--format", "json")
        assert json.loads(out)["rows"] == [
            {"word": [], "p_num": 1, "p_den": 1, "q": 0, "coeff": "1", "power": 0},
        ]

    def test_row_count(self, capsys):
        _, out, _ = _run(capsys, "table", "--max-len", "4", "--drivers", "1", "--format", "json")
        assert len(json.loads(out)["rows"]) == 12

    def test_text(self, capsys):
        code, out, _ = _run(capsys, "table", "--max-len", "2", "--drivers", "1")
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        row = next(line for line in lines if line.startswith("[1,1]"))
        assert row.split()[1:] == ["1/2", "1", "1/2", "*", "t^1"]
        assert lines[-1] == "4 words with nonzero expectation."

    def test_text_shows_p_as_power_of_half(self, capsys):
        _, out, _ = _run(capsys, "table", "--max-len", "4", "--drivers", "2")
        row = next(line for line in out.splitlines() if line.startswith("[1,1,2,2]"))
        assert row.split()[1] == "1/2^2"

    def test_cap(self, capsys):
        code, _, _ = _run(capsys, "table", "--max-len", "21", "--drivers", "1")
        assert code == EXIT_CAP

    def test_no_drivers(self, capsys):
        code, _, _ = _run(capsys, "table", "--max-len", "2", "--drivers", "0")
        assert code == EXIT_USAGE


# ---------------------------------------------------------------------------
# Tests: simulate
# ---------------------------------------------------------------------------

class TestSimulateCommand:
    """stratmoments simulate"""

    def test_deterministic_word(self, capsys):
        code, out, _ = _run(
            capsys, "simulate", "--word", "0", "--t", "1", "--paths", "10",
            "--steps", "8", "--seed", "1",
        )
        assert code == EXIT_OK
        assert "mean      = 1" in out
        assert "std_error = 0" in out
        assert "exact     = 1" in out
        assert "z " not in out

    def test_json(self, capsys):
        code, out, _ = _run(
            capsys, "simulate", "--word", "1,1", "--paths", "2000", "--steps", "16",
            "--seed", "42", "--format", "json",
        )
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["config"] == {
            "word": [1, 1], "horizon": 1.0, "steps": 16, "paths": 2000, "seed": 42,
        }
        assert data["exact"] == "1/2"
        assert data["std_error"] > 0
        assert data["z"] == pytest.approx((data["mean"] - 0.5) / data["std_error"])

    def test_zero_expectation_word(self, capsys):
        _, out, _ = _run(
            capsys, "simulate", "--word", "0,1", "--paths", "20000", "--steps", "64",
            "--seed", "7", "--format", "json",
        )
        data = json.loads(out)
        assert data["exact"] == "0"
        assert abs(data["mean"]) <= 4 * data["std_error"]

    def test_output_independent_of_threads(self, capsys):
        base = ["simulate", "--word", "1,2,2,1", "--paths", "3000", "--steps", "16", "--seed", "5"]
        outputs = []
        for threads in ("1", "2", "4"):
            for fmt in ("text", "json"):
                _, out, _ = _run(capsys, *base, "--threads", threads, "--format", fmt)
                outputs.append((fmt, out))
        texts = {out for fmt, out in outputs if fmt == "text"}
        jsons = {out for fmt, out in outputs if fmt == "json"}
        assert len(texts) == 1
        assert len(jsons) == 1

    def test_large_letter(self, capsys):
        code, out, _ = _run(
            capsys, "simulate", "--word", "1000000000000", "--paths", "1", "--steps", "1",
        )
        assert code == EXIT_OK
        assert "exact     = 0" in out

    def test_budget(self, capsys, isolated_cwd):
        (isolated_cwd / "stratmoments.yaml").write_text("simulation:\n  budget: 100\n")
        code, _, err = _run(capsys, "simulate", "--word", "1", "--paths", "101", "--steps", "1")
        assert code == EXIT_CAP
        assert "budget" in err

    @pytest.mark.parametrize("flag, value", [
        ("--paths", "0"), ("--steps", "0"), ("--t", "0"), ("--seed", "-1"), ("--threads", "-1"),
    ])
    def test_invalid_config(self, capsys, flag, value):
        code, _, _ = _run(capsys, "simulate", "--word", "1", flag, value)
        assert code == EXIT_USAGE


class TestMain:
    """Top-level behaviour."""

    def test_no_command_prints_help(self, capsys):
        code, out, _ = _run(capsys)
        assert code == EXIT_OK
        assert "stratmoments" in out

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            main(["--version"])
        assert exc_info.value.code == 0
        assert "stratmoments" in capsys.readouterr().out
