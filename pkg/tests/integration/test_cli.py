"""Integration tests for the gdap command-line interface."""

import json
from collections.abc import Iterator
from pathlib import Path
from typing import Any

import numpy as np
import pytest
from typer.testing import CliRunner

from gdap import __version__
from gdap.cli.main import app
from gdap.core.models import TimeSeries
from gdap.embedding import embed
from gdap.utils.logger import setup_logging
from gdap.verification.suites import SUITES, SuiteResult

runner = CliRunner()


@pytest.fixture(autouse=True)
def restore_logging() -> Iterator[None]:
    """Point logging back at the real stderr once the runner's stream is gone."""
    yield
    setup_logging()


def write_series(path: Path, values: Any, header: str = "") -> Path:
    """Write one sample per line, optionally after a header line."""
    lines = ([header] if header else []) + [repr(float(v)) for v in values]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def error_of(output: str) -> dict[str, Any]:
    """Extract the machine-readable error line from CLI output."""
    for line in output.splitlines():
        if line.startswith("{") and '"error"' in line:
            return json.loads(line)
    raise AssertionError(f"no error line in output:\n{output}")


class TestGlobalOptions:
    """Test cases for the app callback."""

    def test_version(self) -> None:
        """Test --version."""
        result = runner.invoke(app, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_invalid_log_level(self) -> None:
        """Test that a bad log level is a validation error."""
        result = runner.invoke(app, ["--log-level", "LOUD", "tables"])
        assert result.exit_code == 3


class TestEmbed:
    """Test cases for the embed command."""

    def test_type0_example(self, tmp_path: Path) -> None:
        """Test the 0-based (27, 7, 3) trajectory matrix as CSV."""
        src = write_series(tmp_path / "x.txt", range(27))
        out = tmp_path / "m.csv"
        result = runner.invoke(
            app,
            ["embed", "-i", str(src), "--d", "7", "--tau", "3", "--convention", "0", "-o", str(out)],
        )
        assert result.exit_code == 0, result.output
        rows = out.read_text(encoding="utf-8").splitlines()
        assert len(rows) == 7
        assert rows[0] == "0,1,2,3,4,5,6,7,8"
        assert rows[2].split(",")[3] == "9"
        assert rows[6].split(",")[-1] == "26"
        assert "m=9" in result.output

    def test_single_row(self, tmp_path: Path) -> None:
        """Test d = 1 reproduces the input as one row."""
        values = [0.5, -1.25, 3.0, 7.75, 2.0]
        src = write_series(tmp_path / "x.txt", values)
        out = tmp_path / "m.csv"
        result = runner.invoke(app, ["embed", "-i", str(src), "--d", "1", "-o", str(out)])
        assert result.exit_code == 0, result.output
        assert [float(v) for v in out.read_text().strip().split(",")] == values

    def test_csv_round_trip_is_exact(self, tmp_path: Path) -> None:
        """Test that re-parsed CSV equals the in-memory matrix bit for bit."""
        values = np.random.default_rng(1).standard_normal(40) * 1e3
        src = write_series(tmp_path / "x.txt", values, header="signal")
        out = tmp_path / "m.csv"
        args = ["embed", "-i", str(src), "--d", "6", "--tau", "2", "-s", "1", "-o", str(out)]
        result = runner.invoke(app, args)
        assert result.exit_code == 0, result.output
        parsed = np.loadtxt(out, delimiter=",")
        expected = embed(TimeSeries(values=values, convention=1), 6, 2).data
        np.testing.assert_array_equal(parsed, expected)

    def test_sgmd_layout_json(self, tmp_path: Path) -> None:
        """Test the transposed layout in JSON."""
        src = write_series(tmp_path / "x.txt", range(1, 28))
        out = tmp_path / "m.json"
        args = ["embed", "-i", str(src), "--d", "7", "--tau", "3", "-s", "1"]
        result = runner.invoke(app, args + ["--layout", "sgmd", "-f", "json", "-o", str(out)])
        assert result.exit_code == 0, result.output
        payload = json.loads(out.read_text())
        assert payload["layout"] == "sgmd"
        assert payload["config"] == {"N": 27, "d": 7, "m": 9, "tau": 3, "s": 1}
        assert len(payload["matrix"]) == 9
        assert payload["matrix"][0] == [1.0, 4.0, 7.0, 10.0, 13.0, 16.0, 19.0]

    def test_series_too_short(self, tmp_path: Path) -> None:
        """Test exit 3 when m < 1."""
        src = write_series(tmp_path / "x.txt", range(10))
        result = runner.invoke(app, ["embed", "-i", str(src), "--d", "4", "--tau", "4"])
        assert result.exit_code == 3
        assert error_of(result.output)["error"] == "series_too_short"

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test exit 2 for an unreadable input."""
        result = runner.invoke(app, ["embed", "-i", str(tmp_path / "nope.txt"), "--d", "2"])
        assert result.exit_code == 2
        assert error_of(result.output)["error"] == "io_error"

    def test_non_numeric_line(self, tmp_path: Path) -> None:
        """Test exit 2 for a malformed sample after the header."""
        src = tmp_path / "x.txt"
        src.write_text("value\n1.0\nabc\n3.0\n", encoding="utf-8")
        result = runner.invoke(app, ["embed", "-i", str(src), "--d", "2"])
        assert result.exit_code == 2
        assert error_of(result.output)["details"]["line"] == 3

    def test_undecodable_file(self, tmp_path: Path) -> None:
        """Test exit 2 for input that is not UTF-8."""
        src = tmp_path / "x.txt"
        src.write_bytes(b"1.0\n\xff\xfe2.0\n3.0\n")
        result = runner.invoke(app, ["embed", "-i", str(src), "--d", "2"])
        assert result.exit_code == 2
        error = error_of(result.output)
        assert error["error"] == "io_error"
        assert error["details"]["byte"] == 4

    def test_non_finite_sample(self, tmp_path: Path) -> None:
        """Test exit 3 for NaN samples."""
        src = tmp_path / "x.txt"
        src.write_text("1.0\nnan\n3.0\n", encoding="utf-8")
        result = runner.invoke(app, ["embed", "-i", str(src), "--d", "2"])
        assert result.exit_code == 3
        assert error_of(result.output)["error"] == "non_finite_value"

    def test_missing_dimension(self, tmp_path: Path) -> None:
        """Test that --d is required before the file is read."""
        result = runner.invoke(app, ["embed", "-i", str(tmp_path / "nope.txt")])
        assert result.exit_code == 3
        assert error_of(result.output)["error"] == "invalid_dimension"

    def test_invalid_convention(self, tmp_path: Path) -> None:
        """Test that --convention outside {0, 1} is rejected."""
        src = write_series(tmp_path / "x.txt", range(10))
        result = runner.invoke(app, ["embed", "-i", str(src), "--d", "2", "-s", "2"])
        assert result.exit_code == 3
        assert error_of(result.output)["error"] == "invalid_convention"


class TestSolve:
    """Test cases for the solve command."""

    def test_type0_n9(self) -> None:
        """Test the three solutions of 3x + y = 9."""
        result = runner.invoke(
            app, ["solve", "--n", "9", "--tau", "3", "--s", "0", "--rect", "0,6,0,8"]
        )
        assert result.exit_code == 0, result.output
        assert "1,6\n2,3\n3,0\n" in result.output
        assert "cardinality: 3" in result.output

    def test_type1_n27(self) -> None:
        """Test the single solution for the last 1-based sample."""
        result = runner.invoke(
            app, ["solve", "--n", "27", "--tau", "3", "--s", "1", "--rect", "1,7,1,9"]
        )
        assert result.exit_code == 0, result.output
        assert result.output.startswith("7,9\n")
        assert "cardinality: 1" in result.output

    def test_empty(self) -> None:
        """Test an equation without lattice points in the rectangle."""
        result = runner.invoke(
            app, ["solve", "--n", "2", "--tau", "5", "--s", "0", "--rect", "3,6,0,1"]
        )
        assert result.exit_code == 0, result.output
        assert "cardinality: 0" in result.output
        assert not any("," in line for line in result.output.splitlines())

    def test_json(self) -> None:
        """Test JSON output."""
        result = runner.invoke(
            app, ["solve", "--n", "9", "--tau", "3", "--rect", "0,6,0,8", "-f", "json"]
        )
        assert result.exit_code == 0, result.output
        payload = json.loads(result.output)
        assert payload["points"] == [[1, 6], [2, 3], [3, 0]]
        assert (payload["x_min"], payload["x_max"], payload["cardinality"]) == (1, 3, 3)

    @pytest.mark.parametrize("rect", ["5,1,0,3", "0,6,-1,8", "0,6,8"])
    def test_invalid_rectangle(self, rect: str) -> None:
        """Test exit 3 for reversed, negative or malformed rectangles."""
        result = runner.invoke(app, ["solve", "--n", "3", "--tau", "1", f"--rect={rect}"])
        assert result.exit_code == 3
        assert error_of(result.output)["error"] == "invalid_rectangle"


class TestTables:
    """Test cases for the tables command."""

    def test_both_tables(self) -> None:
        """Test rows from both tables and the n=6 comment."""
        result = runner.invoke(app, ["tables"])
        assert result.exit_code == 0, result.output
        lines = result.output.splitlines()
        assert lines[0] == "table,n,x_min,x_max,cardinality,solutions"
        assert '0,12,2,4,3,"{(2,6),(3,3),(4,0)}"' in lines
        assert '1,13,3,5,3,"{(3,7),(4,4),(5,1)}"' in lines
        assert '0,6,0,2,3,"{(0,6),(1,3),(2,0)}"' in lines
        assert any(line.startswith("# n=6:") and "(0,5)" in line for line in lines)
        data_rows = [line for line in lines[1:] if not line.startswith("#")]
        assert len(data_rows) == 54

    def test_single_table(self, tmp_path: Path) -> None:
        """Test --table 1 writes only the type-1 rows."""
        out = tmp_path / "t.csv"
        result = runner.invoke(app, ["tables", "--table", "1", "-o", str(out)])
        assert result.exit_code == 0, result.output
        rows = [r for r in out.read_text().splitlines()[1:] if not r.startswith("#")]
        assert len(rows) == 27
        assert rows[-1] == '1,27,7,7,1,"{(7,9)}"'


class TestDecompose:
    """Test cases for the decompose command."""

    def _run(self, tmp_path: Path, values: Any, *extra: str) -> Any:
        src = write_series(tmp_path / "x.txt", values)
        out = tmp_path / "out.csv"
        result = runner.invoke(app, ["decompose", "-i", str(src), "-o", str(out), *extra])
        return result, out

    def test_constant_series(self, tmp_path: Path) -> None:
        """Test a single component equal to the input and a zero residual."""
        result, out = self._run(tmp_path, [2.5] * 20, "--d", "4", "--tau", "2")
        assert result.exit_code == 0, result.output
        header = out.read_text().splitlines()[0]
        assert header == "n,component_1,residual"
        data = np.loadtxt(out, delimiter=",", skiprows=1)
        np.testing.assert_allclose(data[:, 1], 2.5, atol=1e-12)
        assert np.abs(data[:, 2]).max() <= 1e-12

    def test_conservation(self, tmp_path: Path) -> None:
        """Test that the residual column vanishes for tau = 3, s = 0."""
        values = np.random.default_rng(7).standard_normal(27)
        result, out = self._run(tmp_path, values, "--d", "7", "--tau", "3", "-s", "0")
        assert result.exit_code == 0, result.output
        data = np.loadtxt(out, delimiter=",", skiprows=1)
        assert data[:, 0].tolist() == list(range(27))
        assert np.abs(data[:, -1]).max() <= 1e-10 * np.abs(values).max()
        np.testing.assert_allclose(data[:, 1:-1].sum(axis=1), values, atol=1e-10)

    def test_forced_legacy_breaks_conservation(self, tmp_path: Path) -> None:
        """Test that --legacy --force leaves a large residual and warns."""
        values = np.random.default_rng(7).standard_normal(27)
        result, out = self._run(
            tmp_path, values, "--d", "7", "--tau", "3", "--legacy", "--force"
        )
        assert result.exit_code == 0, result.output
        assert "warning" in result.output.lower()
        data = np.loadtxt(out, delimiter=",", skiprows=1)
        assert np.abs(data[:, -1]).max() > 0.01 * np.abs(values).max()

    def test_legacy_without_force(self, tmp_path: Path) -> None:
        """Test exit 3 when the legacy rule is requested at tau = 3."""
        result, out = self._run(tmp_path, range(27), "--d", "7", "--tau", "3", "--legacy")
        assert result.exit_code == 3
        assert error_of(result.output)["error"] == "legacy_mode_unsafe"
        assert not out.exists()

    def test_legacy_at_unit_delay(self, tmp_path: Path) -> None:
        """Test that the legacy rule runs unforced for s = 1, tau = 1."""
        values = np.random.default_rng(2).standard_normal(15)
        result, out = self._run(tmp_path, values, "--d", "5", "-s", "1", "--legacy")
        assert result.exit_code == 0, result.output
        data = np.loadtxt(out, delimiter=",", skiprows=1)
        assert data[0, 0] == 1
        assert np.abs(data[:, -1]).max() <= 1e-10

    def test_rows_shorter_than_delay(self, tmp_path: Path) -> None:
        """Test exit 3 instead of a crash when m < tau."""
        result, out = self._run(tmp_path, range(10), "--d", "4", "--tau", "3")
        assert result.exit_code == 3
        assert error_of(result.output)["error"] == "series_too_short"
        assert not out.exists()

    def test_force_without_legacy(self, tmp_path: Path) -> None:
        """Test that --force alone is rejected."""
        result, _ = self._run(tmp_path, range(27), "--d", "7", "--force")
        assert result.exit_code == 3

    def test_grouping(self, tmp_path: Path) -> None:
        """Test a group plus the implicit residual group."""
        values = np.random.default_rng(3).standard_normal(30)
        result, out = self._run(tmp_path, values, "--d", "5", "--group", "1,2")
        assert result.exit_code == 0, result.output
        header = out.read_text().splitlines()[0]
        assert header == "n,component_1,component_2,residual"

    def test_overlapping_groups(self, tmp_path: Path) -> None:
        """Test exit 3 for overlapping groups."""
        result, _ = self._run(tmp_path, range(30), "--d", "5", "--group", "1,2;2")
        assert result.exit_code == 3
        assert error_of(result.output)["error"] == "overlapping_groups"

    def test_json_spectrum(self, tmp_path: Path) -> None:
        """Test that JSON adds singular values and energy fractions."""
        values = np.random.default_rng(4).standard_normal(24)
        result, out = self._run(tmp_path, values, "--d", "4", "--tau", "2", "-f", "json")
        assert result.exit_code == 0, result.output
        payload = json.loads(out.read_text())
        r = len(payload["components"])
        assert len(payload["singular_values"]) == r
        assert sum(payload["energy_fractions"]) == pytest.approx(1.0)
        assert payload["reconstruction"] == "pull_back"
        assert payload["components"][0]["sources"] == [1]

    def test_json_grouped_has_no_singular_values(self, tmp_path: Path) -> None:
        """Test that grouped JSON output drops the per-component spectrum."""
        values = np.random.default_rng(4).standard_normal(24)
        result, out = self._run(
            tmp_path, values, "--d", "4", "--tau", "2", "--group", "1,2", "-f", "json"
        )
        assert result.exit_code == 0, result.output
        payload = json.loads(out.read_text())
        assert payload["singular_values"] is None
        assert len(payload["energy_fractions"]) == len(payload["components"]) == 2
        assert payload["components"][0]["sources"] == [1, 2]

    @pytest.mark.parametrize(("backend", "code"), [("symplectic", 3), ("wavelet", 3)])
    def test_unsupported_backend(self, tmp_path: Path, backend: str, code: int) -> None:
        """Test that unimplemented or unknown backends exit 3."""
        result, _ = self._run(tmp_path, range(20), "--d", "4", "--backend", backend)
        assert result.exit_code == code
        assert error_of(result.output)["error"] == "unsupported_backend"

    def test_numerical_failure(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test exit 4 when the SVD fails."""

        def broken_svd(*args: object, **kwargs: object) -> None:
            raise np.linalg.LinAlgError("SVD did not converge")

        monkeypatch.setattr(np.linalg, "svd", broken_svd)
        result, _ = self._run(tmp_path, range(20), "--d", "4")
        assert result.exit_code == 4
        assert error_of(result.output)["error"] == "numerical_failure"


class TestReconstruct:
    """Test cases for the reconstruct command."""

    def test_round_trip(self, tmp_path: Path) -> None:
        """Test embed followed by reconstruct returns the series."""
        values = np.random.default_rng(5).standard_normal(27)
        src = write_series(tmp_path / "x.txt", values)
        matrix = tmp_path / "m.csv"
        series = tmp_path / "y.csv"
        args = ["embed", "-i", str(src), "--d", "7", "--tau", "3", "-o", str(matrix)]
        assert runner.invoke(app, args).exit_code == 0
        result = runner.invoke(
            app, ["reconstruct", "-i", str(matrix), "--tau", "3", "-o", str(series)]
        )
        assert result.exit_code == 0, result.output
        data = np.loadtxt(series, delimiter=",", skiprows=1)
        assert data[:, 0].tolist() == list(range(27))
        np.testing.assert_allclose(data[:, 1], values, rtol=1e-12)

    def test_ragged_matrix(self, tmp_path: Path) -> None:
        """Test exit 2 for rows of different lengths."""
        src = tmp_path / "m.csv"
        src.write_text("1,2,3\n4,5\n", encoding="utf-8")
        result = runner.invoke(app, ["reconstruct", "-i", str(src)])
        assert result.exit_code == 2

    def test_undecodable_matrix(self, tmp_path: Path) -> None:
        """Test exit 2 for a matrix file that is not UTF-8."""
        src = tmp_path / "m.csv"
        src.write_bytes(b"1.0,2.0\n\xff,3\n")
        result = runner.invoke(app, ["reconstruct", "-i", str(src)])
        assert result.exit_code == 2
        assert error_of(result.output)["error"] == "io_error"

    def test_rows_shorter_than_delay(self, tmp_path: Path) -> None:
        """Test exit 3 for a matrix whose rows are shorter than tau."""
        src = tmp_path / "m.csv"
        src.write_text("1,2\n3,4\n", encoding="utf-8")
        result = runner.invoke(app, ["reconstruct", "-i", str(src), "--tau", "3"])
        assert result.exit_code == 3
        assert error_of(result.output)["error"] == "series_too_short"

    def test_legacy_needs_force(self, tmp_path: Path) -> None:
        """Test that --legacy on a 0-based matrix is refused without --force."""
        src = tmp_path / "m.csv"
        src.write_text("1,2,3\n2,3,4\n", encoding="utf-8")
        result = runner.invoke(app, ["reconstruct", "-i", str(src), "--legacy"])
        assert result.exit_code == 3
        assert error_of(result.output)["error"] == "legacy_mode_unsafe"


class TestVerify:
    """Test cases for the verify command."""

    def test_legacy_divergence_passes(self) -> None:
        """Test that the divergence suite passes."""
        result = runner.invoke(app, ["verify", "--suite", "legacy-divergence", "--trials", "3"])
        assert result.exit_code == 0, result.output
        assert "PASS" in result.output
        assert "1/1 suites passed" in result.output

    def test_unit_cardinality_shape(self) -> None:
        """Test the unit-cardinality suite on a 7 x 9 shape."""
        result = runner.invoke(
            app, ["verify", "--suite", "unit-cardinality", "--d", "7", "--m", "9"]
        )
        assert result.exit_code == 0, result.output

    def test_all_suites_short_run(self) -> None:
        """Test that every suite passes with few trials."""
        result = runner.invoke(app, ["verify", "--trials", "4"])
        assert result.exit_code == 0, result.output
        assert f"{len(SUITES)}/{len(SUITES)} suites passed" in result.output

    def test_seed_from_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that GDAP_SEED sets the default seed."""
        monkeypatch.setenv("GDAP_SEED", "99")
        result = runner.invoke(app, ["verify", "--suite", "reference-tables"])
        assert result.exit_code == 0, result.output
        assert "seed=99" in result.output

    def test_unknown_suite(self) -> None:
        """Test exit 3 for an unknown suite name."""
        result = runner.invoke(app, ["verify", "--suite", "nope"])
        assert result.exit_code == 3

    def test_half_shape(self) -> None:
        """Test that --d without --m is rejected."""
        result = runner.invoke(app, ["verify", "--suite", "unit-cardinality", "--d", "7"])
        assert result.exit_code == 3

    def test_failure_exit_code(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test exit 1 when a suite fails."""

        def failing(*args: object, **kwargs: object) -> SuiteResult:
            return SuiteResult(name="round-trip", passed=False, checks=1, failures=1)

        monkeypatch.setitem(SUITES, "round-trip", failing)
        result = runner.invoke(app, ["verify", "--suite", "round-trip", "--trials", "1"])
        assert result.exit_code == 1
        assert "FAIL" in result.output
        assert error_of(result.output)["error"] == "verification_failed"
