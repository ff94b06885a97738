import numpy as np
import pytest
from numpy.testing import assert_allclose

from hierq import (
    FamilySpec,
    HierarchySpectrum,
    InvalidArgumentError,
    NumericalError,
    SweepRow,
    SweepTable,
    check_monotone,
    default_alpha_grid,
    emit_csv,
    emit_plot_script,
    ghz_state,
    render_csv,
    render_plot_script,
    rotated_basis_projectors,
    run_sweep,
    sweep_row,
)
from hierq.sweep import CSV_HEADER


def synthetic_table(level3_values, family="GHZ"):
    """Table with fabricated I(3) values and exact zero residuals."""
    rows = []
    for i, v in enumerate(level3_values):
        spectrum = HierarchySpectrum(
            values=(0.0, 0.0, float(v)), n=3, residuals=(0.0, 0.0, 0.0), iterations=(0, 0, 0)
        )
        rows.append(SweepRow(i / 10.0, spectrum, 3.0 - float(v), 0.0, 0.0))
    return SweepTable(family, tuple(rows))


class TestFamilySpec:
    def test_rejects_unknown_family(self):
        with pytest.raises(InvalidArgumentError):
            FamilySpec("bell")

    def test_custom_requires_state(self):
        with pytest.raises(InvalidArgumentError):
            FamilySpec("custom")

    def test_builtin_rejects_state(self):
        with pytest.raises(InvalidArgumentError):
            FamilySpec("ghz", state=ghz_state(3))

    def test_custom_takes_n_from_state(self):
        spec = FamilySpec("custom", state=ghz_state(4))
        assert spec.n == 4
        assert spec.label == "custom"

    def test_bases_count_must_match(self):
        basis = rotated_basis_projectors(np.eye(2))
        with pytest.raises(InvalidArgumentError):
            FamilySpec("ghz", bases=(basis, basis))

    def test_labels(self):
        assert FamilySpec("ghz").label == "GHZ"
        assert FamilySpec("w").label == "W"


class TestRunSweep:
    def test_grid_validation(self):
        spec = FamilySpec("ghz")
        with pytest.raises(InvalidArgumentError):
            run_sweep(spec, [])
        with pytest.raises(InvalidArgumentError):
            run_sweep(spec, [0.0, 1.5])
        with pytest.raises(InvalidArgumentError):
            run_sweep(spec, [0.5, 0.5])
        with pytest.raises(InvalidArgumentError):
            run_sweep(spec, [0.9, 0.1])

    def test_default_grid(self):
        grid = default_alpha_grid()
        assert grid.size == 101
        assert grid[0] == 0.0 and grid[-1] == 1.0
        assert_allclose(np.diff(grid), 0.01, atol=1e-15)

    def test_ghz_endpoint_rows(self):
        table = run_sweep(FamilySpec("ghz"), [0.0, 1.0])
        assert_allclose(table.rows[0].spectrum.values, (0.0, 0.0, 0.0), atol=1e-10)
        assert_allclose(table.rows[1].spectrum.values, (0.0, 2.0, 0.0), atol=1e-8)
        assert_allclose(table.rows[0].entropy_bits, 3.0, atol=1e-12)

    def test_w_zero_alpha_is_flat(self):
        table = run_sweep(FamilySpec("w"), [0.0])
        assert_allclose(table.rows[0].spectrum.values, (0.0, 0.0, 0.0), atol=1e-10)

    def test_rows_match_single_alpha_evaluations(self, w_table):
        spec = FamilySpec("w")
        for idx in (7, 41, 100):
            row = w_table.rows[idx]
            fresh = sweep_row(spec, row.alpha)
            assert fresh.spectrum.values == row.spectrum.values
            assert fresh.entropy_bits == row.entropy_bits
            assert fresh.sum_residual == row.sum_residual

    def test_table_invariants_enforced(self):
        good = synthetic_table([0.0, 0.1])
        bad_rows = (good.rows[1], good.rows[0])
        with pytest.raises(InvalidArgumentError):
            SweepTable("GHZ", bad_rows)
        spectrum = good.rows[0].spectrum
        with pytest.raises(NumericalError):
            SweepTable("GHZ", (SweepRow(0.0, spectrum, 3.0, 1e-6, 0.0),))


class TestShapeQueries:
    def test_interior_maximum_found(self):
        from hierq import find_interior_maximum

        table = synthetic_table([0.0, 0.2, 0.5, 0.3, 0.1])
        alpha, value, interior = find_interior_maximum(table, 3)
        assert alpha == 0.2 and value == 0.5 and interior

    def test_monotone_series_peaks_at_end(self):
        from hierq import find_interior_maximum

        table = synthetic_table([0.0, 0.1, 0.2, 0.3])
        alpha, value, interior = find_interior_maximum(table, 3)
        assert alpha == 0.3 and not interior

    def test_ties_break_toward_smaller_alpha(self):
        from hierq import find_interior_maximum

        table = synthetic_table([0.0, 0.5, 0.5, 0.1])
        alpha, _, _ = find_interior_maximum(table, 3)
        assert alpha == 0.1

    def test_check_monotone_passes_flat(self):
        report = check_monotone(synthetic_table([0.0, 0.0, 0.0]), 3)
        assert bool(report)
        assert report.violation_alpha is None

    def test_check_monotone_reports_first_drop(self):
        report = check_monotone(synthetic_table([0.0, 0.3, 0.2, 0.05]), 3)
        assert not bool(report)
        assert_allclose(report.violation_alpha, 0.2)
        assert_allclose(report.violation_drop, 0.1)
        assert "drops" in str(report)

    def test_empty_table_rejected(self):
        from hierq import find_interior_maximum

        empty = SweepTable("GHZ", ())
        with pytest.raises(InvalidArgumentError):
            find_interior_maximum(empty, 3)
        with pytest.raises(InvalidArgumentError):
            check_monotone(empty, 3)


class TestCsvOutput:
    def test_header_and_shape(self, ghz_table):
        text = render_csv(ghz_table)
        lines = text.splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 1 + 101
        assert text.endswith("\n")

    def test_alpha_rendering(self, ghz_table):
        lines = render_csv(ghz_table).splitlines()
        assert lines[1].startswith("0.000000000000,")
        assert lines[-1].startswith("1.000000000000,")

    def test_compact_values_at_endpoints(self, ghz_table):
        first = render_csv(ghz_table).splitlines()[1].split(",")
        assert first[1] == "0" and first[2] == "0" and first[3] == "0"
        assert first[4] == "3"

    def test_empty_table_is_header_only(self):
        assert render_csv(SweepTable("GHZ", ())) == CSV_HEADER + "\n"

    def test_four_variable_table_gets_extra_level_column(self):
        table = run_sweep(FamilySpec("ghz", n=4), [0.0, 1.0])
        lines = render_csv(table).splitlines()
        assert lines[0] == "alpha,I1,I2,I3,I4,entropy_bits,sum_residual,projection_residual"
        assert len(lines[1].split(",")) == 8

    def test_round_trip_within_rendered_precision(self, w_table):
        lines = render_csv(w_table).splitlines()[1:]
        for line, row in zip(lines, w_table.rows):
            cells = [float(c) for c in line.split(",")]
            assert abs(cells[0] - row.alpha) <= 1e-12
            for got, want in zip(cells[1:4], row.spectrum.values):
                assert abs(got - want) <= 1e-11 * max(1.0, abs(want))
            assert abs(cells[4] - row.entropy_bits) <= 1e-11

    def test_deterministic_rendering(self, w_table):
        assert render_csv(w_table) == render_csv(w_table)

    def test_emit_to_path_and_stream(self, tmp_path, ghz_table):
        import io

        path = tmp_path / "out.csv"
        emit_csv(ghz_table, path)
        buf = io.StringIO()
        emit_csv(ghz_table, buf)
        assert path.read_text() == buf.getvalue()


class TestPlotScript:
    def test_title_names_family(self, w_table, ghz_table):
        assert "W family" in render_plot_script(w_table, "w.csv")
        assert "GHZ family" in render_plot_script(ghz_table, "ghz.csv")

    def test_references_csv_and_all_series(self, w_table):
        text = render_plot_script(w_table, "sweep_w.csv")
        assert "sweep_w.csv" in text
        for key in ("I1", "I2", "I3"):
            assert key in text

    def test_script_is_valid_python(self, w_table):
        text = render_plot_script(w_table, "w.csv")
        compile(text, "plot.py", "exec")

    def test_byte_identical_across_calls(self, w_table):
        assert render_plot_script(w_table, "w.csv") == render_plot_script(w_table, "w.csv")

    def test_emit_defaults_csv_name_from_path(self, tmp_path, ghz_table):
        path = tmp_path / "run.py"
        emit_plot_script(ghz_table, path)
        assert 'run.csv' in path.read_text()

    def test_stream_requires_explicit_csv_name(self, ghz_table):
        import io

        with pytest.raises(InvalidArgumentError):
            emit_plot_script(ghz_table, io.StringIO())
        buf = io.StringIO()
        emit_plot_script(ghz_table, buf, csv_name="t.csv")
        assert "t.csv" in buf.getvalue()
