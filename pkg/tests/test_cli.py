import numpy as np

from hierq import ghz_state, save_distribution, save_state_file, uniform_distribution, w_state
from hierq.cli import main


class TestArgumentHandling:
    def test_no_subcommand_is_usage_error(self, capsys):
        assert main([]) == 1
        assert "subcommand" in capsys.readouterr().err

    def test_unknown_flag_exits_one(self, capsys):
        assert main(["sweep", "--frobnicate"]) == 1

    def test_unknown_subcommand_exits_one(self, capsys):
        assert main(["paint"]) == 1

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "sweep" in capsys.readouterr().out

    def test_conflicting_family_flags(self, capsys, tmp_path):
        path = tmp_path / "s.txt"
        save_state_file(ghz_state(3), path)
        assert main(["sweep", "--family", "w", "--state-file", str(path)]) == 1

    def test_family_custom_needs_state_file(self, capsys):
        assert main(["sweep", "--family", "custom"]) == 1

    def test_bad_rotation_string(self, capsys):
        assert main(["spectrum", "--alpha", "0.5", "--rotation", "1,2"]) == 1

    def test_alpha_out_of_range(self, capsys):
        assert main(["spectrum", "--alpha", "1.5"]) == 1

    def test_bad_alphas_list(self, capsys):
        assert main(["sweep", "--alphas", "0,abc,1"]) == 1


class TestSweepCommand:
    def test_csv_to_stdout(self, capsys):
        assert main(["sweep", "--family", "ghz", "--alphas", "0,0.5,1"]) == 0
        out = capsys.readouterr().out
        lines = out.splitlines()
        assert lines[0].startswith("alpha,I1,I2,I3")
        assert len(lines) == 4
        assert lines[1].startswith("0.000000000000,")

    def test_csv_file_and_default_plot_script_name(self, tmp_path, capsys):
        csv_path = tmp_path / "ghz.csv"
        code = main([
            "sweep", "--family", "ghz", "--alphas", "0,1",
            "--csv", str(csv_path), "--plot-script",
        ])
        assert code == 0
        assert csv_path.exists()
        script = tmp_path / "ghz.py"
        assert script.exists()
        assert "ghz.csv" in script.read_text()

    def test_explicit_plot_script_path(self, tmp_path, capsys):
        csv_path = tmp_path / "w.csv"
        script_path = tmp_path / "draw.py"
        code = main([
            "sweep", "--family", "w", "--alphas", "0,1",
            "--csv", str(csv_path), "--plot-script", str(script_path),
        ])
        assert code == 0
        assert "w.csv" in script_path.read_text()

    def test_plot_script_without_csv_rejected(self, capsys):
        assert main(["sweep", "--alphas", "0,1", "--plot-script"]) == 1

    def test_rotated_measurement_changes_statistics(self, capsys):
        assert main(["sweep", "--family", "ghz", "--alphas", "1", "--rotation", "1.5707963267948966,0,0"]) == 0
        rotated = capsys.readouterr().out.splitlines()[1]
        assert main(["sweep", "--family", "ghz", "--alphas", "1"]) == 0
        computational = capsys.readouterr().out.splitlines()[1]
        assert rotated != computational

    def test_io_error_exits_three(self, tmp_path, capsys):
        missing = tmp_path / "no" / "such" / "dir" / "out.csv"
        assert main(["sweep", "--alphas", "0,1", "--csv", str(missing)]) == 3

    def test_convergence_failure_exits_two(self, capsys):
        code = main(["sweep", "--family", "w", "--alphas", "0.9999995", "--max-iter", "3"])
        assert code == 2
        assert "convergence" in capsys.readouterr().err


class TestSpectrumCommand:
    def test_family_alpha(self, capsys):
        assert main(["spectrum", "--family", "w", "--alpha", "1"]) == 0
        out = capsys.readouterr().out
        assert "I(1) = 0.245112497837" in out
        assert "I(3) = " in out
        assert "entropy_bits = 1.58496250072" in out

    def test_dist_file(self, tmp_path, capsys):
        path = tmp_path / "dist.txt"
        save_distribution(uniform_distribution((2, 2, 2)), path)
        assert main(["spectrum", "--dist-file", str(path)]) == 0
        out = capsys.readouterr().out
        assert "I(1) = 0" in out
        assert "entropy_bits = 3" in out

    def test_needs_alpha_or_file(self, capsys):
        assert main(["spectrum"]) == 1

    def test_alpha_and_file_conflict(self, tmp_path, capsys):
        path = tmp_path / "dist.txt"
        save_distribution(uniform_distribution((2, 2, 2)), path)
        assert main(["spectrum", "--alpha", "0.5", "--dist-file", str(path)]) == 1


class TestValidateCommand:
    def test_good_state_passes(self, tmp_path, capsys):
        path = tmp_path / "w.txt"
        save_state_file(w_state(3), path)
        assert main(["validate", "--state-file", str(path)]) == 0
        out = capsys.readouterr().out
        assert "normalization" in out and "psd" in out
        assert "FAIL" not in out

    def test_unnormalized_state_fails(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("1\n1.0 0.0\n0.5 0.0\n")
        assert main(["validate", "--state-file", str(path)]) == 1
        assert "FAIL" in capsys.readouterr().out

    def test_rotation_projectors_pass(self, capsys):
        assert main(["validate", "--rotation", "0.7,0.3,1.1"]) == 0
        out = capsys.readouterr().out
        assert "completeness" in out

    def test_needs_some_input(self, capsys):
        assert main(["validate"]) == 1

    def test_missing_file_is_io_error(self, tmp_path, capsys):
        assert main(["validate", "--state-file", str(tmp_path / "absent.txt")]) == 3


class TestSelftestCommand:
    def test_selftest_passes(self, capsys):
        assert main(["selftest"]) == 0
        out = capsys.readouterr().out
        assert "all checks passed" in out
        assert "FAIL" not in out
