"""Command-line pipeline: exit codes, report schema, determinism."""

import json

import pytest

from hullforge.cli import main

FAST_VERIFY = [
    "verify",
    "--grid-n", "128",
    "--degree", "8",
    "--K", "8",
    "--restarts", "2",
    "--seed", "0",
]


@pytest.fixture(scope="module")
def verify_runs(tmp_path_factory):
    """Two identical reduced-settings verify runs (for determinism)."""
    outs = []
    for name in ("a", "b"):
        out = tmp_path_factory.mktemp(f"verify_{name}")
        code = main(FAST_VERIFY + ["--out", str(out)])
        outs.append((code, out))
    return outs


class TestVerify:
    def test_exit_zero_and_all_stages_pass(self, verify_runs):
        code, out = verify_runs[0]
        assert code == 0
        report = json.loads((out / "report.json").read_text())
        assert report["schema"] == "hullforge/1"
        assert report["passed"] is True
        assert [s["name"] for s in report["stages"]] == [
            "laurent", "jimbo", "variety", "geometry", "hullcert", "discsearch",
        ]
        assert all(s["passed"] for s in report["stages"])

    def test_report_embeds_config_and_tolerances(self, verify_runs):
        _, out = verify_runs[0]
        report = json.loads((out / "report.json").read_text())
        cfg = report["config"]
        assert cfg["seed"] == 0
        assert len(cfg["symbol_hash"]) == 40
        assert "reflection_identity" in cfg["tolerances"]
        assert "v_condition" in cfg["tolerances"]

    def test_heuristic_stages_flagged(self, verify_runs):
        _, out = verify_runs[0]
        report = json.loads((out / "report.json").read_text())
        stages = {s["name"]: s for s in report["stages"]}
        assert stages["discsearch"]["heuristic_search"] is True
        assert all(
            entry["heuristic_search"] is True
            for entry in stages["discsearch"]["per_class"]
        )
        assert stages["hullcert"]["heuristic_certificates"] is True

    def test_jimbo_stage_found_the_annulus(self, verify_runs):
        _, out = verify_runs[0]
        report = json.loads((out / "report.json").read_text())
        stages = {s["name"]: s for s in report["stages"]}
        assert stages["jimbo"]["attached"] == [3]
        assert "cover" in report["hull"]

    def test_csv_outputs_written(self, verify_runs):
        _, out = verify_runs[0]
        for name in ("curves.csv", "chart.csv", "loops.csv"):
            text = (out / name).read_text()
            assert len(text.splitlines()) > 10

    def test_byte_identical_reports_for_same_seed(self, verify_runs):
        (_, out_a), (_, out_b) = verify_runs
        a = (out_a / "report.json").read_bytes()
        b = (out_b / "report.json").read_bytes()
        assert a == b


class TestFailureExits:
    def test_degenerate_symbol_exits_two(self, tmp_path, capsys):
        code = main(["verify", "--symbol", "1", "--out", str(tmp_path)])
        assert code == 2
        assert "degenerate" in capsys.readouterr().err

    def test_tampered_factors_exit_three(self, tmp_path, capsys):
        code = main(
            FAST_VERIFY
            + [
                "--factors", "z - i*w; z + i*w",
                "--out", str(tmp_path),
            ]
        )
        assert code == 3
        assert "factorization" in capsys.readouterr().err

    def test_wrong_unit_exits_three(self, tmp_path):
        code = main(
            FAST_VERIFY
            + [
                "--factors",
                "z - i*w; z + i*w; 1 - 4*z^2 + 4*w^2 - z^2*w^2",
                "--unit", "16*z^-3*w^-3",
                "--out", str(tmp_path),
            ]
        )
        assert code == 3

    def test_symbol_syntax_error_exits_one(self, tmp_path, capsys):
        code = main(["verify", "--symbol", "1 + * z", "--out", str(tmp_path)])
        assert code == 1
        assert "syntax" in capsys.readouterr().err

    def test_config_validation_names_the_field(self, tmp_path, capsys):
        code = main(["verify", "--grid-n", "32", "--out", str(tmp_path)])
        assert code == 1
        assert "grid_n" in capsys.readouterr().err
        code = main(["verify", "--degree", "13", "--out", str(tmp_path)])
        assert code == 1
        assert "degree" in capsys.readouterr().err

    def test_malformed_winding_exits_one(self, tmp_path, capsys):
        code = main(["disc-search", "--winding", "1", "--out", str(tmp_path)])
        assert code == 1
        assert "winding" in capsys.readouterr().err


class TestSubcommands:
    def test_certify_annulus_point(self, tmp_path):
        out = tmp_path / "certify"
        code = main(["certify", "--point", "0,0;0,0.5;0,0", "--out", str(out)])
        assert code == 0
        report = json.loads((out / "report.json").read_text())
        assert report["certified"] is True
        assert report["residuals"]["variety"] <= 1e-10
        assert report["residuals"]["height"] <= 1e-10
        assert report["residuals"]["boundary_in_T"] <= 1e-8

    def test_certify_rejects_off_hull_point(self, tmp_path):
        out = tmp_path / "certify_bad"
        code = main(["certify", "--point", "0,0;0,0.9;0,0", "--out", str(out)])
        assert code == 1
        report = json.loads((out / "report.json").read_text())
        assert report["certified"] is False
        assert report["residuals"]["variety"] == pytest.approx(0.56)

    def test_certify_malformed_point(self, tmp_path, capsys):
        code = main(["certify", "--point", "0,0;0,0.5", "--out", str(tmp_path)])
        assert code == 1

    def test_trace_variety_topology(self, tmp_path):
        out = tmp_path / "variety"
        code = main(["trace-variety", "--out", str(out)])
        assert code == 0
        report = json.loads((out / "report.json").read_text())
        assert report["topology"]["boundary_count"] == 2
        assert report["topology"]["genus"] == 0
        assert report["symbol_residual_on_variety"] <= 1e-10
        assert (out / "chart.csv").exists()

    def test_disc_search_control(self, tmp_path):
        out = tmp_path / "discs"
        code = main(
            [
                "disc-search", "--winding", "1,0", "--height", "zero",
                "--K", "8", "--restarts", "2", "--out", str(out),
            ]
        )
        assert code == 0
        report = json.loads((out / "report.json").read_text())
        assert report["best_defect"] <= 1e-8
        assert report["heuristic_search"] is True
        assert (out / "loops.csv").exists()

    def test_jimbo_subcommand(self, tmp_path):
        out = tmp_path / "jimbo"
        code = main(["jimbo", "--grid-n", "128", "--out", str(out)])
        assert code == 0
        report = json.loads((out / "report.json").read_text())
        assert report["criterion"]["attached"] == [3]
        per = report["criterion"]["per_factor"]
        assert [f["in_attached_set"] for f in per] == [False, False, True]
        assert (out / "curves.csv").exists()
