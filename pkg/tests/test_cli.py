"""End-to-end checks of the command-line front end.

Everything goes through ``cli.main(argv)`` so exit codes and stream
separation are tested exactly as a shell would see them; a couple of
byte-identity checks pin the determinism contract.
"""

import json
from fractions import Fraction

import pytest

from gridmass.cli import main
from gridmass.graph import graph_from_json, graph_to_json
from gridmass.salami import afg_to_json, standard_afg


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


@pytest.fixture(scope="module")
def instance_files(tmp_path_factory):
    root = tmp_path_factory.mktemp("instances")
    paths = {}
    for name in ("appendix1", "appendix2", "appendix1-core", "torus-example-4-1"):
        path = root / f"{name}.json"
        assert main(["examples", name, "--out", str(path)]) == 0
        paths[name] = str(path)
    return paths


class TestCurvature:
    def test_appendix1_pair_five_rest_zero(self, capsys, instance_files):
        code, data = run_json(capsys, "curvature", instance_files["appendix1"])
        assert code == 0
        assert data["mode"] == "exact"
        by_edge = {(r["u"] if isinstance(r["u"], str) else tuple(r["u"]),
                    r["v"] if isinstance(r["v"], str) else tuple(r["v"])): r["kappa"]
                   for r in data["rows"]}
        assert by_edge[("a", "b")] == "5"
        assert all(v == "0" for k, v in by_edge.items() if k != ("a", "b"))

    def test_appendix2_all_zero(self, capsys, instance_files):
        code, data = run_json(capsys, "curvature", instance_files["appendix2"])
        assert code == 0
        assert {r["kappa"] for r in data["rows"]} == {"0"}

    def test_flat_grid_all_zero(self, capsys):
        code, data = run_json(capsys, "curvature", "--grid", "--n", "2", "--rho", "4")
        assert code == 0
        assert len(data["rows"]) == 2 * 6 * 7  # interior edges of Q_3
        assert {r["kappa"] for r in data["rows"]} == {"0"}

    def test_edge_selector_and_witness(self, capsys, instance_files):
        code, data = run_json(
            capsys, "curvature", instance_files["appendix1"],
            "--edge", '["a","b"]', "--witness",
        )
        assert code == 0
        (row,) = data["rows"]
        assert row["kappa"] == "5"
        values = {tuple(v) if isinstance(v, list) else v: x for v, x in row["witness"]}
        assert values["a"] == "0" and values["b"] == "1"

    def test_missing_edge_rejected(self, capsys, instance_files):
        code, _, err = run(
            capsys, "curvature", instance_files["appendix1"], "--edge", '["a",[3,3]]'
        )
        assert code == 2
        assert "no edge" in err

    def test_budget_exhaustion_reports_and_continues(self, capsys, instance_files):
        code, data = run_json(
            capsys, "curvature", instance_files["appendix1"], "--budget", "3"
        )
        assert code == 3
        statuses = {r["status"] for r in data["rows"]}
        assert "budget-exceeded" in statuses
        assert data["budget_exceeded"] > 0

    def test_jobs_output_identical(self, capsys, instance_files):
        _, out1, _ = run(
            capsys, "curvature", instance_files["appendix1"], "--format", "json"
        )
        _, out2, _ = run(
            capsys, "curvature", instance_files["appendix1"], "--format", "json",
            "--jobs", "3",
        )
        assert out1 == out2

    def test_float_mode_prints_floats(self, capsys, instance_files):
        code, out, _ = run(
            capsys, "curvature", instance_files["appendix1"],
            "--numeric", "float", "--format", "csv",
        )
        assert code == 0
        assert "a,b,5.0,ok" in out.splitlines()

    def test_grid_rejects_witness(self, capsys):
        code, _, err = run(capsys, "curvature", "--grid", "--witness")
        assert code == 2
        assert "witness" in err


class TestScalar:
    def test_flat_grid_zero(self, capsys):
        code, data = run_json(capsys, "scalar", "--grid", "--n", "2", "--rho", "4")
        assert code == 0
        assert len(data["rows"]) == 25
        assert {r["R"] for r in data["rows"]} == {"0"}

    def test_doubled_site_vertex(self, capsys, instance_files):
        code, data = run_json(
            capsys, "scalar", instance_files["appendix1"], "--vertex", '"a"'
        )
        assert code == 0
        (row,) = data["rows"]
        assert row["R"] == "5"  # pair edge 5, four spokes 0

    def test_vertex_selector_grid(self, capsys):
        code, data = run_json(
            capsys, "scalar", "--grid", "--n", "3", "--rho", "3", "--vertex", "[0,0,0]"
        )
        assert code == 0
        assert data["rows"] == [{"vertex": [0, 0, 0], "R": "0"}]


class TestMass:
    def test_unit_field_zero(self, capsys):
        code, data = run_json(capsys, "mass", "--field", "unit", "--n", "2", "--r-max", "8")
        assert code == 0
        assert data["mass"] == "0"
        assert data["converged"] is True
        assert [r["M_r"] for r in data["rows"]] == ["0"] * len(data["rows"])
        assert len(data["rows"]) >= 5

    def test_schwarzschild_series(self, capsys):
        code, data = run_json(
            capsys, "mass", "--field", "schwarzschild", "--m", "1", "--r-max", "15"
        )
        assert code == 0
        assert data["mode"] == "exact"
        # exact partial at the cut plus the annotated float extrapolation
        assert Fraction(data["mass"]) == Fraction(31**2, 4 * 16 * 17)
        assert abs(float(data["mass_tail_corrected"]) - 1) < 0.05
        assert len(data["rows"]) == 15

    def test_exact_output_carries_no_floats(self, capsys):
        code, data = run_json(
            capsys, "mass", "--field", "schwarzschild", "--m", "1", "--r-max", "8"
        )
        assert code == 0

        def floats(node):
            if isinstance(node, float):
                yield node
            elif isinstance(node, list):
                for item in node:
                    yield from floats(item)
            elif isinstance(node, dict):
                for item in node.values():
                    yield from floats(item)

        assert list(floats(data)) == []

    def test_log_model_recovers_m(self, capsys):
        code, data = run_json(
            capsys, "mass", "--field", "log-model", "--m", "0.01", "--r-max", "40"
        )
        assert code == 0
        assert data["mode"] == "float"
        assert abs(data["mass"] - 0.01) < 1e-4

    def test_csv_is_data_only(self, capsys):
        code, out, _ = run(
            capsys, "mass", "--field", "unit", "--n", "2", "--r-max", "3",
            "--format", "csv",
        )
        assert code == 0
        assert out.splitlines() == ["r,M_r", "1,0", "2,0", "3,0"]


class TestFlatness:
    def test_unit_window_passes(self, capsys):
        code, data = run_json(capsys, "flatness", "--grid", "--n", "2", "--rho", "8", "--p", "3")
        assert code == 0
        assert data["verdict"] is True
        assert all(r["max_weight_dev"] == "0" for r in data["rows"])

    def test_schwarzschild_fails_p_gt_n(self, capsys):
        code, data = run_json(
            capsys, "flatness", "--field", "schwarzschild", "--m", "1",
            "--rho", "9", "--p", "3",
        )
        assert code == 1
        assert data["verdict"] is False

    def test_strong_decay_flag(self, capsys):
        code, data = run_json(
            capsys, "flatness", "--grid", "--n", "2", "--rho", "7", "--p", "3",
            "--strong-decay",
        )
        assert code == 0
        assert data["strong_decay_hypotheses"] is True


class TestTorus:
    def test_example_file_flat(self, capsys, instance_files):
        code, data = run_json(capsys, "torus", instance_files["torus-example-4-1"])
        assert code == 0
        assert data["total"] == "0"
        assert data["radius2_ball_gate"] is True
        assert data["edge_ball_gate"] is True
        assert data["decomposition_exact"] is True
        assert len(data["cycle_sums"]) == 2

    def test_identity_random_weights_nonpositive(self, capsys):
        code, data = run_json(
            capsys, "torus", "--identity", "6", "--random-weights", "--seed", "11"
        )
        assert code == 0
        assert Fraction(data["total"]) <= 0
        assert data["edge_ball_gate"] is True
        assert data["radius2_ball_gate"] is False

    def test_small_torus_gate_failure_reported(self, capsys):
        code, data = run_json(capsys, "torus", "--identity", "2")
        assert code == 1
        assert data["edge_ball_gate"] is False
        assert "shrinks" in data["gate_witness"]

    def test_seed_determinism(self, capsys):
        args = ("torus", "--identity", "7", "--random-weights", "--seed", "3",
                "--format", "json")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2


class TestSalamiExtend:
    @pytest.fixture()
    def extension_file(self, tmp_path):
        edges = [{"u": i, "v": i + 1, "w": "1"} for i in range(8)]
        data = {
            "graph": {"vertices": list(range(9)), "edges": edges},
            "partition": {
                "x_side": list(range(4)),
                "y_side": list(range(5, 9)),
                "separator": [4],
            },
            "f": [{"vertex": 4, "value": 2}],
            "interior": list(range(1, 8)),
        }
        path = tmp_path / "ext.json"
        path.write_text(json.dumps(data))
        return str(path)

    def test_cone_extension(self, capsys, extension_file):
        code, data = run_json(capsys, "salami-extend", extension_file)
        assert code == 0
        assert data["lipschitz"] is True
        assert data["harmonic_on_separator"] is True
        assert data["propagates"] is True
        assert data["artifact_violations"] == 2  # the two path endpoints
        values = {r["vertex"]: r["Sf"] for r in data["rows"]}
        assert values[4] == "2"
        assert {r["side"] for r in data["rows"]} == {"X", "K", "Y"}

    def test_missing_field_rejected(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"graph": {"vertices": [], "edges": []}}))
        code, _, err = run(capsys, "salami-extend", str(path))
        assert code == 2
        assert "partition" in err

    def test_invalid_json_position_reported(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"graph": ')
        code, _, err = run(capsys, "salami-extend", str(path))
        assert code == 2
        assert "line 1" in err


class TestRigidity:
    def test_standard_disguise_passes(self, capsys, tmp_path):
        afg = standard_afg(2, 1, 8, label=lambda x: ("probe",) + x)
        path = tmp_path / "std.json"
        path.write_text(json.dumps(afg_to_json(afg)))
        code, data = run_json(capsys, "rigidity", str(path))
        assert code == 0
        assert data["is_standard_grid"] is True
        assert data["failure_stage"] is None
        assert [r["passed"] for r in data["rows"]] == [True] * len(data["rows"])

    def test_doubled_core_fails_at_multiplicity(self, capsys, instance_files):
        code, data = run_json(capsys, "rigidity", instance_files["appendix1-core"])
        assert code == 1
        assert data["is_standard_grid"] is False
        assert data["failure_stage"] == "multiplicity"

    def test_skip_curvature_stage(self, capsys, instance_files):
        code, data = run_json(
            capsys, "rigidity", instance_files["appendix1-core"], "--skip-curvature"
        )
        assert code == 1
        assert "curvature" not in {r["stage"] for r in data["rows"]}


class TestExamples:
    def test_round_trip_is_canonical(self, capsys, instance_files):
        raw = json.loads(open(instance_files["appendix1"]).read())
        assert graph_to_json(graph_from_json(raw)) == raw

    def test_appendix1_weight_values(self, capsys, instance_files):
        raw = json.loads(open(instance_files["appendix1"]).read())
        weights = {e["w"] for e in raw["edges"]}
        assert {"1", "1/2", "1/4"} == weights
        assert set(raw["vertex_weights"].values()) == {"1/2"}

    def test_param_override(self, capsys):
        code, out, _ = run(capsys, "examples", "torus-example-4-1", "--param", "k=4")
        assert code == 0
        assert json.loads(out)["k"] == 4

    def test_unknown_name_exits_2(self, capsys):
        code, _, err = run(capsys, "examples", "nope")
        assert code == 2
        assert "unknown instance" in err

    def test_list_names(self, capsys):
        code, out, _ = run(capsys, "examples", "--list")
        assert code == 0
        assert "appendix1" in out.splitlines()


class TestCheck:
    def test_subset_passes(self, capsys):
        code, out, _ = run(capsys, "check", "--only", "4", "--only", "6")
        assert code == 0
        lines = out.splitlines()
        assert lines[-1] == "passed 2/2"
        assert all(line.startswith("PASS") for line in lines[:-1])

    def test_json_format(self, capsys):
        code, data = run_json(capsys, "check", "--only", "6")
        assert code == 0
        assert data[0]["number"] == 6
        assert data[0]["passed"] is True

    def test_unknown_criterion_rejected(self, capsys):
        code, _, err = run(capsys, "check", "--only", "99")
        assert code == 2
        assert "unknown criteria" in err


class TestPlumbing:
    def test_out_file_written_with_newline(self, capsys, tmp_path, instance_files):
        path = tmp_path / "out.csv"
        code, out, _ = run(
            capsys, "curvature", instance_files["appendix2"],
            "--format", "csv", "--out", str(path),
        )
        assert code == 0
        assert out == ""
        text = path.read_text()
        assert text.startswith("u,v,kappa,status\n")
        assert text.endswith("\n")

    def test_conflicting_inputs_rejected(self, capsys, instance_files):
        code, _, err = run(
            capsys, "mass", instance_files["appendix1"], "--grid"
        )
        assert code == 2
        assert "not both" in err

    def test_bad_jobs_rejected(self, capsys, instance_files):
        code, _, err = run(
            capsys, "curvature", instance_files["appendix1"], "--jobs", "0"
        )
        assert code == 2
        assert "--jobs" in err
