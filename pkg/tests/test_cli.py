import json

import pytest

from paretoscope.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_problems_lists_builtins(capsys):
    code, out, _ = run(capsys, "problems")
    assert code == 0
    assert out.splitlines()[0].startswith("mimo_case_study:")
    assert out.splitlines()[1].startswith("toy_simplex:")


def test_unknown_flag_usage_error(capsys):
    code, _, _ = run(capsys, "problems", "--frobnicate")
    assert code == 1


def test_missing_subcommand_usage_error(capsys):
    code, _, _ = run(capsys)
    assert code == 1


def test_unknown_problem_user_error(capsys):
    code, _, err = run(capsys, "utopia", "--problem", "nope")
    assert code == 1
    assert "error" in err


def test_sample_direction_writes_front(tmp_path, capsys):
    out_file = tmp_path / "front.json"
    code, out, _ = run(
        capsys, "sample", "--problem", "toy_simplex", "--method", "direction",
        "--count", "8", "--eps", "1e-6", "--out", str(out_file),
    )
    assert code == 0
    doc = json.loads(out_file.read_text())
    assert len(doc["points"]) == 8
    for p in doc["points"]:
        total = sum(v * p["lambda"] for v in p["direction"])
        assert abs(total - 1.0) <= 2e-6
    assert "direction_search: 8 points" in out


def test_sample_byte_identical_across_runs(tmp_path, capsys):
    f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
    args = ("sample", "--problem", "toy_simplex", "--method", "direction",
            "--count", "4", "--eps", "1e-5")
    code1, out1, _ = run(capsys, *args, "--out", str(f1))
    code2, out2, _ = run(capsys, *args, "--out", str(f2))
    assert code1 == code2 == 0
    assert f1.read_bytes() == f2.read_bytes()
    assert out1.replace(str(f1), "F") == out2.replace(str(f2), "F")


def test_sample_csv_extension_switches_format(tmp_path, capsys):
    out_file = tmp_path / "front.csv"
    code, _, _ = run(
        capsys, "sample", "--problem", "toy_simplex", "--method", "grid",
        "--out", str(out_file),
    )
    assert code == 0
    assert out_file.read_text().splitlines()[0] == "x_1,x_2,g_1,g_2,lambda,boundary_kind"


def test_scalarize_chebyshev(tmp_path, capsys):
    out_file = tmp_path / "sol.json"
    code, out, _ = run(
        capsys, "scalarize", "--problem", "toy_simplex", "--goal", "chebyshev",
        "--weights", "1,1", "--out", str(out_file),
    )
    assert code == 0
    doc = json.loads(out_file.read_text())
    assert doc["x"] == [0.5, 0.5]
    assert json.loads(out)["x"] == [0.5, 0.5]


def test_scalarize_utopia_weights(capsys):
    code, out, _ = run(
        capsys, "scalarize", "--problem", "toy_simplex", "--goal", "chebyshev",
        "--weights", "utopia",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["goal"]["weights"] == [1.0, 1.0]
    assert doc["x"] == [0.5, 0.5]


def test_scalarize_distance_requires_ref(capsys):
    code, _, err = run(capsys, "scalarize", "--problem", "toy_simplex",
                       "--goal", "distance")
    assert code == 1 and "ref" in err


def test_scalarize_stdout_deterministic(capsys):
    args = ("scalarize", "--problem", "toy_simplex", "--goal", "sum", "--weights", "1,2")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_utopia_json(capsys):
    code, out, _ = run(capsys, "utopia", "--problem", "toy_simplex")
    assert code == 0
    doc = json.loads(out)
    assert doc["values"] == [1.0, 1.0]
    assert doc["units"] == ["unit", "unit"]


def test_params_override(tmp_path, capsys):
    cfg = tmp_path / "p.cfg"
    cfg.write_text("N_max = 100\n")
    code, out, _ = run(capsys, "problems", "--params", str(cfg))
    assert code == 0


def test_bad_params_file(tmp_path, capsys):
    cfg = tmp_path / "p.cfg"
    cfg.write_text("nonsense_key = 3\n")
    code, _, err = run(capsys, "utopia", "--problem", "mimo_case_study",
                       "--params", str(cfg))
    assert code == 1 and "unknown parameter" in err
