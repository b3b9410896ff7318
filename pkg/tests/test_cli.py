import json
import subprocess
import sys

import pytest

from greygraph.cli import cli_main


def run(capsys, *args):
    code = cli_main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_markdown(capsys, data_dir):
    code, out, _ = run(capsys, "solve", "--input", str(data_dir / "example4.json"), "--report", "markdown")
    assert code == 0
    assert "| X1 | 0.5731 | 0.6667 | 0.3439 | 3 |" in out
    assert "X3 ≻ X2 ≻ X1" in out


def test_solve_csv_json_output(capsys, data_dir, tmp_path):
    dest = tmp_path / "report.json"
    dot = tmp_path / "attrs.dot"
    code, _, _ = run(
        capsys, "solve", "--input", str(data_dir / "example4.csv"), "--report", "json",
        "--output", str(dest), "--emit-dot", str(dot),
    )
    assert code == 0
    doc = json.loads(dest.read_text())
    assert doc["order"] == ["X3", "X2", "X1"]
    assert doc["scores"][2]["delta"] == pytest.approx(0.5479, abs=1e-4)
    assert dot.read_text().count(" -- ") == 3


def test_solve_reversed_csv(capsys, data_dir):
    code, out, err = run(capsys, "solve", "--input", str(data_dir / "reversed.csv"))
    assert code == 1
    assert "row 2, column 2" in err
    assert out == ""


def test_solve_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "solve", "--input", str(tmp_path / "nope.json"))
    assert code == 1 and "error" in err


def test_solve_clamp_and_strict(capsys, data_dir):
    code, out, err = run(capsys, "solve", "--input", str(data_dir / "example4.json"), "--clamp", "--report", "json")
    assert code == 0
    assert json.loads(out)["propagated"]["kernel"][2][1] == 1.0
    assert "clamped" in err
    code, _, err = run(
        capsys, "solve", "--input", str(data_dir / "example4.json"), "--clamp", "--strict-validation"
    )
    assert code == 1 and "clamped" in err


def test_graph_validate(capsys, data_dir):
    code, out, _ = run(capsys, "graph", "validate", "--input", str(data_dir / "ex21.json"))
    assert code == 0 and out.strip() == "valid"


def test_graph_validate_invalid(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"vertices": {"p": [0.6, 0.2], "q": [0.5, 0.3]}, "edges": [["p", "q", 0.7, 0.1]]}))
    code, out, _ = run(capsys, "graph", "validate", "--input", str(f))
    assert code == 1
    assert "kernel" in out and "greyness" in out


def test_graph_strong(capsys, data_dir):
    code, out, _ = run(capsys, "graph", "strong", "--input", str(data_dir / "ex22_vertices.json"))
    assert code == 0
    edges = {(p, q): (k, g) for p, q, k, g in json.loads(out)["edges"]}
    assert edges[("x1", "x2")] == (0.3, 0.6)
    assert edges[("x3", "x4")] == (0.4, 0.7)


@pytest.mark.parametrize(
    "op, src, prefix, n_vertices",
    [
        ("union", "ex21.json", "x", 6),  # x1 shared, x9 new
        ("sum", "ex22_vertices.json", "y", 6),
        ("product", "ex21.json", "y", 10),
    ],
)
def test_graph_binary_ops(capsys, data_dir, tmp_path, op, src, prefix, n_vertices):
    other = tmp_path / "other.json"
    other.write_text(json.dumps({"vertices": {f"{prefix}1": [0.2, 0.5], f"{prefix}9": [0.4, 0.4]}, "edges": []}))
    src = data_dir / src
    code, out, _ = run(capsys, "graph", op, "--input", str(src), "--other", str(other))
    assert code == 0
    assert len(json.loads(out)["vertices"]) == n_vertices


def test_graph_sum_overlap_is_input_error(capsys, data_dir):
    f = str(data_dir / "ex21.json")
    code, _, err = run(capsys, "graph", "sum", "--input", f, "--other", f)
    assert code == 1 and "disjoint" in err


def test_graph_dot_output(capsys, data_dir):
    code, out, _ = run(capsys, "graph", "strong", "--input", str(data_dir / "ex22_vertices.json"), "--dot")
    assert code == 0 and '"x1" -- "x2" [label="(0.3000,0.6000)"];' in out


def test_convert(capsys):
    code, out, _ = run(capsys, "convert", "to-grey", "0.4..0.5")
    assert code == 0
    (k, g), = json.loads(out)
    assert k == pytest.approx(0.45) and g == pytest.approx(0.1)
    code, out, _ = run(capsys, "convert", "to-interval", "0.75,0.5")
    assert json.loads(out) == [[0.5, 1.0]]


def test_convert_errors(capsys):
    assert run(capsys, "convert", "to-grey", "0.6..0.5")[0] == 1
    assert run(capsys, "convert", "to-interval", "0.5,-1")[0] == 1
    assert run(capsys, "convert", "to-grey", "abc")[0] == 1


def test_bad_usage(capsys):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys)[0] == 1


def test_internal_failure_exit_code(capsys, data_dir, monkeypatch):
    import greygraph.cli as cli

    def broken(*a, **k):
        raise RuntimeError("boom")

    monkeypatch.setattr(cli, "solve", broken)
    code, _, err = run(capsys, "solve", "--input", str(data_dir / "example4.json"))
    assert code == 2 and "boom" in err


def test_module_entry_point(data_dir):
    out = subprocess.run(
        [sys.executable, "-m", "greygraph", "solve", "--input", str(data_dir / "example4.json")],
        capture_output=True, text=True,
    )
    assert out.returncode == 0
    assert "Order: X3 > X2 > X1" in out.stdout
