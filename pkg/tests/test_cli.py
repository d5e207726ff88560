import json
from pathlib import Path

import numpy as np
import pytest

from althecke.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_tableaux_level_one(capsys):
    code, out, _ = run(capsys, "tableaux", "--n", "3", "--level", "1",
                       "--e", "5")
    assert code == 0
    assert "3 shapes, 4 standard tableaux" in out


def test_tableaux_level_two(capsys):
    code, out, _ = run(capsys, "tableaux", "--n", "2", "--level", "2",
                       "--e", "5", "--kappa", "1,-1")
    assert code == 0
    assert "5 shapes" in out


def test_tableaux_empty(capsys):
    code, out, _ = run(capsys, "tableaux", "--n", "0", "--level", "1",
                       "--e", "5")
    assert code == 0
    assert "1 shapes, 1 standard tableaux" in out


def test_tableaux_json_lists_classes(capsys):
    code, out, _ = run(capsys, "tableaux", "--n", "2", "--level", "1",
                       "--e", "5", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["total_tableaux"] == 2
    assert data["shape_classes"] == [["(1,1)", "(2)"]]
    assert len(data["residue_classes"]) > 0


def test_specht_block_json_matches_unit_matrices(capsys):
    code, out, _ = run(capsys, "specht", "--n", "3", "--xi-one",
                       "--shape", "2,1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    t1 = np.array([[complex(*z) for z in row] for row in data["generators"]["T1"]])
    t2 = np.array([[complex(*z) for z in row] for row in data["generators"]["T2"]])
    s3 = np.sqrt(3)
    assert np.allclose(t1, np.diag([1, -1]))
    assert np.allclose(t2, np.array([[-0.5, -s3 * 1j / 2],
                                     [s3 * 1j / 2, 0.5]]))


def test_specht_single_row(capsys):
    code, out, _ = run(capsys, "specht", "--n", "3", "--e", "7",
                       "--shape", "3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data["basis"]) == 1


def test_specht_unknown_shape_errors(capsys):
    code, _, err = run(capsys, "specht", "--n", "3", "--e", "7",
                       "--shape", "4,2")
    assert code == 1
    assert "size" in err


def test_verify_passes_small(capsys):
    code, out, _ = run(capsys, "verify", "--n", "3", "--e", "7")
    assert code == 0
    assert "OVERALL: PASS" in out
    assert "sign_reference" in out


def test_verify_detects_non_semisimple(capsys):
    code, out, _ = run(capsys, "verify", "--n", "3", "--e", "3")
    assert code == 2
    assert "not semisimple" in out


def test_verify_rejects_asymmetric_multicharge(capsys):
    code, _, err = run(capsys, "verify", "--n", "2", "--level", "2",
                       "--e", "7", "--kappa", "2,0")
    assert code == 1
    assert "symmetric" in err


def test_verify_json_contains_reference_example(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--e", "7",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    ref = data["verify"]["sign_reference"]
    assert ref["printed_pair_braid_violation"] > 0.1
    assert ref["derived_braid_residual"] < 1e-12


def test_classify_unit_parameter_traces(capsys):
    code, out, _ = run(capsys, "classify", "--n", "3", "--xi-one",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data["irreps"]) == 3
    assert all(ir["dim"] == 1 for ir in data["irreps"])
    traces = [complex(*ir["t1t2_trace"]) for ir in data["irreps"]]
    vals = sorted((round(z.real, 4), round(z.imag, 4)) for z in traces)
    s3 = round(np.sqrt(3) / 2, 4)
    assert vals == [(-0.5, -s3), (-0.5, s3), (1.0, 0.0)]


def test_classify_four_strands_dims(capsys):
    code, out, _ = run(capsys, "classify", "--n", "4", "--e", "7",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert sorted(ir["dim"] for ir in data["irreps"]) == [1, 1, 1, 3]


def test_classify_level_two_sum(capsys):
    code, out, _ = run(capsys, "classify", "--n", "3", "--level", "2",
                       "--e", "7", "--kappa", "2,-2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["checks"]["sum_squares"]["computed"] == 24


def test_classify_non_semisimple_exits_two(capsys):
    code, _, err = run(capsys, "classify", "--n", "3", "--level", "2",
                       "--e", "7", "--kappa", "1,-1")
    assert code == 2


def test_guard_refuses_large_instances(capsys):
    code, _, err = run(capsys, "verify", "--n", "9", "--e", "11")
    assert code == 1
    assert "guard" in err


def test_unknown_flag_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--n", "3", "--e", "7",
                       "--bogus")
    assert code == 1


def test_report_writes_files(tmp_path, capsys):
    out = tmp_path / "rep"
    code, stdout, _ = run(capsys, "report", "--n", "3", "--e", "7",
                          "--out", str(out))
    assert code == 0
    names = {p.name for p in out.iterdir()}
    assert {"checks.csv", "classification.csv", "residuals.png",
            "dimensions.png", "report.json"} <= names
    assert "sign-reference" in stdout
    payload = json.loads((out / "report.json").read_text())
    assert payload["classification"]["checks"]["sum_squares"]["pass"]
    text = (out / "classification.csv").read_text()
    assert text.splitlines()[0].startswith("label,kind,dim")


def test_outputs_are_byte_stable(tmp_path, capsys):
    f1 = tmp_path / "a.json"
    f2 = tmp_path / "b.json"
    for f in (f1, f2):
        code = main(["classify", "--n", "3", "--e", "7", "--format", "json",
                     "--out", str(f)])
        assert code == 0
    assert f1.read_bytes() == f2.read_bytes()
