from __future__ import annotations

import json
import subprocess
import sys

import pytest

from lattice_lab.cli import canonical, digest, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_weights(capsys):
    code, out, _ = run(capsys, "weights")
    data = json.loads(out)
    assert code == 0
    assert data["weights"]["w1"] == [4, 9, 7, 14, 12, 10, 8, 6, 4, 2]
    assert out.strip() == canonical(data)


def test_classify(capsys):
    code, out, _ = run(capsys, "classify-configs")
    data = json.loads(out)
    assert code == 0
    assert data["odd"] == ["12A1", "8A1+D4", "6A1+D6", "5A1+E7"]
    assert data["even"] == ["3D4", "D4+D8", "D4+E8", "D12"]


def test_disc_n(capsys):
    code, out, _ = run(capsys, "disc", "--lattice", "N")
    data = json.loads(out)
    assert data["det"] == -2**20 and data["sigma"] == 10
    assert data["n0"] == {"arf": 1, "dim": 20, "witt_index_f2": 9}


def test_disc_root_type_and_unknown(capsys):
    code, out, _ = run(capsys, "disc", "--lattice", "D6")
    assert json.loads(out)["two_elementary"]
    code, _, err = run(capsys, "disc", "--lattice", "Q7")
    assert code == 2 and "unknown lattice" in err


def test_usage_errors(capsys):
    code, _, err = run(capsys, "nonsense")
    assert code == 2 and "usage" in err
    code, _, err = run(capsys, "weights", "--bogus")
    assert code == 2
    code, _, err = run(capsys, "superlattices", "--lattice", "X")
    assert code == 2


def test_tsv(capsys):
    code, out, _ = run(capsys, "--tsv", "norm4")
    key, value = out.strip().split("\t")
    assert key == "solutions" and len(json.loads(value)) == 2


def test_manifest_digest(capsys):
    _, plain, _ = run(capsys, "avectors")
    _, withm, _ = run(capsys, "--manifest", "avectors")
    m = json.loads(withm)["manifest"]
    assert m["digest"] == digest(json.loads(plain))
    assert m["seed"] == 0 and m["command"] == "avectors"


def test_superlattices_m(capsys):
    code, out, _ = run(capsys, "superlattices", "--lattice", "M")
    data = json.loads(out)
    assert code == 0 and data["classes"] == 495 and data["missing"] == []


def test_period_sample_and_check(capsys, tmp_path):
    path = tmp_path / "p.json"
    code, out, _ = run(capsys, "--seed", "5", "period", "sample", "--count", "2", "--out", str(path))
    assert code == 0
    code, out, _ = run(capsys, "period", "check", "--in", str(path))
    reports = json.loads(out)["reports"]
    assert code == 0 and len(reports) == 2 and all(r["agree"] for r in reports)


def test_period_sample_is_byte_identical(capsys):
    _, a, _ = run(capsys, "--seed", "9", "period", "sample", "--defect", "3,7")
    _, b, _ = run(capsys, "--seed", "9", "period", "sample", "--defect", "3,7")
    assert a == b


def test_period_sample_failure_exit_code(capsys):
    code, out, _ = run(capsys, "period", "sample", "--field-degree", "5")
    assert code == 1 and "error" in json.loads(out)


def test_period_check_needs_input(capsys):
    code, _, err = run(capsys, "period", "check")
    assert code == 2


def test_census_from_cache(capsys):
    code, out, _ = run(capsys, "census")
    data = json.loads(out)
    assert code == 0
    assert data["summary"]["class_count"] == 171
    assert data["ramification"][0] == 9 * 512


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "lattice_lab", "weights"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["pairings"][0][0] == 4


def test_canonical_rejects_floats():
    with pytest.raises(TypeError):
        canonical({"x": 0.5})
