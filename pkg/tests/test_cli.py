"""Command line interface: exit codes, report determinism, negative controls."""

import copy
import importlib.resources
import json

import pytest

from hyperpi.cli import main


@pytest.fixture(scope="module")
def raw_doc():
    text = (
        importlib.resources.files("hyperpi").joinpath("data/catalog.json").read_text()
    )
    return json.loads(text)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_dougall_ok(capsys):
    code, out, _ = run(
        capsys, "verify", "dougall", "--trials", "5", "--nmax", "6", "--seed", "1"
    )
    assert code == 0
    assert "PASS" in out


def test_verify_inversion_ok(capsys):
    code, out, _ = run(
        capsys, "verify", "inversion", "--trials", "3", "--nmax", "6", "--seed", "2"
    )
    assert code == 0
    assert "PASS" in out


def test_verify_inversion_rejects_unknown_pair(capsys):
    code, _, err = run(capsys, "verify", "inversion", "--pairs", "fancy")
    assert code == 1
    assert "usage error" in err


def test_verify_chain_ok(capsys):
    code, out, _ = run(
        capsys, "verify", "chain", "--trials", "2", "--nmax", "3", "--seed", "3"
    )
    assert code == 0
    assert "PASS" in out


def test_verify_catalog_single_entry(capsys):
    code, out, _ = run(
        capsys, "verify", "catalog", "--id", "s3.1-ex1", "--digits", "40"
    )
    assert code == 0
    assert "ok s3.1-ex1" in out


def test_verify_catalog_unknown_id(capsys):
    code, _, err = run(capsys, "verify", "catalog", "--id", "nope")
    assert code == 1
    assert "unknown catalog entry id" in err


def test_missing_subcommand(capsys):
    assert run(capsys)[0] == 1
    assert run(capsys, "verify")[0] == 1


def test_unknown_subcommand(capsys):
    assert run(capsys, "frobnicate")[0] == 1


def test_json_reports_are_byte_deterministic(capsys):
    args = (
        "verify", "dougall", "--trials", "4", "--nmax", "5", "--seed", "9",
        "--format", "json",
    )
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    report = json.loads(out1)
    assert report["passed"] is True
    assert report["timings"] is None
    assert report["parameters"]["seed"] == 9


def test_pi_digits(capsys):
    code, out, _ = run(capsys, "pi", "--entry", "s3.1-ex1", "--digits", "30")
    assert code == 0
    assert out.strip() == "3.141592653589793238462643383280"


def test_pi_rejects_gamma_entry(capsys):
    code, _, err = run(capsys, "pi", "--entry", "s3.3-ex1", "--digits", "20")
    assert code == 2
    assert "UnsupportedLhs" in err


def test_bbp_subcommand(capsys):
    code, out, _ = run(capsys, "bbp", "--pos", "0", "--count", "16")
    assert code == 0
    assert out.strip() == "243F6A8885A308D3"
    code, _, err = run(capsys, "bbp", "--pos", "-1", "--count", "4")
    assert code == 1


def test_rate_subcommand(capsys):
    code, out, _ = run(
        capsys, "rate", "--id", "s3.1-ex1", "--k", "500", "--format", "json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["relative_deviation"] < 0.02


def test_derive_subcommand(capsys):
    code, out, _ = run(
        capsys,
        "derive", "--theorem", "A", "--params", "1/2,1/2,1/2,1/2",
        "--terms", "30", "--digits", "20",
    )
    assert code == 0
    assert "partial sum" in out
    code, _, err = run(capsys, "derive", "--theorem", "A", "--params", "1,2")
    assert code == 1


def test_anomaly_sidecar_exit_code(capsys, tmp_path):
    sidecar = tmp_path / "anomalies.json"
    sidecar.write_text(json.dumps([{"status": "anomaly", "id": "s3.1-ex1"}]))
    code, out, _ = run(
        capsys,
        "verify", "catalog", "--id", "s3.1-ex1", "--digits", "30",
        "--anomalies", str(sidecar),
    )
    assert code == 3
    assert "ANOMALY" in out


def write_mutated_catalog(raw_doc, tmp_path, name, mutate):
    doc = copy.deepcopy(raw_doc)
    mutate({e["id"]: e for e in doc["entries"]})
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_negative_control_mutated_poly(capsys, raw_doc, tmp_path):
    path = write_mutated_catalog(
        raw_doc, tmp_path, "poly.json",
        lambda by_id: by_id["s3.1-ex1"]["poly"].__setitem__(0, "4"),
    )
    code, out, _ = run(
        capsys,
        "verify", "catalog", "--id", "s3.1-ex1", "--digits", "40",
        "--catalog", path,
    )
    assert code == 2
    assert "FAIL" in out


def test_negative_control_wrong_theorem_tag(capsys, raw_doc, tmp_path):
    path = write_mutated_catalog(
        raw_doc, tmp_path, "tag.json",
        lambda by_id: by_id["s3.6-ex1"].__setitem__("theorem", "A"),
    )
    code, out, _ = run(
        capsys,
        "verify", "catalog", "--id", "s3.6-ex1", "--digits", "40",
        "--catalog", path,
    )
    assert code == 2
    assert "NoMatch" in out


def test_negative_control_corrupted_bbp_weight(capsys, raw_doc, tmp_path):
    def corrupt(by_id):
        entry = by_id["s3.7-ex1"]
        entry["poly"][0] = str(int(entry["poly"][0]) + 8)

    path = write_mutated_catalog(raw_doc, tmp_path, "bbp.json", corrupt)
    code, out, _ = run(
        capsys,
        "verify", "catalog", "--id", "s3.7-ex1", "--digits", "40",
        "--catalog", path,
    )
    assert code == 2
    assert "FAIL" in out
