"""Catalog loading, schema strictness, certification, family matching."""

import copy
import json
from fractions import Fraction

import pytest

from hyperpi.catalog import (
    CLASS_SHAPES,
    catalog_index,
    load_anomalies,
    load_catalog,
    match_to_theorem,
    verify_entry,
)
from hyperpi.errors import NoMatch, SchemaError

EXPECTED_CLASS_COUNTS = {
    "pi^-2": 9,
    "pi^2": 7,
    "pi^2/Gamma^3": 12,
    "Gamma^3/pi^2": 21,
    "pi^-1": 25,
    "pi": 16,
    "BBP": 10,
}


@pytest.fixture(scope="module")
def raw_doc():
    import importlib.resources

    text = (
        importlib.resources.files("hyperpi").joinpath("data/catalog.json").read_text()
    )
    return json.loads(text)


def write_doc(tmp_path, doc, name="catalog.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


def test_packaged_catalog_shape(catalog_entries):
    assert len(catalog_entries) == 100
    ids = [e.entry_id for e in catalog_entries]
    assert len(set(ids)) == 100
    counts = {}
    for e in catalog_entries:
        counts[e.family_class] = counts.get(e.family_class, 0) + 1
    assert counts == EXPECTED_CLASS_COUNTS
    assert set(counts) == set(CLASS_SHAPES)
    for e in catalog_entries:
        assert e.theorem in ("A", "B")
        assert len(e.spec.poly) <= 4  # stored weight polynomials are cubic at most


def test_anomaly_sidecar_is_empty():
    assert load_anomalies() == []


def test_schema_rejections(raw_doc, tmp_path):
    def expect_schema_error(mutate, name):
        doc = copy.deepcopy(raw_doc)
        mutate(doc)
        path = write_doc(tmp_path, doc, f"{name}.json")
        with pytest.raises(SchemaError):
            load_catalog(path)

    expect_schema_error(lambda d: d.__setitem__("version", 2), "bad-version")
    expect_schema_error(lambda d: d.__setitem__("extra", []), "extra-key")
    expect_schema_error(lambda d: d.pop("version"), "missing-version")
    expect_schema_error(lambda d: d["entries"][0].pop("poly"), "missing-field")
    expect_schema_error(
        lambda d: d["entries"][0].__setitem__("note", "x"), "extra-field"
    )
    expect_schema_error(
        lambda d: d["entries"][1].__setitem__("id", d["entries"][0]["id"]),
        "duplicate-id",
    )
    expect_schema_error(
        lambda d: d["entries"][0].__setitem__("class", "pi^3"), "unknown-class"
    )
    expect_schema_error(
        lambda d: d["entries"][0].__setitem__("theorem", "C"), "unknown-theorem"
    )
    expect_schema_error(
        lambda d: d["entries"][0].__setitem__("params", ["1/2", "1/2"]),
        "short-params",
    )
    expect_schema_error(
        lambda d: d["entries"][0].__setitem__("poly", ["1", "1", "1", "1", "1"]),
        "quartic-poly",
    )
    expect_schema_error(
        lambda d: d["entries"][0].__setitem__("sign", 0), "bad-sign"
    )
    expect_schema_error(
        lambda d: d["entries"][0].__setitem__("base", 1), "bad-base"
    )
    expect_schema_error(
        lambda d: d["entries"][0].__setitem__("start", -1), "bad-start"
    )
    expect_schema_error(
        lambda d: d["entries"][0].__setitem__("attribution", 7), "bad-attribution"
    )


def test_floats_rejected_in_json(raw_doc, tmp_path):
    doc = copy.deepcopy(raw_doc)
    doc["entries"][0]["poly"] = ["1.5", "2"]
    with pytest.raises(SchemaError):
        load_catalog(write_doc(tmp_path, doc, "float-string.json"))
    text = json.dumps(copy.deepcopy(raw_doc))
    text = text.replace('"version": 1', '"version": 1, "weight": 1.25', 1)
    path = tmp_path / "float-literal.json"
    path.write_text(text)
    with pytest.raises(SchemaError):
        load_catalog(path)


def test_class_shape_consistency_enforced(raw_doc, tmp_path):
    # moving a plain-pi closed form onto a pi^2 entry must fail the class check
    doc = copy.deepcopy(raw_doc)
    by_id = {e["id"]: e for e in doc["entries"]}
    pi2_entry = by_id["s3.2-ex1"]
    plain_pi_entry = by_id["s3.6-ex1"]
    pi2_entry["lhs"] = plain_pi_entry["lhs"]
    with pytest.raises(SchemaError):
        load_catalog(write_doc(tmp_path, doc, "class-mismatch.json"))


def test_gamma_class_requires_gamma_leaf(raw_doc, tmp_path):
    doc = copy.deepcopy(raw_doc)
    by_id = {e["id"]: e for e in doc["entries"]}
    by_id["s3.3-ex1"]["lhs"] = {"op": "mul", "args": [{"rat": "2"}, {"pi": 2}]}
    with pytest.raises(SchemaError):
        load_catalog(write_doc(tmp_path, doc, "gamma-missing.json"))


def test_verify_entry_samples(catalog_by_id):
    for eid in ("s3.1-ex1", "s3.3-ex1", "s3.4-ex1", "s3.5-ex1", "s3.7-ex1"):
        check = verify_entry(catalog_by_id[eid], 60)
        assert check.passed, f"{eid}: error exponent {check.error_exponent}"
        assert check.error_exponent is None or check.error_exponent < -60


def test_verify_entry_error_bound_is_honest(catalog_by_id, raw_doc, tmp_path):
    # corrupting the leading weight coefficient must be caught immediately
    doc = copy.deepcopy(raw_doc)
    target = next(e for e in doc["entries"] if e["id"] == "s3.1-ex1")
    target["poly"][0] = "4"
    entries = load_catalog(write_doc(tmp_path, doc, "corrupt.json"))
    broken = catalog_index(entries)["s3.1-ex1"]
    check = verify_entry(broken, 50)
    assert not check.passed
    assert check.error_exponent is not None and check.error_exponent > -3


def test_match_samples(catalog_by_id):
    match = match_to_theorem(catalog_by_id["s3.1-ex1"])
    assert match.mode == "exact"
    assert match.scale == Fraction(32)
    match_b = match_to_theorem(catalog_by_id["s3.6-ex1"])
    assert match_b.tag == "B" and match_b.mode == "exact"


def test_match_numeric_fallback_for_restructured_entry(catalog_by_id):
    # the one catalog entry stored with a folded-in additive constant cannot
    # match termwise; its totals stand in a rational ratio instead
    entry = catalog_by_id["s3.7-ex9"]
    assert entry.spec.additive != 0
    match = match_to_theorem(entry)
    assert match.mode == "numeric"
    assert match.scale != 0


def test_match_rejects_corrupted_terms(catalog_by_id, raw_doc, tmp_path):
    doc = copy.deepcopy(raw_doc)
    target = next(e for e in doc["entries"] if e["id"] == "s3.2-ex1")
    target["poly"][1] = "65"
    entries = load_catalog(write_doc(tmp_path, doc, "corrupt-match.json"))
    broken = catalog_index(entries)["s3.2-ex1"]
    with pytest.raises(NoMatch):
        match_to_theorem(broken)


def test_match_rejects_wrong_theorem_tag(catalog_by_id, raw_doc, tmp_path):
    # flip the tag on a plain (non-restructured) entry: termwise matching
    # fails and no numeric fallback is available
    doc = copy.deepcopy(raw_doc)
    target = next(e for e in doc["entries"] if e["id"] == "s3.6-ex1")
    assert target["theorem"] == "B"
    target["theorem"] = "A"
    entries = load_catalog(write_doc(tmp_path, doc, "wrong-tag.json"))
    broken = catalog_index(entries)["s3.6-ex1"]
    with pytest.raises(NoMatch):
        match_to_theorem(broken)


def test_load_anomalies_validates_records(tmp_path):
    path = tmp_path / "anomalies.json"
    path.write_text(json.dumps([{"status": "anomaly", "id": "s3.1-ex1"}]))
    assert len(load_anomalies(path)) == 1
    path.write_text(json.dumps([{"status": "fine", "id": "s3.1-ex1"}]))
    with pytest.raises(SchemaError):
        load_anomalies(path)
    path.write_text(json.dumps({"status": "anomaly"}))
    with pytest.raises(SchemaError):
        load_anomalies(path)
