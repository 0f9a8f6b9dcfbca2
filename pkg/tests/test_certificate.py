"""Certificate assembly: record set, golden output, filters, failure flow."""

import copy
import functools
import json
from pathlib import Path

import pytest

import enricert
from enricert.certificate import (
    CHECK_GROUPS,
    Certificate,
    CheckRecord,
    FILTERABLE_GROUPS,
    SCHEMA,
    builtin_records,
    document_records,
    filter_records,
    run_checks,
    verify_all,
)
from enricert.ingest import ingest, load_document, serialize_document

FIXTURES = Path(enricert.__file__).parent / "fixtures"

BUILTIN_IDS = [
    "support-size",
    "family-1-construction", "family-2-construction", "family-3-construction",
    "equation-invariance-1", "equation-invariance-2", "equation-invariance-3",
    "map-order-1", "map-order-2", "map-order-3",
    "square-relation",
    "biform-ratio-1", "biform-index-1",
    "biform-ratio-2", "biform-index-2",
    "biform-ratio-3", "biform-index-3",
    "ratio-multiplicativity",
    "specialization-to-family-2", "specialization-one-parameter",
    "k3-cover-1", "k3-cover-2", "k3-cover-3",
    "bis-condition-1", "bis-condition-2",
    "epsilon-freeness-1", "epsilon-freeness-2", "epsilon-freeness-3",
    "k3-deck-ratio",
    "k3-lift-ratio-1", "k3-lift-ratio-1-flipped",
    "k3-lift-ratio-2", "k3-lift-ratio-2-flipped",
    "k4-normal-form", "k4-monomial-restriction",
    "fixed-points-double-negation", "fixed-points-double-inversion",
    "fixed-points-product", "fixed-points-ruling-swap",
    "lefschetz-case-b", "lefschetz-case-a-false",
    "lattice-u2", "lattice-trace2-identity",
    "action-homothety-1", "action-homothety-2", "action-homothety-3",
    "action-diagonal_base_scaling-3",
    "moduli-number-1", "moduli-number-2", "moduli-number-3",
    "side-condition-square-root", "action-completeness-assumption",
    "moduli-dimension-1", "moduli-dimension-2", "moduli-dimension-3",
    "transcendental-rank-assumption",
    "picard-bound",
    "admissible-pairs", "pruning-trace", "allowed-orders",
    "rank-bound-assumption",
]

INFO_IDS = {
    "k4-monomial-restriction",
    "side-condition-square-root",
    "action-completeness-assumption",
    "transcendental-rank-assumption",
    "rank-bound-assumption",
}


@functools.lru_cache(maxsize=1)
def shared_cert():
    # records are read-only for these tests, so one run serves several
    return verify_all()


@functools.lru_cache(maxsize=1)
def shared_builtin_records():
    return tuple(builtin_records())


def test_builtin_run_is_green():
    cert = shared_cert()
    assert cert.overall == "pass"
    assert cert.first_failure is None
    assert [r.id for r in cert.records] == BUILTIN_IDS
    assert sum(1 for r in cert.records if r.result == "info") == 5
    assert all(r.result in ("pass", "info") for r in cert.records)


def test_info_records_are_the_declared_assumptions():
    cert = shared_cert()
    assert {r.id for r in cert.records if r.result == "info"} == INFO_IDS
    for r in cert.records:
        if r.id in INFO_IDS:
            assert r.value is None and r.witness is None


def test_every_record_is_well_formed():
    cert = shared_cert()
    seen = set()
    for r in cert.records:
        assert r.id not in seen
        seen.add(r.id)
        assert r.group in CHECK_GROUPS
        assert r.family in (None, 1, 2, 3)
        assert r.statement.strip()
        assert isinstance(r.inputs, dict)


def test_record_dict_key_order_is_fixed():
    record = shared_cert().records[0]
    assert list(record.as_dict().keys()) == [
        "id", "group", "family", "result", "inputs", "value", "witness",
        "statement",
    ]


def test_golden_certificate_is_byte_identical():
    golden = (FIXTURES / "golden_certificate.json").read_text(encoding="utf-8")
    assert verify_all().to_json() == golden
    # a second run reproduces the bytes: no clocks, no iteration-order leaks
    assert verify_all().to_json() == golden


def test_certificate_envelope():
    data = json.loads(shared_cert().to_json())
    assert list(data.keys()) == ["schema", "engine_version", "overall", "records"]
    assert data["schema"] == SCHEMA
    assert data["engine_version"] == enricert.__version__
    assert data["overall"] == "pass"


def test_record_constructor_validation():
    with pytest.raises(ValueError, match="group"):
        CheckRecord("x", "nonsense", None, "pass", {}, None, None, "s")
    with pytest.raises(ValueError, match="result"):
        CheckRecord("x", "order", None, "maybe", {}, None, None, "s")
    with pytest.raises(ValueError, match="statement"):
        CheckRecord("x", "order", None, "pass", {}, None, None, "")


def test_overall_fails_on_any_failing_record():
    good = CheckRecord("a", "order", None, "pass", {}, None, None, "s")
    bad = CheckRecord("b", "order", None, "fail", {}, None, "w", "s")
    note = CheckRecord("c", "order", None, "info", {}, None, None, "s")
    cert = Certificate([good, bad, note])
    assert cert.overall == "fail"
    assert cert.first_failure is bad
    assert Certificate([good, note]).overall == "pass"


# -- filters ------------------------------------------------------------------


def test_filter_by_family():
    records = filter_records(list(shared_builtin_records()), family="2")
    assert records and all(r.family == 2 for r in records)
    assert {"map-order-2", "biform-index-2", "moduli-dimension-2"} <= {
        r.id for r in records
    }


def test_filter_by_check_group():
    records = filter_records(list(shared_builtin_records()), check="invariance")
    assert [r.id for r in records] == [
        "equation-invariance-1", "equation-invariance-2", "equation-invariance-3",
    ]
    for group in FILTERABLE_GROUPS:
        subset = filter_records(list(shared_builtin_records()), check=group)
        assert subset and all(r.group == group for r in subset)


def test_filter_combines_family_and_check():
    records = filter_records(list(shared_builtin_records()), family="3", check="moduli")
    assert records and all(r.family == 3 and r.group == "moduli" for r in records)


def test_filter_rejects_unfilterable_group():
    with pytest.raises(ValueError, match="unknown check group"):
        filter_records(list(shared_builtin_records()), check="classification")


def test_run_checks_applies_filters():
    cert = run_checks(family="1", check="order")
    assert cert.overall == "pass"
    assert [r.id for r in cert.records] == ["map-order-1"]


# -- document records ---------------------------------------------------------


def test_fixture_document_records():
    doc = ingest(str(FIXTURES / "families.json"))
    cert = verify_all(document=doc)
    assert cert.overall == "pass"
    custom = [r.id for r in cert.records if r.id.startswith("custom-")]
    assert custom == [
        "custom-family1-construction", "custom-family1-cover",
        "custom-family2-construction", "custom-family2-cover",
        "custom-family3-construction", "custom-family3-cover",
        "custom-invariance-aut_4_2",
        "custom-invariance-aut_8_4",
        "custom-invariance-aut_8_2",
        "custom-order-aut_4_2", "custom-ratio-aut_4_2",
        "custom-order-aut_8_4", "custom-ratio-aut_8_4",
        "custom-order-aut_8_2", "custom-ratio-aut_8_2",
        "custom-action-family1-homothety", "custom-moduli-family1",
        "custom-action-family2-homothety", "custom-moduli-family2",
        "custom-action-family3-homothety",
        "custom-action-family3-diagonal_base_scaling",
        "custom-moduli-family3",
    ]
    # built-ins precede the custom block unchanged
    assert [r.id for r in cert.records[: len(BUILTIN_IDS)]] == BUILTIN_IDS


def _fixture_doc_dict():
    doc = ingest(str(FIXTURES / "families.json"))
    return json.loads((FIXTURES / "families.json").read_text(encoding="utf-8")), doc


def test_checks_never_short_circuit():
    raw, _ = _fixture_doc_dict()
    corrupted = copy.deepcopy(raw)
    # break two maps independently: both drop their unit factor
    corrupted["maps"][0]["coords"]["w"] = "w/(y^2*z^3)"
    corrupted["maps"][1]["coords"]["w"] = "y^3*w/z^4"
    cert = verify_all(document=load_document(corrupted))
    assert cert.overall == "fail"
    failing = [r.id for r in cert.records if r.failed]
    assert failing == [
        "custom-invariance-aut_4_2", "custom-invariance-aut_8_4",
    ]
    # evaluation continues past both failures
    last_fail = max(i for i, r in enumerate(cert.records) if r.failed)
    tail = cert.records[last_fail + 1:]
    assert tail and all(r.result in ("pass", "info") for r in tail)
    assert cert.first_failure.id == "custom-invariance-aut_4_2"
    assert "even part" in cert.first_failure.witness


def test_failing_invariance_drops_order_and_ratio_records():
    raw, _ = _fixture_doc_dict()
    corrupted = copy.deepcopy(raw)
    corrupted["maps"][2]["coords"]["w"] = "w*y^3/z^2"
    cert = verify_all(document=load_document(corrupted))
    ids = {r.id for r in cert.records}
    assert "custom-invariance-aut_8_2" in ids
    assert "custom-order-aut_8_2" not in ids
    assert "custom-ratio-aut_8_2" not in ids


def test_escaping_exception_becomes_failure_record():
    fam3 = [f for f in ingest(str(FIXTURES / "families.json")).families][2]
    doc = serialize_document([fam3])
    doc["families"][0]["actions"] = [
        {
            "name": "skewed",
            "weights": {"A": 1, "B": 2, "C": 3, "D": 4},
            "geometric": {},
            "w_square_scale": 0,
        }
    ]
    cert = verify_all(document=load_document(doc))
    by_id = {r.id: r for r in cert.records}
    action = by_id["custom-action-family3-skewed"]
    assert action.failed and action.witness
    moduli = by_id["custom-moduli-family3"]
    assert moduli.failed
    assert moduli.witness.startswith("PreconditionError:")


def test_vanishing_corner_fails_custom_cover_record():
    raw, _ = _fixture_doc_dict()
    corrupted = copy.deepcopy(raw)
    entry = copy.deepcopy(corrupted["families"][2])
    entry["name"] = "pinched"
    entry["monomials"] = [
        m for m in entry["monomials"]
        if not (m["i"] == 0 and m["j"] == 2)
    ]
    doc = {"families": [entry]}
    cert = verify_all(document=load_document(doc))
    record = {r.id: r for r in cert.records}["custom-pinched-cover"]
    assert record.failed
    assert "corner" in record.witness


def test_map_with_no_matching_families_is_skipped():
    # K3 lifts have no K3 families to act on in this document
    raw, _ = _fixture_doc_dict()
    doc = {"families": raw["families"][:1], "maps": raw["maps"][3:]}
    cert = verify_all(document=load_document(doc))
    ids = {r.id for r in cert.records if r.id.startswith("custom-invariance")}
    assert ids == set()
    assert cert.overall == "pass"
