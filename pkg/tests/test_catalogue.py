"""Catalogue integrity and the verification report plumbing."""

import pytest

from dpv.catalogue import (
    ALL_CHECKS,
    OUT_OF_SCOPE,
    RECORD_ORDER,
    compute_k2,
    coverage_selftest,
    load_example,
    record_ids,
    verify_all,
    verify_example,
)

JSON_KEYS = {"schema", "id", "checks", "certificates", "expected", "computed", "notes", "timings"}


def test_selftest_clean():
    assert coverage_selftest() == []


def test_record_inventory():
    ids = record_ids()
    assert ids == RECORD_ORDER
    assert len(ids) == 11
    assert len(set(ids)) == 11
    assert {r.row for r in OUT_OF_SCOPE} == {"1-1-i", "1-2-i"}


def test_load_example_rejects_unknowns():
    with pytest.raises(KeyError):
        load_example("e9-9")
    with pytest.raises(KeyError, match="irregular"):
        load_example("1-1-i")
    with pytest.raises(KeyError, match="out of scope"):
        load_example("e1-1-i")
    with pytest.raises(KeyError, match="no known example"):
        load_example("1-2-i")


def test_record_shapes():
    for rid in RECORD_ORDER:
        rec, model = load_example(rid)
        assert rec.expected.p in (2, 3)
        assert rec.assumptions == ("proper", "H0=k", "Cohen-Macaulay")
        assert model.charts  # something to verify
        assert rec.k2_data["kind"] in (
            "weighted_ci",
            "blow_up",
            "cover",
            "product_hypersurface",
        )


def test_expected_k2_column():
    vals = [verify_example(rid, checks=("k2",)).check("k2") for rid in RECORD_ORDER]
    assert all(c.status == "pass" for c in vals)
    assert [c.computed for c in vals] == [1, 3, 1, 2, 4, 2, 3, 4, 5, 5, 6]


def test_check_subset_and_unknown_check():
    rep = verify_example("e1-2", checks=("k2",))
    assert [c.name for c in rep.checks] == ["k2"]
    assert rep.status == "pass"
    with pytest.raises(ValueError):
        verify_example("e1-2", checks=("k2", "bogus"))
    # extras is a no-op for records that declare none
    rep2 = verify_example("e1-2", checks=("extras",))
    assert rep2.checks == []
    assert rep2.status == "pass"


def test_report_json_shape():
    rep = verify_example("e1-2", checks=("ambient", "k2"))
    doc = rep.to_json()
    assert set(doc) == JSON_KEYS
    assert doc["schema"] == 1
    assert doc["id"] == "e1-2"
    assert doc["timings"] == {}
    assert doc["computed"]["k2"] == 2
    exp = doc["expected"]
    assert exp["expected_only"].keys() == {"rho", "h1", "normalization", "extremal_rays"}
    assert exp["flags"] == {"regular": "yes", "geom_integral": "yes", "geom_normal": "no"}
    timed = rep.to_json(include_timings=True)
    assert set(timed["timings"]) == {"ambient", "k2"}
    assert all(isinstance(v, float) for v in timed["timings"].values())


def test_report_check_lookup():
    rep = verify_example("e1-2", checks=("k2",))
    assert rep.check("k2").name == "k2"
    with pytest.raises(KeyError):
        rep.check("regular")


def test_verify_all_characteristic_filter():
    summary = verify_all(p=3)
    assert [r.record_id for r in summary.reports] == ["e1-1-p3", "e1-3"]
    assert summary.mismatches == 0
    assert summary.inconclusive == 0
    assert summary.exit_code == 0
    assert summary.skipped == []  # both out-of-scope rows live in characteristic 2
    for rep in summary.reports:
        names = [c.name for c in rep.checks]
        assert names == [c for c in ALL_CHECKS if c != "extras"]


def test_out_of_scope_rows_reported_in_char2():
    summary = verify_all(p=2)
    skipped = dict(summary.skipped)
    assert set(skipped) == {"1-1-i", "1-2-i"}
    assert "irregular" in skipped["1-1-i"]
    assert "no known example" in skipped["1-2-i"]


def test_compute_k2_rejects_unknown_kind():
    _, model = load_example("e1-2")
    with pytest.raises(ValueError):
        compute_k2({"kind": "bogus"}, model)
