import json

import pytest

from gradedlie.errors import InputError
from gradedlie.verify import Corruption, census_count, check_model, verify_catalog
from gradedlie.catalog import ModelId, enumerate_models


def test_below_regime():
    with pytest.raises(InputError, match="below"):
        verify_catalog(5)


def test_census_count_matches_enumeration():
    for n in range(3, 25):
        assert census_count(n) == len(enumerate_models(n))


def test_single_model_checks():
    r = check_model(ModelId("Q", 4, (1, 3)), max_dim=16, ext_max_dim=10)
    names = [c[0] for c in r.checks]
    assert names == ["jacobi", "table", "graded", "nonsplit", "linear", "quotient", "roundtrip", "prop1", "cohomology"]
    assert not r.failed()
    filiform = check_model(ModelId("VergneL", 12), max_dim=16, ext_max_dim=10)
    assert "quotient" not in [c[0] for c in filiform.checks] and filiform.filiform


def test_corruption_surfaces_jacobi_triple():
    report = verify_catalog(8, jacobi_max_dim=8, ext_max_dim=7, corrupt=Corruption("D(4;)", (2, 3, 6), 1))
    assert not report.passed
    text = report.to_text()
    assert "D(4;) jacobi:" in text and "first (" in text
    assert text.rstrip().endswith("overall: FAIL")


def test_report_byte_stable_and_json():
    a = verify_catalog(8, jacobi_max_dim=9, ext_max_dim=7)
    b = verify_catalog(8, jacobi_max_dim=9, ext_max_dim=7)
    assert a.render() == b.render()
    assert a.render(as_json=True) == b.render(as_json=True)
    doc = json.loads(a.render(as_json=True))
    assert doc["pass"] is True
    assert {m["model"] for m in doc["models"]} >= {"L(7;1)", "VQ(4)"}
    assert doc["corrections"] and doc["sampling_policy"]
    assert a.passed and "overall: PASS" in a.render()


def test_full_verification_16():
    report = verify_catalog(16)
    assert report.passed, report.to_text()
    assert len(report.grid) == 286
    assert report.jacobi_max_dim == 24 and len(report.models) == 2725
    assert len(report.corrections) == 10
