import numpy as np
import pytest

from captrans import catalog, io
from captrans.errors import BoundaryViolation, ParseError
from captrans.setfun import Universe

U3 = Universe(3)


@pytest.mark.parametrize("key, mask", [("0", 0), ("5", 5), ("x1+x3", 5), (" x2 ", 2), ("x3+x1", 5)])
def test_parse_subset_key(key, mask):
    assert io.parse_subset_key(key, U3) == mask


@pytest.mark.parametrize("key", ["8", "x4", "x1+", ""])
def test_bad_subset_key(key):
    with pytest.raises(ParseError):
        io.parse_subset_key(key, U3)


def test_format_subset_key():
    assert io.format_subset_key(5, U3) == "5"
    assert io.format_subset_key(5, U3, labels=True) == "x1+x3"
    assert io.format_subset_key(0, U3, labels=True) == "0"


def test_number():
    assert io.number(0.1 + 0.2) == 0.3
    assert str(io.number(-0.0)) == "0.0"
    assert io.number(1 / 3) == 0.333333333333


def test_measure_roundtrip():
    mu = catalog.lack_pair()[0]
    for labels in (False, True):
        back = io.load_measure(io.measure_to_dict(mu, labels))
        np.testing.assert_allclose(back.values, mu.values, atol=1e-12)


def test_empty_set_must_be_zero():
    doc = io.measure_to_dict(catalog.lack_pair()[0])
    doc["values"]["0"] = 0.0
    io.load_measure(doc)
    doc["values"]["0"] = 0.1
    with pytest.raises(BoundaryViolation):
        io.load_measure(doc)


def test_duplicate_key():
    doc = io.measure_to_dict(catalog.lack_pair()[0])
    doc["values"]["x1"] = 0.2  # same subset as "1"
    with pytest.raises(ParseError, match="twice"):
        io.load_measure(doc)


def test_cost_matrix_file():
    mat = np.arange(64, dtype=float).reshape(8, 8)
    cm = io.load_cost({"matrix": mat.tolist()}, U3, U3)
    assert cm[3, 5] == 29
    with pytest.raises(ParseError):
        io.load_cost({"matrix": [[1, 2]]}, U3, U3)
    with pytest.raises(ParseError):
        io.load_cost({"entries": []}, U3, U3)


def test_plan_roundtrip():
    from captrans.transport import TransportPlan

    plan = TransportPlan(U3, U3, "maxplus", catalog.lack_pair_plan(), 1.0)
    doc = io.plan_to_dict(plan, labels=True)
    assert doc["lack_mu"] == {"x1+x2": 0.1, "x1+x3": 0.1, "x2+x3": 0.4, "x1+x2+x3": 0.1}
    back = io.plan_from_dict(doc, U3, U3)
    np.testing.assert_allclose(back.assg, plan.assg)
    with pytest.raises(ParseError):
        io.plan_from_dict({"method": "nope"}, U3, U3)
    with pytest.raises(ParseError):
        io.plan_from_dict({"method": "maxplus", "assg": [{"from": "1"}]}, U3, U3)
