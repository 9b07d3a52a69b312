import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cherednik.coxeter import parse_group
from cherednik.dunkl import random_polynomial
from cherednik.field import FieldContext, mpq
from cherednik.poly import MultiPoly
from cherednik.saito import saito_frame, verify_saito
from cherednik.serialize import (
    SchemaError,
    family_from_json,
    family_to_json,
    frame_from_json,
    frame_to_json,
    loads_poly,
    poly_from_json,
    poly_to_json,
)
from cherednik.shift import singular_family


def test_rational_round_trip():
    x1, x2 = MultiPoly.gens(2)
    p = x1**2 - x2.scale(mpq(1, 3))
    data = poly_to_json(p)
    assert data == {
        "vars": 2,
        "field": {"kind": "Q", "param": 0},
        "terms": [{"exp": [2, 0], "coef": "1/1"}, {"exp": [0, 1], "coef": "-1/3"}],
    }
    assert poly_from_json(json.loads(json.dumps(data))) == p


def test_cyclotomic_round_trip():
    ctx = FieldContext.cyclotomic(3)
    x1, x2 = MultiPoly.gens(2, ctx)
    p = x1.scale(ctx.gen()) + (x2**3).scale(ctx.from_coeffs([mpq(1, 2), mpq(-3)]))
    data = poly_to_json(p)
    assert data["field"] == {"kind": "cyclotomic", "param": 3}
    q = poly_from_json(data)
    assert q == p and q.field is ctx


@given(st.integers(0, 10**6))
def test_random_round_trip(seed):
    rng = random.Random(seed)
    p = random_polynomial(3, rng.randint(0, 5), rng, homogeneous=False)
    assert loads_poly(json.dumps(poly_to_json(p))) == p


@pytest.mark.parametrize(
    "bad,path",
    [
        ({"vars": 1, "field": {"kind": "Q", "param": 0}, "terms": [{"exp": [1], "coef": "1/0"}]}, "$.terms[0].coef"),
        ({"vars": 1, "field": {"kind": "Q", "param": 0}, "terms": [{"exp": [1, 2], "coef": "1"}]}, "$.terms[0].exp"),
        ({"vars": 1, "field": {"kind": "Q", "param": 0}, "terms": [{"exp": [-1], "coef": "1"}]}, "$.terms[0].exp"),
        ({"vars": 1, "field": {"kind": "Q", "param": 0}, "terms": [{"exp": [1], "coef": 0.5}]}, "$.terms[0].coef"),
        ({"vars": 1, "field": {"kind": "cyclotomic", "param": 3}, "terms": [{"exp": [1], "coef": ["1"]}]}, "$.terms[0].coef"),
        ({"vars": 1, "field": {"kind": "cyclotomic", "param": 3}, "terms": [{"exp": [1], "coef": ["1", "2/0"]}]}, "$.terms[0].coef[1]"),
        ({"vars": 1, "field": {"kind": "Qsqrt", "param": 4}, "terms": []}, "$.field"),
        ({"vars": 1, "terms": []}, "$"),
        ({"vars": "2", "field": {"kind": "Q"}, "terms": []}, "$.vars"),
        ({"vars": 1, "field": {"kind": "Q", "param": 0}, "terms": [{"exp": [1], "coef": "1"}, {"exp": [1], "coef": "2"}]}, "$.terms[1].exp"),
    ],
)
def test_schema_errors(bad, path):
    with pytest.raises(SchemaError) as err:
        poly_from_json(bad)
    assert err.value.path == path


def test_invalid_json_text():
    with pytest.raises(SchemaError):
        loads_poly("{not json")


@pytest.mark.parametrize("group", ["B3", "D4"])
def test_frame_round_trip(group):
    frame = saito_frame(parse_group(group))
    data = json.loads(json.dumps(frame_to_json(frame)))
    assert set(data) >= {"group", "degrees", "h", "t", "U"}
    back = frame_from_json(data)
    assert back.t == frame.t and back.g == frame.g and back.U == frame.U
    assert back.field is frame.field
    assert verify_saito(back)


def test_frame_degree_mismatch():
    data = frame_to_json(saito_frame(parse_group("B2")))
    data["degrees"] = [2, 4]
    with pytest.raises(SchemaError) as err:
        frame_from_json(data)
    assert err.value.path == "$.degrees"


def test_family_round_trip():
    fam = singular_family(saito_frame(parse_group("A2")), 1, 1, verify=True)
    back = family_from_json(json.loads(json.dumps(family_to_json(fam))))
    assert back == fam
