import json
from fractions import Fraction as Q
from itertools import product

import pytest

from kstab3.catalog import (LOWER, ROWS, SCHEMA, case_ids, dumps_case, export_case, instantiate, load_all, load_custom,
                            validate_params)
from kstab3.geom import ConfigurationError, PreconditionError
from kstab3.kstab import beta_prime


def test_row_ids():
    ids = case_ids()
    assert ids[:2] == ["E1", "E2"]
    assert set(ids) == {"E1", "E2", "Q1"} | {f"C{i}" for i in range(1, 11)} | {f"D{i}" for i in range(1, 9)} \
        | {f"F{i}" for i in range(1, 5)}


def test_param_validation():
    with pytest.raises(PreconditionError):
        instantiate("C6", k=1, n=1)
    with pytest.raises(PreconditionError):
        instantiate("D2", n=0)
    with pytest.raises(PreconditionError):
        instantiate("F3", k=2)
    with pytest.raises(PreconditionError):
        instantiate("Z9")
    assert validate_params("C4", {"m": -1})["m"] == -1


def test_e1_numbers():
    X = instantiate("E1").threefold
    D1, D2 = X.basis_class("D1"), X.basis_class("D2")
    assert [X.triple_product(D1, D1, D1), X.triple_product(D1, D1, D2), X.triple_product(D1, D2, D2),
            X.cube(D2)] == [1, -2, 4, -6]


def test_every_row_is_consistent():
    for case in load_all():
        assert case.threefold.validate() == [], case.id
        assert case.ncoeff == len(ROWS[case.id][2].split(", "))


def test_families_consistent_over_params():
    for cid in ROWS:
        _, defaults, _, _ = ROWS[cid]
        if not defaults:
            continue
        keys = sorted(defaults)
        lows = LOWER.get(cid, {})
        for vals in product(*[range(lows.get(k, 0), lows.get(k, 0) + 3) for k in keys]):
            p = dict(zip(keys, vals))
            if cid == "C6" and (p["k"], p["n"]) == (1, 1):
                continue
            case = instantiate(cid, p)
            assert case.threefold.validate() == [], (cid, p)


def test_round_trip():
    for cid in ("F4", "D5", "Q1", "C9", "E2"):
        case = instantiate(cid)
        again = load_custom(dumps_case(case))
        assert export_case(again) == export_case(case)


def test_duplicate_d5_matches_builtin():
    d5 = instantiate("D5")
    doc = export_case(d5)
    doc["id"] = "my-D5"
    mine = load_custom(json.dumps(doc))
    vals = [Q(i, 10) for i in range(10)]
    for c in product(vals, repeat=2):
        if not d5.is_log_fano(c):
            continue
        p1, p2 = d5.pair(c), mine.pair(c)
        for lab, _ in p1.divisors():
            assert beta_prime(p1, label=lab) == beta_prime(p2, label=lab)


def test_rejects_bad_documents():
    doc = export_case(instantiate("E1"))
    bad = json.loads(json.dumps(doc))
    bad["triple"][0][0][1] = "5"
    with pytest.raises(ConfigurationError, match="symmetric"):
        load_custom(bad)
    bad = json.loads(json.dumps(doc))
    bad["nef"] = [["1", "0"], ["0", "1"]]  # D1 is negative on l1
    with pytest.raises(ConfigurationError, match="pairs negatively"):
        load_custom(bad)
    bad = json.loads(json.dumps(doc))
    bad["canonical"] = ["0.5", "1"]
    with pytest.raises(ConfigurationError, match="schema"):
        load_custom(bad)
    bad = json.loads(json.dumps(doc))
    del bad["boundary"]
    with pytest.raises(ConfigurationError, match="schema"):
        load_custom(bad)


def test_schema_is_valid():
    import jsonschema
    jsonschema.Draft7Validator.check_schema(SCHEMA)


def test_known_regions():
    f3 = instantiate("F3").known_region
    assert f3.contains((Q(3, 4), Q(1, 2)))
    assert not f3.contains((Q(1, 2), Q(1, 2)))
    q1 = instantiate("Q1", m=1).known_region
    assert q1.contains((0, 0))
    # b <= 1 - sqrt(4 + 4a + 3a^2)/sqrt(6) at a = 0 gives b <= 1 - sqrt(2/3) ~ 0.1835
    assert q1.contains((0, Q(18, 100))) and not q1.contains((0, Q(19, 100)))
    c9 = instantiate("C9").known_region
    assert c9.contains((0, 0))
    d5 = instantiate("D5").known_region
    assert d5.contains((0, 0))
