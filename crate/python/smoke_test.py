"""Smoke test for the green_py extension.

Build first:  pip install --no-build-isolation -e crates/py
Run:          python python/smoke_test.py   (or pytest python/)
"""

import json

import green_py


def test_groups():
    s3 = green_py.PermGroup.catalog("S3")
    assert s3.order == 6
    a5 = green_py.PermGroup(5, ["(0 1 2 3 4)", "(2 3 4)"])
    assert a5.order == 60


def test_regular_s3_at_2():
    s3 = green_py.PermGroup.catalog("S3")
    reg = s3.regular_module(2)
    assert reg.dim == 6
    assert sorted(reg.decompose()) == [(2, 1), (2, 2)]
    assert reg.is_projective()
    k = s3.trivial_module(2)
    assert not k.is_projective()
    assert k.hom_dim(reg) == 1
    order, _ = k.vertex()
    assert order == 2


def test_module_json_round_trip():
    perm = green_py.PermGroup.catalog("S3").permutation_module(3)
    back = green_py.Module.from_json(perm.to_json())
    assert back.is_isomorphic(perm)
    assert json.loads(back.to_json()) == json.loads(perm.to_json())
    assert perm.direct_sum(perm.dual()).dim == 6


def test_bad_input_raises():
    try:
        green_py.PermGroup.catalog("S3").trivial_module(4)
    except ValueError:
        pass
    else:
        raise AssertionError("non-prime accepted")
    try:
        green_py.Module.from_json("{")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed JSON accepted")


def test_scenarios():
    names = green_py.catalog_scenarios()
    assert "S3_C2_C2" in names and "S3_S3_S3" in names
    sc = green_py.Scenario.catalog("S3_C2_C2")
    assert sc.orders == (6, 2, 2)
    assert sc.normalizer_condition
    assert dict(sc.family_orders())["x"] == [1]
    report = sc.verify(seed=0)
    assert report.passed, report.failures
    assert report.schema_version == green_py.SCHEMA_VERSION
    assert len(report.pairs) == 1 and report.is_trivial_pair(0)
    data = json.loads(report.to_json())
    assert data["scenario"]["name"] == "S3_C2_C2"

    same = green_py.Scenario(sc.config_json())
    assert same.verify().to_json() == report.to_json()


def test_larger_scenario():
    report = green_py.Scenario.catalog("A5_A4_V4").verify()
    assert report.passed, report.failures
    assert all(quo_h == quo_g for _, _, quo_h, quo_g in report.ff_table)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"ok {name}")
