"""End-to-end smoke tests for the python surface."""

import json
import math
from pathlib import Path

import pytest

import covacap

CONFIG_DIR = Path(__file__).resolve().parents[2] / "configs"

EXAMPLE2 = json.loads((CONFIG_DIR / "example2.json").read_text())
PAULI = json.loads((CONFIG_DIR / "pauli.json").read_text())


def test_capacity_example2():
    report, code = covacap.capacity(EXAMPLE2)
    assert code == 0
    assert report["theorem_applies"] is True
    assert report["subgroup"] == [0, 3, 6]
    assert report["p"]["values"] == ["1/2", "1/3", "1/6"]
    assert math.isclose(report["capacity"], 0.125814583693911, abs_tol=1e-12)
    assert report["optimizer"]["cross_check_ok"] is True


def test_capacity_pauli_matches_lambda_formula():
    report, code = covacap.capacity(PAULI)
    assert code == 0
    from_lambdas = covacap.qubit_capacity_from_lambdas(0.6, 0.6, 0.6)
    assert math.isclose(report["capacity"], from_lambdas, abs_tol=1e-12)


def test_describe_example2():
    report, code = covacap.describe(EXAMPLE2)
    assert code == 0
    assert report["group"] == {"order": 9, "dimension": 3}
    assert report["representation"]["irreducible"] is True
    assert len(report["subgroup_candidates"]) == 4


def test_verify_level1_zero_violations():
    config = dict(EXAMPLE2)
    config["options"] = dict(config["options"], samples=100)
    report, code = covacap.verify(config, level=1)
    assert code == 0
    assert report["violations_total"] == 0
    assert report["eigenbasis_equality_gap"] <= 1e-10


def test_theorem_capacity_exact_fractions():
    entropy, cap = covacap.theorem_capacity(3, ["1/2", "1/3", "1/6"])
    assert math.isclose(entropy, 1.459147917027245, abs_tol=1e-12)
    assert math.isclose(cap, 0.125814583693911, abs_tol=1e-12)


def test_majorizes():
    assert covacap.majorizes([0.75, 0.25], [0.5, 0.5])
    assert not covacap.majorizes([0.5, 0.5], [0.75, 0.25])
    # padding: comparing across lengths is allowed
    assert covacap.majorizes([0.5, 0.5, 0.0], [0.5, 0.5])


def test_bad_config_raises():
    broken = dict(PAULI)
    broken["family"] = "no-such-family"
    with pytest.raises(covacap.CovacapError):
        covacap.capacity(broken)


def test_determinism():
    a, _ = covacap.verify(EXAMPLE2, level=1)
    b, _ = covacap.verify(EXAMPLE2, level=1)
    assert a == b
