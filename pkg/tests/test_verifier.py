import json

import pytest

from arrowkernel import load_fixture
from arrowkernel.ideal import RemovalRefusal
from arrowkernel.verifier import (
    VerificationReport,
    VerifyConfig,
    ehi_report,
    fg_evidence_report,
    gorenstein_report,
    presentation_hash,
    singularity_report,
    verify,
)

from conftest import REMOVALS, algebra, context

FAST = VerifyConfig(samples=20, env_random_samples=1)


def test_verify_l2_full_report():
    rep = verify(load_fixture("L2"), ["a2"])
    d = rep.as_dict()
    assert list(d) == ["meta", "certificate", "ehi", "gorenstein", "singularity", "hochschild", "verdicts"]
    assert d["meta"]["field"] == "GF(7)" and d["meta"]["config"]["seed"] == 0
    assert d["meta"]["config"]["pd_cap"] == 12 and d["meta"]["version"]
    assert d["verdicts"] == {
        "ehi": "PASS",
        "gorenstein": "PASS",
        "singularity": "PASS",
        "hochschild": "consistent",
        "trivial_extension": "PASS",
    }
    assert d["ehi"]["degree_1_differences"] == [["S1", "S2", 2, 1]]
    assert not rep.falsified
    assert d["certificate"]["trivial_extension"]["passed"]


@pytest.mark.parametrize("name, T", REMOVALS + [("A2", ("x",))])
def test_verify_all_certified_fixtures(name, T):
    rep = verify(load_fixture(name), T, FAST)
    assert isinstance(rep, VerificationReport)
    assert not rep.falsified
    assert rep.gorenstein["agreement"] == "agree"


def test_verify_refuses_non_removable():
    rep = verify(load_fixture("H4"), ["a", "b"])
    assert isinstance(rep, RemovalRefusal) and rep.reason == "hom"


def test_report_is_deterministic():
    a = verify(load_fixture("C3"), ["a"], FAST).to_json()
    b = verify(load_fixture("C3"), ["a"], FAST).to_json()
    assert a == b
    json.loads(a)


def test_ehi_with_random_pairs():
    rep = ehi_report(context("L3", ("a2", "a3")), 8, random_pairs=3, seed=2)
    assert rep["verdict"] == "PASS"
    assert ["S1", "S2", 3, 1] in rep["degree_1_differences"]
    assert len(rep["pairs"]) == 9 + 3


def test_gorenstein_reports():
    L1 = algebra("L1")
    rep = gorenstein_report(L1, L1)
    assert rep["lambda"]["id_right"] == rep["lambda"]["id_left"] == "finite(0)"
    assert rep["agreement"] == "agree"
    ctx = context("C3", ("a",))
    rep = gorenstein_report(ctx.lam, ctx.gam, cap=1)
    # a cap that is too small gives unknown, never disagree
    assert rep["agreement"] == "unknown" and rep["verdict"] == "unknown"


def test_singularity_values():
    rep = singularity_report(context("L2", ("a2",)), 50)
    assert rep["p_a"]["value"] == 0 and rep["p_b"]["value"] <= 1
    assert rep["n_g"]["value"] == 0 and rep["n_h"]["value"] == 0
    assert rep["n_g"]["sampled"] == 50 and rep["verdict"] == "PASS"


def test_fg_without_removal():
    rep = fg_evidence_report(None, 4, lam=algebra("XU"))
    assert rep["verdict"] == "unknown"
    assert rep["lambda"]["hh_dims"] == [3, 4, 5, 6, 7]
    assert "no removable arrow set" in rep["note"]
    k1 = fg_evidence_report(None, 4, lam=algebra("K1"))
    assert k1["lambda"]["hh_dims"] == [1, 0, 0, 0, 0]


def test_fg_env_cap_gives_unknown():
    rep = fg_evidence_report(context("L2", ("a2",)), 4, cap=50)
    assert rep["verdict"] == "unknown"


def test_falsified_flag():
    rep = verify(load_fixture("L2"), ["a2"], FAST)
    rep.verdicts["ehi"] = "FAIL"
    assert rep.falsified


def test_presentation_hash_depends_on_content_only():
    assert presentation_hash(load_fixture("L2")) == presentation_hash(load_fixture("L2"))
    assert presentation_hash(load_fixture("L2")) != presentation_hash(load_fixture("L2_Q"))
