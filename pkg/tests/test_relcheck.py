import json

import pytest

from eqtor.ellcore import Params
from eqtor.fock01 import FockRep, VectorRep
from eqtor.relcheck import (FOCK_RELATION_IDS, SuiteConfig, VECTOR_RELATION_IDS,
                            check_phi_x, check_quadratic, check_serre, check_xpxm,
                            fock_suite, pair_classes, reports_to_json, run_relation,
                            run_suite, vector_suite)

P = Params()
CFG = SuiteConfig(max_size=3, serre_max_size=2)


def test_fock_suite_small_all_pass():
    reports = fock_suite(P, 3, 0, CFG)
    assert [r.relation_id for r in reports] == list(FOCK_RELATION_IDS)
    for r in reports:
        assert r.status == "pass", (r.relation_id, r.max_residual, r.worst_case)
        assert r.samples > 0
        assert r.skipped <= 0.2 * r.samples


def test_vector_suite_small_all_pass():
    reports = vector_suite(P, 3, 0, CFG)
    assert [r.relation_id for r in reports] == list(VECTOR_RELATION_IDS)
    assert all(r.status == "pass" for r in reports)


def test_quadratic_detects_wrong_twist():
    # breaking the kappa twist must push the xpxp residual above tolerance
    rep = FockRep(P, 3, 0)
    broken = [row[:] for row in [list(r) for r in rep.cartan.m]]
    broken[0][1] = -broken[0][1]
    broken[1][0] = -broken[1][0]
    from dataclasses import replace

    rep.cartan = replace(rep.cartan, m=tuple(tuple(r) for r in broken))
    report = check_quadratic(rep, +1, rep.states(3), CFG)
    assert report.status == "fail"
    assert report.max_residual > 1e-3


def test_xpxm_detects_wrong_constant():
    # scaling the ladder constants breaks the diagonal match against the
    # expansion difference
    import eqtor.fock01 as fock01

    rep = FockRep(P, 3, 0)
    good = check_xpxm(rep, rep.states(3), CFG)
    assert good.status == "pass"
    orig = fock01.vertex_constant
    try:
        fock01.vertex_constant = lambda sign, params: 1.07 * orig(sign, params)
        bad = check_xpxm(rep, rep.states(3), CFG)
    finally:
        fock01.vertex_constant = orig
    assert bad.status == "fail"


def test_serre_nontrivial_samples():
    rep = FockRep(P, 4, 1)
    report = check_serre(rep, +1, rep.states(3), CFG)
    assert report.status == "pass"
    assert report.samples > 50


def test_phi_x_skip_accounting():
    rep = FockRep(P, 3, 0)
    tight = SuiteConfig(max_size=2, z_samples=4, guard=1e-4)
    report = check_phi_x(rep, +1, +1, rep.states(2), tight)
    assert report.status == "pass"
    assert report.skipped <= 0.2 * report.samples


def test_run_relation_unknown():
    with pytest.raises(ValueError):
        run_relation(FockRep(P, 3, 0), "nope", CFG)


def test_run_suite_thread_env(monkeypatch):
    monkeypatch.setenv("EQTOR_THREADS", "2")
    reports = run_suite(FockRep(P, 3, 0), ("kappa0", "grading_gf"), CFG)
    assert [r.relation_id for r in reports] == ["kappa0", "grading_gf"]
    assert all(r.status == "pass" for r in reports)


def test_report_json_schema_and_determinism():
    reports = run_suite(FockRep(P, 3, 0), ("xpxm", "kappa0"), CFG)
    text1 = reports_to_json(reports)
    text2 = reports_to_json(run_suite(FockRep(P, 3, 0), ("xpxm", "kappa0"), CFG))
    assert text1 == text2  # identical config and seed: byte-identical output
    data = json.loads(text1)
    for row in data:
        assert set(row) >= {"relation_id", "params", "samples", "skipped",
                            "max_residual", "worst_case", "status"}
        assert isinstance(row["params"]["q"], list) and len(row["params"]["q"]) == 2
        assert row["status"] in ("pass", "fail")


def test_pair_classes_dedup():
    from eqtor.cartan import cartan_data

    a2 = pair_classes(cartan_data("A2"))
    assert len(a2) == 3  # (b, m) in {(2,0), (-1,-1), (-1,1)}
    d4 = pair_classes(cartan_data("D4"))
    assert len(d4) == 3  # {(2,0), (-1,0), (0,0)}


def test_vector_rep_xpxm_channels():
    rep = VectorRep(P, 3, 0, index_range=3)
    report = check_xpxm(rep, rep.states(), CFG)
    assert report.status == "pass"
    assert report.samples > 0
