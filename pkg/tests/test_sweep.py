import json
import math

import numpy as np
import pytest

from dispersim.fidelity import PhaseGrid
from dispersim.quadrature import QuadratureSpec
from dispersim.states import CaseId, CrystalParams
from dispersim.sweep import (
    CSV_HEADER,
    ConfigError,
    SweepConfig,
    SweepRow,
    SweepTable,
    default_threads,
    emit_csv,
    figure_preset,
    fmt,
    parse_config,
    preset_names,
    run_sweep,
)

BASIC = {"cases": ["A"], "sweep": "alphaL", "range": [0, 3, 31], "fixed": {"betaL": 0, "sigma": 1}}


def doc(**changes):
    d = json.loads(json.dumps(BASIC))
    d.update(changes)
    return json.dumps(d)


def key_of(text):
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    return info.value.key


def test_basic_config():
    cfg = parse_config(json.dumps(BASIC))
    assert cfg.cases == (CaseId.A,)
    assert cfg.sweep_param == "alphaL" and cfg.count == 31
    assert cfg.values()[0] == 0 and cfg.values()[-1] == 3
    assert cfg.quad == QuadratureSpec.default_2d()
    assert cfg.grid == PhaseGrid()


def test_missing_sigma_named():
    assert key_of(doc(fixed={"betaL": 0})) == "fixed.sigma"


def test_case_l_needs_crystal():
    k = key_of(doc(cases=["L"]))
    assert k == "fixed.crystal"


def test_bad_case_lists_valid_letters():
    with pytest.raises(ConfigError, match="A, B, C"):
        parse_config(doc(cases=["Z"]))


@pytest.mark.parametrize("change,key", [
    ({"sweep": "gamma"}, "sweep"),
    ({"range": [0, 3]}, "range"),
    ({"range": [3, 0, 5]}, "range"),
    ({"range": [0, 3, 1]}, "range"),
    ({"range": [0, 3, 2.5]}, "range.2"),
    ({"sweep": "b", "fixed": {"alphaL": 0, "betaL": 0, "sigma": 1}}, "sweep"),
    ({"cases": []}, "cases"),
    ({"fixed": {"betaL": 0, "sigma": -1}}, "fixed.sigma"),
    ({"fixed": {"betaL": "x", "sigma": 1}}, "fixed.betaL"),
    ({"phaseGrid": {"points": 15}}, "phaseGrid.points"),
    ({"quadrature": {"relTol": 0}}, "quadrature.relTol"),
    ({"extra": 1}, "extra"),
])
def test_errors_name_keys(change, key):
    assert key_of(doc(**change)) == key


def test_not_json():
    assert key_of("{cases:") == "<document>"


def test_crystal_forms():
    ratio = parse_config(doc(cases=["L"], fixed={"betaL": 0, "sigma": 1, "crystal": {"b": 10, "lambdaRatio": 5}}))
    raw = parse_config(doc(cases=["L"], fixed={"betaL": 0, "sigma": 1, "crystal": {"lambdaP": 10, "lambdaBig": 50}}))
    assert ratio.crystal == raw.crystal == CrystalParams(10.0, 50.0, 1.0)
    bad = doc(cases=["L"], fixed={"betaL": 0, "sigma": 1, "crystal": {"lambdaP": 1, "lambdaBig": 0}})
    assert key_of(bad) == "fixed.crystal"


def test_optional_blocks():
    cfg = parse_config(doc(quadrature={"relTol": 1e-8, "maxPanels": 4096, "truncationWidth": 12}, phaseGrid=256))
    assert cfg.quad == QuadratureSpec(rel_tol=1e-8, max_panels=4096, truncation_width=12)
    assert cfg.grid.points == 256


def test_round_trip_json():
    cfg = figure_preset("fig-L-b")
    assert parse_config(json.dumps(cfg.to_json())) == cfg


def test_threads_env(monkeypatch):
    monkeypatch.setenv("DISPERSIM_THREADS", "3")
    assert default_threads() == 3
    monkeypatch.setenv("DISPERSIM_THREADS", "zero")
    with pytest.raises(ConfigError):
        default_threads()


def test_phase_blind_rows():
    cfg = parse_config(doc(cases=["E", "G"], range=[0, 3, 13], fixed={"betaL": 0.4, "sigma": 1.3}))
    assert all(r.bits <= 1e-10 for r in run_sweep(cfg, threads=1).rows)


def test_dual_fock_rows_identical():
    cfg = parse_config(doc(cases=["D", "J"], range=[0, 3, 31]))
    rows = run_sweep(cfg, threads=2).rows
    d = [(r.value, r.bits, r.error) for r in rows if r.case is CaseId.D]
    j = [(r.value, r.bits, r.error) for r in rows if r.case is CaseId.J]
    assert d == j


def test_case_k_flat_in_alpha():
    cfg = parse_config(doc(cases=["K"], range=[0, 3, 31], fixed={"betaL": 0.1, "sigma": 1}))
    bits = [r.bits for r in run_sweep(cfg, threads=1).rows]
    assert max(bits) - min(bits) <= 1e-12


def test_rows_ordered_and_threads_agree():
    cfg = figure_preset("fig-b2")
    one, many = run_sweep(cfg, threads=1), run_sweep(cfg, threads=6)
    assert one.rows == many.rows
    assert [r.case.value for r in one.rows[:: cfg.count]] == ["C", "D", "F", "H", "J", "K"]


def test_case_l_sweep_point():
    cfg = parse_config(json.dumps({
        "cases": ["L"], "sweep": "b", "range": [5, 10, 2],
        "fixed": {"alphaL": 0.5, "betaL": 0.1, "sigma": 1, "crystal": {"b": 10, "lambdaRatio": 5}},
    }))
    params, crystal = cfg.point(5.0)
    assert crystal.b == 5.0 and crystal.lambda_ratio == 5.0
    rows = run_sweep(cfg, threads=2).rows
    assert all(0 < r.bits < math.log2(3) and 0 < r.error < 1e-4 for r in rows)


def test_failed_rows_reported():
    cfg = parse_config(json.dumps({
        "cases": ["L"], "sweep": "sigma", "range": [0.5, 1, 2], "quadrature": {"maxPanels": 8},
        "fixed": {"alphaL": 0.5, "betaL": 0.1, "crystal": {"b": 10, "lambdaRatio": 5}},
    }))
    table = run_sweep(cfg, threads=1)
    assert all(r.failure and "NonConvergence" in r.failure for r in table.rows)
    assert all(math.isnan(r.bits) for r in table.rows)
    text = emit_csv(table)
    assert text.count("# failed L sigma=") == 2
    assert text.splitlines()[-1].endswith(",nan,nan")


def test_fmt():
    assert fmt(0.0) == "0.00000000000"
    assert fmt(1.0) == "1.00000000000"
    assert fmt(0.123456789012345) == "0.123456789012"
    assert fmt(math.nan) == "nan"


def test_one_row_csv():
    cfg = parse_config(json.dumps(BASIC))
    table = SweepTable(cfg, (SweepRow(CaseId.A, 0.0, 0.5, 1e-12),))
    text = emit_csv(table)
    lines = text.split("\n")
    assert text.endswith("\n") and "\r" not in text
    head = lines.index(CSV_HEADER)
    assert all(line.startswith("#") for line in lines[:head])
    assert lines[head + 1:] == ["A,alphaL,0.00000000000,0.500000000000,1.00000000000e-12", ""]


def test_csv_deterministic():
    cfg = figure_preset("fig-a1")
    assert emit_csv(run_sweep(cfg, 1)) == emit_csv(run_sweep(cfg, 4))


def test_presets_match_captions():
    b2 = figure_preset("fig-b2")
    assert b2.sweep_param == "betaL" and b2.sigma == 1 and b2.alpha_l == 0.5
    assert {c.value for c in b2.cases} == set("CDFHJK")
    s1 = figure_preset("fig-s1")
    assert s1.sweep_param == "sigma" and s1.alpha_l == 1 and s1.beta_l == 0.1
    assert {c.value for c in s1.cases} == set("ABI")
    la = figure_preset("fig-L-alpha")
    assert la.sweep_param == "alphaL" and la.sigma == 1 and la.beta_l == 0.1
    assert la.cases == (CaseId.L,)


def test_all_presets_build():
    names = preset_names()
    assert len(names) == 11
    for name in names:
        cfg = figure_preset(name)
        assert isinstance(cfg, SweepConfig) and cfg.count >= 2


def test_unknown_preset():
    with pytest.raises(ConfigError, match="fig-a1"):
        figure_preset("fig-z9")


def test_values_linspace():
    cfg = figure_preset("fig-a2")
    assert np.array_equal(cfg.values(), np.linspace(0, 3, 61))
