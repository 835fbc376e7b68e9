import math
import os
from pathlib import Path

import pytest

import flexplan

ROOT = Path(os.environ.get("FLEXPLAN_SOURCE_DIR", Path(__file__).resolve().parents[2]))
FIX = ROOT / "tests" / "fixtures"


def test_ase_single_span():
    assert flexplan.ase_osnr([flexplan.Span(80.0)], 0.0) == pytest.approx(36.95, abs=0.05)
    ten = [flexplan.Span(80.0)] * 10
    assert flexplan.ase_osnr(ten, 0.0) == pytest.approx(26.95, abs=0.05)


def test_gsnr_below_osnr_and_gamma_zero():
    ch = [flexplan.Channel(193.65 + 0.05 * k, 32.0) for k in range(3)]
    p = flexplan.ChannelPlacement(ch)
    spans = [flexplan.Span(80.0)] * 3
    osnr = flexplan.ase_osnr(spans, 0.0, 12.5, ch[1].center_thz)
    assert flexplan.gsnr(p, spans, 1) < osnr
    assert flexplan.gn_nli_power(p, spans, 1) > 0.0
    linear = [flexplan.Span(80.0, gamma_per_w_km=0.0)] * 3
    assert flexplan.gsnr(p, linear, 1) == pytest.approx(osnr, abs=1e-9)


def test_overlapping_channels_rejected():
    with pytest.raises(flexplan.ValidationError):
        flexplan.ChannelPlacement([flexplan.Channel(193.7, 32.0), flexplan.Channel(193.71, 32.0)])


def test_solver():
    ladder = [
        flexplan.TrxConfig("100G", 100, 37.5, 32.0),
        flexplan.TrxConfig("400G", 400, 75.0, 64.0),
    ]
    assert flexplan.lp_count_bounds(400, ladder) == (1, 4)
    got = flexplan.min_bandwidth_multiset(450, ladder)
    assert sorted(c.id for c in got) == ["100G", "400G"]
    assert sum(c.bandwidth_ghz for c in got) == pytest.approx(112.5)


def test_catalog_and_route():
    configs = flexplan.load_catalog(ROOT / "data" / "catalog" / "default.json")
    assert len(configs) == 7
    r = flexplan.shortest_route(FIX / "fig3" / "topology.json", "N3", "N2")
    assert r["node_walk"] == ["N3", "N1", "N2"]
    assert r["length_km"] == pytest.approx(900.0)


def test_plan_and_compare(tmp_path):
    rows = flexplan.plan(FIX / "two_node" / "scenario.json", out=tmp_path / "a")
    assert rows[0]["period"] == 1
    assert rows[0]["served_gbps"] == 100
    assert rows[0]["trx_count"] == 2
    assert (tmp_path / "a" / "summary.csv").exists()
    assert (tmp_path / "a" / "allocations.json").exists()

    strict = flexplan.plan(FIX / "two_node" / "scenario_strict.json", out=tmp_path / "b")
    assert strict[0]["blocked_gbps"] == 100

    diff = flexplan.compare(tmp_path / "a", tmp_path / "b")
    assert diff[0]["period"] == 1
    assert math.isinf(diff[0]["throughput"])


def test_validate():
    assert flexplan.validate(FIX / "fig3" / "scenario.json") == []
    with pytest.raises(flexplan.SchemaError):
        flexplan.validate(FIX / "two_node" / "scenario_bad.json")
    assert issubclass(flexplan.SchemaError, flexplan.FlexplanError)
