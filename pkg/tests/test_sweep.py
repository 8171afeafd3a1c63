import json

import pytest

from radius_lab.bounds import CATALOG_VERSION
from radius_lab.errors import ConfigError
from radius_lab.sweep import SweepConfig, dumps17, run_sweep, work_items, write_report


def small_config(**kw):
    base = dict(generators=["ginibre", "normal"], count=6, dims=[2, 3, 4], bounds="all", seed=7)
    base.update(kw)
    return SweepConfig(**base)


def test_tallies_add_up():
    report = run_sweep(small_config())
    assert report.version == CATALOG_VERSION
    for t in report.bounds:
        assert t.passed + t.failed + t.not_applicable == t.evaluated
    assert report.ok


def test_replay_is_independent_of_workers(monkeypatch):
    serial = run_sweep(small_config(workers=1)).to_doc()
    monkeypatch.setenv("RADIUS_LAB_THREADS", "3")
    parallel = run_sweep(small_config(workers=1)).to_doc()
    assert dumps17(serial) == dumps17(parallel)


def test_work_items_use_derived_seeds():
    items = work_items(small_config())
    seeds = [spec.seed for _, _, spec in items]
    assert len(set(seeds)) == len(seeds)
    assert [spec.dim for _, _, spec in items[:4]] == [2, 3, 4, 2]


def test_named_examples_hit_equality():
    report = run_sweep(SweepConfig(generators=["named:ex_2_11"], bounds=["thm29"]))
    tally = report.bounds[0]
    assert tally.id == "thm29" and tally.evaluated == 1
    assert abs(tally.worst_slack) <= 1e-8


def test_empty_generator_list():
    report = run_sweep(SweepConfig(generators=[]))
    assert report.evaluations == 0 and report.ok


def test_parametrised_ids_expand():
    cfg = SweepConfig(generators=["normal"], count=2, bounds=["cor_power", "thm24(f=power:2)"], r_values=[1.0, 2.0])
    assert [b for b, _ in cfg.selected()] == ["cor_power", "cor_power", "thm24"]


@pytest.mark.parametrize(
    "doc",
    [
        {"generators": ["wishart"]},
        {"bounds": ["not_a_bound"]},
        {"bounds": ["lem_log"]},
        {"count": -1},
        {"dims": []},
        {"r_values": [3.0]},
        {"workers": 0},
        {"surprise": 1},
        [],
    ],
)
def test_config_rejections(doc):
    with pytest.raises(ConfigError):
        SweepConfig.from_doc(doc)


def test_threads_env_must_be_integer(monkeypatch):
    monkeypatch.setenv("RADIUS_LAB_THREADS", "many")
    with pytest.raises(ConfigError):
        small_config().effective_workers()


def test_report_round_trips_doubles(tmp_path):
    report = run_sweep(small_config(count=2))
    path = tmp_path / "out" / "report.json"
    write_report(report, path)
    doc = json.loads(path.read_text())
    assert doc["bounds"][0]["worst_slack"] == report.bounds[0].worst_slack
    assert dumps17(0.1) == "0.10000000000000001"
    assert dumps17(float("nan")) == "null"
