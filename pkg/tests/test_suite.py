import json

import pytest

from polyexact.instances import fixture_names
from polyexact.suite import (
    DIM4_SEED_CAP,
    FIXTURE_PAIRS,
    SWEEP_NAMES,
    SweepOutcome,
    build_tasks,
    run_suite,
)

SMALL = dict(dims=(2, 3), seed_range=(1, 6), lp_count=25, boundary_count=9)


@pytest.fixture(scope="module")
def small_result():
    return run_suite(**SMALL)


def test_small_corpus_is_green(small_result):
    assert small_result.ok
    for sweep in small_result.sweeps:
        assert sweep.ok, sweep.violations


def test_sweeps_cover_every_name_in_order(small_result):
    assert tuple(s.name for s in small_result.sweeps) == SWEEP_NAMES
    # every sweep saw work on even a small corpus
    for sweep in small_result.sweeps:
        assert sweep.checked > 0, sweep.name


def test_counts_match_corpus(small_result):
    # 6 seeds in each of two dimensions plus the packaged pairs
    assert small_result.pair_count == 12 + len(FIXTURE_PAIRS)
    by_name = {s.name: s for s in small_result.sweeps}
    assert by_name["extremality-grid-agreement"].checked == small_result.pair_count
    assert by_name["lp-certification"].checked == 25
    assert by_name["boundary-support-points"].checked == 9
    assert by_name["lp-certification"].details["mutations"] > 25
    assert by_name["determinism"].details["fixtures"] == len(fixture_names())


def test_identical_runs_give_identical_payloads(small_result):
    again = run_suite(**SMALL)
    first = json.dumps(small_result.to_payload(), sort_keys=True)
    second = json.dumps(again.to_payload(), sort_keys=True)
    assert first == second


def test_pool_merge_matches_serial(small_result):
    config = dict(SMALL, dims=(2,), seed_range=(1, 3), lp_count=4, boundary_count=3)
    serial = run_suite(**config)
    pooled = run_suite(parallel=2, **config)
    assert serial.to_payload() == pooled.to_payload()


def test_dim_four_seed_cap():
    tasks = build_tasks(dims=(4,), seed_range=(1, 85))
    pair_tasks = [t for t in tasks if t[0] == "pair"]
    assert len(pair_tasks) == DIM4_SEED_CAP
    assert pair_tasks[0] == ("pair", 4, 1)
    assert pair_tasks[-1] == ("pair", 4, DIM4_SEED_CAP)


def test_fixture_pairs_are_packaged():
    assert set(FIXTURE_PAIRS) <= set(fixture_names())


def test_bad_configuration_rejected():
    with pytest.raises(ValueError):
        run_suite(dims=(5,), seed_range=(1, 2))
    with pytest.raises(ValueError):
        run_suite(seed_range=(3, 1))
    with pytest.raises(ValueError):
        run_suite(seed_range=(0, 4))


def test_outcome_flags_violations():
    clean = SweepOutcome("lp-certification", 10, (), {})
    dirty = SweepOutcome("lp-certification", 10, ("lp seed=1: bad",), {})
    assert clean.ok and not dirty.ok
