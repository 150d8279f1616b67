import json

import numpy as np
import pytest

from lindim.core import canonicalize
from lindim.dimensions import ContainmentPolicy
from lindim.oracle import OracleConfig
from lindim.sampling import cremona_pairs, few_points, general, many_points
from lindim.dimensions import n3_condition
from lindim.picard import Effectivity, effectivity
from lindim.sweep import PRESETS, CacheRecord, ResultCache, SweepSpec, cache_key, evaluate, run_sweep

CFG = OracleConfig(seed=3)


def small_spec(**kw):
    return SweepSpec("small", (2, 3), (2, 4), mult=2, s_range=(1, 5), **kw)


def test_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec("x", (3, 2), (1, 2), mult=2)
    with pytest.raises(ValueError):
        SweepSpec("x", (1, 2), (1, 2))
    with pytest.raises(ValueError):
        SweepSpec("x", (1, 2), (1, 2), mult=2, checks=("nonsense",))
    assert set(PRESETS) == {"triple-p3", "triple-p4", "triple-p5", "deg10-p3"}


def test_cache_coherence(tmp_path):
    path = tmp_path / "cache.jsonl"
    first = run_sweep(small_spec(), CFG, cache=ResultCache(path))
    assert first.computed == len(first.records) == 2 * 3 * 5 and first.cached == 0
    second = run_sweep(small_spec(), CFG, cache=ResultCache(path))
    assert second.computed == 0 and second.cached == len(first.records)
    assert [r.to_json() for r in second.records] == [r.to_json() for r in first.records]
    lines = path.read_text().splitlines()
    assert len(lines) == len(first.records)
    # a different seed is a different key
    third = run_sweep(small_spec(), OracleConfig(seed=4), cache=ResultCache(path))
    assert third.computed == len(first.records)


def test_parallel_matches_serial():
    a = run_sweep(small_spec(), CFG)
    b = run_sweep(small_spec(), CFG, workers=2)
    assert [r.report for r in a.records] == [r.report for r in b.records]


def test_record_round_trip():
    rec = evaluate(canonicalize(3, 4, [3, 3]), CFG, ContainmentPolicy.DELETION, ("cross-oracle",))
    assert CacheRecord.from_json(json.loads(json.dumps(rec.to_json()))) == rec
    assert rec.key == cache_key(rec.system, CFG, ContainmentPolicy.DELETION)
    assert rec.apolarity is not None and rec.apolarity.dim == rec.oracle.dim


def test_growing_sweep_stops_at_empty():
    summary = run_sweep(SweepSpec("grow", (2, 2), (4, 4), mult=2), CFG)
    assert summary.records[-1].oracle.dim == -1
    assert all(r.oracle.dim >= 0 for r in summary.records[:-1])
    assert not summary.violations


def test_samplers_respect_their_regimes():
    rng = np.random.default_rng(0)
    assert all(L.s <= L.n + 2 and effectivity(L) is Effectivity.NONEMPTY for L in few_points(rng, 30))
    assert all(L.s >= L.n + 3 and n3_condition(L).satisfied for L in many_points(rng, 30))
    assert len(set(general(rng, 30))) == 30
    for L, M, base in cremona_pairs(rng, 10):
        assert len(base) == L.n + 1 and M.d >= 0 and M.d != L.d
