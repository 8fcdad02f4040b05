import json
import math
from fractions import Fraction

import pytest

from dea_toolkit.analysis import bound_gcd
from dea_toolkit.bench import (
    COMPARE_HEADER,
    SWEEP_HEADER,
    BenchConfig,
    GcdGroupRecord,
    emit_results,
    fixed6,
    gen_gcd_pair,
    gen_triplet,
    manifest_path,
    read_compare_csv,
    read_sweep_csv,
    run_comparison,
    run_gcd_sweep,
    trial_rng,
    write_manifest,
)
from dea_toolkit.solver import SolverId


def test_triplet_determinism():
    cfg = BenchConfig(bits=64, trials=10, seed=42)
    assert gen_triplet(cfg, trial_rng(42, 3)) == gen_triplet(cfg, trial_rng(42, 3))
    assert gen_triplet(cfg, trial_rng(42, 3)) != gen_triplet(cfg, trial_rng(42, 4))


def test_triplet_ranges():
    cfg = BenchConfig(bits=8, trials=1)
    for i in range(10_000):
        a, b, c = gen_triplet(cfg, trial_rng(1, i))
        assert 2 <= a <= 256 and 1 <= b < a and 1 <= c <= 256


@pytest.mark.parametrize("g", [1, 2, 97, 2**20])
def test_gcd_pair_exact(g):
    for i in range(200):
        a, b = gen_gcd_pair(64, g, trial_rng(5, i))
        assert math.gcd(a, b) == g and a > b


def test_gcd_pair_size():
    a, _ = gen_gcd_pair(64, 2**20, trial_rng(0, 0))
    assert a.bit_length() == 84


def test_config_validation():
    with pytest.raises(ValueError):
        BenchConfig(bits=4)
    with pytest.raises(ValueError):
        BenchConfig(trials=0)
    with pytest.raises(ValueError):
        BenchConfig(mode="gcd_sweep", gcd_min=1)


def test_single_trial_summary():
    s = run_comparison(BenchConfig(bits=32, trials=1, seed=3))
    (rec,) = s.records
    for sid in SolverId:
        assert s.avg_loop_iterations[sid] == rec.metrics[sid].loop_iterations
        assert s.avg_equivalent_recursions[sid] == rec.metrics[sid].equivalent_recursions


def test_comparison_shares_instances_and_orders():
    s = run_comparison(BenchConfig(bits=64, trials=500, seed=11))
    for r in s.records:
        assert (r.a, r.b, r.c) == gen_triplet(BenchConfig(bits=64), trial_rng(11, r.trial))
    assert (s.avg_loop_iterations[SolverId.DEA]
            <= s.avg_loop_iterations[SolverId.EEA_I] + 1)
    assert sum(s.delta_distribution.values()) == 500
    assert max(s.delta_distribution) <= 0


def test_parallel_matches_sequential():
    seq = run_comparison(BenchConfig(bits=48, trials=300, seed=9))
    par = run_comparison(BenchConfig(bits=48, trials=300, seed=9, workers=2))
    assert seq.avg_loop_iterations == par.avg_loop_iterations
    assert [r.a for r in seq.records] == [r.a for r in par.records]


def test_sweep_soundness():
    cfg = BenchConfig(bits=32, trials=20, seed=2, mode="gcd_sweep", gcd_min=2, gcd_max=6)
    recs = run_gcd_sweep(cfg)
    assert [r.g for r in recs] == [2, 3, 4, 5, 6]
    for r in recs:
        assert r.sample_count == 20
        assert r.avg_bound_gcd == bound_gcd(1, r.g) * (r.avg_k_plus_1 - 1)


def test_sweep_g1_group_bound():
    cfg = BenchConfig(bits=32, trials=5, seed=2, mode="gcd_sweep", gcd_min=2, gcd_max=2)
    (r,) = run_gcd_sweep(cfg)
    assert r.avg_bound_gcd == Fraction(228, 100) * (r.avg_k_plus_1 - 1) / 2


def test_emit_empty(tmp_path):
    p = emit_results([], tmp_path / "empty.csv", kind="compare")
    assert p.read_text() == ",".join(COMPARE_HEADER) + "\n"
    p = emit_results([], tmp_path / "empty_sweep.csv", kind="sweep")
    assert p.read_text() == ",".join(SWEEP_HEADER) + "\n"


def test_compare_round_trip(tmp_path):
    s = run_comparison(BenchConfig(bits=256, trials=50, seed=4))
    p = emit_results(s.records, tmp_path / "c.csv")
    back = read_compare_csv(p)
    assert [(r.trial, r.a, r.b, r.c, r.solvable) for r in back] == \
        [(r.trial, r.a, r.b, r.c, r.solvable) for r in s.records]
    assert [r.metrics for r in back] == [r.metrics for r in s.records]
    raw = p.read_bytes()
    assert b"\r" not in raw and str(s.records[0].a).encode() in raw


def test_sweep_round_trip(tmp_path):
    recs = [GcdGroupRecord(3, 10, Fraction("1.5"), Fraction("0.123457"), Fraction(41),
                           Fraction("39.25"), Fraction("40.1"))]
    p = emit_results(recs, tmp_path / "s.csv")
    assert read_sweep_csv(p) == recs


def test_fixed6():
    assert fixed6(Fraction(1, 3)) == "0.333333"
    assert fixed6(Fraction(2, 3)) == "0.666667"
    assert fixed6(Fraction(-5, 2)) == "-2.500000"
    assert fixed6(Fraction(1, 2 * 10**6)) == "0.000000"


def test_emit_io_error(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(OSError, match="file"):
        emit_results([], blocker / "out.csv", kind="compare")


def test_manifest_and_determinism(tmp_path):
    cfg = BenchConfig(bits=64, trials=200, seed=7)
    outs = []
    for name in ("one", "two"):
        p = tmp_path / name / "compare.csv"
        emit_results(run_comparison(cfg).records, p)
        write_manifest(cfg, p)
        outs.append((p.read_bytes(), manifest_path(p).read_bytes()))
    assert outs[0] == outs[1]
    entry = json.loads(outs[0][1])
    assert entry["seed"] == 7 and "MT19937" in entry["rng"]
    assert entry["config"]["bits"] == 64
