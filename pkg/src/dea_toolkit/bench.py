"""Seeded comparison and gcd-sweep experiments over the three solvers.

Every random draw comes from a per-trial ``random.Random`` (MT19937) seeded
with ``seed * 2**64 + stream * 2**32 + index``, so a trial is reproducible in
isolation and parallel runs give the same numbers as sequential ones.
"""
from __future__ import annotations

import csv
import json
import math
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence

from . import __version__
from .analysis import bound_gcd, bound_with_unsolvable
from .solver import Metrics, SolverId, dea_solve, eea2_solve, eea_solve, remainder_sequence

RNG_ALGORITHM = (
    "MT19937 (python random.Random), per-trial seed = seed*2^64 + stream*2^32 + index; "
    "stream 0 = compare, stream g = gcd-sweep group g"
)

COMPARE_HEADER = [
    "trial", "a", "b", "c", "solvable",
    "dea_iters", "dea_recursions", "eea_i_iters", "eea_i_recursions", "eea2_iters",
]
SWEEP_HEADER = [
    "g", "samples", "avg_bound_unsolv", "avg_bound_gcd",
    "avg_k_plus_1", "avg_dea_iters", "avg_eea_iters",
]

_SOLVER_FUNCS = {
    SolverId.DEA: dea_solve,
    SolverId.EEA_I: eea_solve,
    SolverId.EEA_2: eea2_solve,
}

_STREAM_COMPARE = 0
_REJECTION_CAP = 10_000


@dataclass(frozen=True)
class BenchConfig:
    bits: int = 128
    trials: int = 10_000
    seed: int = 0
    solvers: tuple[SolverId, ...] = (SolverId.DEA, SolverId.EEA_I, SolverId.EEA_2)
    mode: str = "compare"
    gcd_min: int = 2
    gcd_max: int = 100
    output_path: Optional[str] = None
    workers: int = 1

    def __post_init__(self):
        if self.bits < 8:
            raise ValueError("bits must be >= 8")
        if not 1 <= self.trials < 2**32:
            raise ValueError("trials must be in [1, 2^32)")
        if self.mode not in ("compare", "gcd_sweep"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "gcd_sweep" and not 2 <= self.gcd_min <= self.gcd_max:
            raise ValueError("gcd sweep needs 2 <= gcd_min <= gcd_max")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned value")

    def to_json(self) -> dict:
        d = asdict(self)
        d["solvers"] = [s.value for s in self.solvers]
        return d


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    a: int
    b: int
    c: int
    solvable: bool
    metrics: dict = field(default_factory=dict)  # SolverId -> Metrics


@dataclass(frozen=True)
class CompareSummary:
    trials: int
    avg_loop_iterations: dict
    avg_equivalent_recursions: dict
    delta_distribution: dict  # DEA minus EEA-I equivalent recursions -> count
    records: list = field(repr=False, default_factory=list)


@dataclass(frozen=True)
class GcdGroupRecord:
    g: int
    sample_count: int
    avg_bound_with_unsolvable: Fraction
    avg_bound_gcd: Fraction
    avg_k_plus_1: Fraction
    avg_dea_iterations: Fraction
    avg_eea_iterations: Fraction


def trial_rng(seed: int, index: int, stream: int = _STREAM_COMPARE) -> random.Random:
    return random.Random((seed << 64) | (stream << 32) | index)


def gen_triplet(cfg: BenchConfig, rng: random.Random) -> tuple[int, int, int]:
    """``a`` in ``[2, 2^bits]``, ``b`` in ``[1, a-1]``, ``c`` in ``[1, 2^bits]``."""
    top = 1 << cfg.bits
    a = rng.randint(2, top)
    b = rng.randint(1, a - 1)
    c = rng.randint(1, top)
    return a, b, c


def gen_gcd_pair(bits: int, g: int, rng: random.Random) -> tuple[int, int]:
    """Return ``(g*a', g*b')`` with ``a' > b'`` coprime and ``a'`` of ``bits`` bits."""
    if g < 1:
        raise ValueError("g must be >= 1")
    lo, hi = 1 << (bits - 1), (1 << bits) - 1
    for _ in range(_REJECTION_CAP):
        a = rng.randint(lo, hi)
        b = rng.randint(1, a - 1)
        if math.gcd(a, b) == 1:
            return g * a, g * b
    raise RuntimeError(f"no coprime pair after {_REJECTION_CAP} draws")


def _run_trial(args) -> TrialRecord:
    cfg, index = args
    a, b, c = gen_triplet(cfg, trial_rng(cfg.seed, index))
    metrics = {}
    verdicts = set()
    for sid in cfg.solvers:
        report = _SOLVER_FUNCS[sid](a, b, c)
        metrics[sid] = report.metrics
        verdicts.add(report.solved)
    if len(verdicts) != 1:
        raise AssertionError(f"solvers disagree on solvability of ({a}, {b}, {c})")
    return TrialRecord(index, a, b, c, verdicts.pop(), metrics)


def _map(func, items, workers: int):
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, items, chunksize=64))
    return [func(item) for item in items]


def run_comparison(cfg: BenchConfig) -> CompareSummary:
    if cfg.mode != "compare":
        raise ValueError("run_comparison needs mode='compare'")
    records = _map(_run_trial, [(cfg, i) for i in range(cfg.trials)], cfg.workers)
    n = len(records)
    avg_iters, avg_recs = {}, {}
    for sid in cfg.solvers:
        avg_iters[sid] = Fraction(sum(r.metrics[sid].loop_iterations for r in records), n)
        avg_recs[sid] = Fraction(sum(r.metrics[sid].equivalent_recursions for r in records), n)
    delta = Counter()
    if SolverId.DEA in cfg.solvers and SolverId.EEA_I in cfg.solvers:
        for r in records:
            delta[r.metrics[SolverId.DEA].equivalent_recursions
                  - r.metrics[SolverId.EEA_I].equivalent_recursions] += 1
    return CompareSummary(n, avg_iters, avg_recs, dict(sorted(delta.items())), records)


def _sweep_group(args) -> GcdGroupRecord:
    cfg, g = args
    sums = [Fraction(0)] * 2
    k1 = dea_total = eea_total = 0
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i, stream=g)
        a, b = gen_gcd_pair(cfg.bits, g, rng)
        c = g * rng.randint(1, 1 << cfg.bits)
        seq = remainder_sequence(a, b)
        sums[0] += bound_with_unsolvable(seq)
        sums[1] += bound_gcd(seq.k, g)
        k1 += seq.k + 1
        dea = dea_solve(a, b, c)
        eea = eea_solve(a, b, c)
        assert dea.solved and eea.solved
        dea_total += dea.metrics.loop_iterations
        eea_total += eea.metrics.loop_iterations
    n = cfg.trials
    return GcdGroupRecord(
        g, n, sums[0] / n, sums[1] / n,
        Fraction(k1, n), Fraction(dea_total, n), Fraction(eea_total, n),
    )


def run_gcd_sweep(cfg: BenchConfig) -> list[GcdGroupRecord]:
    """One :class:`GcdGroupRecord` per ``g`` in ``[gcd_min, gcd_max]``.

    ``cfg.trials`` is the number of gcd-controlled instances per ``g``; every
    ``c`` is drawn as ``g*u`` so all instances are solvable.
    """
    if cfg.mode != "gcd_sweep":
        raise ValueError("run_gcd_sweep needs mode='gcd_sweep'")
    if cfg.gcd_max >= 1 << 32:
        raise ValueError("gcd_max must stay below 2^32")
    groups = range(cfg.gcd_min, cfg.gcd_max + 1)
    return _map(_sweep_group, [(cfg, g) for g in groups], cfg.workers)


def fixed6(q: Fraction) -> str:
    """Render a rational with exactly 6 fractional digits (round half to even)."""
    scaled = round(Fraction(q) * 10**6)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**6)
    return f"{sign}{whole}.{frac:06d}"


def _compare_row(r: TrialRecord) -> list:
    # solvers left out of the run get empty cells
    def get(sid, attr):
        m = r.metrics.get(sid)
        return "" if m is None else getattr(m, attr)

    return [
        r.trial, r.a, r.b, r.c, int(r.solvable),
        get(SolverId.DEA, "loop_iterations"), get(SolverId.DEA, "equivalent_recursions"),
        get(SolverId.EEA_I, "loop_iterations"), get(SolverId.EEA_I, "equivalent_recursions"),
        get(SolverId.EEA_2, "loop_iterations"),
    ]


def _sweep_row(r: GcdGroupRecord) -> list:
    return [
        r.g, r.sample_count,
        fixed6(r.avg_bound_with_unsolvable), fixed6(r.avg_bound_gcd),
        fixed6(r.avg_k_plus_1), fixed6(r.avg_dea_iterations), fixed6(r.avg_eea_iterations),
    ]


def emit_results(records: Sequence, path, kind: Optional[str] = None) -> Path:
    """Write compare or sweep records as CSV (header always, LF endings).

    ``kind`` is inferred from the record type; pass it explicitly for an
    empty list (defaults to ``"compare"``).
    """
    path = Path(path)
    if kind is None:
        kind = "sweep" if records and isinstance(records[0], GcdGroupRecord) else "compare"
    if kind == "compare":
        header, rows = COMPARE_HEADER, [_compare_row(r) for r in sorted(records, key=lambda r: r.trial)]
    elif kind == "sweep":
        header, rows = SWEEP_HEADER, [_sweep_row(r) for r in sorted(records, key=lambda r: r.g)]
    else:
        raise ValueError(f"unknown record kind {kind!r}")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        raise OSError(f"cannot write results to {path}: {exc}") from exc
    return path


def read_compare_csv(path) -> list[TrialRecord]:
    out = []
    with Path(path).open(newline="") as fh:
        for row in csv.DictReader(fh):
            v = {k: int(x) for k, x in row.items() if x != ""}
            metrics = {}
            if "dea_iters" in v:
                metrics[SolverId.DEA] = Metrics(SolverId.DEA, v["dea_iters"], v["dea_recursions"])
            if "eea_i_iters" in v:
                metrics[SolverId.EEA_I] = Metrics(SolverId.EEA_I, v["eea_i_iters"], v["eea_i_recursions"])
            if "eea2_iters" in v:
                metrics[SolverId.EEA_2] = Metrics(SolverId.EEA_2, v["eea2_iters"], v["eea2_iters"] + 1)
            out.append(TrialRecord(v["trial"], v["a"], v["b"], v["c"], bool(v["solvable"]), metrics))
    return out


def read_sweep_csv(path) -> list[GcdGroupRecord]:
    out = []
    with Path(path).open(newline="") as fh:
        for row in csv.DictReader(fh):
            out.append(GcdGroupRecord(
                int(row["g"]), int(row["samples"]),
                Fraction(row["avg_bound_unsolv"]), Fraction(row["avg_bound_gcd"]),
                Fraction(row["avg_k_plus_1"]), Fraction(row["avg_dea_iters"]),
                Fraction(row["avg_eea_iters"]),
            ))
    return out


def manifest_path(path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".manifest.jsonl")


def write_manifest(cfg: BenchConfig, path, extra: Optional[dict] = None) -> Path:
    """Write the JSON-lines run manifest next to ``path``; no timestamps."""
    entry = {
        "config": cfg.to_json(),
        "rng": RNG_ALGORITHM,
        "seed": cfg.seed,
        "toolkit_version": __version__,
    }
    if extra:
        entry.update(extra)
    out = manifest_path(path)
    try:
        with out.open("w", newline="") as fh:
            fh.write(json.dumps(entry, sort_keys=True) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write manifest to {out}: {exc}") from exc
    return out


def spearman(xs: Iterable[float], ys: Iterable[float]) -> float:
    from scipy.stats import spearmanr

    return float(spearmanr(list(xs), list(ys)).statistic)
