"""Seeded comparison and gcd sweep at a small scale."""
import tempfile
from pathlib import Path

from dea_toolkit.bench import BenchConfig, emit_results, run_comparison, run_gcd_sweep, spearman, write_manifest

cfg = BenchConfig(bits=128, trials=2000, seed=0)
s = run_comparison(cfg)
for sid, v in s.avg_loop_iterations.items():
    print(f"{sid.value:6s} {float(v):.3f}")
print("DEA minus EEA-I per trial:", dict(sorted(s.delta_distribution.items())))

sweep = run_gcd_sweep(BenchConfig(bits=64, trials=50, seed=0, mode="gcd_sweep", gcd_min=2, gcd_max=30))
for r in sweep[:5]:
    print(r.g, float(r.avg_bound_gcd), float(r.avg_dea_iterations), float(r.avg_eea_iterations))
print("spearman(g, bound):", spearman([r.g for r in sweep], [float(r.avg_bound_gcd) for r in sweep]))

# DEA counts do not depend on a common factor, so its average stays flat
print("DEA at g=2 vs g=30:", float(sweep[0].avg_dea_iterations), float(sweep[-1].avg_dea_iterations))

with tempfile.TemporaryDirectory() as d:
    out = emit_results(s.records, Path(d) / "compare.csv")
    write_manifest(cfg, out)
    print(out.read_text().splitlines()[0])
