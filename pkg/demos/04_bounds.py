"""Exact averages against the closed-form bounds."""
import random

from dea_toolkit import remainder_sequence
from dea_toolkit.analysis import bounds_report, exact_average, fundamental_period

r = bounds_report(1759, 550)
for name in ("bound_solvable_counts", "bound_with_unsolvable", "bound_limit", "bound_fib", "bound_gcd"):
    print(f"{name:24s} {float(getattr(r, name)):.6f}")
print(f"{'bound_expected':24s} {r.bound_expected:.6f}")

rng = random.Random(3)
print("\n   a    b  g  exact avg  with_unsolv")
shown = 0
while shown < 8:
    a = rng.randint(2, 500)
    b = rng.randint(1, a - 1)
    if fundamental_period(remainder_sequence(a, b)).L > 10**6:
        continue
    avg = exact_average(a, b)
    rep = bounds_report(a, b)
    print(f"{a:4d} {b:4d} {rep.gcd:2d} {float(avg.exact_average):10.4f} {float(rep.bound_with_unsolvable):12.4f}")
    shown += 1
