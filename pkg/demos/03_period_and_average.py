"""The call count R(c) is periodic in c; average it over one period."""
import numpy as np

from dea_toolkit import remainder_sequence
from dea_toolkit.analysis import exact_average, fundamental_period, recursion_counts, verify_periodicity

a, b = 1759, 550
seq = remainder_sequence(a, b)
L = fundamental_period(seq).L
print("L =", L)

r = recursion_counts(seq, np.arange(1, 2 * L + 1, dtype=np.int64))
print("R(c) == R(c + L) everywhere:", bool(np.array_equal(r[:L], r[L:])))
print("first 20 counts:", r[:20].tolist())

v = verify_periodicity(a, b)
print("premature periods found:", v.premature_periods or "none")

avg = exact_average(a, b)
print("n_i:", avg.n_counts)
print("exact average:", avg.exact_average, "~", float(avg.exact_average))

# with a common factor some c are unsolvable and cost k + 1 calls
avg = exact_average(4 * 37, 4 * 11)
print("g = 4: n' =", avg.n_prime, "of", avg.L, " average", float(avg.exact_average))
