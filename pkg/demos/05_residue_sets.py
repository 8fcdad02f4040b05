"""Residue sets c_i and when a single c can sit in all of them."""
from dea_toolkit import remainder_sequence
from dea_toolkit.analysis import c_set, crt_witness, intersection_cardinality, min_index, recursion_count

seq = remainder_sequence(1759, 550)
for i in range(1, seq.k + 1):
    d = c_set(i, seq)
    print(f"c_{i}: c = {d.residue} (mod {d.modulus})")

print("min_index(2309) =", min_index(2309, seq))

w = crt_witness(seq)
print("witness:", w.witness, "modulus:", w.merged_modulus, "per period:", w.cardinality_per_period)
print("DEA on the witness stops after", recursion_count(1759, 550, w.witness).count, "call")

print("|c_1 and c_2| per period:", intersection_cardinality(seq, [1, 2], cross_check=True))

# the Fibonacci pair has no common member
w = crt_witness(remainder_sequence(89, 55))
print("(89, 55) blocking pairs:", w.blocking_pairs)
