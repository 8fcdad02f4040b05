"""The remainder chain and a step-by-step DEA trace."""
from dea_toolkit.solver import dea_trace, remainder_sequence
from dea_toolkit.analysis import fibonacci, fibonacci_check

seq = remainder_sequence(1759, 550)
print("terms:", seq.terms)
print("quotients:", seq.quotients)
print("k =", seq.k, " gcd =", seq.gcd)

steps, ys, report = dea_trace(5, 3, 7)
for s in steps:
    print(f"step {s.index}: ({7} - {s.a}) mod {s.b} = {s.remainder}")
print("back-substituted y values:", ys, "->", report.solution)

# consecutive Fibonacci numbers give the longest chain for their size
seq = remainder_sequence(89, 55)
print("k for (89, 55):", seq.k)
print("F_(k+2), F_(k+1):", fibonacci(seq.k + 2), fibonacci(seq.k + 1))
print("lower bound holds:", fibonacci_check(seq))
