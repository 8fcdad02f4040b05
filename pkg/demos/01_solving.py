"""Solving ax + by = c with the three solvers."""
from dea_toolkit import Equation, dea_solve, eea_solve, eea2_solve, general_solution, solve, verify

# canonical input: a > b > 0, c != 0
for solver in (dea_solve, eea_solve, eea2_solve):
    r = solver(5, 3, 7)
    print(r.metrics.solver_id.value, r.solution, "iterations:", r.metrics.loop_iterations)

# every particular solution generates the whole family
r = dea_solve(1759, 550, 2309)
gs = general_solution(r, Equation(1759, 550, 2309))
for m in range(-2, 3):
    print(m, gs.at(m), verify(1759, 550, 2309, gs.at(m)))

# anything else goes through normalize first
report, eq, rec = solve(-550, 1759, 2309)
print(eq, rec)
print("restored:", report.solution, verify(-550, 1759, 2309, report.solution))

# unsolvable: DEA runs down to b = 0 and reports the gcd it found there
print(dea_solve(4, 2, 7).outcome)

# big integers are plain python ints
a = 2**521 - 1
b = 3**300
r = dea_solve(a, b, 12345)
print("521-bit solved:", r.solved, "after", r.metrics.loop_iterations, "steps")
