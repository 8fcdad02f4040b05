import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dea_toolkit.solver import (
    Equation,
    SolutionPair,
    SolverId,
    Unsolvable,
    dea_solve,
    dea_trace,
    eea2_solve,
    eea_gcd_solve,
    eea_solve,
    general_solution,
    normalize,
    remainder_sequence,
    restore,
    solve,
    verify,
)
from oracles import brute_solution, brute_solvable, dea_recursive, eea_recursive

SOLVERS = [dea_solve, eea_solve, eea2_solve]


@st.composite
def canonical(draw, max_value=2**128):
    a = draw(st.integers(2, max_value))
    b = draw(st.integers(1, a - 1))
    c = draw(st.integers(-max_value, max_value).filter(bool))
    return a, b, c


# -- normalize ------------------------------------------------------------

def test_normalize_swaps():
    eq, rec = normalize(550, 1759, 7)
    assert eq == Equation(1759, 550, 7)
    assert rec.swapped


def test_normalize_absorbs_sign():
    eq, rec = normalize(1759, -550, 7)
    assert eq == Equation(1759, 550, 7)
    assert rec.sign_b == -1 and not rec.swapped
    sol = restore(rec, SolutionPair(3, 5))
    assert sol == SolutionPair(3, -5)


def test_normalize_c_zero():
    report, _, rec = solve(5, 3, 0)
    assert rec.trivial_c_zero
    assert report.solution == SolutionPair(0, 0)


def test_normalize_rejects_zero_equation():
    with pytest.raises(ValueError):
        normalize(0, 0, 5)


@pytest.mark.parametrize("a,b,c,solvable", [
    (0, 4, 8, True), (0, 4, 6, False), (6, -6, 12, True), (-7, 0, 13, False), (3, 3, 5, False),
])
def test_degenerate_inputs(a, b, c, solvable):
    report, _, rec = solve(a, b, c)
    assert rec.degenerate
    assert report.solved == solvable
    if solvable:
        assert verify(a, b, c, report.solution)


@given(st.integers(-10**30, 10**30), st.integers(-10**30, 10**30), st.integers(-10**30, 10**30),
       st.sampled_from(["dea", "eea", "eea2"]))
def test_solve_any_input(a, b, c, solver):
    assume((a, b) != (0, 0))
    report, _, _ = solve(a, b, c, solver=solver)
    assert report.solved == (c % math.gcd(a, b) == 0)
    if report.solved:
        assert verify(a, b, c, report.solution)
    else:
        assert report.outcome.gcd == math.gcd(a, b)


# -- remainder chain -------------------------------------------------------

def test_remainder_sequence_worked_example():
    seq = remainder_sequence(1759, 550)
    assert seq.terms == (1759, 550, 109, 5, 4, 1)
    assert seq.quotients == (3, 5, 21, 1, 4)
    assert seq.k == 5


def test_remainder_sequence_fibonacci_pair():
    seq = remainder_sequence(89, 55)
    assert seq.terms == (89, 55, 34, 21, 13, 8, 5, 3, 2, 1)
    assert seq.k == 9


def test_remainder_sequence_exact_division():
    seq = remainder_sequence(6, 3)
    assert seq.terms == (6, 3) and seq.quotients == (2,) and seq.k == 1


@given(st.integers(2, 2**200).flatmap(lambda a: st.tuples(st.just(a), st.integers(1, a - 1))))
def test_remainder_sequence_invariants(pair):
    a, b = pair
    seq = remainder_sequence(a, b)
    t, q = seq.terms, seq.quotients
    for i in range(seq.k - 1):
        assert t[i] == q[i] * t[i + 1] + t[i + 2]
    assert t[-2] == q[-1] * t[-1]
    assert all(x > y for x, y in zip(t, t[1:])) and t[-1] >= 1
    assert seq.gcd == math.gcd(a, b)
    assert seq.term(seq.k + 2) == 0


# -- DEA -------------------------------------------------------------------

def test_dea_small_example():
    r = dea_solve(5, 3, 7)
    assert r.solution == SolutionPair(2, -1)
    assert r.metrics.loop_iterations == 2
    assert brute_solution(5, 3, 7) is not None


def test_dea_first_set_member():
    r = dea_solve(1759, 550, 2309)
    assert r.solution == SolutionPair(1, 1)
    assert r.metrics.loop_iterations == 1


def test_dea_unsolvable():
    r = dea_solve(4, 2, 7)
    assert r.outcome == Unsolvable(2)
    assert r.metrics.loop_iterations == 2


def test_dea_rejects_noncanonical():
    with pytest.raises(ValueError):
        dea_solve(3, 5, 7)
    with pytest.raises(ValueError):
        dea_solve(5, 3, 0)


@given(canonical(max_value=2**64))
def test_dea_matches_recursive_oracle(abc):
    a, b, c = abc
    y_ref, calls = dea_recursive(a, b, c)
    r = dea_solve(a, b, c)
    assert r.metrics.equivalent_recursions == calls
    assert r.metrics.loop_iterations == calls
    if y_ref is None:
        assert not r.solved
    else:
        assert r.solution.y == y_ref


@settings(max_examples=300)
@given(st.integers(2, 60).flatmap(lambda a: st.tuples(st.just(a), st.integers(1, a - 1), st.integers(-500, 500))))
def test_solvability_against_brute_force(abc):
    a, b, c = abc
    assume(c != 0)
    for solver in SOLVERS:
        assert solver(a, b, c).solved == brute_solvable(a, b, c)


def test_trace_steps():
    steps, ys, report = dea_trace(5, 3, 7)
    assert [s.remainder for s in steps] == [2, 0]
    assert ys == [2, -1]
    steps, ys, report = dea_trace(4, 2, 7)
    assert steps[-1].b == 0 and steps[-1].remainder is None
    assert ys == [] and not report.solved


# -- EEA -------------------------------------------------------------------

def test_eea_gcd_worked_example():
    g, x, y = eea_gcd_solve(1759, 550)
    assert g == 1 and 1759 * x + 550 * y == 1
    assert (g, x, y) == eea_recursive(1759, 550)[:3]


def test_eea_gcd_base_case():
    assert eea_gcd_solve(17, 0) == (17, 1, 0)


def test_eea_gcd_exact_division():
    assert eea_gcd_solve(6, 3) == (3, 0, 1)


@given(st.integers(1, 2**256).flatmap(lambda a: st.tuples(st.just(a), st.integers(0, a - 1))))
def test_eea_gcd_matches_recursive(pair):
    a, b = pair
    assume(a > b)
    g, x, y = eea_gcd_solve(a, b)
    assert (g, x, y) == eea_recursive(a, b)[:3]


def test_eea_solve_examples():
    r = eea_solve(5, 3, 7)
    assert r.solution == SolutionPair(-7, 14)
    assert eea_solve(4, 2, 7).outcome == Unsolvable(2)
    r = eea_solve(1759, 550, 2309)
    assert r.solved and r.metrics.loop_iterations == 5
    assert r.metrics.equivalent_recursions == 6


def test_eea2_examples():
    assert verify(5, 3, 7, eea2_solve(5, 3, 7).solution)
    assert eea2_solve(4, 2, 7).outcome == Unsolvable(2)
    r = eea2_solve(1759, 550, 2309)
    assert r.solved
    assert r.metrics.loop_iterations == eea_solve(1759, 550, 2309).metrics.loop_iterations


def test_eea_metrics_match_recursive_call_count():
    for a, b in [(1759, 550), (89, 55), (6, 3), (1000, 999)]:
        calls = eea_recursive(a, b)[3]
        assert eea_solve(a, b, 1).metrics.equivalent_recursions == calls


# -- general solution and verify -------------------------------------------

def test_general_solution_examples():
    eq = Equation(5, 3, 7)
    gs = general_solution(dea_solve(5, 3, 7), eq)
    assert (gs.step_x, gs.step_y) == (3, 5)
    assert gs.at(1) == SolutionPair(5, -6)
    assert gs.at(0) == SolutionPair(2, -1)


def test_general_solution_with_gcd():
    eq = Equation(4, 2, 6)
    report = solve(4, 2, 6)[0]
    gs = general_solution(report, eq)
    assert (gs.step_x, gs.step_y) == (1, 2)
    for m in range(-2, 3):
        assert verify(4, 2, 6, gs.at(m))


def test_general_solution_rejects_unsolvable():
    with pytest.raises(ValueError):
        general_solution(dea_solve(4, 2, 7), Equation(4, 2, 7))


def test_verify():
    assert verify(5, 3, 7, SolutionPair(2, -1))
    assert not verify(5, 3, 7, SolutionPair(1, 1))
    assert verify(12, 5, 0, SolutionPair(0, 0))


# -- cross-solver properties ----------------------------------------------

@given(canonical())
def test_solvers_agree(abc):
    a, b, c = abc
    reports = [s(a, b, c) for s in SOLVERS]
    assert len({r.solved for r in reports}) == 1
    if reports[0].solved:
        for r in reports:
            assert verify(a, b, c, r.solution)
            gs = general_solution(r, Equation(a, b, c))
            for m in range(-3, 4):
                assert verify(a, b, c, gs.at(m))
    else:
        assert len({r.outcome.gcd for r in reports}) == 1


@given(canonical())
def test_metrics_mapping(abc):
    a, b, c = abc
    d, e, e2 = (s(a, b, c).metrics for s in SOLVERS)
    assert d.solver_id is SolverId.DEA and d.equivalent_recursions == d.loop_iterations
    assert e.equivalent_recursions == e.loop_iterations + 1
    assert e2.loop_iterations == e.loop_iterations


@given(canonical())
def test_dominance(abc):
    a, b, c = abc
    assume(abs(c).bit_length() <= max(a.bit_length(), b.bit_length()))
    assert (dea_solve(a, b, c).metrics.equivalent_recursions
            <= eea_solve(a, b, c).metrics.equivalent_recursions)


@given(st.integers(2, 2**64).flatmap(lambda a: st.tuples(st.just(a), st.integers(1, a - 1))),
       st.integers(1, 2**64), st.integers(1, 1000))
def test_dea_count_is_scale_invariant(pair, u, g):
    # every divisibility test (c - a_i) mod a_{i+1} is unchanged by a common factor
    a, b = pair
    base = dea_solve(a, b, u).metrics.loop_iterations
    assert dea_solve(g * a, g * b, g * u).metrics.loop_iterations == base
