"""Exact solvers for ``ax + by = c`` with per-run instrumentation.

Three solvers share one outcome contract:

* :func:`dea_solve` walks the Euclid chain and stops at the first index
  ``i`` where ``(c - a_i)`` is divisible by ``a_{i+1}``, then
  back-substitutes through the stored coefficients.
* :func:`eea_solve` runs the Extended Euclid algorithm with an explicit
  quotient stack and scales the gcd solution by ``c / g``.
* :func:`eea2_solve` is the stackless forward-recurrence Extended Euclid.

The core solvers require the canonical form ``a > b >= 1``, ``c != 0``.
:func:`solve` accepts any integers and routes them through :func:`normalize`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

__all__ = [
    "SolverId",
    "Equation",
    "NormalizationRecord",
    "RemainderSequence",
    "SolutionPair",
    "GeneralSolution",
    "Metrics",
    "Solved",
    "Unsolvable",
    "SolveReport",
    "normalize",
    "restore",
    "remainder_sequence",
    "dea_solve",
    "TraceStep",
    "dea_trace",
    "eea_gcd_solve",
    "eea_solve",
    "eea2_solve",
    "general_solution",
    "verify",
    "solve",
    "SOLVERS",
]


class SolverId(str, enum.Enum):
    DEA = "DEA"
    EEA_I = "EEA_I"
    EEA_2 = "EEA_2"


@dataclass(frozen=True)
class Equation:
    a: int
    b: int
    c: int

    @property
    def is_canonical(self) -> bool:
        return self.a > self.b >= 1


@dataclass(frozen=True)
class NormalizationRecord:
    """How an input equation was mapped onto its canonical form.

    ``degenerate`` is set when the canonical form cannot satisfy ``a > b >= 1``
    (one coefficient is zero, or ``|a| == |b|``); :func:`solve` handles
    those directly.
    """

    swapped: bool = False
    sign_a: int = 1
    sign_b: int = 1
    trivial_c_zero: bool = False
    degenerate: bool = False


@dataclass(frozen=True)
class RemainderSequence:
    """Euclid chain ``a_1 > a_2 > ... > a_{k+1} = gcd(a_1, a_2)``.

    ``terms`` and ``quotients`` are stored 0-based; :meth:`term` and
    :meth:`quotient` take the 1-based indices used in the analysis.
    """

    terms: tuple[int, ...]
    quotients: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.quotients)

    @property
    def gcd(self) -> int:
        return self.terms[-1]

    def term(self, i: int) -> int:
        """Return ``a_i`` (1-based); ``a_{k+2}`` is 0."""
        if i == len(self.terms) + 1:
            return 0
        if not 1 <= i <= len(self.terms):
            raise IndexError(f"term index {i} outside 1..{len(self.terms) + 1}")
        return self.terms[i - 1]

    def quotient(self, i: int) -> int:
        if not 1 <= i <= self.k:
            raise IndexError(f"quotient index {i} outside 1..{self.k}")
        return self.quotients[i - 1]


@dataclass(frozen=True)
class SolutionPair:
    x: int
    y: int


@dataclass(frozen=True)
class GeneralSolution:
    """All solutions ``(x0 + m*step_x, y0 - m*step_y)`` for integer ``m``."""

    x0: int
    y0: int
    step_x: int
    step_y: int

    def at(self, m: int) -> SolutionPair:
        return SolutionPair(self.x0 + m * self.step_x, self.y0 - m * self.step_y)


@dataclass(frozen=True)
class Metrics:
    solver_id: SolverId
    loop_iterations: int
    equivalent_recursions: int


@dataclass(frozen=True)
class Solved:
    solution: SolutionPair


@dataclass(frozen=True)
class Unsolvable:
    gcd: int


@dataclass(frozen=True)
class SolveReport:
    outcome: Union[Solved, Unsolvable]
    metrics: Metrics

    @property
    def solved(self) -> bool:
        return isinstance(self.outcome, Solved)

    @property
    def solution(self) -> SolutionPair:
        if not isinstance(self.outcome, Solved):
            raise ValueError(f"equation is unsolvable (gcd={self.outcome.gcd})")
        return self.outcome.solution


def _sign(v: int) -> int:
    return -1 if v < 0 else 1


def normalize(a: int, b: int, c: int) -> tuple[Equation, NormalizationRecord]:
    """Map ``ax + by = c`` onto ``A > B >= 1`` by absorbing signs and swapping.

    Raises ValueError when ``a == b == 0``.
    """
    a, b, c = int(a), int(b), int(c)
    if a == 0 and b == 0:
        raise ValueError("a and b are both zero: no equation to solve")
    sign_a, sign_b = _sign(a), _sign(b)
    A, B = abs(a), abs(b)
    swapped = A < B
    if swapped:
        A, B = B, A
    rec = NormalizationRecord(
        swapped=swapped,
        sign_a=sign_a,
        sign_b=sign_b,
        trivial_c_zero=(c == 0),
        degenerate=(B == 0 or A == B),
    )
    return Equation(A, B, c), rec


def restore(rec: NormalizationRecord, sol: SolutionPair) -> SolutionPair:
    """Map a canonical solution back onto the original equation."""
    x, y = (sol.y, sol.x) if rec.swapped else (sol.x, sol.y)
    return SolutionPair(rec.sign_a * x, rec.sign_b * y)


def remainder_sequence(a: int, b: int) -> RemainderSequence:
    if not a > b >= 1:
        raise ValueError(f"remainder_sequence needs a > b >= 1, got ({a}, {b})")
    terms = [a, b]
    quotients = []
    while True:
        q, r = divmod(terms[-2], terms[-1])
        quotients.append(q)
        if r == 0:
            break
        terms.append(r)
    return RemainderSequence(tuple(terms), tuple(quotients))


def _check_canonical(a: int, b: int, c: int) -> None:
    if not a > b >= 1:
        raise ValueError(f"expected a > b >= 1, got a={a}, b={b}")
    if c == 0:
        raise ValueError("c must be nonzero; use solve() for c == 0")


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    assert r == 0, f"inexact division {num} / {den}"
    return q


def _dea_forward(a: int, b: int, c: int) -> tuple[list[int], int, int, bool]:
    # coefarray holds a_1..a_i; calls counts the recursive calls of the
    # recursive formulation (the b == 0 detection counts as one).
    coefarray = []
    calls = 1
    while (c - a) % b != 0:
        coefarray.append(a)
        a, b = b, a % b
        calls += 1
        if b == 0:
            return coefarray, a, calls, False
    coefarray.append(a)
    return coefarray, b, calls, True


def dea_solve(a: int, b: int, c: int) -> SolveReport:
    """Solve a canonical equation by early-exit descent of the Euclid chain.

    ``loop_iterations`` equals the index ``i`` at which the divisibility test
    fired, or ``k + 1`` when the chain ran out (unsolvable).
    """
    _check_canonical(a, b, c)
    coefarray, last, calls, ok = _dea_forward(a, b, c)
    metrics = Metrics(SolverId.DEA, calls, calls)
    if not ok:
        # last is the gcd of the original inputs; c is not a multiple of it
        return SolveReport(Unsolvable(last), metrics)
    i = len(coefarray) - 1
    y = _exact_div(c - coefarray[i], last)
    while i >= 1:
        y = _exact_div(c - y * coefarray[i - 1], coefarray[i])
        i -= 1
    x = _exact_div(c - b * y, a)
    return SolveReport(Solved(SolutionPair(x, y)), metrics)


@dataclass(frozen=True)
class TraceStep:
    index: int
    a: int
    b: int
    remainder: Optional[int]  # (c - a) mod b; None at the b == 0 base case


def dea_trace(a: int, b: int, c: int) -> tuple[list[TraceStep], list[int], SolveReport]:
    """Return the per-index divisibility tests, back-substituted y values and report."""
    _check_canonical(a, b, c)
    steps = []
    i, ca, cb = 1, a, b
    while True:
        if cb == 0:
            steps.append(TraceStep(i, ca, cb, None))
            break
        r = (c - ca) % cb
        steps.append(TraceStep(i, ca, cb, r))
        if r == 0:
            break
        ca, cb = cb, ca % cb
        i += 1
    report = dea_solve(a, b, c)
    ys = []
    if report.solved:
        coefarray, last, _, _ = _dea_forward(a, b, c)
        j = len(coefarray) - 1
        y = _exact_div(c - coefarray[j], last)
        ys.append(y)
        while j >= 1:
            y = _exact_div(c - y * coefarray[j - 1], coefarray[j])
            ys.append(y)
            j -= 1
    return steps, ys, report


def _eea_core(a: int, b: int) -> tuple[int, int, int, int]:
    floor_array = []
    while b != 0:
        floor_array.append(a // b)
        a, b = b, a % b
    iterations = len(floor_array)
    x, y = 1, 0
    while floor_array:
        x, y = y, x - floor_array.pop() * y
    return a, x, y, iterations


def eea_gcd_solve(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid with a quotient stack: ``a*x + b*y = g``."""
    if not a > b >= 0:
        raise ValueError(f"eea_gcd_solve needs a > b >= 0, got ({a}, {b})")
    g, x, y, _ = _eea_core(a, b)
    return g, x, y


def eea_solve(a: int, b: int, c: int) -> SolveReport:
    _check_canonical(a, b, c)
    g, x, y, k = _eea_core(a, b)
    metrics = Metrics(SolverId.EEA_I, k, k + 1)
    if c % g != 0:
        return SolveReport(Unsolvable(g), metrics)
    scale = _exact_div(c, g)
    return SolveReport(Solved(SolutionPair(scale * x, scale * y)), metrics)


def eea2_solve(a: int, b: int, c: int) -> SolveReport:
    """Stackless Extended Euclid carrying coefficient pairs forward."""
    _check_canonical(a, b, c)
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    k = 0
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
        k += 1
    g = old_r
    metrics = Metrics(SolverId.EEA_2, k, k + 1)
    if c % g != 0:
        return SolveReport(Unsolvable(g), metrics)
    scale = _exact_div(c, g)
    return SolveReport(Solved(SolutionPair(scale * old_s, scale * old_t)), metrics)


SOLVERS: dict[str, Callable[[int, int, int], SolveReport]] = {
    "dea": dea_solve,
    "eea": eea_solve,
    "eea2": eea2_solve,
}

_SOLVER_IDS = {"dea": SolverId.DEA, "eea": SolverId.EEA_I, "eea2": SolverId.EEA_2}


def general_solution(report: SolveReport, eq: Equation) -> GeneralSolution:
    if not report.solved:
        raise ValueError("no general solution: equation is unsolvable")
    g = math.gcd(eq.a, eq.b)
    sol = report.solution
    return GeneralSolution(sol.x, sol.y, eq.b // g, eq.a // g)


def verify(a: int, b: int, c: int, sol: SolutionPair) -> bool:
    return a * sol.x + b * sol.y == c


def _solve_degenerate(eq: Equation, solver_id: SolverId) -> SolveReport:
    # Either B == 0 (only A*x = c) or A == B (A*(x + y) = c).
    zero = Metrics(solver_id, 0, 0)
    if eq.c % eq.a != 0:
        return SolveReport(Unsolvable(eq.a), zero)
    return SolveReport(Solved(SolutionPair(eq.c // eq.a, 0)), zero)


def solve(a: int, b: int, c: int, solver: str = "dea") -> tuple[SolveReport, Equation, NormalizationRecord]:
    """Solve an arbitrary ``ax + by = c``.

    Returns the report (with the solution mapped back to the original
    equation), the canonical equation and the normalization record.
    """
    if solver not in SOLVERS:
        raise ValueError(f"unknown solver {solver!r}; choose from {sorted(SOLVERS)}")
    eq, rec = normalize(a, b, c)
    sid = _SOLVER_IDS[solver]
    if rec.trivial_c_zero:
        report = SolveReport(Solved(SolutionPair(0, 0)), Metrics(sid, 0, 0))
    elif rec.degenerate:
        report = _solve_degenerate(eq, sid)
    else:
        report = SOLVERS[solver](eq.a, eq.b, eq.c)
    if report.solved:
        report = SolveReport(Solved(restore(rec, report.solution)), report.metrics)
    return report, eq, rec
