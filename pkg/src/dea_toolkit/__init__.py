"""Instrumented solvers and average-case analysis for ``ax + by = c``."""
from .solver import (
    Equation,
    GeneralSolution,
    Metrics,
    NormalizationRecord,
    RemainderSequence,
    SolutionPair,
    SolveReport,
    Solved,
    SolverId,
    Unsolvable,
    dea_solve,
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

__version__ = "0.1.0"
