"""Periodic structure and average-case bounds of the DEA recursion count.

For fixed ``(a, b)`` with Euclid chain ``a_1 > ... > a_{k+1} = g``, the
number of calls DEA makes on ``c`` is ``R(c) = min{i : c = a_i (mod a_{i+1})}``,
or ``k + 1`` when no such index exists (``g`` does not divide ``c``).

``R`` is periodic with period ``L = lcm(a_2, ..., a_{k+1})``. The exact
average over one period comes from enumeration (:func:`exact_average`) and
is compared against a chain of closed-form upper bounds.

Enumeration oracles are capped by ``budget`` (default ``DEFAULT_BUDGET``
candidate values of ``c``) and raise :class:`BudgetExceeded` above it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .solver import RemainderSequence, dea_solve, remainder_sequence

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "CSetDescriptor",
    "PeriodReport",
    "PeriodicityReport",
    "AverageReport",
    "BoundsReport",
    "IntersectionReport",
    "Recursions",
    "recursion_count",
    "recursion_counts",
    "c_set",
    "min_index",
    "fundamental_period",
    "verify_periodicity",
    "exact_average",
    "bound_solvable_counts",
    "bound_with_unsolvable",
    "bound_limit",
    "bound_fib",
    "bound_gcd",
    "bound_expected",
    "bounds_report",
    "fibonacci",
    "fibonacci_check",
    "crt_merge",
    "crt_condition",
    "crt_witness",
    "intersection_cardinality",
]

DEFAULT_BUDGET = 10**7

# 2.28 is the rounded value of sqrt(5) / (phi - 1) used by the Fibonacci bound.
FIB_CONSTANT = Fraction(228, 100)


class BudgetExceeded(ValueError):
    """An enumeration would exceed the configured candidate budget."""


@dataclass(frozen=True)
class CSetDescriptor:
    """The residue class ``c = residue (mod modulus)`` of index ``i``."""

    index: int
    modulus: int
    residue: int

    def __contains__(self, c: int) -> bool:
        return (c - self.residue) % self.modulus == 0


@dataclass(frozen=True)
class PeriodReport:
    L: int
    factors: tuple[int, ...]
    empirically_minimal: Optional[bool] = None


@dataclass(frozen=True)
class PeriodicityReport:
    L: int
    span: int
    periodic: bool
    mismatches: int
    checked: int
    premature_periods: tuple[int, ...]

    @property
    def empirically_minimal(self) -> bool:
        return not self.premature_periods


@dataclass(frozen=True)
class AverageReport:
    L: int
    k: int
    n_counts: tuple[int, ...]
    n_prime: int
    exact_average: Fraction

    @property
    def solvable_average(self) -> Fraction:
        """``(1/L) * sum(i * n_i)``: the average with the unsolvable term dropped."""
        return Fraction(sum(i * n for i, n in enumerate(self.n_counts, 1)), self.L)

    @property
    def conditional_solvable_average(self) -> Fraction:
        """Mean of ``R(c)`` over the solvable ``c`` in one period."""
        return Fraction(sum(i * n for i, n in enumerate(self.n_counts, 1)), sum(self.n_counts))


@dataclass(frozen=True)
class BoundsReport:
    k: int
    gcd: int
    bound_solvable_counts: Fraction
    bound_with_unsolvable: Fraction
    bound_limit: Fraction
    bound_fib: Fraction
    bound_gcd: Fraction
    bound_expected: float


@dataclass(frozen=True)
class IntersectionReport:
    condition_holds: bool
    witness: Optional[int]
    cardinality_per_period: Optional[int]
    merged_modulus: Optional[int] = None
    blocking_pairs: tuple[tuple[int, int], ...] = field(default=())


class Recursions(NamedTuple):
    count: int
    solvable: bool


def _as_seq(seq_or_pair) -> RemainderSequence:
    if isinstance(seq_or_pair, RemainderSequence):
        return seq_or_pair
    a, b = seq_or_pair
    return remainder_sequence(a, b)


def _lcm(values: Iterable[int]) -> int:
    return reduce(math.lcm, values, 1)


def recursion_count(a: int, b: int, c: int) -> Recursions:
    """Number of calls DEA makes on ``(a, b, c)``; ``k + 1`` when unsolvable."""
    report = dea_solve(a, b, c)
    return Recursions(report.metrics.equivalent_recursions, report.solved)


def recursion_counts(seq: RemainderSequence, cs: np.ndarray) -> np.ndarray:
    """Vectorised DEA call counts for an integer array of ``c`` values.

    Applies the same per-index test as :func:`dea_solve` in the same order,
    so every entry equals ``dea_solve(a, b, c).metrics.equivalent_recursions``.
    Moduli must fit in int64.
    """
    cs = np.asarray(cs, dtype=np.int64)
    out = np.full(cs.shape, seq.k + 1, dtype=np.int64)
    pending = np.ones(cs.shape, dtype=bool)
    for i in range(1, seq.k + 1):
        d = c_set(i, seq)
        hit = pending & ((cs - d.residue) % d.modulus == 0)
        out[hit] = i
        pending &= ~hit
        if not pending.any():
            break
    return out


def c_set(i: int, seq: RemainderSequence) -> CSetDescriptor:
    if not 1 <= i <= seq.k:
        raise IndexError(f"c_set index {i} outside 1..{seq.k}")
    modulus = seq.term(i + 1)
    return CSetDescriptor(i, modulus, seq.term(i) % modulus)


def min_index(c: int, seq: RemainderSequence) -> Optional[int]:
    """Smallest ``i`` with ``c`` in ``c_i``, or None if ``c`` is in none of them."""
    for i in range(1, seq.k + 1):
        if c in c_set(i, seq):
            return i
    return None


def fundamental_period(seq: RemainderSequence) -> PeriodReport:
    factors = seq.terms[1:]
    return PeriodReport(_lcm(factors), tuple(factors))


def _check_budget(n: int, budget: int, what: str) -> None:
    if n > budget:
        raise BudgetExceeded(f"{what} needs {n} candidate values, budget is {budget}")


def verify_periodicity(a: int, b: int, span: int = 1, budget: int = DEFAULT_BUDGET) -> PeriodicityReport:
    """Check ``R(c + L) == R(c)`` for every solvable ``c`` in ``[1, span*L]``.

    Also scans every maximal proper divisor ``L/p`` (``p`` prime) for
    premature periodicity of the call count over all ``c`` (unsolvable ``c``
    counted as ``k + 1``). Any proper divisor that is a period divides one
    of these, so the scan is exhaustive.
    """
    from sympy import primefactors

    seq = remainder_sequence(a, b)
    L = fundamental_period(seq).L
    _check_budget(L * span, budget, "verify_periodicity")
    cs = np.arange(1, (span + 1) * L + 1, dtype=np.int64)
    r = recursion_counts(seq, cs)
    n = span * L
    solvable = cs[:n] % seq.gcd == 0
    mismatches = int(np.count_nonzero((r[:n] != r[L:L + n]) & solvable))
    premature = []
    for p in primefactors(L):
        d = L // p
        if np.array_equal(r[:L], r[d:d + L]):
            premature.append(d)
    return PeriodicityReport(
        L=L,
        span=span,
        periodic=mismatches == 0,
        mismatches=mismatches,
        checked=int(np.count_nonzero(solvable)),
        premature_periods=tuple(sorted(premature)),
    )


def exact_average(a: int, b: int, budget: int = DEFAULT_BUDGET) -> AverageReport:
    """Enumerate ``c`` in ``[1, L]`` and average the call counts exactly."""
    seq = remainder_sequence(a, b)
    L = fundamental_period(seq).L
    _check_budget(L, budget, "exact_average")
    r = recursion_counts(seq, np.arange(1, L + 1, dtype=np.int64))
    counts = np.bincount(r, minlength=seq.k + 2)
    n_counts = tuple(int(v) for v in counts[1:seq.k + 1])
    n_prime = int(counts[seq.k + 1])
    total = sum(i * n for i, n in enumerate(n_counts, 1)) + (seq.k + 1) * n_prime
    return AverageReport(L, seq.k, n_counts, n_prime, Fraction(total, L))


def bound_solvable_counts(seq) -> Fraction:
    """``(1/L) * sum_i i * (L/a_{i+1} + 1)``, assuming every ``c`` is solvable."""
    seq = _as_seq(seq)
    L = fundamental_period(seq).L
    total = sum(i * (L // seq.term(i + 1) + 1) for i in range(1, seq.k + 1))
    return Fraction(total, L)


def bound_with_unsolvable(seq) -> Fraction:
    """Adds ``(k+1) * n'`` with ``n' = L - L/g`` unsolvable values per period."""
    seq = _as_seq(seq)
    L = fundamental_period(seq).L
    n_prime = L - L // seq.gcd
    return bound_solvable_counts(seq) + Fraction((seq.k + 1) * n_prime, L)


def bound_limit(seq) -> Fraction:
    """Large-period limit: ``sum_i i/a_{i+1} + (k+1)(g-1)/g``."""
    seq = _as_seq(seq)
    g, k = seq.gcd, seq.k
    head = sum(Fraction(i, seq.term(i + 1)) for i in range(1, k + 1))
    return head + Fraction((k + 1) * (g - 1), g)


def bound_fib(k: int, g: int) -> Fraction:
    return FIB_CONSTANT * k / g + Fraction((k + 1) * (g - 1), g)


def bound_gcd(k: int, g: int) -> Fraction:
    """Solvable-only bound ``2.28 k / g``."""
    return FIB_CONSTANT * k / g


def bound_expected(n: int) -> float:
    """``2.28 log2(n) (18/pi^2)(1 - 1/n^4)``, averaged over random pairs."""
    if n < 2:
        raise ValueError("bound_expected needs n >= 2")
    return 2.28 * math.log2(n) * (18 / math.pi**2) * (1 - 1 / n**4)


def bounds_report(a: int, b: int) -> BoundsReport:
    seq = remainder_sequence(a, b)
    k, g = seq.k, seq.gcd
    return BoundsReport(
        k=k,
        gcd=g,
        bound_solvable_counts=bound_solvable_counts(seq),
        bound_with_unsolvable=bound_with_unsolvable(seq),
        bound_limit=bound_limit(seq),
        bound_fib=bound_fib(k, g),
        bound_gcd=bound_gcd(k, g),
        bound_expected=bound_expected(b) if b >= 2 else float("nan"),
    )


def fibonacci(n: int) -> int:
    """``F_n`` with ``F_1 = 0``, ``F_2 = 1``."""
    if n < 1:
        raise ValueError("Fibonacci index starts at 1")
    prev, cur = 0, 1  # F_1, F_2
    if n == 1:
        return 0
    for _ in range(n - 2):
        prev, cur = cur, prev + cur
    return cur


def fibonacci_check(seq, g: Optional[int] = None) -> bool:
    """``a_1 >= g F_{k+2}`` and ``a_2 >= g F_{k+1}``."""
    seq = _as_seq(seq)
    g = seq.gcd if g is None else g
    return seq.term(1) >= g * fibonacci(seq.k + 2) and seq.term(2) >= g * fibonacci(seq.k + 1)


def crt_merge(congruences: Sequence[tuple[int, int]]) -> Optional[tuple[int, int]]:
    """Merge ``c = r (mod m)`` pairs; moduli need not be coprime.

    Returns ``(r, M)`` with ``0 <= r < M`` or None when incompatible.
    """
    r, m = 0, 1
    for r2, m2 in congruences:
        g = math.gcd(m, m2)
        if (r2 - r) % g:
            return None
        # solve r + m*t = r2 (mod m2)
        m2g = m2 // g
        t = ((r2 - r) // g) * pow(m // g, -1, m2g) % m2g if m2g > 1 else 0
        r = r + m * t
        m = m * m2g
        r %= m
    return r, m


def crt_condition(seq) -> bool:
    """True iff every pair of chain terms ``a_1..a_{k+1}`` has the same gcd."""
    seq = _as_seq(seq)
    gcds = {math.gcd(x, y) for x, y in combinations(seq.terms, 2)}
    return len(gcds) <= 1


def _congruences(seq: RemainderSequence, subset: Iterable[int]) -> list[tuple[int, int]]:
    out = []
    for i in subset:
        d = c_set(i, seq)
        out.append((d.residue, d.modulus))
    return out


def crt_witness(seq) -> IntersectionReport:
    """Find the least positive ``c`` lying in every ``c_i``, if one exists.

    Pairwise compatibility ``a_{j+2} = a_{l+2} (mod gcd(a_{j+1}, a_{l+1}))``
    is checked first; incompatible index pairs are reported in
    ``blocking_pairs``.
    """
    seq = _as_seq(seq)
    indices = range(1, seq.k + 1)
    blocking = []
    for j, l in combinations(indices, 2):
        dj, dl = c_set(j, seq), c_set(l, seq)
        if (dj.residue - dl.residue) % math.gcd(dj.modulus, dl.modulus):
            blocking.append((j, l))
    holds = crt_condition(seq) if seq.k >= 2 else True
    if blocking:
        return IntersectionReport(holds, None, None, None, tuple(blocking))
    merged = crt_merge(_congruences(seq, indices))
    assert merged is not None, "pairwise-compatible system failed to merge"
    r, M = merged
    L = fundamental_period(seq).L
    return IntersectionReport(holds, r if r > 0 else M, L // M, M, ())


def intersection_cardinality(seq, subset: Iterable[int], cross_check: bool = False,
                             budget: int = DEFAULT_BUDGET) -> int:
    """Count ``c`` in ``[1, L]`` lying in every ``c_i`` for ``i`` in ``subset``.

    With ``cross_check`` the CRT count is confirmed by enumerating one period.
    """
    seq = _as_seq(seq)
    subset = sorted(set(subset))
    L = fundamental_period(seq).L
    merged = crt_merge(_congruences(seq, subset))
    count = 0 if merged is None else L // merged[1]
    if cross_check:
        _check_budget(L, budget, "intersection_cardinality")
        cs = np.arange(1, L + 1, dtype=np.int64)
        mask = np.ones(L, dtype=bool)
        for i in subset:
            d = c_set(i, seq)
            mask &= (cs - d.residue) % d.modulus == 0
        brute = int(np.count_nonzero(mask))
        assert brute == count, f"CRT count {count} disagrees with enumeration {brute}"
    return count
