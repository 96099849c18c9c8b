"""Asymptotic efficiency of RIO codes (code length -> infinity).

Write ``j`` programs a fraction ``p_j`` of the cells still erased before it.
Storing ``k = rate * n`` bits at write ``j`` needs

    H_b(p_j) * prod_{i<j} (1 - p_i) >= rate,

and the smallest such fraction is taken at every step.  The induced level
distribution puts mass ``p_j * prod_{i<j}(1 - p_i)`` on level ``M - j`` and
the remainder on level 0.

Every solver here is plain bisection (absolute tolerance 1e-12, at most 200
iterations).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import DomainError, Infeasible

TOL = 1e-12
MAX_ITER = 200
# slack on the "argument <= 1" feasibility test, absorbs bisection error at
# the boundary rate where the last fraction is exactly 1/2
FEASIBILITY_SLACK = 1e-9


def _bisect(f: Callable[[float], float], lo: float, hi: float) -> float:
    """Root of an increasing ``f`` with ``f(lo) <= 0 <= f(hi)``."""
    for _ in range(MAX_ITER):
        if hi - lo <= TOL:
            break
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def binary_entropy(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"probability {p} outside [0, 1]")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def inverse_binary_entropy(y: float) -> float:
    """The unique ``p`` in ``[0, 1/2]`` with ``H_b(p) = y``."""
    if not 0.0 <= y <= 1.0:
        raise DomainError(f"entropy {y} outside [0, 1]")
    if y == 0.0:
        return 0.0
    if y == 1.0:
        return 0.5
    return _bisect(lambda p: binary_entropy(p) - y, 0.0, 0.5)


@dataclass(frozen=True)
class ProgrammingProfile:
    rate: float
    fractions: tuple[float, ...]

    @property
    def t(self) -> int:
        return len(self.fractions)

    @property
    def expected_weights(self) -> tuple[float, ...]:
        """Fraction of all cells programmed by each write."""
        out = []
        remaining = 1.0
        for p in self.fractions:
            out.append(p * remaining)
            remaining *= 1.0 - p
        return tuple(out)

    @property
    def erased_fraction(self) -> float:
        return math.prod(1.0 - p for p in self.fractions)


@dataclass(frozen=True)
class LevelDistribution:
    """``probs[level]``, level 0 (erase) first."""

    probs: tuple[float, ...]

    @property
    def M(self) -> int:
        return len(self.probs)


def _check_rate(rate: float) -> None:
    if not 0.0 < rate <= 1.0:
        raise DomainError(f"rate {rate} outside (0, 1]")


def _next_fraction(rate: float, remaining: float) -> float | None:
    arg = rate / remaining
    if arg > 1.0 + FEASIBILITY_SLACK:
        return None
    return inverse_binary_entropy(min(arg, 1.0))


def programming_fractions(rate: float, t: int) -> ProgrammingProfile:
    """Minimal fractions ``p_1..p_t`` for ``t`` writes at ``rate = k/n``.

    Raises :class:`Infeasible` when some write cannot fit ``rate``.
    """
    _check_rate(rate)
    if t < 1:
        raise DomainError(f"need t >= 1, got {t}")
    fractions = []
    remaining = 1.0
    for j in range(1, t + 1):
        p = _next_fraction(rate, remaining)
        if p is None:
            raise Infeasible(f"rate {rate} supports only {j - 1} write(s), asked for {t}")
        fractions.append(p)
        remaining *= 1.0 - p
    return ProgrammingProfile(rate, tuple(fractions))


def max_writes(rate: float) -> int:
    """Largest ``t`` for which :func:`programming_fractions` is feasible.

    A further write is possible while the erased fraction left over is at
    least ``rate``.
    """
    _check_rate(rate)
    count = 0
    remaining = 1.0
    while True:
        p = _next_fraction(rate, remaining)
        if p is None:
            return count
        count += 1
        remaining *= 1.0 - p


def is_feasible(rate: float, t: int) -> bool:
    try:
        programming_fractions(rate, t)
    except Infeasible:
        return False
    return True


@dataclass(frozen=True)
class OverheadOptimum:
    overhead: float
    p1: float


def minimal_overhead_t2() -> OverheadOptimum:
    """Smallest ``n/k`` for two writes.

    The first write needs ``k <= n H_b(p1)``, the second ``k <= n (1 - p1)``;
    the best ``p1`` balances the two.
    """
    p1 = _bisect(lambda p: binary_entropy(p) - (1.0 - p), 0.0, 0.5)
    return OverheadOptimum(1.0 / (1.0 - p1), p1)


def rs_overhead_bound(t: int) -> float:
    """Sufficient overhead ``t / log2(t)``; 1.0 for ``t = 1`` by convention."""
    if t < 1:
        raise DomainError(f"need t >= 1, got {t}")
    if t == 1:
        return 1.0
    return t / math.log2(t)


def level_distribution(profile: ProgrammingProfile) -> LevelDistribution:
    # write j lands on level M - j, so the weights go in reverse above level 0
    return LevelDistribution((profile.erased_fraction,) + tuple(reversed(profile.expected_weights)))


def distribution_entropy(dist: LevelDistribution | Sequence[float]) -> float:
    probs = dist.probs if isinstance(dist, LevelDistribution) else tuple(dist)
    return -sum(p * math.log2(p) for p in probs if p > 0.0)


def optimal_rate(t: int) -> float:
    """Largest per-write rate that still fits ``t`` writes."""
    if t < 1:
        raise DomainError(f"need t >= 1, got {t}")
    if is_feasible(1.0, t):
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(MAX_ITER):
        if hi - lo <= TOL:
            break
        mid = 0.5 * (lo + hi)
        if is_feasible(mid, t):
            lo = mid
        else:
            hi = mid
    return lo


def rio_capacity(t: int) -> float:
    """Bits per cell of an optimal RIO code with ``t + 1`` levels."""
    return t * optimal_rate(t)


@dataclass(frozen=True)
class AnalysisRow:
    t: int
    optimal_rate: float
    overhead: float
    fractions: tuple[float, ...]
    capacity: float
    uniform_entropy: float

    @property
    def shaping_loss(self) -> float:
        return self.uniform_entropy - self.capacity

    def header(self) -> str:
        ps = [f"p_{j}" for j in range(1, self.t + 1)]
        return ",".join(["t", "optimal_rate", "overhead", *ps,
                         "capacity_bits_per_cell", "uniform_entropy", "shaping_loss"])

    def csv_row(self) -> str:
        values = [self.optimal_rate, self.overhead, *self.fractions,
                  self.capacity, self.uniform_entropy, self.shaping_loss]
        return ",".join([str(self.t)] + [f"{v:.4f}" for v in values])


def analyze(t: int) -> AnalysisRow:
    rate = optimal_rate(t)
    profile = programming_fractions(rate, t)
    return AnalysisRow(
        t=t,
        optimal_rate=rate,
        overhead=1.0 / rate,
        fractions=profile.fractions,
        capacity=t * rate,
        uniform_entropy=math.log2(t + 1),
    )
