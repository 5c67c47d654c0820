"""Composition strategies for combining probability intervals.

Each strategy models a dependence assumption between the events being
combined (independence, ignorance, positive/negative correlation, mutual
exclusion).  Every composition function is commutative and associative and
maps valid intervals to valid intervals, so folding over a multiset is
well defined regardless of order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable, Iterable

from .intervals import ProbInterval

CONJUNCTIVE = "conjunctive"
DISJUNCTIVE = "disjunctive"

_ZERO = Fraction(0)
_ONE = Fraction(1)

Compose2 = Callable[[ProbInterval, ProbInterval], ProbInterval]


@dataclass(frozen=True)
class PStrategy:
    id: str
    kind: str
    compose2: Compose2 = field(compare=False)

    def __str__(self) -> str:
        return f"{self.id} ({self.kind})"


def _igc(x: ProbInterval, y: ProbInterval) -> ProbInterval:
    return ProbInterval(max(_ZERO, x.lower + y.lower - 1), min(x.upper, y.upper))


def _pcc(x: ProbInterval, y: ProbInterval) -> ProbInterval:
    return ProbInterval(min(x.lower, y.lower), min(x.upper, y.upper))


def _indc(x: ProbInterval, y: ProbInterval) -> ProbInterval:
    return ProbInterval(x.lower * y.lower, x.upper * y.upper)


def _ncc(x: ProbInterval, y: ProbInterval) -> ProbInterval:
    return ProbInterval(
        max(_ZERO, x.lower + y.lower - 1), max(_ZERO, x.upper + y.upper - 1)
    )


def _igd(x: ProbInterval, y: ProbInterval) -> ProbInterval:
    return ProbInterval(max(x.lower, y.lower), min(_ONE, x.upper + y.upper))


def _pcd(x: ProbInterval, y: ProbInterval) -> ProbInterval:
    return ProbInterval(max(x.lower, y.lower), max(x.upper, y.upper))


def _indd(x: ProbInterval, y: ProbInterval) -> ProbInterval:
    return ProbInterval(
        x.lower + y.lower - x.lower * y.lower,
        x.upper + y.upper - x.upper * y.upper,
    )


def _me(x: ProbInterval, y: ProbInterval) -> ProbInterval:
    return ProbInterval(min(_ONE, x.lower + y.lower), min(_ONE, x.upper + y.upper))


CONJUNCTIVE_STRATEGIES = {
    "igc": PStrategy("igc", CONJUNCTIVE, _igc),
    "pcc": PStrategy("pcc", CONJUNCTIVE, _pcc),
    "ind": PStrategy("ind", CONJUNCTIVE, _indc),
    "ncc": PStrategy("ncc", CONJUNCTIVE, _ncc),
}

DISJUNCTIVE_STRATEGIES = {
    "igd": PStrategy("igd", DISJUNCTIVE, _igd),
    "pcd": PStrategy("pcd", DISJUNCTIVE, _pcd),
    "ind": PStrategy("ind", DISJUNCTIVE, _indd),
    "me": PStrategy("me", DISJUNCTIVE, _me),
}

DEFAULT_DISJUNCTIVE = "pcd"


def get_strategy(kind: str, name: str) -> PStrategy:
    table = {CONJUNCTIVE: CONJUNCTIVE_STRATEGIES, DISJUNCTIVE: DISJUNCTIVE_STRATEGIES}
    try:
        registry = table[kind]
    except KeyError:
        raise LookupError(f"unknown strategy kind {kind!r}") from None
    try:
        return registry[name]
    except KeyError:
        raise LookupError(f"unknown {kind} strategy {name!r}") from None


def strategy_ids(kind: str) -> tuple:
    if kind == CONJUNCTIVE:
        return tuple(CONJUNCTIVE_STRATEGIES)
    if kind == DISJUNCTIVE:
        return tuple(DISJUNCTIVE_STRATEGIES)
    raise LookupError(f"unknown strategy kind {kind!r}")


def compose(strategy: PStrategy, intervals: Iterable[ProbInterval]) -> ProbInterval:
    """Fold the strategy's composition function over a non-empty multiset."""
    seq = list(intervals)
    if not seq:
        raise ValueError("compose requires a non-empty multiset of intervals")
    return reduce(strategy.compose2, seq)
