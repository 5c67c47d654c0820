"""Partial probabilistic interpretations and formula valuation.

An interpretation assigns intervals to finitely many ground literals and
leaves everything else undefined.  Wherever an interval is needed, an
undefined literal reads as [0,0]; definedness itself stays observable
because the preference semantics distinguishes it.  Compound formulas are
always valued by composing their parts, never stored.

Interpretations are immutable after construction and safe to share.
"""

from __future__ import annotations

from typing import Iterator, Mapping, Optional

from .intervals import BOTTOM, ProbInterval, truth_leq
from .strategies import CONJUNCTIVE, DISJUNCTIVE, compose, get_strategy
from .syntax import CONJ, HybridFormula, Literal


class PInterpretation:
    """Finite partial map from ground literals to probability intervals."""

    __slots__ = ("_map",)

    def __init__(self, assignment=()):
        data = dict(assignment)
        for lit, value in data.items():
            if not isinstance(lit, Literal) or not isinstance(value, ProbInterval):
                raise TypeError(f"bad interpretation entry: {lit!r} -> {value!r}")
        self._map = data

    def defined(self, literal: Literal) -> bool:
        return literal in self._map

    def value(self, literal: Literal) -> ProbInterval:
        return self._map.get(literal, BOTTOM)

    def get(self, literal: Literal) -> Optional[ProbInterval]:
        return self._map.get(literal)

    def literals(self) -> tuple:
        return tuple(sorted(self._map, key=Literal.key))

    def items(self) -> Iterator:
        for lit in self.literals():
            yield lit, self._map[lit]

    def normalized(self) -> "PInterpretation":
        """Drop entries defined at [0,0]; they are indistinguishable from
        undefined for the truth order."""
        return PInterpretation(
            {lit: v for lit, v in self._map.items() if v != BOTTOM}
        )

    def __len__(self) -> int:
        return len(self._map)

    def __contains__(self, literal: Literal) -> bool:
        return literal in self._map

    def __eq__(self, other) -> bool:
        if not isinstance(other, PInterpretation):
            return NotImplemented
        return self._map == other._map

    def __hash__(self) -> int:
        return hash(frozenset(self._map.items()))

    def __str__(self) -> str:
        inner = ", ".join(f"{lit}:{value}" for lit, value in self.items())
        return "{" + inner + "}"

    __repr__ = __str__


EMPTY = PInterpretation()


def value_of(h: PInterpretation, formula: HybridFormula) -> ProbInterval:
    """Value of a ground formula under h; undefined parts read as [0,0]."""
    if formula.connective == "single":
        return h.value(formula.parts[0])
    kind = CONJUNCTIVE if formula.connective == CONJ else DISJUNCTIVE
    strategy = get_strategy(kind, formula.strategy)
    return compose(strategy, (h.value(p) for p in formula.parts))


def is_defined(h: PInterpretation, formula: HybridFormula) -> bool:
    """A compound counts as defined when at least one part is defined."""
    return any(h.defined(p) for p in formula.parts)


def resolve_annotation_bindings(h: PInterpretation, body_pos) -> dict:
    """Bind annotation variables from bare `formula:V` positive body items.

    The first occurrence whose formula is defined in h supplies the value;
    later occurrences of the same variable are checked for exact agreement
    by the satisfaction code.
    """
    bindings: dict = {}
    for formula, annotation in body_pos:
        var = annotation.binder_variable()
        if var is not None and var not in bindings and is_defined(h, formula):
            bindings[var] = value_of(h, formula)
    return bindings


def interp_leq(h1: PInterpretation, h2: PInterpretation) -> bool:
    """Pointwise truth order with undefined read as [0,0]."""
    keys = set(h1.literals()) | set(h2.literals())
    return all(truth_leq(h1.value(k), h2.value(k)) for k in keys)


def interp_lt(h1: PInterpretation, h2: PInterpretation) -> bool:
    return interp_leq(h1, h2) and h1.normalized() != h2.normalized()
