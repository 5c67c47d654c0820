"""Abstract syntax for rules, formulas, and probability annotations.

Terms are plain strings; a term starting with an uppercase letter is an
object variable, anything else is a constant.  Annotation variables live in
a separate namespace (they only ever appear inside annotations) but follow
the same uppercase convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Union

from .errors import EvaluationError, UnboundAnnotationVariable
from .intervals import ProbInterval, as_fraction

SINGLE = "single"
CONJ = "conj"
DISJ = "disj"


def is_variable(term: str) -> bool:
    return bool(term) and term[0].isupper()


# ---------------------------------------------------------------------------
# Literals and hybrid formulas


@dataclass(frozen=True)
class Literal:
    """An atom, optionally under classical negation."""

    predicate: str
    terms: tuple = ()
    negated: bool = False

    def is_ground(self) -> bool:
        return not any(is_variable(t) for t in self.terms)

    def variables(self) -> set:
        return {t for t in self.terms if is_variable(t)}

    def atom(self) -> "Literal":
        return replace(self, negated=False) if self.negated else self

    def substitute(self, mapping: Mapping[str, str]) -> "Literal":
        if not self.terms:
            return self
        return replace(self, terms=tuple(mapping.get(t, t) for t in self.terms))

    def key(self) -> tuple:
        return (self.predicate, self.terms, self.negated)

    def __str__(self) -> str:
        sign = "-" if self.negated else ""
        if not self.terms:
            return f"{sign}{self.predicate}"
        return f"{sign}{self.predicate}({','.join(self.terms)})"


@dataclass(frozen=True)
class HybridFormula:
    """A single literal, or a conjunction/disjunction of distinct literals
    combined under one named strategy."""

    parts: tuple
    connective: str = SINGLE
    strategy: Optional[str] = None

    def __post_init__(self):
        if self.connective == SINGLE:
            if len(self.parts) != 1 or self.strategy is not None:
                raise ValueError("a single formula has exactly one part and no strategy")
        elif self.connective in (CONJ, DISJ):
            if len(self.parts) < 2 or self.strategy is None:
                raise ValueError("a compound formula needs >= 2 parts and a strategy")
            if len(set(self.parts)) != len(self.parts):
                raise ValueError("compound formula parts must be distinct")
        else:
            raise ValueError(f"unknown connective {self.connective!r}")

    @classmethod
    def of(cls, literal: Literal) -> "HybridFormula":
        return cls((literal,))

    def is_ground(self) -> bool:
        return all(p.is_ground() for p in self.parts)

    def variables(self) -> set:
        out: set = set()
        for p in self.parts:
            out |= p.variables()
        return out

    def substitute(self, mapping: Mapping[str, str]) -> "HybridFormula":
        return replace(self, parts=tuple(p.substitute(mapping) for p in self.parts))

    def key(self) -> tuple:
        return (self.connective, self.strategy or "", tuple(p.key() for p in self.parts))

    def __str__(self) -> str:
        if self.connective == SINGLE:
            return str(self.parts[0])
        op = f"^{self.strategy}" if self.connective == CONJ else f"v{self.strategy}"
        return "(" + f" {op} ".join(str(p) for p in self.parts) + ")"


# ---------------------------------------------------------------------------
# Probability annotations

ANNOTATION_FUNCTIONS = {
    "min": lambda xs: min(xs),
    "max": lambda xs: max(xs),
    "prod": lambda xs: math.prod(xs),
    "bsum": lambda xs: min(Fraction(1), sum(xs)),
    "bdiff": lambda xs: max(Fraction(0), xs[0] - sum(xs[1:])),
    "avg": lambda xs: Fraction(sum(xs), len(xs)),
}


@dataclass(frozen=True)
class FuncItem:
    """Application of a built-in annotation function to item arguments."""

    fn: str
    args: tuple

    def __post_init__(self):
        if self.fn not in ANNOTATION_FUNCTIONS:
            raise ValueError(f"unknown annotation function {self.fn!r}")
        if len(self.args) < 1:
            raise ValueError(f"annotation function {self.fn!r} needs arguments")

    def __str__(self) -> str:
        return f"{self.fn}({','.join(_item_str(a) for a in self.args)})"


AnnotationItem = Union[Fraction, str, FuncItem]


def _item_str(item: AnnotationItem) -> str:
    from .intervals import format_rational

    if isinstance(item, Fraction):
        return format_rational(item)
    return str(item)


def _item_variables(item: AnnotationItem, out: set) -> None:
    if isinstance(item, str):
        out.add(item)
    elif isinstance(item, FuncItem):
        for a in item.args:
            _item_variables(a, out)


def _eval_item(item: AnnotationItem, bindings: Mapping, side: str) -> Fraction:
    if isinstance(item, Fraction):
        return item
    if isinstance(item, str):
        try:
            value = bindings[item]
        except KeyError:
            raise UnboundAnnotationVariable(
                f"annotation variable {item} is not bound"
            ) from None
        if isinstance(value, ProbInterval):
            return value.lower if side == "lower" else value.upper
        return as_fraction(value)
    if isinstance(item, FuncItem):
        args = [_eval_item(a, bindings, side) for a in item.args]
        return ANNOTATION_FUNCTIONS[item.fn](args)
    raise TypeError(f"not an annotation item: {item!r}")


@dataclass(frozen=True)
class Annotation:
    """An interval [lower_item, upper_item] of annotation items."""

    lower_item: AnnotationItem
    upper_item: AnnotationItem

    @classmethod
    def point(cls, item: AnnotationItem) -> "Annotation":
        return cls(item, item)

    @classmethod
    def const(cls, lower, upper=None) -> "Annotation":
        lo = as_fraction(lower)
        hi = lo if upper is None else as_fraction(upper)
        return cls(lo, hi)

    def variables(self) -> set:
        out: set = set()
        _item_variables(self.lower_item, out)
        _item_variables(self.upper_item, out)
        return out

    def is_constant(self) -> bool:
        return not self.variables()

    def binder_variable(self) -> Optional[str]:
        """Name of V when this annotation is the bare point form `:V`."""
        if isinstance(self.lower_item, str) and self.lower_item == self.upper_item:
            return self.lower_item
        return None

    def is_point(self) -> bool:
        return self.lower_item == self.upper_item


ANNOT_TRUE = Annotation.const(1)


def eval_annotation(annotation: Annotation, bindings: Mapping = ()) -> ProbInterval:
    """Evaluate to a concrete interval; raises EvaluationError when an item
    is unbound or the endpoints do not form a valid interval."""
    bindings = dict(bindings) if not isinstance(bindings, Mapping) else bindings
    lower = _eval_item(annotation.lower_item, bindings, "lower")
    upper = _eval_item(annotation.upper_item, bindings, "upper")
    try:
        return ProbInterval(lower, upper)
    except ValueError as exc:
        raise EvaluationError(str(exc)) from None


# ---------------------------------------------------------------------------
# Rules

AnnotatedFormula = tuple  # (HybridFormula, Annotation)


@dataclass(frozen=True)
class Comparison:
    op: str  # "==" or "!="
    left: str
    right: str

    def variables(self) -> set:
        return {t for t in (self.left, self.right) if is_variable(t)}

    def substitute(self, mapping: Mapping[str, str]) -> "Comparison":
        return Comparison(
            self.op, mapping.get(self.left, self.left), mapping.get(self.right, self.right)
        )

    def holds(self) -> bool:
        if is_variable(self.left) or is_variable(self.right):
            raise ValueError(f"comparison {self} is not ground")
        return (self.left == self.right) == (self.op == "==")

    def __str__(self) -> str:
        return f"{self.left} {self.op} {self.right}"


def _subst_items(items, mapping):
    return tuple((f.substitute(mapping), ann) for f, ann in items)


@dataclass(frozen=True)
class GeneratorRule:
    """Disjunctive rule producing candidate answer sets."""

    head: tuple  # ((Literal, Annotation), ...), atoms only
    body_pos: tuple = ()  # ((HybridFormula, Annotation), ...)
    body_naf: tuple = ()
    comparisons: tuple = ()

    def variables(self) -> set:
        out: set = set()
        for lit, _ in self.head:
            out |= lit.variables()
        for f, _ in self.body_pos + self.body_naf:
            out |= f.variables()
        for c in self.comparisons:
            out |= c.variables()
        return out

    def annotations(self) -> Iterator[Annotation]:
        for _, ann in self.head:
            yield ann
        for _, ann in self.body_pos + self.body_naf:
            yield ann

    def is_ground(self) -> bool:
        return not self.variables()

    def substitute(self, mapping: Mapping[str, str]) -> "GeneratorRule":
        return GeneratorRule(
            head=tuple((lit.substitute(mapping), ann) for lit, ann in self.head),
            body_pos=_subst_items(self.body_pos, mapping),
            body_naf=_subst_items(self.body_naf, mapping),
            comparisons=tuple(c.substitute(mapping) for c in self.comparisons),
        )


# Boolean combinations over annotated hybrid literals (preference heads).


@dataclass(frozen=True)
class Leaf:
    formula: HybridFormula
    annotation: Annotation
    naf: bool = False


@dataclass(frozen=True)
class Node:
    op: str  # "and" or "or"
    left: "Combination"
    right: "Combination"

    def __post_init__(self):
        if self.op not in ("and", "or"):
            raise ValueError(f"unknown combination operator {self.op!r}")


Combination = Union[Leaf, Node]


def combination_leaves(comb: Combination) -> Iterator[Leaf]:
    if isinstance(comb, Leaf):
        yield comb
    else:
        yield from combination_leaves(comb.left)
        yield from combination_leaves(comb.right)


def combination_variables(comb: Combination) -> set:
    out: set = set()
    for leaf in combination_leaves(comb):
        out |= leaf.formula.variables()
    return out


def substitute_combination(comb: Combination, mapping: Mapping[str, str]) -> Combination:
    if isinstance(comb, Leaf):
        return replace(comb, formula=comb.formula.substitute(mapping))
    return Node(
        comb.op,
        substitute_combination(comb.left, mapping),
        substitute_combination(comb.right, mapping),
    )


@dataclass(frozen=True)
class PreferenceRule:
    """Ranked boolean combinations, most preferred first."""

    head: tuple  # (Combination, ...), length >= 1
    body_pos: tuple = ()
    body_naf: tuple = ()

    def variables(self) -> set:
        out: set = set()
        for comb in self.head:
            out |= combination_variables(comb)
        for f, _ in self.body_pos + self.body_naf:
            out |= f.variables()
        return out

    def is_ground(self) -> bool:
        return not self.variables()

    def substitute(self, mapping: Mapping[str, str]) -> "PreferenceRule":
        return PreferenceRule(
            head=tuple(substitute_combination(c, mapping) for c in self.head),
            body_pos=_subst_items(self.body_pos, mapping),
            body_naf=_subst_items(self.body_naf, mapping),
        )


@dataclass
class Program:
    """A parsed program: generator rules, preference rules, the per-predicate
    disjunctive strategy assignment, and domain declarations for head-only
    variables."""

    generator_rules: list
    preference_rules: list
    strategy_map: dict  # predicate name -> disjunctive strategy id
    domain_decls: dict  # variable name -> tuple of constants

    def __init__(self, generator_rules=(), preference_rules=(), strategy_map=None,
                 domain_decls=None):
        self.generator_rules = list(generator_rules)
        self.preference_rules = list(preference_rules)
        self.strategy_map = dict(strategy_map or {})
        self.domain_decls = dict(domain_decls or {})

    def constants(self) -> set:
        out: set = set()

        def from_formula(f: HybridFormula):
            for lit in f.parts:
                out.update(t for t in lit.terms if not is_variable(t))

        for rule in self.generator_rules:
            for lit, _ in rule.head:
                out.update(t for t in lit.terms if not is_variable(t))
            for f, _ in rule.body_pos + rule.body_naf:
                from_formula(f)
            for c in rule.comparisons:
                out.update(t for t in (c.left, c.right) if not is_variable(t))
        for rule in self.preference_rules:
            for comb in rule.head:
                for leaf in combination_leaves(comb):
                    from_formula(leaf.formula)
            for f, _ in rule.body_pos + rule.body_naf:
                from_formula(f)
        for values in self.domain_decls.values():
            out.update(values)
        return out
