"""Parser and printer for the `.paso` rule language.

Statements end with ".".  A statement is either a directive
(`#strategy pred = sid.`, `#domain X = {c1, ..., cn}.`), a generator rule
(`a:0.7 | b:0.4 :- body.`), or a preference rule
(`C1 >> C2 >> ... :- body.`).  `%` starts a comment to end of line.

Annotations follow ":" and are a decimal or p/q rational, an uppercase
annotation variable, a built-in function call, or an interval `[lo,hi]`
of such items; an unannotated formula carries the implicit annotation
[1,1].  Compound formulas are parenthesized with a repeated infix
operator: `^sid` for a conjunctive strategy, `vsid` for a disjunctive one,
e.g. `(a ^pcc b):0.4` or `(a vind b)`.  Preference heads separate
combinations with ">>" and build combinations from annotated hybrid
literals with "&&", "||", "not", and parentheses; classical negation "-"
on literals is allowed in preference rules only.  Generator bodies may
also contain term comparisons `X != Y` / `X == Y`.

A single-combination preference rule is written with a parenthesized
head, e.g. `(a:0.3).`, to keep it distinct from a generator fact.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional

from .errors import ParseError
from .intervals import format_rational
from .strategies import CONJUNCTIVE, DISJUNCTIVE, get_strategy
from .syntax import (
    ANNOT_TRUE,
    ANNOTATION_FUNCTIONS,
    Annotation,
    Comparison,
    CONJ,
    DISJ,
    FuncItem,
    GeneratorRule,
    HybridFormula,
    Leaf,
    Literal,
    Node,
    PreferenceRule,
    Program,
    combination_leaves,
)

# ---------------------------------------------------------------------------
# Lexer

_TOKEN_RE = re.compile(
    r"""
      (?P<WS>\s+)
    | (?P<COMMENT>%[^\n]*)
    | (?P<NUMBER>\d+\.\d+|\d+)
    | (?P<DIRECTIVE>\#[a-z]+)
    | (?P<NAME>[a-z][A-Za-z0-9_']*)
    | (?P<VAR>[A-Z][A-Za-z0-9_']*)
    | (?P<PUNCT>:-|>>|&&|\|\||==|!=|[.,|:\[\](){}=^\-/])
    """,
    re.VERBOSE,
)


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.col})"


def _tokenize(text: str) -> List[Token]:
    tokens = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = match.lastgroup
        value = match.group()
        if kind not in ("WS", "COMMENT"):
            col = pos - line_start + 1
            if kind == "NAME" and value == "not":
                kind = "NOT"
            tokens.append(Token(kind, value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rindex("\n") + 1
        pos = match.end()
    tokens.append(Token("EOF", "", line, len(text) - line_start + 1))
    return tokens


# ---------------------------------------------------------------------------
# Parser


class _NotACompound(Exception):
    """Internal backtrack signal: parenthesized text is not a compound formula."""


class _Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    # -- token plumbing

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (text is None or tok.text == text)

    def accept(self, kind: str, text: Optional[str] = None) -> Optional[Token]:
        if self.at(kind, text):
            tok = self.peek()
            self.pos += 1
            return tok
        return None

    def expect(self, kind: str, text: Optional[str] = None, what: str = "") -> Token:
        tok = self.accept(kind, text)
        if tok is None:
            found = self.peek()
            wanted = what or (text if text is not None else kind.lower())
            shown = found.text if found.kind != "EOF" else "end of input"
            self.error(f"expected {wanted}, found {shown!r}", found)
        return tok

    def error(self, message: str, token: Optional[Token] = None):
        tok = token or self.peek()
        raise ParseError(message, tok.line, tok.col)

    # -- program

    def program(self) -> Program:
        program = Program()
        while not self.at("EOF"):
            if self.at("DIRECTIVE"):
                self.directive(program)
            else:
                self.statement(program)
        return program

    def directive(self, program: Program) -> None:
        tok = self.expect("DIRECTIVE")
        if tok.text == "#strategy":
            pred = self.expect("NAME", what="a predicate name").text
            self.expect("PUNCT", "=")
            sid_tok = self.expect("NAME", what="a strategy id")
            try:
                get_strategy(DISJUNCTIVE, sid_tok.text)
            except LookupError:
                self.error(f"unknown disjunctive strategy {sid_tok.text!r}", sid_tok)
            self.expect("PUNCT", ".")
            program.strategy_map[pred] = sid_tok.text
        elif tok.text == "#domain":
            var_tok = self.expect("VAR", what="a variable name")
            if var_tok.text in program.domain_decls:
                self.error(f"#domain redeclares variable {var_tok.text}", var_tok)
            self.expect("PUNCT", "=")
            self.expect("PUNCT", "{")
            values = [self.expect("NAME", what="a constant").text]
            while self.accept("PUNCT", ","):
                values.append(self.expect("NAME", what="a constant").text)
            self.expect("PUNCT", "}")
            self.expect("PUNCT", ".")
            program.domain_decls[var_tok.text] = tuple(values)
        else:
            self.error(f"unknown directive {tok.text!r}", tok)

    def statement(self, program: Program) -> None:
        start = self.pos
        rule = self.try_generator_rule()
        if rule is not None:
            program.generator_rules.append(rule)
            return
        self.pos = start
        program.preference_rules.append(self.preference_rule())

    # -- generator rules

    def try_generator_rule(self) -> Optional[GeneratorRule]:
        head = []
        while True:
            if not self.at("NAME"):
                return None
            lit = self.atom()
            ann = self.optional_annotation()
            head.append((lit, ann))
            if not self.accept("PUNCT", "|"):
                break
        if self.accept("PUNCT", "."):
            return GeneratorRule(head=tuple(head))
        if not self.accept("PUNCT", ":-"):
            return None  # ">>", "&&", ... : a preference rule after all
        body_pos, body_naf, comparisons = self.generator_body()
        return GeneratorRule(
            head=tuple(head),
            body_pos=tuple(body_pos),
            body_naf=tuple(body_naf),
            comparisons=tuple(comparisons),
        )

    def generator_body(self):
        body_pos, body_naf, comparisons = [], [], []
        if self.accept("PUNCT", "."):
            return body_pos, body_naf, comparisons
        while True:
            if self.at("VAR") or (self.at("NAME") and self.peek(1).text in ("==", "!=")):
                comparisons.append(self.comparison())
            elif self.accept("NOT"):
                body_naf.append(self.annotated_formula("generator"))
            else:
                body_pos.append(self.annotated_formula("generator"))
            if not self.accept("PUNCT", ","):
                break
        self.expect("PUNCT", ".")
        return body_pos, body_naf, comparisons

    def comparison(self) -> Comparison:
        left = self.term()
        op_tok = self.expect("PUNCT", what="'==' or '!='")
        if op_tok.text not in ("==", "!="):
            self.error(f"expected '==' or '!=', found {op_tok.text!r}", op_tok)
        right = self.term()
        return Comparison(op_tok.text, left, right)

    def term(self) -> str:
        tok = self.peek()
        if tok.kind in ("NAME", "VAR"):
            self.pos += 1
            return tok.text
        self.error(f"expected a term, found {tok.text!r}", tok)

    def atom(self) -> Literal:
        name = self.expect("NAME", what="a predicate name").text
        terms = []
        if self.accept("PUNCT", "("):
            terms.append(self.term())
            while self.accept("PUNCT", ","):
                terms.append(self.term())
            self.expect("PUNCT", ")")
        return Literal(name, tuple(terms))

    def literal(self, context: str) -> Literal:
        if self.at("PUNCT", "-"):
            tok = self.peek()
            if context == "generator":
                self.error("classical negation is only allowed in preference rules", tok)
            self.pos += 1
            atom = self.atom()
            return Literal(atom.predicate, atom.terms, negated=True)
        return self.atom()

    # -- formulas and annotations

    def annotated_formula(self, context: str):
        formula = self.formula(context)
        return formula, self.optional_annotation()

    def formula(self, context: str) -> HybridFormula:
        if self.at("PUNCT", "("):
            try:
                return self.compound_formula(context)
            except _NotACompound:
                self.error("expected a compound formula after '('")
        return HybridFormula.of(self.literal(context))

    def compound_formula(self, context: str) -> HybridFormula:
        """Parse `(l1 <op> l2 <op> ...)`; raises _NotACompound before the
        first operator is seen, ParseError afterwards."""
        start = self.pos
        self.expect("PUNCT", "(")
        if not (self.at("NAME") or (self.at("PUNCT", "-") and context == "preference")):
            self.pos = start
            raise _NotACompound()
        try:
            parts = [self.literal(context)]
        except ParseError:
            self.pos = start
            raise _NotACompound() from None
        connective = self.formula_operator(committed=False)
        if connective is None:
            self.pos = start
            raise _NotACompound()
        parts.append(self.literal(context))
        while not self.at("PUNCT", ")"):
            here = self.peek()
            following = self.formula_operator(committed=True)
            if following != connective:
                self.error("mixed connectives in a compound formula", here)
            parts.append(self.literal(context))
        self.expect("PUNCT", ")")
        if len(set(parts)) != len(parts):
            self.error("compound formula parts must be distinct literals",
                       self.tokens[start])
        kind, sid = connective
        return HybridFormula(tuple(parts), CONJ if kind == CONJUNCTIVE else DISJ, sid)

    def formula_operator(self, committed: bool):
        if self.accept("PUNCT", "^"):
            sid_tok = self.expect("NAME", what="a conjunctive strategy id")
            try:
                get_strategy(CONJUNCTIVE, sid_tok.text)
            except LookupError:
                self.error(f"unknown conjunctive strategy {sid_tok.text!r}", sid_tok)
            return (CONJUNCTIVE, sid_tok.text)
        tok = self.peek()
        if tok.kind == "NAME" and len(tok.text) > 1 and tok.text.startswith("v"):
            sid = tok.text[1:]
            try:
                get_strategy(DISJUNCTIVE, sid)
            except LookupError:
                self.error(f"unknown disjunctive strategy {sid!r}", tok)
            self.pos += 1
            return (DISJUNCTIVE, sid)
        if committed:
            self.error(
                "expected '^<strategy>' or 'v<strategy>' between formula parts", tok
            )
        return None

    def optional_annotation(self) -> Annotation:
        if not self.accept("PUNCT", ":"):
            return ANNOT_TRUE
        return self.annotation_body()

    def annotation_body(self) -> Annotation:
        if self.accept("PUNCT", "["):
            lower = self.annotation_item()
            self.expect("PUNCT", ",")
            upper = self.annotation_item()
            close = self.peek()
            self.expect("PUNCT", "]")
            if (
                isinstance(lower, Fraction)
                and isinstance(upper, Fraction)
                and lower > upper
            ):
                self.error("empty annotation interval (lower > upper)", close)
            return Annotation(lower, upper)
        return Annotation.point(self.annotation_item())

    def annotation_item(self):
        tok = self.peek()
        if tok.kind == "NUMBER":
            self.pos += 1
            if self.at("PUNCT", "/"):
                if "." in tok.text or self.peek(1).kind != "NUMBER" or "." in self.peek(1).text:
                    self.error("rational annotation constants are written p/q "
                               "with integer p and q", tok)
                self.pos += 1
                den_tok = self.expect("NUMBER")
                if int(den_tok.text) == 0:
                    self.error("zero denominator in rational constant", den_tok)
                value = Fraction(int(tok.text), int(den_tok.text))
            else:
                value = Fraction(tok.text)
            if not 0 <= value <= 1:
                self.error(f"annotation constant {tok.text} outside [0,1]", tok)
            return value
        if tok.kind == "VAR":
            self.pos += 1
            return tok.text
        if tok.kind == "NAME":
            if tok.text not in ANNOTATION_FUNCTIONS:
                self.error(f"unknown annotation function {tok.text!r}", tok)
            self.pos += 1
            self.expect("PUNCT", "(")
            args = [self.annotation_item()]
            while self.accept("PUNCT", ","):
                args.append(self.annotation_item())
            self.expect("PUNCT", ")")
            return FuncItem(tok.text, tuple(args))
        self.error(f"expected an annotation item, found {tok.text!r}", tok)

    # -- preference rules

    def preference_rule(self) -> PreferenceRule:
        head = [self.combination()]
        while self.accept("PUNCT", ">>"):
            head.append(self.combination())
        if self.accept("PUNCT", "."):
            return PreferenceRule(head=tuple(head))
        self.expect("PUNCT", ":-", what="'>>', ':-' or '.'")
        body_pos, body_naf = self.preference_body()
        return PreferenceRule(
            head=tuple(head), body_pos=tuple(body_pos), body_naf=tuple(body_naf)
        )

    def preference_body(self):
        body_pos, body_naf = [], []
        if self.accept("PUNCT", "."):
            return body_pos, body_naf
        while True:
            tok = self.peek()
            if tok.kind == "VAR" or (tok.kind == "NAME" and self.peek(1).text in ("==", "!=")):
                self.error("term comparisons are only allowed in generator rule bodies",
                           tok)
            if self.accept("NOT"):
                body_naf.append(self.annotated_formula("preference"))
            else:
                body_pos.append(self.annotated_formula("preference"))
            if not self.accept("PUNCT", ","):
                break
        self.expect("PUNCT", ".")
        return body_pos, body_naf

    def combination(self):
        comb = self.combination_conj()
        while self.accept("PUNCT", "||"):
            comb = Node("or", comb, self.combination_conj())
        return comb

    def combination_conj(self):
        comb = self.combination_unary()
        while self.accept("PUNCT", "&&"):
            comb = Node("and", comb, self.combination_unary())
        return comb

    def combination_unary(self):
        if self.accept("NOT"):
            tok = self.peek()
            if self.at("PUNCT", "("):
                try:
                    formula = self.compound_formula("preference")
                except _NotACompound:
                    self.error(
                        "negation-as-failure applies only to annotated hybrid "
                        "literals, not to combinations", tok,
                    )
            else:
                formula = HybridFormula.of(self.literal("preference"))
            return Leaf(formula, self.optional_annotation(), naf=True)
        if self.at("PUNCT", "("):
            try:
                formula = self.compound_formula("preference")
            except _NotACompound:
                self.expect("PUNCT", "(")
                comb = self.combination()
                self.expect("PUNCT", ")")
                return comb
            return Leaf(formula, self.optional_annotation())
        formula = HybridFormula.of(self.literal("preference"))
        return Leaf(formula, self.optional_annotation())


def parse_program(text: str) -> Program:
    """Parse program text into the abstract syntax, or raise ParseError."""
    return _Parser(_tokenize(text)).program()


# ---------------------------------------------------------------------------
# Printer


def format_annotation(annotation: Annotation) -> str:
    from .syntax import _item_str

    if annotation == ANNOT_TRUE:
        return ""
    if annotation.is_point():
        return f":{_item_str(annotation.lower_item)}"
    return f":[{_item_str(annotation.lower_item)},{_item_str(annotation.upper_item)}]"


def format_formula(formula: HybridFormula) -> str:
    return str(formula)


def _format_annotated(item) -> str:
    formula, annotation = item
    return f"{format_formula(formula)}{format_annotation(annotation)}"


def format_combination(comb, parent_op: Optional[str] = None, is_right: bool = False) -> str:
    if isinstance(comb, Leaf):
        text = f"{format_formula(comb.formula)}{format_annotation(comb.annotation)}"
        return f"not {text}" if comb.naf else text
    sep = " && " if comb.op == "and" else " || "
    text = (
        format_combination(comb.left, comb.op, False)
        + sep
        + format_combination(comb.right, comb.op, True)
    )
    needs_parens = parent_op is not None and (
        (comb.op == "or" and parent_op == "and")
        or (is_right and comb.op == parent_op)
    )
    return f"({text})" if needs_parens else text


def format_generator_rule(rule: GeneratorRule) -> str:
    head = " | ".join(f"{lit}{format_annotation(ann)}" for lit, ann in rule.head)
    items = [_format_annotated(it) for it in rule.body_pos]
    items += [f"not {_format_annotated(it)}" for it in rule.body_naf]
    items += [str(c) for c in rule.comparisons]
    if items:
        return f"{head} :- {', '.join(items)}."
    return f"{head}."


def format_preference_rule(rule: PreferenceRule) -> str:
    combos = [format_combination(c) for c in rule.head]
    if len(combos) == 1 and not isinstance(rule.head[0], Node):
        # Parenthesize so a single-combination head stays a preference rule.
        combos = [f"({combos[0]})"]
    head = " >> ".join(combos)
    items = [_format_annotated(it) for it in rule.body_pos]
    items += [f"not {_format_annotated(it)}" for it in rule.body_naf]
    if items:
        return f"{head} :- {', '.join(items)}."
    return f"{head}."


def format_program(program: Program) -> str:
    """Render a program so that parse(format(p)) is structurally equal to p."""
    lines = []
    for var, values in program.domain_decls.items():
        lines.append(f"#domain {var} = {{{', '.join(values)}}}.")
    for pred, sid in program.strategy_map.items():
        lines.append(f"#strategy {pred} = {sid}.")
    for rule in program.generator_rules:
        lines.append(format_generator_rule(rule))
    for rule in program.preference_rules:
        lines.append(format_preference_rule(rule))
    return "\n".join(lines) + ("\n" if lines else "")
