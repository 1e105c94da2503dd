#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Parser and serializer for the plain-text GNEPP problem format.

    players 2
    block x1 1
    block x2 1
    player 1
      objective: x1_1
      constraint: x2_1*(x1_1 - x2_1 - 1) >= 0
    player 2
      objective: x2_1^2 - (x1_1 - 1)*x2_1
      constraint: x1_1^2 + x2_1^2 <= 3

Parsing runs in two passes: pyparsing turns the text into a located syntax
tree, then the tree is evaluated into polynomials once the block layout is
known. Every error carries the line and column of the offending token.
"""

import logging
import os
import re
from typing import Any, Dict, List, Optional, Tuple

import pyparsing as pp

from exceptions import DegreeError, InputError, ProblemSyntaxError
from instance_model.instance import Constraint, GneppInstance, PlayerProblem, Relation
from poly_core import BlockLayout, Polynomial

pp.ParserElement.enable_packrat()

# Default cap on any intermediate or final polynomial degree
DEFAULT_MAX_DEGREE = 32

_VARIABLE_RE = re.compile(r"x(\d+)_(\d+)")
_KEYWORDS = ("players", "player", "block", "objective", "constraint")


class _Node:
    """Located syntax tree node."""

    __slots__ = ("kind", "args", "loc")

    def __init__(self, kind: str, args: Tuple[Any, ...], loc: int):
        self.kind = kind
        self.args = args
        self.loc = loc


def _variable_action(s: str, loc: int, toks: pp.ParseResults) -> _Node:
    token = toks[0]
    match = _VARIABLE_RE.fullmatch(token)
    if match is None:
        raise pp.ParseFatalException(s, loc, f"malformed variable token '{token}'")
    return _Node("var", (int(match.group(1)), int(match.group(2))), loc)


def _number_action(s: str, loc: int, toks: pp.ParseResults) -> _Node:
    return _Node("num", (float(toks[0]),), loc)


def _power_action(s: str, loc: int, toks: pp.ParseResults) -> _Node:
    items = list(toks[0])
    node = items[-1]
    for k in range(len(items) - 3, -1, -2):
        node = _Node("pow", (items[k], node), items[k].loc)
    return node


def _sign_action(s: str, loc: int, toks: pp.ParseResults) -> _Node:
    op, operand = toks[0][0], toks[0][1]
    if op == "-":
        return _Node("neg", (operand,), loc)
    return operand


def _product_action(s: str, loc: int, toks: pp.ParseResults) -> _Node:
    items = list(toks[0])
    return _Node("mul", tuple(items[0::2]), loc)


def _sum_action(s: str, loc: int, toks: pp.ParseResults) -> _Node:
    items = list(toks[0])
    signed = [("+", items[0])] + [(items[k], items[k + 1]) for k in range(1, len(items), 2)]
    return _Node("add", tuple(signed), loc)


def _located_keyword(word: str) -> pp.ParserElement:
    """Keyword whose token is replaced by its start offset."""
    return pp.Keyword(word).set_parse_action(lambda s, loc, toks: loc)


def _build_grammar() -> pp.ParserElement:
    integer = pp.Regex(r"\d+").set_name("integer")
    number = pp.Regex(r"(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?").set_name("number")
    number.set_parse_action(_number_action)
    keyword_guard = "|".join(_KEYWORDS)
    identifier = pp.Regex(rf"(?!(?:{keyword_guard})\b)[A-Za-z_]\w*").set_name("variable")
    identifier.set_parse_action(_variable_action)

    expr = pp.infix_notation(
        number | identifier,
        [
            (pp.Literal("^"), 2, pp.OpAssoc.RIGHT, _power_action),
            (pp.one_of("+ -"), 1, pp.OpAssoc.RIGHT, _sign_action),
            (pp.Literal("*"), 2, pp.OpAssoc.LEFT, _product_action),
            (pp.one_of("+ -"), 2, pp.OpAssoc.LEFT, _sum_action),
        ],
    ).set_name("expression")

    relation = pp.one_of(">= <= ==").set_name("relation")
    constraint = pp.Group(
        pp.Keyword("constraint").suppress()
        + pp.Suppress(":")
        + expr("lhs")
        + relation("rel")
        + expr("rhs")
    )
    player = pp.Group(
        _located_keyword("player")("head")
        + integer("index")
        + pp.Keyword("objective").suppress()
        + pp.Suppress(":")
        + expr("objective")
        + pp.Group(pp.ZeroOrMore(constraint))("constraints")
    )
    block = pp.Group(
        _located_keyword("block")("head")
        + pp.Regex(r"x\d+(?!\w)").set_name("block name")("name")
        + integer("dim")
    )
    problem = (
        pp.Keyword("players").suppress()
        + integer("n_players")
        + pp.Group(pp.ZeroOrMore(block))("blocks")
        + pp.Group(pp.OneOrMore(player))("players")
        + pp.StringEnd()
    )
    problem.ignore(pp.pythonStyleComment)
    return problem


class ProblemParser:
    """
    Parser for the problem file format.

    Args:
        config: The `parser` configuration section (max_degree)
    """

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = dict(config or {})
        self.max_degree = int(self.config.get("max_degree") or DEFAULT_MAX_DEGREE)
        self.logger = logging.getLogger(self.__class__.__name__)
        self._grammar = _build_grammar()
        self._text = ""

    def parse(self, text: str, name: str = "problem") -> GneppInstance:
        """
        Parse problem text into an instance.

        Args:
            text: Problem text
            name: Name given to the instance

        Returns:
            The parsed GneppInstance

        Raises:
            ProblemSyntaxError: On lexical, syntax or semantic errors
            DegreeError: If a polynomial exceeds the degree limit
        """
        self._text = text
        try:
            parsed = self._grammar.parse_string(text, parse_all=True)
        except pp.ParseBaseException as e:
            raise ProblemSyntaxError(e.msg, e.lineno, e.col, e.line) from None

        layout = self._layout(parsed)
        problems: Dict[int, PlayerProblem] = {}
        for section in parsed["players"]:
            index = int(section["index"])
            head_loc = section["head"]
            if not 1 <= index <= layout.n_players:
                self._fail(f"player {index} out of range 1..{layout.n_players}", head_loc)
            if index in problems:
                self._fail(f"duplicate player section {index}", head_loc)
            objective = self._evaluate(section["objective"], layout)
            constraints = [self._constraint(item, layout) for item in section["constraints"]]
            problems[index] = PlayerProblem(objective, tuple(constraints))

        missing = [i for i in range(1, layout.n_players + 1) if i not in problems]
        if missing:
            self._fail(f"missing player section {missing[0]}", len(text))

        instance = GneppInstance(layout, tuple(problems[i] for i in range(1, layout.n_players + 1)), name)
        self.logger.debug(f"Parsed {instance.summary()}")
        return instance

    def _layout(self, parsed: pp.ParseResults) -> BlockLayout:
        n_players = int(parsed["n_players"])
        if n_players < 1:
            self._fail("players must be >= 1", 0)
        dims = [1] * n_players
        seen = set()
        for block in parsed["blocks"]:
            loc = block["head"]
            index = int(block["name"][1:])
            dim = int(block["dim"])
            if not 1 <= index <= n_players:
                self._fail(f"block x{index} out of range 1..{n_players}", loc)
            if index in seen:
                self._fail(f"duplicate block declaration x{index}", loc)
            if dim < 1:
                self._fail(f"block x{index} must have dimension >= 1", loc)
            seen.add(index)
            dims[index - 1] = dim
        return BlockLayout.from_dims(dims)

    def _constraint(self, item: pp.ParseResults, layout: BlockLayout) -> Constraint:
        lhs = self._evaluate(item["lhs"], layout)
        rhs = self._evaluate(item["rhs"], layout)
        rel = item["rel"]
        if rel == ">=":
            return Constraint(lhs - rhs, Relation.GEQ)
        if rel == "<=":
            return Constraint(rhs - lhs, Relation.GEQ)
        return Constraint(lhs - rhs, Relation.EQ)

    def _evaluate(self, node: _Node, layout: BlockLayout) -> Polynomial:
        kind = node.kind
        if kind == "num":
            return Polynomial.constant(node.args[0], layout)
        if kind == "var":
            i, j = node.args
            if not layout.has_variable((i, j)):
                self._fail(f"unknown variable x{i}_{j}", node.loc)
            return Polynomial.variable(layout, i, j)
        if kind == "neg":
            return -self._evaluate(node.args[0], layout)
        if kind == "add":
            total = Polynomial.zero(layout)
            for sign, term in node.args:
                value = self._evaluate(term, layout)
                total = total + value if sign == "+" else total - value
            return total
        if kind == "mul":
            factors = [self._evaluate(f, layout) for f in node.args]
            if sum(f.degree for f in factors) > self.max_degree:
                self._degree_overflow(sum(f.degree for f in factors), node.loc)
            result = factors[0]
            for factor in factors[1:]:
                result = result * factor
            return result
        if kind == "pow":
            base_node, exp_node = node.args
            if exp_node.kind != "num" or exp_node.args[0] != int(exp_node.args[0]) or exp_node.args[0] < 1:
                self._fail("exponent must be a positive integer literal", exp_node.loc)
            exponent = int(exp_node.args[0])
            base = self._evaluate(base_node, layout)
            if base.degree * exponent > self.max_degree or exponent > self.max_degree:
                self._degree_overflow(max(base.degree * exponent, exponent), node.loc)
            return base ** exponent
        raise InputError(f"unexpected syntax node {kind}")

    def _degree_overflow(self, degree: int, loc: int) -> None:
        line, col = pp.lineno(loc, self._text), pp.col(loc, self._text)
        raise DegreeError(f"line {line}, column {col}: degree {degree} exceeds the limit {self.max_degree}")

    def _fail(self, message: str, loc: int) -> None:
        loc = min(loc, len(self._text))
        raise ProblemSyntaxError(
            message, pp.lineno(loc, self._text), pp.col(loc, self._text), pp.line(loc, self._text)
        )


def parse_instance(text: str, name: str = "problem", config: Optional[Dict[str, Any]] = None) -> GneppInstance:
    """
    Parse problem text with a fresh ProblemParser.
    """
    return ProblemParser(config).parse(text, name)


def load_instance(path: str, config: Optional[Dict[str, Any]] = None) -> GneppInstance:
    """
    Read and parse a problem file; the instance is named after the file.

    Raises:
        OSError: If the file cannot be read
    """
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    name = os.path.splitext(os.path.basename(path))[0]
    return parse_instance(text, name, config)


def serialize_instance(inst: GneppInstance) -> str:
    """
    Render an instance in canonical one-sided form.

    Numbers use the shortest round-trip representation, so parsing the
    output gives back the same polynomials.
    """
    lines: List[str] = [f"# {inst.name}", f"players {inst.n_players}"]
    for i, dim in inst.layout.blocks:
        lines.append(f"block x{i} {dim}")
    for i, problem in enumerate(inst.players, start=1):
        lines.append(f"player {i}")
        lines.append(f"  objective: {problem.objective.to_text()}")
        for constraint in problem.constraints:
            lines.append(f"  constraint: {constraint.to_text()}")
    return "\n".join(lines) + "\n"
