"""A small set-expression language used by the data-driven catalogs.

Grammar (binary operators are left-associative with equal precedence)::

    expr    := term (("|" | "&" | "-" | "^") term)*
    term    := [word] primary
    primary := "A" | "B" | "X" | "0" | "(" expr ")"

``word`` is a run of operator letters (or ``id``) applied to the primary, so
``ibA``, ``ga(A|B)`` and ``ib(aA)`` are all valid.  ``-`` is set difference
and ``^`` symmetric difference.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

import numpy as np

from .catalog import LETTERS
from .engine import WordEngine

_TOKEN = re.compile(r"\s*(?:(id)|([abifg]+)|([ABX0])|([()|&^-]))")


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Apply:
    word: str
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


Node = Var | Apply | BinOp


def _lex(text: str) -> list[tuple[str, str]]:
    out: list[tuple[str, str]] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at offset {pos}")
        ident, word, atom, punct = m.groups()
        if ident:
            out.append(("word", "id"))
        elif word:
            out.append(("word", word))
        elif atom:
            out.append(("atom", atom))
        else:
            out.append(("punct", punct))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _lex(text)
        self.pos = 0

    def peek(self) -> tuple[str, str] | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise ValueError(f"unexpected end of {self.text!r}")
        self.pos += 1
        return tok

    def expr(self) -> Node:
        node = self.term()
        while (tok := self.peek()) is not None and tok[0] == "punct" and tok[1] in "|&^-":
            self.take()
            node = BinOp(tok[1], node, self.term())
        return node

    def term(self) -> Node:
        tok = self.peek()
        if tok is not None and tok[0] == "word":
            self.take()
            return Apply(tok[1], self.primary())
        return self.primary()

    def primary(self) -> Node:
        kind, value = self.take()
        if kind == "atom":
            return Var(value)
        if (kind, value) == ("punct", "("):
            node = self.expr()
            if self.take() != ("punct", ")"):
                raise ValueError(f"unbalanced parentheses in {self.text!r}")
            return node
        raise ValueError(f"unexpected {value!r} in {self.text!r}")


@lru_cache(maxsize=None)
def parse(text: str) -> Node:
    parser = _Parser(text)
    node = parser.expr()
    if parser.peek() is not None:
        raise ValueError(f"trailing input in {text!r}")
    return node


def variables(node: Node) -> set[str]:
    if isinstance(node, Var):
        return {node.name} if node.name in "AB" else set()
    if isinstance(node, Apply):
        return variables(node.arg)
    return variables(node.left) | variables(node.right)


def evaluate(node: Node | str, engine: WordEngine, env: Mapping[str, np.ndarray]) -> np.ndarray:
    """Evaluate over value arrays of shape ``(S, M)`` bound to ``A`` and ``B``."""
    if isinstance(node, str):
        node = parse(node)
    if isinstance(node, Var):
        if node.name == "X":
            return np.full_like(env["A"], engine.full)
        if node.name == "0":
            return np.zeros_like(env["A"])
        return env[node.name]
    if isinstance(node, Apply):
        return engine.apply(node.word, evaluate(node.arg, engine, env))
    left = evaluate(node.left, engine, env)
    right = evaluate(node.right, engine, env)
    if node.op == "|":
        return left | right
    if node.op == "&":
        return left & right
    if node.op == "^":
        return left ^ right
    return left & ~right


def relation_holds(relation: str, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Elementwise truth of ``left relation right`` for set codes."""
    if relation == "=":
        return left == right
    if relation == "!=":
        return left != right
    if relation == "<=":
        return (left & ~right) == 0
    if relation == "disjoint":
        return (left & right) == 0
    raise ValueError(f"unknown relation {relation!r}")


__all__ = ["Var", "Apply", "BinOp", "parse", "evaluate", "variables", "relation_holds", "LETTERS"]
