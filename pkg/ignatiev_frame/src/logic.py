"""Variable-free strictly positive formulas over T, &, D<n> and N<n>.

Grammar (whitespace between tokens is ignored, '&' is left-associative and the
prefix operators bind tighter)::

    formula := conj
    conj    := unary ('&' unary)*
    unary   := 'T' | '(' formula ')' | 'D' nat unary | 'N' nat unary
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, NamedTuple, Optional, Union

from .errors import FormulaSyntaxError, InvalidCaseError
from .point import TOP, IgnatievPoint, diamond, glb, leq, nabla


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Dia:
    n: int
    sub: "Formula"

    def __post_init__(self):
        if self.n < 0:
            raise InvalidCaseError(f"modal index must be >= 0, got {self.n}")


@dataclass(frozen=True)
class Nabla:
    n: int
    sub: "Formula"

    def __post_init__(self):
        if self.n < 0:
            raise InvalidCaseError(f"modal index must be >= 0, got {self.n}")


Formula = Union[Top, And, Dia, Nabla]


def depth(formula: Formula) -> int:
    if isinstance(formula, Top):
        return 0
    if isinstance(formula, And):
        return 1 + max(depth(formula.left), depth(formula.right))
    return 1 + depth(formula.sub)


@lru_cache(maxsize=8192)
def evaluate(formula: Formula) -> IgnatievPoint:
    """Value of a formula in the Ignatiev algebra (compositional)."""
    if isinstance(formula, Top):
        return TOP
    if isinstance(formula, And):
        return glb(evaluate(formula.left), evaluate(formula.right))
    if isinstance(formula, Dia):
        return diamond(formula.n, evaluate(formula.sub))
    if isinstance(formula, Nabla):
        return nabla(formula.n, evaluate(formula.sub))
    raise TypeError(f"not a formula: {formula!r}")


def entails(a: Formula, b: Formula) -> bool:
    """A |- B, decided as eval(A) <= eval(B)."""
    return leq(evaluate(a), evaluate(b))


def print_formula(formula: Formula) -> str:
    """Canonical, fully parenthesized text."""
    if isinstance(formula, Top):
        return "T"
    if isinstance(formula, And):
        return f"({print_formula(formula.left)} & {print_formula(formula.right)})"
    if isinstance(formula, Dia):
        return f"D{formula.n} {print_formula(formula.sub)}"
    if isinstance(formula, Nabla):
        return f"N{formula.n} {print_formula(formula.sub)}"
    raise TypeError(f"not a formula: {formula!r}")


class _Token(NamedTuple):
    kind: str
    text: str
    position: int


_TOKEN_SPEC = [
    ("SKIP", r"\s+"),
    ("NAT", r"[0-9]+"),
    ("TOP", r"T"),
    ("DIA", r"D"),
    ("NABLA", r"N"),
    ("AND", r"&"),
    ("LP", r"\("),
    ("RP", r"\)"),
    ("MISMATCH", r"."),
]
_TOKEN_REGEX = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in _TOKEN_SPEC))


def _tokenize(text: str) -> Iterator[_Token]:
    for mo in _TOKEN_REGEX.finditer(text):
        kind = mo.lastgroup
        if kind == "SKIP":
            continue
        if kind == "MISMATCH":
            raise FormulaSyntaxError(f"unexpected character {mo.group()!r}", text, mo.start())
        yield _Token(kind, mo.group(), mo.start())


class _FormulaParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: List[_Token] = list(_tokenize(text))
        self.pos = 0

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def error(self, message: str, token: Optional[_Token]) -> FormulaSyntaxError:
        position = token.position if token else len(self.text)
        return FormulaSyntaxError(message, self.text, position)

    def pop(self, expected: str, what: str) -> _Token:
        token = self.peek()
        if token is None or token.kind != expected:
            found = repr(token.text) if token else "end of input"
            raise self.error(f"expected {what}, found {found}", token)
        self.pos += 1
        return token

    def parse(self) -> Formula:
        formula = self.parse_conj()
        token = self.peek()
        if token is not None:
            raise self.error(f"unexpected {token.text!r}", token)
        return formula

    def parse_conj(self) -> Formula:
        left = self.parse_unary()
        while (token := self.peek()) is not None and token.kind == "AND":
            self.pos += 1
            left = And(left, self.parse_unary())
        return left

    def parse_unary(self) -> Formula:
        token = self.peek()
        if token is None:
            raise self.error("expected a formula, found end of input", None)
        if token.kind == "TOP":
            self.pos += 1
            return Top()
        if token.kind == "LP":
            self.pos += 1
            inner = self.parse_conj()
            self.pop("RP", "')'")
            return inner
        if token.kind in ("DIA", "NABLA"):
            self.pos += 1
            index = int(self.pop("NAT", f"an index after {token.text!r}").text)
            sub = self.parse_unary()
            return Dia(index, sub) if token.kind == "DIA" else Nabla(index, sub)
        raise self.error(f"unexpected {token.text!r}", token)


def parse_formula(text: str) -> Formula:
    return _FormulaParser(text).parse()
