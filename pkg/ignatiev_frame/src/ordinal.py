"""Ordinals below epsilon-zero in Cantor normal form.

An :class:`Ordinal` is an immutable tuple of ``(exponent, coefficient)`` terms with
strictly decreasing exponents and positive coefficients; the empty tuple is 0.
:data:`EPSILON_ZERO` is a separate top value used only as a sequence coordinate,
so plain ordinal arithmetic never produces it.

Text grammar::

    ordinal := term ('+' term)*
    term    := 'w' ('^' atom)? ('*' nat)? | nat | 'e0'
    atom    := 'w' | nat | '(' ordinal ')'
"""

import re
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Iterator, List, NamedTuple, Optional, Tuple, Union

from .errors import InvalidCaseError, OrdinalSyntaxError


class Order(IntEnum):
    """Result of :func:`cmp`."""
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class Ordinal:
    """Ordinal < epsilon-zero in canonical Cantor normal form."""

    terms: Tuple[Tuple["Ordinal", int], ...] = ()

    def __post_init__(self):
        previous = None
        for exponent, coefficient in self.terms:
            if not isinstance(exponent, Ordinal):
                raise TypeError(f"exponent must be an Ordinal, got {type(exponent).__name__}")
            if not isinstance(coefficient, int) or coefficient < 1:
                raise InvalidCaseError(f"coefficient must be a positive integer, got {coefficient!r}")
            if previous is not None and cmp(previous, exponent) != Order.GREATER:
                raise InvalidCaseError("exponents must be strictly decreasing")
            previous = exponent

    @classmethod
    def of(cls, n: int) -> "Ordinal":
        """The finite ordinal ``n``."""
        if n < 0:
            raise InvalidCaseError(f"negative ordinal {n}")
        return cls(((ZERO, n),)) if n else ZERO

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple["Ordinal", int]]) -> "Ordinal":
        """Canonicalize an arbitrary (possibly non-decreasing) sum of terms."""
        total = ZERO
        for exponent, coefficient in terms:
            if coefficient:
                total = add(total, cls(((exponent, coefficient),)))
        return total

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __lt__(self, other):
        if isinstance(other, EpsilonZero):
            return True
        if not isinstance(other, Ordinal):
            return NotImplemented
        return cmp(self, other) == Order.LESS

    def __le__(self, other):
        if isinstance(other, EpsilonZero):
            return True
        if not isinstance(other, Ordinal):
            return NotImplemented
        return cmp(self, other) != Order.GREATER

    def __gt__(self, other):
        if isinstance(other, EpsilonZero):
            return False
        if not isinstance(other, Ordinal):
            return NotImplemented
        return cmp(self, other) == Order.GREATER

    def __ge__(self, other):
        if isinstance(other, EpsilonZero):
            return False
        if not isinstance(other, Ordinal):
            return NotImplemented
        return cmp(self, other) != Order.LESS

    def __add__(self, other):
        if isinstance(other, int):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return add(self, other)

    def __repr__(self) -> str:
        return f"Ordinal({format_ordinal(self)})"

    def __str__(self) -> str:
        return format_ordinal(self)

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0].terms)


class EpsilonZero:
    """The top value epsilon-zero, strictly above every :class:`Ordinal`."""

    _instance: Optional["EpsilonZero"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __reduce__(self):
        return (EpsilonZero, ())

    def __eq__(self, other):
        return isinstance(other, EpsilonZero)

    def __hash__(self):
        return hash("epsilon-zero")

    def __lt__(self, other):
        if isinstance(other, (Ordinal, EpsilonZero)):
            return False
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, (Ordinal, EpsilonZero)):
            return isinstance(other, EpsilonZero)
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, (Ordinal, EpsilonZero)):
            return isinstance(other, Ordinal)
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, (Ordinal, EpsilonZero)):
            return True
        return NotImplemented

    def __repr__(self) -> str:
        return "EPSILON_ZERO"

    def __str__(self) -> str:
        return "e0"


ExtOrdinal = Union[Ordinal, EpsilonZero]

ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))
EPSILON_ZERO = EpsilonZero()


# ---------------------------------------------------------------------------
# Core arithmetic
# ---------------------------------------------------------------------------

def cmp(a: Ordinal, b: Ordinal) -> Order:
    """Compare two canonical ordinals (lexicographic on CNF terms)."""
    if a is b:
        return Order.EQUAL
    for (ea, ka), (eb, kb) in zip(a.terms, b.terms):
        c = cmp(ea, eb)
        if c != Order.EQUAL:
            return c
        if ka != kb:
            return Order.LESS if ka < kb else Order.GREATER
    if len(a.terms) == len(b.terms):
        return Order.EQUAL
    return Order.LESS if len(a.terms) < len(b.terms) else Order.GREATER


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum a + b; terms of ``a`` below the leading exponent of ``b`` are absorbed."""
    if not b.terms:
        return a
    if not a.terms:
        return b
    lead_exponent, lead_coefficient = b.terms[0]
    kept: List[Tuple[Ordinal, int]] = []
    for exponent, coefficient in a.terms:
        c = cmp(exponent, lead_exponent)
        if c == Order.GREATER:
            kept.append((exponent, coefficient))
        elif c == Order.EQUAL:
            kept.append((exponent, coefficient + lead_coefficient))
            return Ordinal(tuple(kept) + b.terms[1:])
        else:
            break
    return Ordinal(tuple(kept) + b.terms)


def omega_pow(a: Ordinal) -> Ordinal:
    """omega^a as a single-term ordinal."""
    return Ordinal(((a, 1),))


def ell(a: Ordinal) -> Ordinal:
    """Least exponent of the Cantor normal form; l(0) = 0."""
    return a.terms[-1][0] if a.terms else ZERO


def is_limit(a: Ordinal) -> bool:
    return bool(a.terms) and bool(ell(a).terms)


def is_successor(a: Ordinal) -> bool:
    return bool(a.terms) and not ell(a).terms


def pred(a: Ordinal) -> Ordinal:
    """Predecessor of a successor ordinal."""
    if not is_successor(a):
        raise InvalidCaseError(f"{format_ordinal(a)} has no predecessor")
    exponent, coefficient = a.terms[-1]
    if coefficient == 1:
        return Ordinal(a.terms[:-1])
    return Ordinal(a.terms[:-1] + ((exponent, coefficient - 1),))


def decompose_last(a: Ordinal) -> Tuple[Ordinal, Ordinal]:
    """Split a > 0 as ``b + omega^e`` with ``e = l(a)`` and ``b < a``; returns ``(b, e)``."""
    if not a.terms:
        raise InvalidCaseError("0 has no last term")
    exponent, coefficient = a.terms[-1]
    if coefficient == 1:
        return Ordinal(a.terms[:-1]), exponent
    return Ordinal(a.terms[:-1] + ((exponent, coefficient - 1),)), exponent


def omega_tower(i: int, a: Ordinal) -> Ordinal:
    """omega_0(a) = a, omega_{k+1}(a) = omega^(omega_k(a))."""
    if i < 0:
        raise InvalidCaseError(f"negative tower height {i}")
    result = a
    for _ in range(i):
        result = omega_pow(result)
    return result


def successor(a: Ordinal) -> Ordinal:
    return add(a, ONE)


# ---------------------------------------------------------------------------
# Extended ordinals (epsilon-zero as a coordinate value)
# ---------------------------------------------------------------------------

def ext_ell(a: ExtOrdinal) -> ExtOrdinal:
    return a if isinstance(a, EpsilonZero) else ell(a)


def ext_is_limit(a: ExtOrdinal) -> bool:
    return isinstance(a, EpsilonZero) or is_limit(a)


def ext_is_successor(a: ExtOrdinal) -> bool:
    return isinstance(a, Ordinal) and is_successor(a)


def ext_pred(a: ExtOrdinal) -> Ordinal:
    if isinstance(a, EpsilonZero):
        raise InvalidCaseError("e0 has no predecessor")
    return pred(a)


def ext_omega_pow(a: ExtOrdinal) -> ExtOrdinal:
    return a if isinstance(a, EpsilonZero) else omega_pow(a)


def ext_add(a: ExtOrdinal, b: ExtOrdinal) -> ExtOrdinal:
    """Sum with the conventions a + e0 = e0; e0 + b is only representable for b = 0."""
    if isinstance(b, EpsilonZero):
        return b
    if isinstance(a, EpsilonZero):
        if b.terms:
            raise InvalidCaseError(f"e0+{format_ordinal(b)} is not representable")
        return a
    return add(a, b)


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

class _Token(NamedTuple):
    kind: str
    text: str
    position: int


_TOKEN_SPEC = [
    ("SKIP", r"\s+"),
    ("NAT", r"[0-9]+"),
    ("E0", r"e0"),
    ("W", r"w"),
    ("PLUS", r"\+"),
    ("STAR", r"\*"),
    ("CARET", r"\^"),
    ("LP", r"\("),
    ("RP", r"\)"),
    ("MISMATCH", r"."),
]
_TOKEN_REGEX = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in _TOKEN_SPEC))


def _tokenize(text: str, offset: int) -> Iterator[_Token]:
    for mo in _TOKEN_REGEX.finditer(text):
        kind = mo.lastgroup
        if kind == "SKIP":
            continue
        if kind == "MISMATCH":
            raise OrdinalSyntaxError(f"unexpected character {mo.group()!r}", text, offset + mo.start())
        yield _Token(kind, mo.group(), offset + mo.start())


class _OrdinalParser:
    """Recursive-descent parser over the ordinal grammar."""

    def __init__(self, text: str, allow_epsilon: bool, offset: int = 0):
        self.text = text
        self.allow_epsilon = allow_epsilon
        self.tokens = list(_tokenize(text, offset))
        self.pos = 0
        self.end = offset + len(text)

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def error(self, message: str, token: Optional[_Token] = None) -> OrdinalSyntaxError:
        position = token.position if token else self.end
        return OrdinalSyntaxError(message, self.text, position)

    def expect(self, kind: str) -> _Token:
        token = self.peek()
        if token is None or token.kind != kind:
            found = repr(token.text) if token else "end of input"
            raise self.error(f"expected {kind}, found {found}", token)
        self.pos += 1
        return token

    def parse(self) -> ExtOrdinal:
        value = self.parse_sum(top_level=True)
        token = self.peek()
        if token is not None:
            raise self.error(f"unexpected {token.text!r}", token)
        return value

    def parse_sum(self, top_level: bool) -> ExtOrdinal:
        total: ExtOrdinal = self.parse_term(top_level)
        while (token := self.peek()) is not None and token.kind == "PLUS":
            self.pos += 1
            term_token = self.peek()
            term = self.parse_term(top_level)
            try:
                total = ext_add(total, term)
            except InvalidCaseError as exc:
                raise self.error(str(exc), term_token) from exc
        return total

    def parse_term(self, top_level: bool) -> ExtOrdinal:
        token = self.peek()
        if token is None:
            raise self.error("expected a term, found end of input")
        if token.kind == "NAT":
            self.pos += 1
            return Ordinal.of(int(token.text))
        if token.kind == "E0":
            if not (self.allow_epsilon and top_level):
                raise self.error("e0 is not allowed here", token)
            self.pos += 1
            return EPSILON_ZERO
        if token.kind == "W":
            self.pos += 1
            exponent = ONE
            if (nxt := self.peek()) is not None and nxt.kind == "CARET":
                self.pos += 1
                exponent = self.parse_atom()
            coefficient = 1
            if (nxt := self.peek()) is not None and nxt.kind == "STAR":
                self.pos += 1
                coefficient = int(self.expect("NAT").text)
            return Ordinal(((exponent, coefficient),)) if coefficient else ZERO
        raise self.error(f"unexpected {token.text!r}", token)

    def parse_atom(self) -> Ordinal:
        token = self.peek()
        if token is None:
            raise self.error("expected an exponent, found end of input")
        if token.kind == "W":
            self.pos += 1
            return OMEGA
        if token.kind == "NAT":
            self.pos += 1
            return Ordinal.of(int(token.text))
        if token.kind == "LP":
            self.pos += 1
            inner = self.parse_sum(top_level=False)
            self.expect("RP")
            return inner
        raise self.error(f"unexpected {token.text!r} in exponent", token)


def parse_ordinal(text: str, offset: int = 0) -> Ordinal:
    """Parse an ordinal literal; non-canonical sums are canonicalized."""
    return _OrdinalParser(text, allow_epsilon=False, offset=offset).parse()


def parse_ext_ordinal(text: str, offset: int = 0) -> ExtOrdinal:
    """Parse an ordinal literal that may also be ``e0``."""
    return _OrdinalParser(text, allow_epsilon=True, offset=offset).parse()


def _format_exponent(e: Ordinal) -> str:
    if e.is_finite or e == OMEGA:
        return format_ordinal(e)
    return f"({format_ordinal(e)})"


def format_ordinal(a: ExtOrdinal) -> str:
    """Canonical text: no spaces, same grammar as :func:`parse_ordinal`."""
    if isinstance(a, EpsilonZero):
        return "e0"
    if not a.terms:
        return "0"
    parts = []
    for exponent, coefficient in a.terms:
        if not exponent.terms:
            parts.append(str(coefficient))
            continue
        base = "w" if exponent == ONE else f"w^{_format_exponent(exponent)}"
        parts.append(base if coefficient == 1 else f"{base}*{coefficient}")
    return "+".join(parts)
