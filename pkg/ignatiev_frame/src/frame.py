"""The universal Kripke frame of filters on the Ignatiev algebra, in coordinates.

A filter F is represented by its suitable sequence a_i = sup{b_i + 1 : b in F}:
a finite prefix of extended ordinals followed by a constant tail (1 for proper
filters, e0 for the improper one). Membership is p_i < a_i for all i.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import InvalidCaseError, NotSuitableError, SequenceSyntaxError
from .logic import And, Dia, Formula, Nabla, Top, evaluate
from .ordinal import (
    EPSILON_ZERO,
    ONE,
    EpsilonZero,
    ExtOrdinal,
    add,
    ell,
    ext_add,
    ext_ell,
    ext_is_limit,
    ext_omega_pow,
    ext_pred,
    format_ordinal,
    is_limit,
    omega_pow,
    parse_ext_ordinal,
    pred,
    successor,
)
from .point import IgnatievPoint, diamond, glb_all, nabla
from .utils import get_logger

logger = get_logger(__name__)


class Tail(str, Enum):
    """Value of every coordinate beyond the stored prefix."""
    ONE = "1"
    EPSILON_ZERO = "e0"

    @property
    def ordinal(self) -> ExtOrdinal:
        return ONE if self is Tail.ONE else EPSILON_ZERO


@dataclass(frozen=True)
class SuitableSequence:
    """Coordinates of a filter. Instances built directly are unchecked; use :func:`make_sequence`."""

    prefix: Tuple[ExtOrdinal, ...] = ()
    tail: Tail = Tail.ONE

    def coordinate(self, i: int) -> ExtOrdinal:
        return self.prefix[i] if i < len(self.prefix) else self.tail.ordinal

    def coordinates(self, length: int) -> Tuple[ExtOrdinal, ...]:
        return tuple(self.coordinate(i) for i in range(length))

    @property
    def is_improper(self) -> bool:
        return self.tail is Tail.EPSILON_ZERO

    def __str__(self) -> str:
        return format_sequence(self)


ALL_ONES = SuitableSequence()
IMPROPER = SuitableSequence((), Tail.EPSILON_ZERO)


def canonical_sequence(prefix: Sequence[ExtOrdinal], tail: Tail) -> SuitableSequence:
    tail_value = tail.ordinal
    end = len(prefix)
    while end and prefix[end - 1] == tail_value:
        end -= 1
    return SuitableSequence(tuple(prefix[:end]), tail)


def step_holds(value: ExtOrdinal, following: ExtOrdinal) -> bool:
    """Condition between coordinates i and i+1: limit a_i needs a_{i+1} <= l(a_i),
    successor a_i = a' + 1 needs a_{i+1} <= l(a') + 1."""
    if isinstance(value, EpsilonZero):
        return True
    if not value.terms:
        return False
    if is_limit(value):
        return following <= ell(value)
    return following <= add(ell(pred(value)), ONE)


def check_suitable(seq: SuitableSequence) -> Optional[int]:
    """First index violating suitability (including the prefix/tail seam), or None."""
    for i, value in enumerate(seq.prefix):
        if not step_holds(value, seq.coordinate(i + 1)):
            return i
    return None


def is_suitable(seq: SuitableSequence) -> bool:
    return check_suitable(seq) is None


def make_sequence(prefix: Iterable[ExtOrdinal], tail: Tail = Tail.ONE) -> SuitableSequence:
    """Validating constructor: canonicalizes the prefix, raises :class:`NotSuitableError`."""
    seq = canonical_sequence(list(prefix), tail)
    index = check_suitable(seq)
    if index is not None:
        raise NotSuitableError(
            index,
            f"sequence {format_sequence(seq)} is not suitable at index {index}",
        )
    return seq


def principal_filter_sequence(p: IgnatievPoint) -> SuitableSequence:
    """Sequence of the principal filter {q : p <= q}: p_i + 1 on the support, then ones."""
    return SuitableSequence(tuple(successor(c) for c in p.coords), Tail.ONE)


def generated_filter_sequence(points: Iterable[IgnatievPoint]) -> SuitableSequence:
    """Sequence of the filter generated by finitely many points (principal filter of their glb)."""
    return principal_filter_sequence(glb_all(points))


def member(seq: SuitableSequence, p: IgnatievPoint) -> bool:
    """p belongs to the filter of ``seq`` iff p_i < seq_i for every i."""
    return all(c < seq.coordinate(i) for i, c in enumerate(p.coords))


def sequence_leq(left: SuitableSequence, right: SuitableSequence, upto: int) -> bool:
    """Coordinatewise left_i <= right_i for i <= upto."""
    return all(left.coordinate(i) <= right.coordinate(i) for i in range(upto + 1))


def sigma(n: int, seq: SuitableSequence) -> SuitableSequence:
    """Sequence of the filter generated by the n-diamonds of the filter of ``seq``.

    Coordinates above n are 1; below, with s_{n+1} = 1 and a = seq_i:
    a if l(a) >= s_{i+1}; a + omega^s_{i+1} if s_{i+1} is a limit;
    a + omega^d + 1 if s_{i+1} = d + 1 and l(a) < d; a + 1 if l(a) = d.
    """
    if n < 0:
        raise InvalidCaseError(f"modal index must be >= 0, got {n}")
    values: List[ExtOrdinal] = [ONE] * (n + 1)
    following: ExtOrdinal = ONE
    for i in range(n, -1, -1):
        value = seq.coordinate(i)
        if ext_ell(value) >= following:
            result = value
        elif ext_is_limit(following):
            result = ext_add(value, ext_omega_pow(following))
        else:
            delta = ext_pred(following)
            if ell(value) < delta:
                result = successor(add(value, omega_pow(delta)))
            else:
                result = successor(value)
        values[i] = result
        following = result
    return canonical_sequence(values, Tail.ONE)


def rel_S(n: int, f: SuitableSequence, g: SuitableSequence) -> bool:
    """F S_n G iff G_i <= F_i for all i <= n."""
    return sequence_leq(g, f, n)


def rel_R(n: int, f: SuitableSequence, g: SuitableSequence) -> bool:
    """F R_n G iff sigma_n(G)_i <= F_i for all i <= n."""
    return sequence_leq(sigma(n, g), f, n)


def forces(seq: SuitableSequence, formula: Formula) -> bool:
    """Canonical valuation: F forces A iff eval(A) is in F."""
    return member(seq, evaluate(formula))


def witness_R(n: int, seq: SuitableSequence, formula: Formula) -> Optional[SuitableSequence]:
    """An R_n-successor of F forcing A (the principal filter of eval(A)), if F forces D_n A."""
    value = evaluate(formula)
    if not member(seq, diamond(n, value)):
        return None
    return principal_filter_sequence(value)


def witness_S(n: int, seq: SuitableSequence, formula: Formula) -> Optional[SuitableSequence]:
    """An S_n-successor of F forcing A, if F forces N_n A."""
    value = evaluate(formula)
    if not member(seq, nabla(n, value)):
        return None
    return principal_filter_sequence(value)


def forces_relational(seq: SuitableSequence, formula: Formula) -> bool:
    """Forcing by the Kripke clauses, quantifying over the canonical successor only.

    Any filter forcing A contains the principal filter of eval(A), and R_n / S_n
    only get easier for smaller successors, so that filter is the one to try.
    """
    if isinstance(formula, Top):
        return True
    if isinstance(formula, And):
        return forces_relational(seq, formula.left) and forces_relational(seq, formula.right)
    if not isinstance(formula, (Dia, Nabla)):
        raise TypeError(f"not a formula: {formula!r}")
    successor = principal_filter_sequence(evaluate(formula.sub))
    relation = rel_R if isinstance(formula, Dia) else rel_S
    return relation(formula.n, seq, successor) and forces_relational(successor, formula.sub)


def parse_sequence(text: str, validate: bool = True) -> SuitableSequence:
    """Parse ``w+1,2;1`` style text. With ``validate`` the result must be suitable."""
    if text.count(";") != 1:
        raise SequenceSyntaxError("expected exactly one ';' before the tail", text, len(text))
    head, tail_text = text.split(";")
    tail_text = tail_text.strip()
    if tail_text == "1":
        tail = Tail.ONE
    elif tail_text == "e0":
        tail = Tail.EPSILON_ZERO
    else:
        raise SequenceSyntaxError(f"tail must be 1 or e0, got {tail_text!r}", text, len(head) + 1)
    prefix: List[ExtOrdinal] = []
    if head.strip():
        offset = 0
        for part in head.split(","):
            if not part.strip():
                raise SequenceSyntaxError("empty coordinate", text, offset)
            prefix.append(parse_ext_ordinal(part, offset=offset))
            offset += len(part) + 1
    if validate:
        return make_sequence(prefix, tail)
    logger.debug("Parsed unchecked sequence %r", text)
    return canonical_sequence(prefix, tail)


def format_sequence(seq: SuitableSequence) -> str:
    return ",".join(format_ordinal(c) for c in seq.prefix) + ";" + seq.tail.value
