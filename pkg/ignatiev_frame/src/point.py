"""Points of the Ignatiev algebra and its operations.

A point is a sequence of ordinals (a_0, a_1, ...) with a_{i+1} <= l(a_i); only the
nonzero prefix is stored. The order is coordinatewise reverse: p <= q iff
p_i >= q_i for every i, so the all-zero point is the top element.
"""

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, List, Sequence, Tuple

from .errors import ChainViolation, InvalidCaseError, PointSyntaxError
from .ordinal import (
    ZERO,
    Ordinal,
    add,
    ell,
    format_ordinal,
    omega_pow,
    omega_tower,
    parse_ordinal,
)


@dataclass(frozen=True)
class IgnatievPoint:
    """Element of the Ignatiev algebra; trailing zeros are implicit."""

    coords: Tuple[Ordinal, ...] = ()

    def coordinate(self, i: int) -> Ordinal:
        return self.coords[i] if i < len(self.coords) else ZERO

    @property
    def support(self) -> int:
        return len(self.coords)

    @property
    def is_top(self) -> bool:
        return not self.coords

    def __str__(self) -> str:
        return format_point(self)


TOP = IgnatievPoint()


def _trim(coords: Sequence[Ordinal]) -> Tuple[Ordinal, ...]:
    end = len(coords)
    while end and not coords[end - 1].terms:
        end -= 1
    return tuple(coords[:end])


def make_point(coords: Iterable[Ordinal]) -> IgnatievPoint:
    """Validating constructor; raises :class:`ChainViolation` at the first bad index."""
    trimmed = _trim(list(coords))
    for i, value in enumerate(trimmed):
        following = trimmed[i + 1] if i + 1 < len(trimmed) else ZERO
        if following > ell(value):
            raise ChainViolation(
                i,
                f"chain violation at index {i}: {format_ordinal(following)} > "
                f"l({format_ordinal(value)}) = {format_ordinal(ell(value))}",
            )
    return IgnatievPoint(trimmed)


def coordinate(p: IgnatievPoint, i: int) -> Ordinal:
    return p.coordinate(i)


def support(p: IgnatievPoint) -> int:
    return p.support


def leq(p: IgnatievPoint, q: IgnatievPoint) -> bool:
    """p <= q in the algebra, i.e. p_i >= q_i for all i."""
    for i in range(max(p.support, q.support)):
        if p.coordinate(i) < q.coordinate(i):
            return False
    return True


def glb(p: IgnatievPoint, q: IgnatievPoint) -> IgnatievPoint:
    """Greatest lower bound.

    With g_i = max(p_i, q_i), computed downwards from the larger support:
    d_i = g_i when l(g_i) >= d_{i+1}, else g_i + omega^d_{i+1}.
    """
    n = max(p.support, q.support)
    deltas: List[Ordinal] = [ZERO] * n
    following = ZERO
    for i in range(n - 1, -1, -1):
        gamma = max(p.coordinate(i), q.coordinate(i))
        if ell(gamma) >= following:
            value = gamma
        else:
            value = add(gamma, omega_pow(following))
        deltas[i] = value
        following = value
    return IgnatievPoint(_trim(deltas))


def glb_all(points: Iterable[IgnatievPoint]) -> IgnatievPoint:
    """Greatest lower bound of finitely many points (TOP for none)."""
    return reduce(glb, points, TOP)


def diamond(n: int, p: IgnatievPoint) -> IgnatievPoint:
    """The n-consistency operator: d_i = 0 above n, d_i = p_i + omega^d_{i+1} for i <= n."""
    if n < 0:
        raise InvalidCaseError(f"modal index must be >= 0, got {n}")
    deltas: List[Ordinal] = [ZERO] * (n + 1)
    following = ZERO
    for i in range(n, -1, -1):
        following = add(p.coordinate(i), omega_pow(following))
        deltas[i] = following
    return IgnatievPoint(tuple(deltas))


def nabla(n: int, p: IgnatievPoint) -> IgnatievPoint:
    """Truncation of p after position n."""
    if n < 0:
        raise InvalidCaseError(f"modal index must be >= 0, got {n}")
    return IgnatievPoint(p.coords[: n + 1])


def tower_point(i: int, gamma: Ordinal) -> IgnatievPoint:
    """The greatest point whose i-th coordinate is gamma: (w_i(g), ..., w^g, g).

    Every point p with p_i = gamma > 0 lies below it, since p_{j-1} >= w^(p_j) along the
    chain. For gamma = 0 this is the top point.
    """
    if i < 0:
        raise InvalidCaseError(f"negative coordinate index {i}")
    if not gamma.terms:
        return TOP
    return IgnatievPoint(tuple(omega_tower(i - j, gamma) for j in range(i + 1)))


def parse_point(text: str) -> IgnatievPoint:
    """Parse ``w,1`` style text; empty text or ``0`` is the top point."""
    if not text.strip() or text.strip() == "0":
        return TOP
    coords: List[Ordinal] = []
    offset = 0
    for part in text.split(","):
        if not part.strip():
            raise PointSyntaxError("empty coordinate", text, offset)
        coords.append(parse_ordinal(part, offset=offset))
        offset += len(part) + 1
    return make_point(coords)


def format_point(p: IgnatievPoint) -> str:
    if p.is_top:
        return "0"
    return ",".join(format_ordinal(c) for c in p.coords)
