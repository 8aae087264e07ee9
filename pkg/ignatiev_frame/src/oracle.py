"""Brute-force oracles over a finite slice of the algebra.

Everything here works from first principles (definitions of order, filter and
supremum) on explicitly enumerated ordinals, points and suitable sequences, and
is used only to cross-check the closed-form operations.
"""

import random
from bisect import bisect_left
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import InvalidCaseError, NoMaximumError, SupNotAttained
from .frame import (
    ALL_ONES,
    IMPROPER,
    SuitableSequence,
    Tail,
    canonical_sequence,
    principal_filter_sequence,
    step_holds,
)
from .logic import And, Dia, Formula, Nabla, Top
from .models import ClosureReport, EnumerationBound
from .ordinal import (
    EPSILON_ZERO,
    ONE,
    ZERO,
    EpsilonZero,
    ExtOrdinal,
    Ordinal,
    add,
    ell,
    ext_is_successor,
    format_ordinal,
    omega_pow,
    pred,
    successor,
)
from .point import TOP, IgnatievPoint, diamond, glb, leq
from .utils import get_logger

logger = get_logger(__name__)


def _is_atomic(exponent: Ordinal) -> bool:
    return exponent == ZERO or exponent == ONE


def ordinal_size(a: Ordinal) -> int:
    """Number of terms, counting the terms of non-atomic exponents recursively."""
    return sum(1 if _is_atomic(e) else 1 + ordinal_size(e) for e, _ in a.terms)


def ordinal_height(a: Ordinal) -> int:
    """Exponent nesting depth: 0 for 0, 1 when every exponent is 0 or 1."""
    if not a.terms:
        return 0
    return max(1 if _is_atomic(e) else 1 + ordinal_height(e) for e, _ in a.terms)


def _term_sums(
    exponents: Sequence[Tuple[Ordinal, int]], start: int, budget: int, max_coeff: int
) -> Iterator[Tuple[Tuple[Ordinal, int], ...]]:
    yield ()
    for k in range(start, len(exponents)):
        exponent, cost = exponents[k]
        if cost > budget:
            continue
        for coefficient in range(1, max_coeff + 1):
            for rest in _term_sums(exponents, k + 1, budget - cost, max_coeff):
                yield ((exponent, coefficient),) + rest


@lru_cache(maxsize=None)
def _ordinals(height: int, budget: int, max_coeff: int) -> Tuple[Ordinal, ...]:
    exponents: List[Tuple[Ordinal, int]] = [(ONE, 1), (ZERO, 1)]
    if height > 1 and budget > 1:
        for e in _ordinals(height - 1, budget - 1, max_coeff):
            if not _is_atomic(e):
                exponents.append((e, 1 + ordinal_size(e)))
    exponents.sort(key=lambda item: item[0], reverse=True)
    return tuple(sorted(Ordinal(terms) for terms in _term_sums(exponents, 0, budget, max_coeff)))


def enumerate_ordinals(bound: EnumerationBound) -> List[Ordinal]:
    """All ordinals inside ``bound``, ascending, starting with 0."""
    return list(_ordinals(bound.max_height, bound.max_terms, bound.max_coeff))


@lru_cache(maxsize=16)
def _points(bound: EnumerationBound) -> Tuple[IgnatievPoint, ...]:
    nonzero = enumerate_ordinals(bound)[1:]
    found: List[IgnatievPoint] = [TOP]

    def extend(prefix: Tuple[Ordinal, ...]) -> None:
        found.append(IgnatievPoint(prefix))
        if len(prefix) == bound.max_support:
            return
        limit = ell(prefix[-1])
        for value in nonzero:
            if value > limit:
                break
            extend(prefix + (value,))

    for first in nonzero:
        extend((first,))
    return tuple(found)


def enumerate_points(bound: EnumerationBound) -> List[IgnatievPoint]:
    """All Ignatiev points with coordinates inside ``bound``; the top point comes first."""
    return list(_points(bound))


@lru_cache(maxsize=16)
def _sequences(bound: EnumerationBound) -> Tuple[SuitableSequence, ...]:
    candidates = [a for a in enumerate_ordinals(bound)[1:] if a != ONE]
    found: List[SuitableSequence] = []

    def extend(prefix: Tuple[ExtOrdinal, ...], room: int, tail: Tail) -> None:
        found.append(SuitableSequence(prefix, tail))
        if not room:
            return
        for value in candidates:
            if prefix and not step_holds(prefix[-1], value):
                break
            extend(prefix + (value,), room - 1, tail)

    extend((), bound.max_support, Tail.ONE)
    for heads in range(1, bound.max_support + 1):
        extend((EPSILON_ZERO,) * heads, bound.max_support - heads, Tail.ONE)
    found.append(IMPROPER)
    return tuple(found)


def enumerate_sequences(bound: EnumerationBound) -> List[SuitableSequence]:
    """Suitable sequences with prefixes inside ``bound``.

    Includes sequences headed by e0 coordinates and the improper filter. The
    all-ones sequence comes first.
    """
    return list(_sequences(bound))


def sample_sequences(bound: EnumerationBound, count: int, seed: int) -> List[SuitableSequence]:
    """A reproducible sample of enumerated sequences, always including the extremes."""
    population = enumerate_sequences(bound)
    rest = [s for s in population if s not in (ALL_ONES, IMPROPER)]
    rng = random.Random(seed)
    picked = rng.sample(rest, min(max(count - 2, 0), len(rest)))
    return [ALL_ONES, IMPROPER] + picked


def random_formula(rng: random.Random, depth: int, max_index: int = 2) -> Formula:
    """Random formula of nesting depth at most ``depth``."""
    if depth <= 0:
        return Top()
    roll = rng.random()
    if roll < 0.15:
        return Top()
    if roll < 0.45:
        return And(
            random_formula(rng, depth - 1, max_index),
            random_formula(rng, depth - 1, max_index),
        )
    sub = random_formula(rng, depth - 1, max_index)
    index = rng.randint(0, max_index)
    return Dia(index, sub) if roll < 0.8 else Nabla(index, sub)


def sample_formulas(count: int, seed: int, depth: int = 4, max_index: int = 2) -> List[Formula]:
    rng = random.Random(seed)
    return [random_formula(rng, depth, max_index) for _ in range(count)]


class OracleIndex:
    """Enumerated slice of a bound with bitset indexes over its points.

    ``at_least[i][k]`` has bit ``j`` set when the j-th enumerated point has an i-th
    coordinate of at least the k-th enumerated ordinal. Down-sets used by
    :func:`brute_glb` are encoded differently: points are ranked by decreasing
    down-set size, so the greatest element of any set of points, when it exists, is
    the lowest set bit of the set's mask.
    """

    def __init__(self, bound: EnumerationBound):
        self.bound = bound
        self.ordinals: List[Ordinal] = enumerate_ordinals(bound)
        self.ordinal_set = frozenset(self.ordinals)
        self.ordinal_rank: Dict[Ordinal, int] = {a: k for k, a in enumerate(self.ordinals)}
        self.points: List[IgnatievPoint] = enumerate_points(bound)
        self.position: Dict[IgnatievPoint, int] = {p: k for k, p in enumerate(self.points)}
        self.everyone = (1 << len(self.points)) - 1

        self.at_least = self._coordinate_masks([1 << k for k in range(len(self.points))])
        sizes = [self._down_mask(self.at_least, p).bit_count() for p in self.points]
        self.by_rank: List[int] = sorted(range(len(self.points)), key=lambda k: -sizes[k])
        rank = [0] * len(self.points)
        for r, k in enumerate(self.by_rank):
            rank[k] = r
        ranked = self._coordinate_masks([1 << r for r in rank])
        self.down: List[int] = [self._down_mask(ranked, p) for p in self.points]
        logger.debug(
            "Indexed %d ordinals and %d points (%s)",
            len(self.ordinals), len(self.points), bound.describe(),
        )

    def _coordinate_masks(self, bits: List[int]) -> List[List[int]]:
        masks: List[List[int]] = []
        for i in range(self.bound.max_support):
            buckets = [0] * (len(self.ordinals) + 1)
            for p, bit in zip(self.points, bits):
                buckets[self.ordinal_rank[p.coordinate(i)]] |= bit
            for k in range(len(self.ordinals) - 1, -1, -1):
                buckets[k] |= buckets[k + 1]
            masks.append(buckets)
        return masks

    def _down_mask(self, masks: List[List[int]], p: IgnatievPoint) -> int:
        mask = self.everyone
        for i in range(p.support):
            mask &= masks[i][self.ordinal_rank[p.coordinate(i)]]
        return mask

    def member_mask(self, seq: SuitableSequence) -> int:
        """Enumerated points p with p_i < seq_i at every index."""
        beyond = range(self.bound.max_support, len(seq.prefix) + 1)
        if any(not seq.coordinate(i) > ZERO for i in beyond):
            return 0
        mask = self.everyone
        for i in range(self.bound.max_support):
            mask &= self.everyone ^ self.at_least[i][bisect_left(self.ordinals, seq.coordinate(i))]
        return mask

    def up_mask(self, p: IgnatievPoint) -> int:
        """Enumerated points r with r_i <= p_i at every index; ``p`` must be enumerated."""
        mask = self.everyone
        for i in range(self.bound.max_support):
            mask &= self.everyone ^ self.at_least[i][self.ordinal_rank[p.coordinate(i)] + 1]
        return mask

    def points_in(self, mask: int) -> List[IgnatievPoint]:
        """Points of a position mask, in enumeration order."""
        bits = bin(mask)[:1:-1]
        return [self.points[k] for k, bit in enumerate(bits) if bit == "1"]

    def ordinals_below(self, value: ExtOrdinal) -> List[Ordinal]:
        return self.ordinals[: bisect_left(self.ordinals, value)]

    def contains_point(self, p: IgnatievPoint) -> bool:
        return p in self.position


@lru_cache(maxsize=8)
def oracle_index(bound: EnumerationBound) -> OracleIndex:
    return OracleIndex(bound)


def brute_glb(p: IgnatievPoint, q: IgnatievPoint, bound: EnumerationBound) -> IgnatievPoint:
    """Greatest enumerated point below both ``p`` and ``q``.

    Raises:
        NoMaximumError: The enumerated lower bounds have no greatest element
    """
    index = oracle_index(bound)
    if index.contains_point(p) and index.contains_point(q):
        common = index.down[index.position[p]] & index.down[index.position[q]]
        if common:
            best = index.by_rank[(common & -common).bit_length() - 1]
            if not common & ~index.down[best]:
                return index.points[best]
    else:
        lower = [r for r in index.points if leq(r, p) and leq(r, q)]
        for candidate in lower:
            if all(leq(r, candidate) for r in lower):
                return candidate
    raise NoMaximumError(f"no greatest enumerated lower bound of {p} and {q}")


def sigma_candidates(
    alpha: ExtOrdinal, following: ExtOrdinal, bound: EnumerationBound
) -> Iterator[Tuple[Ordinal, Ordinal, Ordinal]]:
    """Triples (g, d, g + w^d + 1) for every enumerated d < following.

    g is the largest enumerated ordinal below ``alpha``; g + x is monotone in g.
    """
    index = oracle_index(bound)
    gammas = index.ordinals_below(alpha)
    if not gammas:
        return
    gamma = gammas[-1]
    for delta in index.ordinals_below(following):
        yield gamma, delta, successor(add(gamma, omega_pow(delta)))


@lru_cache(maxsize=65536)
def _sup_step(alpha: ExtOrdinal, following: ExtOrdinal, bound: EnumerationBound) -> Optional[Ordinal]:
    # The supremum is a maximum exactly when both bounds are successors of enumerated ordinals.
    if not (ext_is_successor(alpha) and ext_is_successor(following)):
        return None
    index = oracle_index(bound)
    if pred(alpha) not in index.ordinal_set or pred(following) not in index.ordinal_set:
        return None
    return max(value for _, _, value in sigma_candidates(alpha, following, bound))


def brute_sup_sigma(n: int, seq: SuitableSequence, bound: EnumerationBound) -> SuitableSequence:
    """sigma_n computed as a maximum over enumerated witnesses, coordinate by coordinate.

    Raises:
        SupNotAttained: Some coordinate's supremum is not a maximum inside ``bound``
    """
    values: Dict[int, Ordinal] = {}
    following: ExtOrdinal = ONE
    for i in range(n, -1, -1):
        value = _sup_step(seq.coordinate(i), following, bound)
        if value is None:
            raise SupNotAttained(i, dict(values))
        values[i] = value
        following = value
    return canonical_sequence([values[i] for i in range(n + 1)], Tail.ONE)


@lru_cache(maxsize=65536)
def sigma_bound_violation(
    alpha: ExtOrdinal, following: ExtOrdinal, claimed: ExtOrdinal, bound: EnumerationBound
) -> Optional[str]:
    """First enumerated witness g + w^d + 1 that is not below ``claimed``, as text."""
    if isinstance(claimed, EpsilonZero):
        return None
    for gamma, delta, value in sigma_candidates(alpha, following, bound):
        if not value <= claimed:
            return f"gamma={format_ordinal(gamma)} delta={format_ordinal(delta)}"
    return None


def contains(seq: SuitableSequence, p: IgnatievPoint) -> bool:
    """p_i < seq_i at every index, the zero coordinates past p's support included."""
    return all(
        p.coordinate(i) < seq.coordinate(i) for i in range(max(p.support, len(seq.prefix)) + 1)
    )


def members_of(seq: SuitableSequence, bound: EnumerationBound) -> List[IgnatievPoint]:
    """Enumerated points of the filter of ``seq``, in enumeration order."""
    index = oracle_index(bound)
    return index.points_in(index.member_mask(seq))


def brute_filter_sequence(members: Iterable[IgnatievPoint], length: int) -> SuitableSequence:
    """sup{p_i + 1} over a finite generating set, for the first ``length`` coordinates."""
    members = list(members)
    if not members:
        raise InvalidCaseError("a filter has at least one element")
    values = [successor(max(p.coordinate(i) for p in members)) for i in range(length)]
    return canonical_sequence(values, Tail.ONE)


@lru_cache(maxsize=32)
def diamond_table(bound: EnumerationBound, n: int) -> Tuple[IgnatievPoint, ...]:
    """diamond_n of every enumerated point, in enumeration order."""
    return tuple(diamond(n, p) for p in oracle_index(bound).points)


@lru_cache(maxsize=32)
def _diamond_levels(bound: EnumerationBound, n: int) -> Tuple[Tuple[Tuple[Ordinal, int], ...], ...]:
    # Per coordinate i <= n: (value, mask of points whose diamond has that i-th coordinate), largest first.
    levels = []
    for i in range(n + 1):
        masks: Dict[Ordinal, int] = {}
        for k, d in enumerate(diamond_table(bound, n)):
            value = d.coordinate(i)
            masks[value] = masks.get(value, 0) | (1 << k)
        levels.append(tuple(sorted(masks.items(), reverse=True)))
    return tuple(levels)


def brute_diamond_sequence(n: int, q: IgnatievPoint, bound: EnumerationBound) -> SuitableSequence:
    """Sequence of the filter generated by diamond_n of the enumerated members of up(q)."""
    upset = oracle_index(bound).member_mask(principal_filter_sequence(q))
    if not upset:
        raise InvalidCaseError(f"no enumerated point lies above {q}")
    values = [
        successor(next(value for value, mask in level if mask & upset))
        for level in _diamond_levels(bound, n)
    ]
    return canonical_sequence(values, Tail.ONE)


def check_filter_closure(seq: SuitableSequence, bound: EnumerationBound) -> ClosureReport:
    """Check the projections F_i = {p_i : p in F} of a filter's enumerated members.

    Every projection must be nonempty and downward closed among the enumerated
    ordinals. For a in F_i and b in F_(i+1) with l(a) < b, a + w^b must be in F_i;
    that is tested for the largest such b by lowering the i-th coordinate of the
    meet of two members realising a and b to a + w^b.
    """
    index = oracle_index(bound)
    members = members_of(seq, bound)
    length = len(seq.prefix) + 1
    realised: List[Dict[Ordinal, IgnatievPoint]] = []
    for i in range(length + 1):
        firsts: Dict[Ordinal, IgnatievPoint] = {}
        for p in members:
            firsts.setdefault(p.coordinate(i), p)
        realised.append(firsts)

    checked = 0
    for i in range(length):
        checked += 1
        if not realised[i]:
            return ClosureReport(passed=False, condition="nonempty", counterexample=f"i={i}", checked=checked)

    for i in range(length):
        projection = sorted(realised[i])
        checked += 1
        for value, expected in zip(projection, index.ordinals):
            if value != expected:
                return ClosureReport(
                    passed=False, condition="downward",
                    counterexample=f"i={i} alpha={format_ordinal(value)} beta={format_ordinal(expected)}",
                    checked=checked,
                )
        beta = max(realised[i + 1])
        for alpha in projection:
            if not ell(alpha) < beta:
                continue
            checked += 1
            meet = glb(realised[i][alpha], realised[i + 1][beta])
            lowered = tuple(meet.coordinate(j) for j in range(i)) + (add(alpha, omega_pow(beta)),)
            if not contains(seq, IgnatievPoint(lowered)):
                return ClosureReport(
                    passed=False, condition="projection",
                    counterexample=f"i={i} alpha={format_ordinal(alpha)} beta={format_ordinal(beta)}",
                    checked=checked,
                )
    return ClosureReport(passed=True, checked=checked)


def check_point_closure(
    seq: SuitableSequence, bound: EnumerationBound, limit: Optional[int] = None
) -> ClosureReport:
    """Check meet and upward closure of the enumerated members of a filter.

    With ``limit`` only the first ``limit`` members (in enumeration order) are tried.
    """
    index = oracle_index(bound)
    members = members_of(seq, bound)
    inside = 0
    for p in members:
        inside |= 1 << index.position[p]
    checked = 0
    if not members:
        return ClosureReport(passed=False, condition="nonempty", counterexample=str(seq))
    for p in members[:limit]:
        for q in members[:limit]:
            checked += 1
            if not contains(seq, glb(p, q)):
                return ClosureReport(
                    passed=False, condition="meet", counterexample=f"p={p} q={q}", checked=checked
                )
        checked += 1
        outside = index.up_mask(p) & ~inside
        if outside:
            r = index.points[(outside & -outside).bit_length() - 1]
            return ClosureReport(
                passed=False, condition="upward", counterexample=f"p={p} r={r}", checked=checked
            )
    return ClosureReport(passed=True, checked=checked)
