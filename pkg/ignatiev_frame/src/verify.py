"""Bounded verification sweeps comparing closed forms with the brute-force oracles."""

import random
import sys
import time
from bisect import bisect_left
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from .errors import ChainViolation, IgnatievError, SupNotAttained
from .frame import (
    SuitableSequence,
    forces,
    forces_relational,
    generated_filter_sequence,
    is_suitable,
    member,
    principal_filter_sequence,
    rel_R,
    rel_S,
    sigma,
    witness_R,
    witness_S,
)
from .logic import And, Dia, Formula, Nabla, entails, evaluate
from .models import CheckOutcome, SuiteName, SweepConfig
from .oracle import (
    brute_diamond_sequence,
    brute_filter_sequence,
    brute_glb,
    brute_sup_sigma,
    check_filter_closure,
    check_point_closure,
    diamond_table,
    enumerate_sequences,
    members_of,
    oracle_index,
    sample_formulas,
    sample_sequences,
    sigma_bound_violation,
)
from .point import IgnatievPoint, diamond, glb, leq, make_point, nabla, tower_point
from .utils import chunk_ranges, format_duration, get_logger

logger = get_logger(__name__)

MODAL_INDICES = (0, 1, 2)
FORMULA_DEPTH = 4
CLOSURE_MEMBER_LIMIT = 32
MEMBER_SAMPLES = 64
GENERATED_PARTNERS = 4


class _Counterexample(Exception):
    pass


class _Tally:
    """Counts cases for one chunk and stops it at the first counterexample."""

    def __init__(self):
        self.cases = 0
        self.skipped = 0

    def expect(self, condition: bool, describe: Callable[[], str]) -> None:
        self.cases += 1
        if not condition:
            raise _Counterexample(describe())

    def skip(self) -> None:
        self.skipped += 1


@dataclass(frozen=True)
class Check:
    """A named property swept over ``range(size(config))`` in chunks."""
    name: str
    suite: SuiteName
    size: Callable[[SweepConfig], int]
    body: Callable[[SweepConfig, int, int, _Tally], None]


# ---------------------------------------------------------------------------
# Shared sweep inputs (rebuilt identically in every worker process)
# ---------------------------------------------------------------------------

def _points(config: SweepConfig) -> List[IgnatievPoint]:
    return oracle_index(config.bound).points


def _sample(population: int, count: int, key: str) -> List[int]:
    """Sorted indices of a seeded sample; every index when ``count`` covers the population."""
    if count >= population:
        return list(range(population))
    return sorted(random.Random(key).sample(range(population), count))


@lru_cache(maxsize=8)
def _swept_points(config: SweepConfig) -> Tuple[int, ...]:
    """Positions of the points the per-point checks start from."""
    return tuple(_sample(len(_points(config)), config.point_samples, f"points:{config.random_seed}"))


def _partners(config: SweepConfig, k: int) -> List[int]:
    return _sample(len(_points(config)), config.partner_samples, f"partners:{config.random_seed}:{k}")


@lru_cache(maxsize=8)
def _sampled_sequences(config: SweepConfig) -> Tuple[SuitableSequence, ...]:
    return tuple(sample_sequences(config.bound, config.sequence_samples, config.random_seed))


@lru_cache(maxsize=8)
def _sampled_formulas(config: SweepConfig) -> Tuple[Formula, ...]:
    return tuple(sample_formulas(config.formula_samples, config.random_seed, FORMULA_DEPTH))


@lru_cache(maxsize=8)
def _towers(config: SweepConfig) -> Tuple[Tuple[IgnatievPoint, ...], ...]:
    ordinals = oracle_index(config.bound).ordinals
    return tuple(
        tuple(tower_point(i, gamma) for gamma in ordinals) for i in range(config.bound.max_support)
    )


def _relation_pair(config: SweepConfig, k: int) -> Tuple[SuitableSequence, SuitableSequence, Optional[IgnatievPoint]]:
    """The k-th (F, G) pair; even pairs use a principal G and also report its generator."""
    sequences = _sampled_sequences(config)
    points = _points(config)
    f = sequences[k % len(sequences)]
    if k % 2 == 0:
        q = points[(k * 17) % len(points)]
        return f, principal_filter_sequence(q), q
    return f, sequences[(k * 31 + 7) % len(sequences)], None


def _is_valid_point(p: IgnatievPoint) -> bool:
    try:
        return make_point(p.coords) == p
    except ChainViolation:
        return False


# ---------------------------------------------------------------------------
# glb suite
# ---------------------------------------------------------------------------

def _glb_oracle(config: SweepConfig, start: int, stop: int, tally: _Tally) -> None:
    index = oracle_index(config.bound)
    for k in _swept_points(config)[start:stop]:
        p = index.points[k]
        for j in _partners(config, k):
            q = index.points[j]
            meet = glb(p, q)
            tally.expect(_is_valid_point(meet), lambda: f"invalid p={p} q={q} glb={meet}")
            if not index.contains_point(meet):
                tally.skip()
                continue
            tally.expect(brute_glb(p, q, config.bound) == meet, lambda: f"p={p} q={q} glb={meet}")


def _order_coherence(config: SweepConfig, start: int, stop: int, tally: _Tally) -> None:
    points = _points(config)
    for k in _swept_points(config)[start:stop]:
        p = points[k]
        for j in _partners(config, k):
            q = points[j]
            tally.expect(leq(p, q) == (glb(p, q) == p), lambda: f"p={p} q={q}")


def _modal_laws(config: SweepConfig, start: int, stop: int, tally: _Tally) -> None:
    points = _points(config)
    diamonds = {n: diamond_table(config.bound, n) for n in MODAL_INDICES}
    for k in _swept_points(config)[start:stop]:
        p = points[k]
        for n in MODAL_INDICES:
            dp = diamonds[n][k]
            tally.expect(leq(p, nabla(n, p)), lambda: f"nabla-inflationary n={n} p={p}")
            tally.expect(nabla(n, nabla(n, p)) == nabla(n, p), lambda: f"nabla-idempotent n={n} p={p}")
            tally.expect(leq(dp, nabla(n, p)), lambda: f"diamond-below-nabla n={n} p={p}")
            tally.expect(leq(diamond(n, dp), dp), lambda: f"diamond-transitive n={n} p={p}")
            for m in range(n):
                tally.expect(leq(dp, diamonds[m][k]), lambda: f"diamond-index m={m} n={n} p={p}")
        for j in _partners(config, k):
            q = points[j]
            meet = glb(p, q)
            below = leq(p, q)
            for n in MODAL_INDICES:
                dp, dq = diamonds[n][k], diamonds[n][j]
                if below:
                    tally.expect(leq(dp, dq), lambda: f"diamond-monotone n={n} p={p} q={q}")
                    tally.expect(leq(nabla(n, p), nabla(n, q)), lambda: f"nabla-monotone n={n} p={p} q={q}")
                tally.expect(
                    leq(diamond(n, meet), glb(dp, dq)),
                    lambda: f"subdistribution n={n} p={p} q={q}",
                )
# ---------------------------------------------------------------------------
# sigma suite
# ---------------------------------------------------------------------------

def _sigma_oracle(config: SweepConfig, start: int, stop: int, tally: _Tally) -> None:
    bound = config.bound
    for seq in enumerate_sequences(bound)[start:stop]:
        for n in MODAL_INDICES:
            result = sigma(n, seq)
            tally.expect(
                is_suitable(result) and not result.is_improper and len(result.prefix) <= n + 1,
                lambda: f"shape n={n} F={seq} sigma={result}",
            )
            for i in range(n + 1):
                violation = sigma_bound_violation(
                    seq.coordinate(i), result.coordinate(i + 1), result.coordinate(i), bound
                )
                tally.expect(violation is None, lambda: f"upper-bound n={n} F={seq} i={i} {violation}")
            try:
                expected = brute_sup_sigma(n, seq, bound)
                attained: Dict[int, Any] = {i: expected.coordinate(i) for i in range(n + 1)}
            except SupNotAttained as exc:
                attained = exc.partial
                tally.skip()
            for i, value in sorted(attained.items(), reverse=True):
                tally.expect(result.coordinate(i) == value, lambda: f"n={n} F={seq} i={i} sigma={result}")


def _diamond_projection(config: SweepConfig, start: int, stop: int, tally: _Tally) -> None:
    points = _points(config)
    for k in _swept_points(config)[start:stop]:
        q = points[k]
        for n in MODAL_INDICES:
            computed = sigma(n, principal_filter_sequence(q))
            tally.expect(
                computed == brute_diamond_sequence(n, q, config.bound),
                lambda: f"n={n} q={q} sigma={computed}",
            )


def _relations(config: SweepConfig, start: int, stop: int, tally: _Tally) -> None:
    members: Dict[SuitableSequence, List[IgnatievPoint]] = {}
    for k in range(start, stop):
        f, g, generator = _relation_pair(config, k)
        if g not in members:
            found = members_of(g, config.bound)
            picked = _sample(len(found), MEMBER_SAMPLES, f"members:{config.random_seed}:{g}")
            members[g] = [found[j] for j in picked]
        for n in MODAL_INDICES:
            related_r = rel_R(n, f, g)
            related_s = rel_S(n, f, g)
            if generator is not None:
                tally.expect(
                    related_r == member(f, diamond(n, generator)),
                    lambda: f"R n={n} F={f} G={g}",
                )
                tally.expect(
                    related_s == member(f, nabla(n, generator)),
                    lambda: f"S n={n} F={f} G={g}",
                )
            if related_r:
                tally.expect(
                    all(member(f, diamond(n, p)) for p in members[g]),
                    lambda: f"R-members n={n} F={f} G={g}",
                )
            if related_s:
                tally.expect(
                    all(member(f, nabla(n, p)) for p in members[g]),
                    lambda: f"S-members n={n} F={f} G={g}",
                )


# ---------------------------------------------------------------------------
# filters suite
# ---------------------------------------------------------------------------

def _principal_closure(config: SweepConfig, start: int, stop: int, tally: _Tally) -> None:
    points = _points(config)
    for k in _swept_points(config)[start:stop]:
        seq = principal_filter_sequence(points[k])
        report = check_filter_closure(seq, config.bound)
        tally.expect(report.passed, lambda: f"{report.condition} {report.counterexample} F={seq}")


def _sequence_closure(config: SweepConfig, start: int, stop: int, tally: _Tally) -> None:
    for seq in _sampled_sequences(config)[start:stop]:
        report = check_filter_closure(seq, config.bound)
        tally.expect(report.passed, lambda: f"{report.condition} {report.counterexample} F={seq}")


def _point_closure(config: SweepConfig, start: int, stop: int, tally: _Tally) -> None:
    for seq in _sampled_sequences(config)[start:stop]:
        report = check_point_closure(seq, config.bound, limit=CLOSURE_MEMBER_LIMIT)
        tally.expect(report.passed, lambda: f"{report.condition} {report.counterexample} F={seq}")


def _tower_membership(config: SweepConfig, start: int, stop: int, tally: _Tally) -> None:
    ordinals = oracle_index(config.bound).ordinals
    towers = _towers(config)
    for seq in enumerate_sequences(config.bound)[start:stop]:
        for i in range(config.bound.max_support):
            for k in range(1, bisect_left(ordinals, seq.coordinate(i))):
                tally.expect(member(seq, towers[i][k]), lambda: f"F={seq} i={i} gamma={ordinals[k]}")


def _bijection(config: SweepConfig, start: int, stop: int, tally: _Tally) -> None:
    points = _points(config)
    for k in _swept_points(config)[start:stop]:
        p = points[k]
        seq = principal_filter_sequence(p)
        for j in _partners(config, k):
            q = points[j]
            tally.expect(member(seq, q) == leq(p, q), lambda: f"p={p} q={q}")


def _generated_filter(config: SweepConfig, start: int, stop: int, tally: _Tally) -> None:
    index = oracle_index(config.bound)
    for k in _swept_points(config)[start:stop]:
        p = index.points[k]
        for j in _sample(len(index.points), GENERATED_PARTNERS, f"generated:{config.random_seed}:{k}"):
            q = index.points[j]
            meet = glb(p, q)
            if not index.contains_point(meet):
                tally.skip()
                continue
            expected = brute_filter_sequence(
                members_of(principal_filter_sequence(meet), config.bound), meet.support + 1
            )
            tally.expect(
                generated_filter_sequence([p, q]) == expected,
                lambda: f"p={p} q={q} expected={expected}",
            )


# ---------------------------------------------------------------------------
# semantics suite
# ---------------------------------------------------------------------------

def _semantic_agreement(config: SweepConfig, start: int, stop: int, tally: _Tally) -> None:
    sequences = _sampled_sequences(config)
    for formula in _sampled_formulas(config)[start:stop]:
        for f in sequences:
            tally.expect(
                forces(f, formula) == forces_relational(f, formula),
                lambda: f"relational F={f} A={formula}",
            )
            for n in MODAL_INDICES:
                w = witness_R(n, f, formula)
                tally.expect(
                    forces(f, Dia(n, formula)) == (w is not None and rel_R(n, f, w) and forces(w, formula)),
                    lambda: f"R n={n} F={f} A={formula}",
                )
                s = witness_S(n, f, formula)
                tally.expect(
                    forces(f, Nabla(n, formula)) == (s is not None and rel_S(n, f, s) and forces(s, formula)),
                    lambda: f"S n={n} F={f} A={formula}",
                )


def _completeness(config: SweepConfig, start: int, stop: int, tally: _Tally) -> None:
    formulas = _sampled_formulas(config)
    sequences = _sampled_sequences(config)
    for k in range(start, stop):
        a = formulas[k]
        b = formulas[(k * 7 + 3) % len(formulas)]
        for left, right in ((a, b), (And(a, b), a), (Dia(1, a), Dia(0, a)), (a, Nabla(0, a))):
            frames = list(sequences) + [principal_filter_sequence(evaluate(left))]
            refuted = any(forces(f, left) and not forces(f, right) for f in frames)
            tally.expect(entails(left, right) != refuted, lambda: f"A={left} B={right}")


def _swept_count(config: SweepConfig) -> int:
    return len(_swept_points(config))


def _sequence_count(config: SweepConfig) -> int:
    return len(enumerate_sequences(config.bound))


CHECKS: List[Check] = [
    Check("glb-oracle", SuiteName.GLB, _swept_count, _glb_oracle),
    Check("order-coherence", SuiteName.GLB, _swept_count, _order_coherence),
    Check("modal-laws", SuiteName.GLB, _swept_count, _modal_laws),
    Check("sigma-oracle", SuiteName.SIGMA, _sequence_count, _sigma_oracle),
    Check("diamond-projection", SuiteName.SIGMA, _swept_count, _diamond_projection),
    Check("relations", SuiteName.SIGMA, lambda c: c.pair_samples, _relations),
    Check("filter-closure", SuiteName.FILTERS, _swept_count, _principal_closure),
    Check("sequence-closure", SuiteName.FILTERS, lambda c: len(_sampled_sequences(c)), _sequence_closure),
    Check("point-closure", SuiteName.FILTERS, lambda c: len(_sampled_sequences(c)), _point_closure),
    Check("tower-membership", SuiteName.FILTERS, _sequence_count, _tower_membership),
    Check("bijection", SuiteName.FILTERS, _swept_count, _bijection),
    Check("generated-filter", SuiteName.FILTERS, _swept_count, _generated_filter),
    Check("semantic-agreement", SuiteName.SEMANTICS, lambda c: len(_sampled_formulas(c)), _semantic_agreement),
    Check("completeness", SuiteName.SEMANTICS, lambda c: len(_sampled_formulas(c)), _completeness),
]
CHECKS_BY_NAME: Dict[str, Check] = {check.name: check for check in CHECKS}


def checks_for(suite: SuiteName) -> List[Check]:
    if suite is SuiteName.ALL:
        return list(CHECKS)
    return [check for check in CHECKS if check.suite is suite]


def run_check_chunk(check_name: str, config_data: Dict[str, Any], start: int, stop: int) -> Dict[str, Any]:
    """Standalone function to run one slice of a check (for multiprocessing).

    Args:
        check_name: Name of a registered check
        config_data: ``SweepConfig.model_dump()`` output
        start: First item of the slice
        stop: End of the slice (exclusive)

    Returns:
        ``CheckOutcome.model_dump()`` for the slice
    """
    config = SweepConfig.model_validate(config_data)
    check = CHECKS_BY_NAME[check_name]
    tally = _Tally()
    began = time.perf_counter()
    counterexample = None
    try:
        check.body(config, start, stop, tally)
    except _Counterexample as exc:
        counterexample = str(exc)
    except IgnatievError as exc:
        counterexample = f"error {type(exc).__name__}: {exc}"
    outcome = CheckOutcome(
        check=check_name,
        passed=counterexample is None,
        cases=tally.cases,
        skipped=tally.skipped,
        counterexample=counterexample,
        elapsed=time.perf_counter() - began,
    )
    return outcome.model_dump()


def run_suite(
    suite: SuiteName,
    config: SweepConfig,
    workers: int = 1,
    chunk_size: int = 64,
    progress: bool = False,
) -> List[CheckOutcome]:
    """
    Run every check of a suite and merge the chunk outcomes per check.

    Args:
        suite: Suite to run (``all`` runs every check)
        config: Bound, seed and sample sizes
        workers: Process workers; 1 runs in-process
        chunk_size: Items per job
        progress: Show a tqdm bar on stderr

    Returns:
        One merged outcome per check, in registry order
    """
    checks = checks_for(suite)
    config_data = config.model_dump()
    jobs: List[Tuple[str, int, int]] = []
    for check in checks:
        size = check.size(config)
        jobs.extend((check.name, start, stop) for start, stop in chunk_ranges(size, chunk_size))
    logger.info(
        "Running %d checks in %d jobs (%s, workers=%d)",
        len(checks), len(jobs), config.bound.describe(), workers,
    )

    began = time.perf_counter()
    results: Dict[Tuple[str, int], CheckOutcome] = {}
    with tqdm(total=len(jobs), desc="Verifying", file=sys.stderr, disable=not progress) as pbar:
        if workers <= 1:
            for name, start, stop in jobs:
                results[(name, start)] = CheckOutcome(**run_check_chunk(name, config_data, start, stop))
                pbar.update(1)
        else:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                future_to_job = {
                    executor.submit(run_check_chunk, name, config_data, start, stop): (name, start)
                    for name, start, stop in jobs
                }
                for future in as_completed(future_to_job):
                    name, start = future_to_job[future]
                    results[(name, start)] = CheckOutcome(**future.result())
                    pbar.update(1)

    outcomes = [
        CheckOutcome.merge(
            check.name,
            [results[key] for key in sorted(k for k in results if k[0] == check.name)],
        )
        for check in checks
    ]
    logger.info("Suite %s finished in %s", suite.value, format_duration(time.perf_counter() - began))
    return outcomes


def all_passed(outcomes: Sequence[CheckOutcome]) -> bool:
    return all(outcome.passed for outcome in outcomes)
