"""Tests for the enumeration and the brute-force oracles."""

import random

import pytest

from ignatiev_frame.src import oracle
from ignatiev_frame.src.errors import InvalidCaseError, NoMaximumError, SupNotAttained
from ignatiev_frame.src.frame import (
    ALL_ONES,
    IMPROPER,
    SuitableSequence,
    Tail,
    is_suitable,
    member,
    parse_sequence,
    sigma,
)
from ignatiev_frame.src.logic import depth
from ignatiev_frame.src.models import EnumerationBound
from ignatiev_frame.src.oracle import (
    brute_diamond_sequence,
    brute_filter_sequence,
    brute_glb,
    brute_sup_sigma,
    check_filter_closure,
    check_point_closure,
    contains,
    diamond_table,
    enumerate_ordinals,
    enumerate_points,
    enumerate_sequences,
    members_of,
    oracle_index,
    ordinal_height,
    ordinal_size,
    random_formula,
    sample_formulas,
    sample_sequences,
)
from ignatiev_frame.src.ordinal import EPSILON_ZERO, ZERO, format_ordinal, parse_ordinal
from ignatiev_frame.src.point import TOP, diamond, glb, leq, parse_point

o = parse_ordinal
pt = parse_point
E0 = EPSILON_ZERO


class TestEnumeration:
    def test_tiny_ordinals(self, tiny_bound):
        assert [format_ordinal(a) for a in enumerate_ordinals(tiny_bound)] == ["0", "1", "2", "w", "w*2"]

    @pytest.mark.parametrize(
        "height, terms, coeff, count",
        [(1, 1, 2, 5), (1, 2, 2, 9), (2, 2, 1, 5), (2, 3, 1, 8)],
    )
    def test_ordinal_counts(self, height, terms, coeff, count):
        bound = EnumerationBound(max_height=height, max_terms=terms, max_coeff=coeff, max_support=1)
        ordinals = enumerate_ordinals(bound)
        assert len(ordinals) == count
        assert ordinals == sorted(ordinals)
        assert all(ordinal_height(a) <= height and ordinal_size(a) <= terms for a in ordinals)

    def test_nested_exponents(self):
        bound = EnumerationBound(max_height=2, max_terms=3, max_coeff=1, max_support=1)
        texts = {format_ordinal(a) for a in enumerate_ordinals(bound)}
        assert {"w^(w+1)", "w^w+w", "w^w+1"} <= texts

    def test_size_and_height(self):
        assert ordinal_size(o("w^w+1")) == 3
        assert ordinal_size(o("w*3+2")) == 2
        assert ordinal_height(ZERO) == 0
        assert ordinal_height(o("w*2")) == 1
        assert ordinal_height(o("w^w+1")) == 2
        assert ordinal_height(o("w^(w^w)")) == 3

    def test_tiny_points(self, tiny_bound):
        expected = [TOP, pt("1"), pt("2"), pt("w"), pt("w,1"), pt("w*2"), pt("w*2,1")]
        assert enumerate_points(tiny_bound) == expected

    @pytest.mark.parametrize("support, count", [(1, 5), (2, 7)])
    def test_point_counts(self, support, count):
        bound = EnumerationBound(max_height=1, max_terms=1, max_coeff=2, max_support=support)
        assert len(enumerate_points(bound)) == count

    def test_tiny_sequences(self, tiny_bound):
        two, w, w2 = o("2"), o("w"), o("w*2")
        expected = [
            SuitableSequence((), Tail.ONE),
            SuitableSequence((two,), Tail.ONE),
            SuitableSequence((w,), Tail.ONE),
            SuitableSequence((w2,), Tail.ONE),
            SuitableSequence((E0,), Tail.ONE),
            SuitableSequence((E0, two), Tail.ONE),
            SuitableSequence((E0, w), Tail.ONE),
            SuitableSequence((E0, w2), Tail.ONE),
            SuitableSequence((E0, E0), Tail.ONE),
            IMPROPER,
        ]
        assert enumerate_sequences(tiny_bound) == expected

    def test_enumerated_sequences_are_suitable(self, nested_bound):
        sequences = enumerate_sequences(nested_bound)
        assert sequences[0] == ALL_ONES and sequences[-1] == IMPROPER
        assert all(is_suitable(s) for s in sequences)
        assert len(set(sequences)) == len(sequences)


class TestSampling:
    def test_sequences_are_deterministic(self, small_bound):
        first = sample_sequences(small_bound, 6, seed=3)
        assert first == sample_sequences(small_bound, 6, seed=3)
        assert first[:2] == [ALL_ONES, IMPROPER]
        assert len(first) == 6

    def test_sample_larger_than_population(self, tiny_bound):
        assert len(sample_sequences(tiny_bound, 100, seed=1)) == len(enumerate_sequences(tiny_bound))

    def test_formulas(self):
        formulas = sample_formulas(30, seed=11, depth=3, max_index=1)
        assert formulas == sample_formulas(30, seed=11, depth=3, max_index=1)
        assert all(depth(f) <= 3 for f in formulas)

    def test_random_formula_depth_zero(self):
        assert depth(random_formula(random.Random(0), 0)) == 0


class TestGlbOracle:
    def test_example(self, small_bound):
        assert brute_glb(pt("w,1"), pt("w+1"), small_bound) == pt("w*2,1")

    def test_no_lower_bound_inside(self):
        bound = EnumerationBound(max_height=1, max_terms=1, max_coeff=2, max_support=1)
        with pytest.raises(NoMaximumError):
            brute_glb(pt("w*2"), pt("w*3"), bound)

    def test_agrees_with_closed_form(self, small_bound):
        index = oracle_index(small_bound)
        for p in index.points:
            for q in index.points:
                meet = glb(p, q)
                if index.contains_point(meet):
                    assert brute_glb(p, q, small_bound) == meet

    def test_index_is_cached(self, tiny_bound):
        assert oracle_index(tiny_bound) is oracle_index(tiny_bound.model_copy())
        assert oracle_index(tiny_bound).ordinals_below(o("w")) == [ZERO, o("1"), o("2")]
        assert len(oracle_index(tiny_bound).ordinals_below(E0)) == 5


class TestSupOracle:
    @pytest.mark.parametrize("n, expected", [(0, "2;1"), (1, "w+1,2;1")])
    def test_all_ones(self, tiny_bound, n, expected):
        assert brute_sup_sigma(n, ALL_ONES, tiny_bound) == parse_sequence(expected)

    def test_improper_is_not_attained(self, tiny_bound):
        with pytest.raises(SupNotAttained) as exc_info:
            brute_sup_sigma(0, IMPROPER, tiny_bound)
        assert exc_info.value.index == 0
        assert exc_info.value.partial == {}

    def test_limit_coordinate_stops_with_partial_result(self, tiny_bound):
        with pytest.raises(SupNotAttained) as exc_info:
            brute_sup_sigma(1, parse_sequence("w;1"), tiny_bound)
        assert exc_info.value.index == 0
        assert exc_info.value.partial == {1: o("2")}

    def test_agrees_with_sigma_where_attained(self, small_bound):
        for seq in enumerate_sequences(small_bound):
            for n in range(2):
                try:
                    expected = brute_sup_sigma(n, seq, small_bound)
                except SupNotAttained:
                    continue
                assert sigma(n, seq) == expected

    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_diamond_sequence_of_top(self, tiny_bound, n):
        assert brute_diamond_sequence(n, TOP, tiny_bound) == sigma(n, ALL_ONES)


class TestFilterClosure:
    @pytest.mark.parametrize("text", ["w+1,2;1", ";1", "e0,w;1", ";e0"])
    def test_suitable_sequences_pass(self, small_bound, text):
        report = check_filter_closure(parse_sequence(text), small_bound)
        assert report.passed
        assert str(report) == "PASS"
        assert report.checked > 0

    def test_projection_failure(self, small_bound):
        # (w+1) and (w,1) are members but their meet (w*2,1) is not.
        report = check_filter_closure(parse_sequence("w*2,2;1", validate=False), small_bound)
        assert str(report) == "FAIL projection i=0 alpha=w+1 beta=1"

    def test_downward_failure(self, tiny_bound, monkeypatch):
        monkeypatch.setattr(oracle, "members_of", lambda seq, bound: [TOP, pt("2")])
        report = check_filter_closure(parse_sequence("w+1,2;1"), tiny_bound)
        assert str(report) == "FAIL downward i=0 alpha=2 beta=1"

    def test_projections_come_from_members(self, tiny_bound, monkeypatch):
        monkeypatch.setattr(oracle, "members_of", lambda seq, bound: [])
        report = check_filter_closure(parse_sequence("w+1,2;1"), tiny_bound)
        assert str(report) == "FAIL nonempty i=0"

    def test_empty_projection(self, tiny_bound):
        report = check_filter_closure(parse_sequence("0;1", validate=False), tiny_bound)
        assert not report.passed
        assert report.condition == "nonempty"
        assert report.counterexample == "i=0"

    def test_point_closure(self, small_bound):
        for text in ["w+1,2;1", "w;1", ";e0"]:
            assert check_point_closure(parse_sequence(text), small_bound).passed
        broken = check_point_closure(parse_sequence("w*2,2;1", validate=False), small_bound)
        assert not broken.passed
        assert broken.condition == "meet"

    def test_point_closure_limit(self, small_bound):
        full = check_point_closure(IMPROPER, small_bound)
        limited = check_point_closure(IMPROPER, small_bound, limit=2)
        assert limited.passed and limited.checked < full.checked

    def test_upward_failure(self, tiny_bound, monkeypatch):
        monkeypatch.setattr(oracle, "members_of", lambda seq, bound: [pt("w")])
        report = check_point_closure(parse_sequence("w+1,2;1"), tiny_bound)
        assert report.condition == "upward"
        assert report.counterexample == "p=w r=0"


class TestFilterSequences:
    def test_members_of_principal(self, tiny_bound):
        members = members_of(parse_sequence("w+1,2;1"), tiny_bound)
        assert members == [TOP, pt("1"), pt("2"), pt("w"), pt("w,1")]
        assert all(leq(pt("w,1"), p) for p in members)

    def test_filter_sequence(self):
        seq = brute_filter_sequence([pt("w,1"), pt("2")], 3)
        assert seq == parse_sequence("w+1,2;1")

    def test_filter_sequence_needs_members(self):
        with pytest.raises(InvalidCaseError):
            brute_filter_sequence([], 2)

    def test_contains_reads_every_index(self):
        assert contains(parse_sequence("w+1,2;1"), pt("w,1"))
        assert not contains(parse_sequence("w+1,2;1"), pt("w+1"))
        assert not contains(parse_sequence("w*2;1"), pt("w,1"))
        assert contains(IMPROPER, pt("w^w,w,1"))

    def test_diamond_sequence_matches_generating_set(self, small_bound):
        points = enumerate_points(small_bound)
        for q in points:
            upset = [p for p in points if leq(q, p)]
            for n in range(3):
                expected = brute_filter_sequence((diamond(n, p) for p in upset), n + 1)
                assert brute_diamond_sequence(n, q, small_bound) == expected


class TestIndexMasks:
    def test_member_mask(self, small_bound):
        index = oracle_index(small_bound)
        for seq in enumerate_sequences(small_bound):
            expected = [p for p in index.points if member(seq, p)]
            assert index.points_in(index.member_mask(seq)) == expected

    def test_member_mask_past_the_support(self, tiny_bound):
        index = oracle_index(tiny_bound)
        assert index.member_mask(parse_sequence("w,2,0;1", validate=False)) == 0

    def test_up_mask(self, small_bound):
        index = oracle_index(small_bound)
        for p in index.points:
            assert index.points_in(index.up_mask(p)) == [r for r in index.points if leq(p, r)]

    def test_points_in_empty_mask(self, tiny_bound):
        assert oracle_index(tiny_bound).points_in(0) == []

    def test_diamond_table(self, tiny_bound):
        points = enumerate_points(tiny_bound)
        assert diamond_table(tiny_bound, 1) == tuple(diamond(1, p) for p in points)
