"""Shared fixtures: small enumeration bounds and sweep configurations."""

import pytest
from click.testing import CliRunner

from ignatiev_frame.src.models import EnumerationBound, SweepConfig


@pytest.fixture
def tiny_bound() -> EnumerationBound:
    """Ordinals [0, 1, 2, w, w*2]; points of support at most 2."""
    return EnumerationBound(max_height=1, max_terms=1, max_coeff=2, max_support=2)


@pytest.fixture
def small_bound() -> EnumerationBound:
    """Two-term ordinals below w^2, enough for the w+1 / w*2 examples."""
    return EnumerationBound(max_height=1, max_terms=2, max_coeff=2, max_support=2)


@pytest.fixture
def nested_bound() -> EnumerationBound:
    """One level of non-atomic exponents, e.g. w^w."""
    return EnumerationBound(max_height=2, max_terms=2, max_coeff=2, max_support=3)


@pytest.fixture
def tiny_config(tiny_bound) -> SweepConfig:
    return SweepConfig(
        bound=tiny_bound,
        random_seed=7,
        formula_samples=12,
        sequence_samples=8,
        pair_samples=24,
    )


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()
