"""Data models for bounded verification."""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field


class SuiteName(str, Enum):
    """Verification suites exposed by ``verify --suite``."""
    GLB = "glb"
    SIGMA = "sigma"
    FILTERS = "filters"
    SEMANTICS = "semantics"
    ALL = "all"


class EnumerationBound(BaseModel):
    """Finite slice of ordinals and points used by the brute-force oracles.

    Exponents 0 and 1 are atomic. Height h allows non-atomic exponents of height
    h - 1; a term costs 1 plus the size of a non-atomic exponent, and ``max_terms``
    bounds the total size.
    """
    model_config = ConfigDict(frozen=True)

    max_height: int = Field(default=3, ge=1, description="Nesting depth of exponents")
    max_terms: int = Field(default=3, ge=1, description="Total size of an ordinal")
    max_coeff: int = Field(default=3, ge=1, description="Largest coefficient")
    max_support: int = Field(default=3, ge=1, description="Longest point or sequence prefix")

    def describe(self) -> str:
        return (
            f"height={self.max_height} terms={self.max_terms} "
            f"coeff={self.max_coeff} support={self.max_support}"
        )


class SweepConfig(BaseModel):
    """Everything a worker process needs to rebuild a sweep deterministically."""
    model_config = ConfigDict(frozen=True)

    bound: EnumerationBound = Field(default_factory=EnumerationBound)
    random_seed: int = 20180
    formula_samples: int = Field(default=240, ge=1)
    sequence_samples: int = Field(default=60, ge=1)
    pair_samples: int = Field(default=600, ge=1)
    point_samples: int = Field(default=200, ge=1)
    partner_samples: int = Field(default=12, ge=1)


class ClosureReport(BaseModel):
    """Outcome of a filter-closure check."""
    passed: bool
    condition: Optional[str] = None
    counterexample: Optional[str] = None
    checked: int = 0

    def __str__(self) -> str:
        if self.passed:
            return "PASS"
        return f"FAIL {self.condition} {self.counterexample}"


class CheckOutcome(BaseModel):
    """Result of one property check over a whole sweep (or one chunk of it)."""
    check: str
    passed: bool = True
    cases: int = 0
    skipped: int = 0
    counterexample: Optional[str] = None
    elapsed: float = 0.0

    def report_line(self) -> str:
        if self.passed:
            return f"PASS {self.check} {self.cases}"
        return f"FAIL {self.check} {self.counterexample}"

    @classmethod
    def merge(cls, check: str, parts: List["CheckOutcome"]) -> "CheckOutcome":
        """Combine chunk outcomes; the first failing chunk (in input order) wins."""
        failure = next((p for p in parts if not p.passed), None)
        return cls(
            check=check,
            passed=failure is None,
            cases=sum(p.cases for p in parts),
            skipped=sum(p.skipped for p in parts),
            counterexample=failure.counterexample if failure else None,
            elapsed=sum(p.elapsed for p in parts),
        )
