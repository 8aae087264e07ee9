"""Ordinals, the Ignatiev algebra, its frame of filters and bounded verification."""

from .config import settings
from .errors import (
    ChainViolation,
    IgnatievError,
    InvalidCaseError,
    NoMaximumError,
    NotSuitableError,
    ParseError,
    SupNotAttained,
)
from .frame import (
    SuitableSequence,
    Tail,
    forces,
    make_sequence,
    member,
    parse_sequence,
    principal_filter_sequence,
    rel_R,
    rel_S,
    sigma,
    witness_R,
)
from .logic import entails, evaluate, parse_formula
from .models import CheckOutcome, ClosureReport, EnumerationBound, SweepConfig
from .ordinal import EPSILON_ZERO, Ordinal, parse_ordinal
from .point import IgnatievPoint, diamond, glb, leq, make_point, nabla, parse_point, tower_point

__all__ = [
    'settings',
    'IgnatievError',
    'ParseError',
    'InvalidCaseError',
    'ChainViolation',
    'NotSuitableError',
    'NoMaximumError',
    'SupNotAttained',
    'Ordinal',
    'EPSILON_ZERO',
    'parse_ordinal',
    'IgnatievPoint',
    'make_point',
    'parse_point',
    'leq',
    'glb',
    'diamond',
    'nabla',
    'tower_point',
    'SuitableSequence',
    'Tail',
    'make_sequence',
    'parse_sequence',
    'principal_filter_sequence',
    'member',
    'sigma',
    'rel_R',
    'rel_S',
    'forces',
    'witness_R',
    'evaluate',
    'entails',
    'parse_formula',
    'EnumerationBound',
    'SweepConfig',
    'ClosureReport',
    'CheckOutcome',
]

__version__ = "1.0.0"
