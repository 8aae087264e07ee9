"""Command-line interface for the Ignatiev algebra and frame.

Decision commands print ``yes`` or ``no`` and exit 0 or 1; malformed input exits 2
with a message on stderr. Stdout carries nothing but the command's answer.
"""

import re
import sys
from typing import Optional, Tuple

import click
from rich.console import Console
from rich.table import Table

from .config import settings
from .errors import IgnatievError
from .frame import (
    check_suitable,
    forces,
    format_sequence,
    parse_sequence,
    rel_R,
    rel_S,
    sigma,
    witness_R,
    witness_S,
)
from .logic import entails, evaluate, parse_formula
from .models import EnumerationBound, SuiteName, SweepConfig
from .point import format_point, glb, leq, parse_point
from .utils import configure_logging, format_duration, get_logger
from .verify import all_passed, run_suite

logger = get_logger(__name__)
error_console = Console(stderr=True, highlight=False)

_DEFAULT_BOUND = EnumerationBound()


class FormulaType(click.ParamType):
    name = "formula"

    def convert(self, value, param, ctx):
        try:
            return parse_formula(value)
        except IgnatievError as e:
            self.fail(str(e), param, ctx)


class PointType(click.ParamType):
    name = "point"

    def convert(self, value, param, ctx):
        try:
            return parse_point(value)
        except IgnatievError as e:
            self.fail(str(e), param, ctx)


class SequenceType(click.ParamType):
    """Suitable sequence text; with ``validate=False`` unsuitable input is accepted."""

    name = "sequence"

    def __init__(self, validate: bool = True):
        self.validate = validate

    def convert(self, value, param, ctx):
        try:
            return parse_sequence(value, validate=self.validate)
        except IgnatievError as e:
            self.fail(str(e), param, ctx)


class RelationType(click.ParamType):
    """``R<n>`` or ``S<n>``."""

    name = "relation"
    _pattern = re.compile(r"^([RS])([0-9]+)$")

    def convert(self, value, param, ctx) -> Tuple[str, int]:
        match = self._pattern.match(value.strip())
        if not match:
            self.fail(f"expected R<n> or S<n>, got {value!r}", param, ctx)
        return match.group(1), int(match.group(2))


FORMULA = FormulaType()
POINT = PointType()
SEQUENCE = SequenceType()
RELATION = RelationType()


def _decide(ctx: click.Context, answer: bool) -> None:
    click.echo("yes" if answer else "no")
    ctx.exit(0 if answer else 1)


@click.group()
@click.option("--verbose", is_flag=True, help="Enable debug logging on stderr")
def cli(verbose):
    """Ignatiev algebra, its frame of filters and the entailment decision procedure."""
    configure_logging("DEBUG" if verbose else None)


@cli.command(name="eval")
@click.argument("formula", type=FORMULA)
def eval_command(formula):
    """Print the point a formula evaluates to."""
    click.echo(format_point(evaluate(formula)))


@cli.command(name="entails")
@click.argument("a", type=FORMULA)
@click.argument("b", type=FORMULA)
@click.pass_context
def entails_command(ctx, a, b):
    """Decide A |- B."""
    _decide(ctx, entails(a, b))


@cli.command(name="glb")
@click.argument("p", type=POINT)
@click.argument("q", type=POINT)
def glb_command(p, q):
    """Print the greatest lower bound of two points."""
    click.echo(format_point(glb(p, q)))


@cli.command(name="leq")
@click.argument("p", type=POINT)
@click.argument("q", type=POINT)
@click.pass_context
def leq_command(ctx, p, q):
    """Decide P <= Q in the algebra order."""
    _decide(ctx, leq(p, q))


@cli.command(name="sigma")
@click.argument("n", type=click.IntRange(min=0))
@click.argument("seq", type=SEQUENCE)
def sigma_command(n, seq):
    """Print sigma_n of a suitable sequence."""
    click.echo(format_sequence(sigma(n, seq)))


@cli.command(name="suitable")
@click.argument("seq", type=SequenceType(validate=False))
@click.pass_context
def suitable_command(ctx, seq):
    """Check a sequence; on failure print the first violating index."""
    index = check_suitable(seq)
    if index is None:
        click.echo("yes")
        ctx.exit(0)
    click.echo(f"no {index}")
    ctx.exit(1)


@cli.command(name="rel")
@click.argument("relation", type=RELATION)
@click.argument("f", type=SEQUENCE)
@click.argument("g", type=SEQUENCE)
@click.pass_context
def rel_command(ctx, relation, f, g):
    """Decide F R_n G or F S_n G."""
    kind, n = relation
    _decide(ctx, (rel_R if kind == "R" else rel_S)(n, f, g))


@cli.command(name="forces")
@click.argument("f", type=SEQUENCE)
@click.argument("formula", type=FORMULA)
@click.pass_context
def forces_command(ctx, f, formula):
    """Decide whether the filter F forces a formula."""
    _decide(ctx, forces(f, formula))


@cli.command(name="witness")
@click.argument("relation", type=RELATION)
@click.argument("f", type=SEQUENCE)
@click.argument("formula", type=FORMULA)
@click.pass_context
def witness_command(ctx, relation, f, formula):
    """Print a successor of F along R_n or S_n that forces the formula, or ``none``."""
    kind, n = relation
    found = (witness_R if kind == "R" else witness_S)(n, f, formula)
    if found is None:
        click.echo("none")
        ctx.exit(1)
    click.echo(format_sequence(found))


@cli.command(name="verify")
@click.option("--height", type=click.IntRange(min=1), default=_DEFAULT_BOUND.max_height, show_default=True,
              help="Exponent nesting depth of enumerated ordinals")
@click.option("--terms", type=click.IntRange(min=1), default=_DEFAULT_BOUND.max_terms, show_default=True,
              help="Total size of enumerated ordinals")
@click.option("--coeff", type=click.IntRange(min=1), default=_DEFAULT_BOUND.max_coeff, show_default=True,
              help="Largest coefficient")
@click.option("--support", type=click.IntRange(min=1), default=_DEFAULT_BOUND.max_support, show_default=True,
              help="Longest point or sequence prefix")
@click.option("--suite", type=click.Choice([s.value for s in SuiteName]), default=SuiteName.ALL.value,
              show_default=True, help="Checks to run")
@click.option("--workers", type=click.IntRange(min=1, max=64), default=None,
              help="Worker processes (default from IGNATIEV_WORKERS)")
@click.option("--progress", is_flag=True, help="Show a progress bar and timings on stderr")
@click.pass_context
def verify_command(ctx, height, terms, coeff, support, suite, workers: Optional[int], progress):
    """Cross-check the closed forms against brute-force oracles at a bound."""
    config = SweepConfig(
        bound=EnumerationBound(max_height=height, max_terms=terms, max_coeff=coeff, max_support=support),
        random_seed=settings.random_seed,
        formula_samples=settings.formula_samples,
        sequence_samples=settings.sequence_samples,
        pair_samples=settings.pair_samples,
        point_samples=settings.point_samples,
        partner_samples=settings.partner_samples,
    )
    outcomes = run_suite(
        SuiteName(suite),
        config,
        workers=workers or settings.workers,
        chunk_size=settings.chunk_size,
        progress=progress,
    )
    for outcome in outcomes:
        click.echo(outcome.report_line())

    if progress:
        table = Table(title=f"Verification ({config.bound.describe()})")
        table.add_column("Check", style="cyan")
        table.add_column("Cases", justify="right")
        table.add_column("Skipped", justify="right")
        table.add_column("Time", justify="right", style="green")
        for outcome in outcomes:
            table.add_row(outcome.check, str(outcome.cases), str(outcome.skipped), format_duration(outcome.elapsed))
        error_console.print(table)

    ctx.exit(0 if all_passed(outcomes) else 1)


def main() -> None:
    """Console-script entry point."""
    try:
        cli(prog_name="ignatiev")
    except IgnatievError as e:
        error_console.print(f"Error: {e}", markup=False)
        sys.exit(2)
    except Exception:
        logger.exception("Fatal error")
        sys.exit(2)


if __name__ == "__main__":
    main()
