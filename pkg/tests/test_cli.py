"""Tests for the command-line interface."""

import logging
from logging.handlers import RotatingFileHandler

import pytest

from ignatiev_frame.src.cli import cli
from ignatiev_frame.src.utils import PACKAGE_LOGGER


def invoke(runner, *args):
    return runner.invoke(cli, list(args))


class TestEvaluation:
    @pytest.mark.parametrize("formula, expected", [("D1 T", "w,1"), ("T", "0"), ("N0 D2 T", "w^w")])
    def test_eval(self, runner, formula, expected):
        result = invoke(runner, "eval", formula)
        assert result.exit_code == 0
        assert result.stdout == expected + "\n"

    def test_entails_yes(self, runner):
        result = invoke(runner, "entails", "D1 T", "D0 T")
        assert result.exit_code == 0
        assert result.stdout == "yes\n"

    def test_entails_no(self, runner):
        result = invoke(runner, "entails", "D0 T", "D1 T")
        assert result.exit_code == 1
        assert result.stdout == "no\n"

    def test_formula_syntax_error(self, runner):
        result = invoke(runner, "eval", "D T")
        assert result.exit_code == 2


class TestPoints:
    def test_glb(self, runner):
        result = invoke(runner, "glb", "w,1", "w+1")
        assert result.exit_code == 0
        assert result.stdout == "w*2,1\n"

    def test_leq(self, runner):
        assert invoke(runner, "leq", "w,1", "1").stdout == "yes\n"
        result = invoke(runner, "leq", "1", "w,1")
        assert result.exit_code == 1
        assert result.stdout == "no\n"

    def test_chain_violation(self, runner):
        assert invoke(runner, "glb", "1,1", "0").exit_code == 2


class TestSequences:
    @pytest.mark.parametrize(
        "n, seq, expected", [("0", ";1", "2;1"), ("1", ";1", "w+1,2;1"), ("1", "e0;1", "e0,2;1")]
    )
    def test_sigma(self, runner, n, seq, expected):
        result = invoke(runner, "sigma", n, seq)
        assert result.exit_code == 0
        assert result.stdout == expected + "\n"

    def test_sigma_rejects_unsuitable_input(self, runner):
        assert invoke(runner, "sigma", "0", "w,2;1").exit_code == 2

    def test_sigma_rejects_negative_index(self, runner):
        assert invoke(runner, "sigma", "--", "-1", ";1").exit_code == 2

    def test_suitable(self, runner):
        result = invoke(runner, "suitable", "w+1,2;1")
        assert (result.exit_code, result.stdout) == (0, "yes\n")
        result = invoke(runner, "suitable", "w,2;1")
        assert (result.exit_code, result.stdout) == (1, "no 0\n")

    def test_suitable_syntax_error(self, runner):
        assert invoke(runner, "suitable", "w;7").exit_code == 2

    @pytest.mark.parametrize(
        "relation, f, g, code",
        [("S1", "w+1,2;1", "w;1", 0), ("R0", ";1", ";1", 1), ("R1", "w+1,2;1", ";1", 0)],
    )
    def test_rel(self, runner, relation, f, g, code):
        result = invoke(runner, "rel", relation, f, g)
        assert result.exit_code == code
        assert result.stdout == ("yes\n" if code == 0 else "no\n")

    @pytest.mark.parametrize("relation", ["Q1", "R", "S-1", "R1x"])
    def test_bad_relation(self, runner, relation):
        assert invoke(runner, "rel", relation, ";1", ";1").exit_code == 2


class TestForcing:
    def test_forces(self, runner):
        result = invoke(runner, "forces", "2;1", "D0 T")
        assert (result.exit_code, result.stdout) == (0, "yes\n")
        result = invoke(runner, "forces", ";1", "D0 T")
        assert (result.exit_code, result.stdout) == (1, "no\n")

    def test_witness(self, runner):
        result = invoke(runner, "witness", "R1", "w+1,2;1", "T")
        assert (result.exit_code, result.stdout) == (0, ";1\n")
        result = invoke(runner, "witness", "S1", "w+1,2;1", "D1 T")
        assert (result.exit_code, result.stdout) == (0, "w+1,2;1\n")

    def test_no_witness(self, runner):
        result = invoke(runner, "witness", "R0", ";1", "T")
        assert (result.exit_code, result.stdout) == (1, "none\n")


class TestVerify:
    def test_glb_suite(self, runner):
        result = invoke(
            runner, "verify", "--suite", "glb",
            "--height", "1", "--terms", "1", "--coeff", "2", "--support", "2",
        )
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert [line.split()[:2] for line in lines] == [
            ["PASS", "glb-oracle"],
            ["PASS", "order-coherence"],
            ["PASS", "modal-laws"],
        ]

    def test_progress_report(self, runner):
        result = invoke(
            runner, "verify", "--suite", "semantics", "--progress",
            "--height", "1", "--terms", "1", "--coeff", "2", "--support", "2",
        )
        assert result.exit_code == 0
        assert "PASS semantic-agreement" in result.stdout
        assert "PASS completeness" in result.stdout

    def test_bound_must_be_positive(self, runner):
        assert invoke(runner, "verify", "--height", "0").exit_code == 2

    def test_unknown_suite(self, runner):
        assert invoke(runner, "verify", "--suite", "nope").exit_code == 2


class TestLogging:
    def test_verbose_lowers_console_level(self, runner):
        result = invoke(runner, "--verbose", "glb", "w,1", "w+1")
        assert result.stdout == "w*2,1\n"
        consoles = [
            h for h in logging.getLogger(PACKAGE_LOGGER).handlers if not isinstance(h, RotatingFileHandler)
        ]
        assert consoles and all(h.level == logging.DEBUG for h in consoles)
