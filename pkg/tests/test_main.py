import json
import os
import unittest

from click.testing import CliRunner

from acyclab.__main__ import main

EXAMPLE_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                           "..", "example")


def _example(*names):
    return os.path.join(EXAMPLE_DIR, *names)


class TestClassify(unittest.TestCase):

    def test_presets(self):
        runner = CliRunner()
        result = runner.invoke(main, ["classify", "triangle"])
        assert result.exit_code == 0
        assert "alpha: cyclic" in result.output
        assert "conformal: no" in result.output

        result = runner.invoke(main, ["classify", "hstar"])
        assert result.exit_code == 0
        assert "beta: acyclic" in result.output
        assert "gamma: cyclic" in result.output
        assert "weak gamma-cycle: ({A,B}, B, {A,B,C}, C, {A,C}, A, {A,B})" \
            in result.output

        result = runner.invoke(main, ["classify", "bfmy-acyclic"])
        assert "alpha: acyclic" in result.output
        assert "weak beta-cycle: ({A,B,C}, C, {C,D,E}, E, {A,E,F}, A, {A,B,C})" \
            in result.output

        result = runner.invoke(main, ["classify", "p4"])
        assert "gamma: acyclic" in result.output
        assert "running intersection: X1 X2 X3 X4" in result.output

    def test_files(self):
        runner = CliRunner()
        result = runner.invoke(main, ["classify", _example("triangle", "schema.txt")])
        assert result.exit_code == 0
        assert "alpha: cyclic" in result.output

        result = runner.invoke(main, ["classify", "--format", "json",
                                      _example("hstar_json", "schema.json")])
        assert result.exit_code == 0
        obj = json.loads(result.output)
        assert obj["beta"] == "acyclic"
        assert obj["gamma"] == "cyclic"

    def test_input_error(self):
        runner = CliRunner()
        result = runner.invoke(main, ["classify", "no-such-schema"])
        assert result.exit_code == 3


class TestCheck(unittest.TestCase):

    def test_triangle(self):
        runner = CliRunner()
        args = ["check", _example("triangle", "schema.txt")] + \
            [_example("triangle", name) for name in ("r1.txt", "r2.txt", "r3.txt")]
        result = runner.invoke(main, args + ["--global"])
        assert result.exit_code == 0
        assert "X1 X2: inner consistent: yes; consistent: yes" in result.output
        assert "X1 X3: inner consistent: yes; consistent: yes" in result.output
        assert "global: inconsistent" in result.output

    def test_nsg_pair(self):
        runner = CliRunner()
        args = ["check", _example("nsg_pair", "schema.txt"),
                _example("nsg_pair", "r1.txt"), _example("nsg_pair", "r2.txt")]
        result = runner.invoke(main, args)
        assert result.exit_code == 0
        assert "X1 X2: inner consistent: yes; consistent: no" in result.output

    def test_global_witness(self):
        runner = CliRunner()
        args = ["check", "--global", _example("p3_chain", "schema.txt")] + \
            [_example("p3_chain", name) for name in ("r1.txt", "r2.txt", "r3.txt")]
        result = runner.invoke(main, args)
        assert result.exit_code == 0
        assert "global: consistent" in result.output
        assert "monoid bag" in result.output

    def test_monoid_mismatch(self):
        runner = CliRunner()
        args = ["check", _example("triangle", "schema.txt"),
                _example("triangle", "r1.txt"), _example("nsg_pair", "r1.txt")]
        result = runner.invoke(main, args)
        assert result.exit_code == 3


class TestErrorHandling(unittest.TestCase):

    def test_contract_violation(self):
        from acyclab import WitnessContractError
        from acyclab.__main__ import handle_errors

        @handle_errors
        def broken(verbose=False):
            raise WitnessContractError("not a witness")

        with self.assertRaises(SystemExit) as cm:
            broken()
        assert cm.exception.code == 3

    def test_budget(self):
        from acyclab import BudgetExceeded
        from acyclab.__main__ import handle_errors

        @handle_errors
        def undecided(verbose=False):
            raise BudgetExceeded("search", 1)

        with self.assertRaises(SystemExit) as cm:
            undecided()
        assert cm.exception.code == 2


class TestEval(unittest.TestCase):

    def test_triangle_standard_join(self):
        runner = CliRunner()
        args = ["eval", _example("triangle", "schema.txt")] + \
            [_example("triangle", name) for name in ("r1.txt", "r2.txt", "r3.txt")] + \
            ["--expr", "((X1 * X2) * X3)", "--witness", "standard-join"]
        result = runner.invoke(main, args)
        assert result.exit_code == 0
        assert "node (X1 * X2): consistent" in result.output
        assert "node ((X1 * X2) * X3): inconsistent" in result.output
        assert "monotone: no" in result.output
        assert result.output.rstrip().endswith("attrs A B C")

    def test_p3_generic(self):
        runner = CliRunner()
        args = ["eval", _example("p3_chain", "schema.txt")] + \
            [_example("p3_chain", name) for name in ("r1.txt", "r2.txt", "r3.txt")] + \
            ["--expr", "((X1 * X2) * X3)"]
        result = runner.invoke(main, args)
        assert result.exit_code == 0
        assert "monotone: yes" in result.output
        assert "marginals match: yes" in result.output

    def test_single_leaf(self):
        runner = CliRunner()
        args = ["eval", _example("p3_chain", "schema.txt"),
                _example("p3_chain", "r1.txt"), "--expr", "X1"]
        result = runner.invoke(main, args)
        assert result.exit_code == 0
        assert "row 0 0 2" in result.output

    def test_errors(self):
        runner = CliRunner()
        base = ["eval", _example("p3_chain", "schema.txt"),
                _example("p3_chain", "r1.txt"), _example("p3_chain", "r2.txt")]
        result = runner.invoke(main, base + ["--expr", "(X1 * X2)",
                                             "--witness", "standard-join"])
        assert result.exit_code == 3
        result = runner.invoke(main, base + ["--expr", "(X1 * X3)"])
        assert result.exit_code == 3
        result = runner.invoke(main, base + ["--expr", "(X1 * "])
        assert result.exit_code == 3


class TestVerify(unittest.TestCase):

    def test_structural(self):
        runner = CliRunner()
        result = runner.invoke(main, ["verify", "structural", "--caps", "3,3"])
        assert result.exit_code == 0
        assert "failures: 0" in result.output

    def test_tp(self):
        runner = CliRunner()
        result = runner.invoke(main, ["verify", "tp", "--monoid", "nsg(3,5)",
                                      "--trials", "2"])
        assert result.exit_code == 0
        assert "TP counterexample found" in result.output

    def test_gamma_monotone(self):
        runner = CliRunner()
        result = runner.invoke(main, ["verify", "gamma-monotone", "--schema", "p3",
                                      "--monoid", "bag", "--trials", "5",
                                      "--max-len", "3"])
        assert result.exit_code == 0
        assert "failures: 0" in result.output

    def test_json_out(self):
        runner = CliRunner()
        with runner.isolated_filesystem():
            args = ["verify", "local-global", "--schema", "triangle",
                    "--trials", "4", "--format", "json", "--out", "report.json"]
            result = runner.invoke(main, args)
            assert result.exit_code == 0
            with open("report.json") as f:
                obj = json.load(f)
        assert obj["tag"] == "local-global"
        assert obj["expect_failure"] is True
        assert len(obj["failures"]) >= 1

    def test_unknown_suite(self):
        runner = CliRunner()
        result = runner.invoke(main, ["verify", "everything"])
        assert result.exit_code == 3
        result = runner.invoke(main, ["verify", "laws", "--monoid", "field"])
        assert result.exit_code == 3


if __name__ == "__main__":
    unittest.main()
