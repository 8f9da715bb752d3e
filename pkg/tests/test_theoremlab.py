import unittest

from acyclab.theoremlab import *


class TestCounterexamples(unittest.TestCase):

    def test_triangle(self):
        from acyclab.krelation import pairwise_consistent, globally_consistent
        schema, relations = triangle_counterexample()
        assert len(relations) == 3
        assert relations[1].support == {("0", "1"): 1, ("1", "0"): 1}
        assert pairwise_consistent(relations)
        assert globally_consistent(relations) is None

    def test_four_cycle_bag(self):
        from acyclab import preset
        from acyclab.monoid import BagMonoid
        from acyclab.krelation import pairwise_consistent, globally_consistent
        _, relations = cycle_counterexample(preset.four_cycle(), BagMonoid(), 2)
        assert pairwise_consistent(relations)
        assert globally_consistent(relations) is None

    def test_cycle_shape_required(self):
        from acyclab import preset, SchemaError
        with self.assertRaises(SchemaError):
            cycle_counterexample(preset.path(3))
        with self.assertRaises(SchemaError):
            cycle_counterexample(preset.hstar())

    def test_nsg_p3(self):
        from acyclab.monoid import BagMonoid
        from acyclab.krelation import KRelation
        from acyclab.krelation import pairwise_consistent, globally_consistent
        schema, relations = nsg_p3_counterexample()
        assert schema.labels == ("X1", "X2", "X3")
        assert relations[1].support == {("x1", "y1"): 15, ("x2", "y2"): 15}
        assert pairwise_consistent(relations)
        assert globally_consistent(relations) is None

        bags = [KRelation(r.attrs, BagMonoid(), r.support) for r in relations]
        assert pairwise_consistent(bags)
        assert globally_consistent(bags) is not None

    def test_p3_requires_path(self):
        from acyclab import preset, SchemaError
        from acyclab.monoid import NumericalSemigroup, TransportInstance
        m = NumericalSemigroup([3, 5])
        with self.assertRaises(SchemaError):
            p3_counterexample(m, TransportInstance((5, 5, 5), (3, 3, 9)),
                              preset.triangle())

    def test_forced_collections(self):
        from acyclab import preset
        from acyclab.monoid import BagMonoid, NumericalSemigroup
        assert forced_collections(preset.path(3), BagMonoid()) == []
        forced = forced_collections(preset.path(3), NumericalSemigroup([3, 5]))
        assert len(forced) == 1
        assert forced[0][0].startswith("p3/")
        assert [name for name, _ in
                forced_collections(preset.triangle(), BagMonoid())] == ["cycle"]


class TestAdversary(unittest.TestCase):

    def test_hstar(self):
        from acyclab.monoid import BooleanMonoid, BagMonoid
        from acyclab.krelation import generic_witness, standard_join
        boolean, bag = BooleanMonoid(), BagMonoid()
        cases = [(generic_witness(boolean), boolean, 2),
                 (standard_join, boolean, 2),
                 (generic_witness(bag), bag, 1)]
        for w, m, subcase in cases:
            adv = hstar_adversarial(w, m)
            assert adv.subcase == subcase
            assert adv.verify(w)
            assert adv.s1 != adv.s2
            assert adv.edges == (1, 2, 0)

    def test_padded_pattern(self):
        from acyclab.hypergraph import Hypergraph
        from acyclab.monoid import BooleanMonoid
        from acyclab.krelation import generic_witness
        schema = Hypergraph([["A", "B", "C", "D"], ["A", "B", "E"], ["A", "C"]])
        m = BooleanMonoid()
        w = generic_witness(m)
        adv = gamma_adversarial(w, m, schema)
        assert set(adv.r1.names) == {"A", "B", "E"}
        assert set(adv.r3.names) == {"A", "B", "C", "D"}
        assert adv.verify(w)

        from acyclab import joinexpr
        result = joinexpr.is_monotone_wrt(adv.expression, w,
                                          adv.collection(schema))
        assert not result.monotone

    def test_collection_outside_expression(self):
        from acyclab.hypergraph import Hypergraph
        from acyclab.monoid import BooleanMonoid
        from acyclab.krelation import generic_witness, pairwise_consistent
        from acyclab import joinexpr
        schema = Hypergraph([["A", "B", "C"], ["A", "B"], ["A", "C"], ["C", "D"]])
        m = BooleanMonoid()
        w = generic_witness(m)
        adv = gamma_adversarial(w, m, schema)
        assert set(adv.edges) == {0, 1, 2}
        rels = adv.collection(schema)
        assert rels[3] is None
        assert pairwise_consistent([r for r in rels if r is not None])
        assert not joinexpr.is_monotone_wrt(adv.expression, w, rels).monotone

    def test_no_pattern(self):
        from acyclab import preset, SchemaError
        from acyclab.monoid import BooleanMonoid
        from acyclab.krelation import generic_witness
        m = BooleanMonoid()
        with self.assertRaises(SchemaError):
            gamma_adversarial(generic_witness(m), m, preset.path(3))

    def test_contract(self):
        from acyclab.krelation import WitnessFunction
        from acyclab.monoid import BooleanMonoid
        from acyclab import WitnessContractError
        broken = WitnessFunction("left", lambda r, s: r)
        with self.assertRaises(WitnessContractError):
            hstar_adversarial(broken, BooleanMonoid())

    def test_walk_adversary(self):
        from acyclab import joinexpr
        from acyclab.krelation import standard_join
        schema, relations = triangle_counterexample()
        expr = walk_adversary(schema, relations)
        assert joinexpr.leaves(expr) == [0, 1, 2]
        assert not joinexpr.is_monotone_wrt(expr, standard_join,
                                            relations).monotone

        consistent_rels = sample_globally_consistent(schema,
                                                     relations[0].monoid, seed=1)
        with self.assertRaises(ValueError):
            walk_adversary(schema, consistent_rels)


class TestGammaCycle(unittest.TestCase):

    def test_hstar(self):
        from acyclab import preset
        schema = preset.hstar()
        order = [1, 2, 0]
        assert failure_step(schema, order) == 2
        cycle = gamma_cycle_from_failure(schema, order, 2)
        assert cycle.format() == "({A,C}, C, {A,B,C}, B, {A,B}, A, {A,C})"

    def test_no_failure(self):
        from acyclab import preset
        schema = preset.path(4)
        assert failure_step(schema, [0, 1, 2, 3]) is None
        with self.assertRaises(ValueError):
            gamma_cycle_from_failure(schema, [0, 1, 2, 3], 1)


class TestSamplers(unittest.TestCase):

    def test_globally_consistent(self):
        from acyclab import preset
        from acyclab.monoid import BagMonoid
        from acyclab.krelation import globally_consistent
        schema = preset.triangle()
        relations = sample_globally_consistent(schema, BagMonoid(), seed=7)
        assert globally_consistent(relations) is not None
        again = sample_globally_consistent(schema, BagMonoid(), seed=7)
        assert relations == again

    def test_pairwise_consistent(self):
        from acyclab import preset
        from acyclab.monoid import BooleanMonoid
        from acyclab.krelation import pairwise_consistent
        relations = sample_pairwise_consistent(preset.path(3), BooleanMonoid(),
                                               seed=2)
        assert pairwise_consistent(relations)

    def test_sample_count(self):
        from acyclab import preset
        from acyclab.monoid import BagMonoid
        from acyclab.theoremlab import _consistent_samples
        report = VerificationReport("x")
        samples = list(_consistent_samples(preset.path(3), BagMonoid(), 12,
                                           seed=3, report=report))
        assert [trial for trial, _, _ in samples] == list(range(12))
        assert report.counts["pairwise_consistent"] == 12
        assert report.trials == 12
        assert "sampling_exhausted" not in report.counts

        report = VerificationReport("x")
        samples = list(_consistent_samples(preset.path(3), BagMonoid(), 5,
                                           seed=3, report=report,
                                           max_attempts=0))
        assert samples == []
        assert report.counts["sampling_exhausted"] == 5
        assert report.undecided == 5
        assert report.exit_status() == 2

    def test_pairwise_budget(self):
        from acyclab import preset, BudgetExceeded
        from acyclab.monoid import NumericalSemigroup
        with self.assertRaises(BudgetExceeded):
            sample_pairwise_consistent(preset.triangle(),
                                       NumericalSemigroup([3, 5]),
                                       seed=0, budget=0)


class TestSuites(unittest.TestCase):

    def test_report_status(self):
        report = VerificationReport("x", expect_failure=True)
        assert report.exit_status() == 1
        report.undecided = 1
        assert report.exit_status() == 2
        report.add_failure(instance="a")
        assert report.exit_status() == 0

        report = VerificationReport("x", expect_failure=False)
        assert report.exit_status() == 0
        report.add_failure(instance="a")
        assert report.exit_status() == 1

        report = VerificationReport("x", expect_failure=None)
        assert report.exit_status() == 2

    def test_local_global_triangle(self):
        from acyclab import preset
        from acyclab.monoid import BooleanMonoid
        report = verify_local_to_global(preset.triangle(), BooleanMonoid(),
                                        trials=6)
        assert report.failed
        assert report.expect_failure is True
        assert report.exit_status() == 0
        assert report.failures[0]["instance"] == "cycle"

    def test_local_global_p3(self):
        from acyclab import preset
        from acyclab.monoid import BagMonoid, NumericalSemigroup
        report = verify_local_to_global(preset.path(3), BagMonoid(), trials=20)
        assert report.failures == []
        assert report.exit_status() == 0

        report = verify_local_to_global(preset.path(3),
                                        NumericalSemigroup([3, 5]), trials=2)
        assert report.failed
        assert report.exit_status() == 0

    def test_deterministic(self):
        from acyclab import preset
        from acyclab.monoid import BagMonoid
        a = verify_local_to_global(preset.path(3), BagMonoid(), trials=8, seed=4)
        b = verify_local_to_global(preset.path(3), BagMonoid(), trials=8, seed=4)
        assert a.to_text() == b.to_text()

    def test_gamma_monotone_path(self):
        from acyclab import preset
        from acyclab.monoid import BooleanMonoid, BagMonoid
        for m in (BooleanMonoid(), BagMonoid()):
            report = verify_gamma_monotonicity(preset.path(3), m, trials=10,
                                               max_len=3)
            assert report.failures == []
            assert report.expect_failure is False

    def test_gamma_monotone_hstar(self):
        from acyclab import preset
        from acyclab.monoid import BooleanMonoid
        report = verify_gamma_monotonicity(preset.hstar(), BooleanMonoid(),
                                           trials=4, max_len=3)
        assert report.counts["forced"] == 2
        assert report.failed
        assert report.exit_status() == 0
        forced = [f for f in report.failures
                  if f.get("instance") == "gamma-adversary"]
        assert forced[0]["gamma_cycle"] == \
            "({A,C}, C, {A,B,C}, B, {A,B}, A, {A,C})"

    def test_structural(self):
        report = verify_structural_equivalences(3, 3)
        assert report.failures == []
        assert report.counts["hypergraphs"] == 63
        assert report.exit_status() == 0

    def test_tp(self):
        from acyclab.monoid import BooleanMonoid, NumericalSemigroup
        report = verify_tp_characterization(BooleanMonoid(), trials=6)
        assert report.failures == []
        assert report.counts["transport_counterexample"] is False

        report = verify_tp_characterization(NumericalSemigroup([3, 5]), trials=2)
        assert report.failures == []
        assert report.counts["local_global_failure"] is True
        assert report.counts["gamma_monotone_failure"] is True
        assert "counterexample" in report.counts

    def test_laws_and_transport(self):
        from acyclab.monoid import BagMonoid, PowersetMonoid, NumericalSemigroup
        assert verify_monoid_laws(BagMonoid(), samples=200).failures == []
        report = verify_transport_solvers(PowersetMonoid(["a", "b"]), trials=50)
        assert report.failures == []
        report = verify_transport_solvers(NumericalSemigroup([3, 5]), trials=10)
        assert report.failures == []
        assert "counterexample" in report.counts


class TestFullScale(unittest.TestCase):

    def test_structural(self):
        report = verify_structural_equivalences(4, 4)
        assert report.counts["hypergraphs"] == 1940
        assert report.failures == []
        assert report.undecided == 0
        assert report.exit_status() == 0

    def test_gamma_monotone(self):
        from acyclab import preset
        from acyclab.monoid import BooleanMonoid, BagMonoid
        for n in (3, 4):
            for m in (BooleanMonoid(), BagMonoid()):
                report = verify_gamma_monotonicity(preset.path(n), m,
                                                   trials=200, max_len=4)
                assert report.counts["pairwise_consistent"] == 200
                assert "sampling_exhausted" not in report.counts
                assert report.failures == []
                assert report.exit_status() == 0

    def test_laws(self):
        from acyclab.monoid import (BooleanMonoid, BagMonoid, NumericalSemigroup,
                                    TropicalMinMonoid, MaxUnitIntervalMonoid,
                                    PowersetMonoid)
        for m in (BooleanMonoid(), BagMonoid(), NumericalSemigroup([3, 5]),
                  TropicalMinMonoid(), MaxUnitIntervalMonoid(),
                  PowersetMonoid(["a", "b", "c"])):
            report = verify_monoid_laws(m, samples=10000)
            assert report.trials == 10000
            assert report.failures == []

    def test_transport(self):
        from acyclab.monoid import (BooleanMonoid, BagMonoid, TropicalMinMonoid,
                                    MaxUnitIntervalMonoid, PowersetMonoid)
        for m in (BooleanMonoid(), BagMonoid(), TropicalMinMonoid(),
                  MaxUnitIntervalMonoid(), PowersetMonoid(["a", "b"])):
            report = verify_transport_solvers(m, trials=1000)
            assert report.trials == 1000
            assert report.failures == []


if __name__ == "__main__":
    unittest.main()
