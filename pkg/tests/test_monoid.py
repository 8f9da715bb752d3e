import unittest
from decimal import Decimal

from acyclab.monoid import *


class TestMonoid(unittest.TestCase):

    def test_parse_monoid(self):
        assert parse_monoid("boolean") == BooleanMonoid()
        assert parse_monoid("bag") == BagMonoid()
        assert parse_monoid("nsg(3, 5)") == NumericalSemigroup([5, 3])
        assert parse_monoid("nsg(1)") == BagMonoid()
        assert parse_monoid("tmin").name == "tmin"
        assert parse_monoid("pset(b,a)").name == "pset(a,b)"

        with self.assertRaises(ValueError):
            parse_monoid("ring")
        with self.assertRaises(ValueError):
            parse_monoid("nsg(2,4)")

    def test_boolean(self):
        m = BooleanMonoid()
        assert m.add(1, 0) == 1
        assert m.add(1, 1) == 1
        assert m.sum([0, 0]) == 0
        assert m.leq(0, 1)
        assert not m.leq(1, 0)
        assert m.has_transportation_property
        assert m.is_element(1)
        assert not m.is_element(True)
        assert not m.is_element(False)
        from acyclab import ElementDomainError
        with self.assertRaises(ElementDomainError):
            m.check(True)

    def test_numerical_semigroup(self):
        m = NumericalSemigroup([3, 5])
        members = [n for n in range(12) if m.is_element(n)]
        assert members == [0, 3, 5, 6, 8, 9, 10, 11]
        assert m.leq(3, 8)
        assert not m.leq(3, 5)
        assert not m.has_transportation_property
        assert m.name == "nsg(3,5)"

    def test_tropical(self):
        m = TropicalMinMonoid()
        assert m.parse("inf") == m.zero
        assert m.add(Decimal(2), Decimal("1.5")) == Decimal("1.5")
        assert m.add(m.zero, Decimal(4)) == Decimal(4)
        assert m.leq(Decimal(3), Decimal(1))
        assert m.leq(m.zero, Decimal(0))
        assert m.format(m.zero) == "inf"
        assert m.format(Decimal("2.50")) == "2.5"

    def test_unit_interval(self):
        m = MaxUnitIntervalMonoid()
        assert m.add(Decimal("0.3"), Decimal("0.7")) == Decimal("0.7")
        assert not m.is_element(Decimal("1.2"))
        from acyclab import ElementDomainError
        with self.assertRaises(ElementDomainError):
            m.parse("1.5")

    def test_powerset(self):
        m = PowersetMonoid(["a", "b", "c"])
        x = m.parse("{a, b}")
        assert x == frozenset(["a", "b"])
        assert m.add(x, m.parse("{c}")) == m.ground
        assert m.format(m.zero) == "{}"
        assert m.leq(frozenset(["a"]), x)
        assert not m.is_element(frozenset(["d"]))

    def test_element_error(self):
        from acyclab import ElementDomainError
        with self.assertRaises(ElementDomainError):
            BooleanMonoid().add(2, 0)
        with self.assertRaises(ElementDomainError):
            NumericalSemigroup([3, 5]).check(7)
        with self.assertRaises(ElementDomainError):
            BagMonoid().parse("-1")

    def test_laws(self):
        for m in (BooleanMonoid(), BagMonoid(), NumericalSemigroup([3, 5]),
                  TropicalMinMonoid(), MaxUnitIntervalMonoid(),
                  PowersetMonoid(["a", "b", "c"])):
            assert check_laws(m, samples=10000, seed=1) == []


class TestTransport(unittest.TestCase):

    def test_northwest_corner(self):
        inst = TransportInstance((2, 3), (1, 4))
        sol = solve_transport(BagMonoid(), inst)
        assert sol.to_list() == [[1, 1], [0, 3]]
        assert sol.check(BagMonoid(), inst)

    def test_closed_forms(self):
        m = BooleanMonoid()
        inst = TransportInstance((1, 0, 1), (1, 1))
        assert solve_transport(m, inst).to_list() == [[1, 1], [0, 0], [1, 1]]

        m = TropicalMinMonoid()
        inst = TransportInstance((Decimal(1), Decimal(3)),
                                 (Decimal(3), Decimal(1)))
        sol = solve_transport(m, inst)
        assert sol.check(m, inst)

        m = PowersetMonoid(["a", "b"])
        inst = TransportInstance((frozenset("a"), frozenset("b")),
                                 (frozenset("ab"),))
        assert solve_transport(m, inst).to_list() == [[frozenset("a")],
                                                      [frozenset("b")]]

    def test_unbalanced(self):
        inst = TransportInstance((2, 3), (1, 1))
        assert solve_transport(BagMonoid(), inst) is None

    def test_nsg_counterexample(self):
        m = NumericalSemigroup([3, 5])
        inst = TransportInstance((5, 5, 5), (3, 3, 9))
        assert inst.balanced(m)
        assert solve_transport(m, inst) is None

        inst = TransportInstance((3, 5), (8,))
        assert solve_transport(m, inst).to_list() == [[3], [5]]

    def test_search_agrees(self):
        m = BagMonoid()
        inst = TransportInstance((2, 2, 1), (3, 2))
        found = search_transport(m, inst)
        assert found is not None
        assert found.check(m, inst)

    def test_budget(self):
        from acyclab import BudgetExceeded
        m = BagMonoid()
        inst = TransportInstance((9, 9, 9), (9, 9, 9))
        with self.assertRaises(BudgetExceeded):
            solve_transport(m, inst, budget=3, method="search")

    def test_probe(self):
        probe = probe_transportation_property(BagMonoid(), 3, 3)
        assert probe.counterexample is None
        assert probe.checked > 0

        m = NumericalSemigroup([3, 5])
        probe = probe_transportation_property(m, 3, 3)
        assert probe.counterexample is not None
        assert probe.counterexample.balanced(m)
        assert solve_transport(m, probe.counterexample) is None


if __name__ == "__main__":
    unittest.main()
