# coding: utf-8

"""acyclab.monoid provides positive commutative monoids
and solvers for the transportation problem over them.

A monoid value is represented by a plain python object
in canonical form (see each :class:`Monoid` subclass),
so that two values are equal iff they denote the same element.
"""

import itertools
import logging
import math
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation

import numpy as np

from . import _common
from ._common import ElementDomainError

_logger = logging.getLogger(__name__)

INFINITY = Decimal("Infinity")

KIND_BOOLEAN = "boolean"
KIND_BAG = "bag"
KIND_NSG = "numerical_semigroup"
KIND_TMIN = "tropical_min"
KIND_VMAX = "max_unit_interval"
KIND_POWERSET = "powerset"


class Monoid(ABC):
    """Base class of positive commutative monoids.

    Subclasses define the carrier set, the neutral element,
    the addition and the text syntax of elements.
    Monoid instances are immutable, and two instances are equal
    iff they have the same kind and parameters.

    Attributes:
        has_transportation_property (bool): True if the monoid is known
            to have the transportation property. Such monoids provide
            a closed-form transportation solver (:meth:`closed_form`).
    """

    kind = None
    has_transportation_property = False

    @property
    @abstractmethod
    def name(self):
        """str: monoid in the text syntax, e.g. ``nsg(3,5)``."""
        raise NotImplementedError

    @property
    def params(self):
        return ()

    @property
    @abstractmethod
    def zero(self):
        """The neutral element."""
        raise NotImplementedError

    @abstractmethod
    def is_element(self, value):
        """Test that the value is a canonical element of the carrier set.

        Args:
            value: canonical representation to test.

        Returns:
            bool
        """
        raise NotImplementedError

    @abstractmethod
    def _add(self, x, y):
        raise NotImplementedError

    @abstractmethod
    def _parse(self, text):
        raise NotImplementedError

    @abstractmethod
    def sample(self, rng):
        """Draw a random element with a numpy Generator."""
        raise NotImplementedError

    @abstractmethod
    def leq(self, x, y):
        """Natural order: True iff x + z = y for some element z."""
        raise NotImplementedError

    @abstractmethod
    def below(self, y, pool=()):
        """List elements x with :meth:`leq` (x, y).

        For monoids with infinite carrier sets, candidates are
        taken from the neutral element, y itself and the given pool.

        Args:
            y: an element.
            pool (iterable, optional): additional candidate elements.

        Returns:
            list: sorted with :meth:`sort_key`.
        """
        raise NotImplementedError

    def closed_form(self, b, c):
        """Closed-form transportation solver.

        Returns:
            list of list, or None if the monoid has no closed form.
        """
        return None

    def probe_pool(self):
        """Small list of elements used for probing the transportation property."""
        return [self.zero]

    def check(self, value):
        """Return the value itself if it is an element,
        otherwise raise :class:`~acyclab.ElementDomainError`."""
        if not self.is_element(value):
            msg = "{0!r} is not an element of {1}".format(value, self.name)
            raise ElementDomainError(msg)
        return value

    def add(self, x, y):
        """Monoid addition x + y.

        Raises:
            ElementDomainError: if x or y is not an element.
        """
        return self._add(self.check(x), self.check(y))

    def sum(self, xs):
        """Left fold of :meth:`add` starting at the neutral element."""
        total = self.zero
        for x in xs:
            total = self.add(total, x)
        return total

    def parse(self, text):
        """Parse an element from its text syntax.

        Raises:
            ElementDomainError: if the text does not denote an element.
        """
        try:
            value = self._parse(text.strip())
        except (ValueError, InvalidOperation):
            msg = "{0!r} is not an element of {1}".format(text, self.name)
            raise ElementDomainError(msg)
        return self.check(value)

    def format(self, value):
        """Text syntax of an element (inverse of :meth:`parse`)."""
        return str(value)

    def sort_key(self, value):
        return value

    def sample_nonzero(self, rng):
        while True:
            x = self.sample(rng)
            if x != self.zero:
                return x

    def __eq__(self, other):
        return isinstance(other, Monoid) and \
            (self.kind, self.params) == (other.kind, other.params)

    def __hash__(self):
        return hash((self.kind, self.params))

    def __repr__(self):
        return "<Monoid {0}>".format(self.name)

    def __str__(self):
        return self.name


class BooleanMonoid(Monoid):
    """Boolean monoid ({0,1}, or, 0). Elements are int 0 and 1."""

    kind = KIND_BOOLEAN
    has_transportation_property = True

    @property
    def name(self):
        return "boolean"

    @property
    def zero(self):
        return 0

    def is_element(self, value):
        return isinstance(value, int) and not isinstance(value, bool) \
            and value in (0, 1)

    def _add(self, x, y):
        return int(x or y)

    def _parse(self, text):
        if text not in ("0", "1"):
            raise ValueError(text)
        return int(text)

    def leq(self, x, y):
        return x <= y

    def below(self, y, pool=()):
        return [0, 1] if y == 1 else [0]

    def closed_form(self, b, c):
        # d_ij = b_i and c_j
        return [[int(bi and cj) for cj in c] for bi in b]

    def sample(self, rng):
        return int(rng.integers(0, 2))

    def probe_pool(self):
        return [0, 1]


class NumericalSemigroup(Monoid):
    """Numerical semigroup <g1,...,gk> under integer addition.

    Elements are non-negative ints of the form m1*g1 + ... + mk*gk.
    The generators must be coprime, so that the semigroup is cofinite.
    ``NumericalSemigroup([1])`` is the bag monoid (see :class:`BagMonoid`).

    Args:
        generators (list of int): positive generators.
    """

    kind = KIND_NSG

    def __init__(self, generators):
        gens = sorted(set(int(g) for g in generators))
        if len(gens) == 0 or gens[0] <= 0:
            raise ValueError("generators must be positive integers")
        if math.gcd(*gens) != 1:
            raise ValueError("generators must be coprime")
        self._gens = tuple(gens)
        # every integer above the bound is a member (Schur's bound)
        self._bound = gens[0] * gens[-1]
        reach = np.zeros(self._bound + 1, dtype=bool)
        reach[0] = True
        for n in range(1, self._bound + 1):
            reach[n] = any(n >= g and reach[n - g] for g in gens)
        self._reach = reach
        self._sampling = [n for n in range(0, 4 * gens[-1] + 1)
                          if self._member(n)]

    @property
    def generators(self):
        return self._gens

    @property
    def has_transportation_property(self):
        return self._gens == (1,)

    @property
    def name(self):
        return "nsg({0})".format(",".join(str(g) for g in self._gens))

    @property
    def params(self):
        return self._gens

    @property
    def zero(self):
        return 0

    def _member(self, n):
        return n > self._bound or bool(self._reach[n])

    def is_element(self, value):
        return isinstance(value, int) and not isinstance(value, bool) \
            and value >= 0 and self._member(value)

    def _add(self, x, y):
        return x + y

    def _parse(self, text):
        if not re.match(r"^\d+$", text):
            raise ValueError(text)
        return int(text)

    def leq(self, x, y):
        return x <= y and self._member(y - x)

    def below(self, y, pool=()):
        return [x for x in range(0, y + 1)
                if self._member(x) and self._member(y - x)]

    def closed_form(self, b, c):
        if not self.has_transportation_property:
            return None
        return _northwest_corner(b, c)

    def sample(self, rng):
        return self._sampling[int(rng.integers(0, len(self._sampling)))]

    def probe_pool(self):
        return self._sampling[:6]


class BagMonoid(NumericalSemigroup):
    """Bag monoid (N, +, 0). Elements are non-negative ints."""

    kind = KIND_BAG

    def __init__(self):
        super().__init__([1])

    @property
    def name(self):
        return "bag"

    @property
    def params(self):
        return ()

    def below(self, y, pool=()):
        return list(range(0, y + 1))

    def sample(self, rng):
        return int(rng.integers(0, 6))

    def probe_pool(self):
        return [0, 1, 2, 3]


class _DecimalMonoid(Monoid, ABC):

    def is_element(self, value):
        return isinstance(value, Decimal) and not value.is_nan() \
            and self._in_range(value)

    @abstractmethod
    def _in_range(self, value):
        raise NotImplementedError

    def _parse(self, text):
        return Decimal(text)

    def format(self, value):
        if value.is_infinite():
            return "inf"
        return format(value.normalize(), "f")

    def _candidates(self, y, pool):
        cands = {self.zero, y}
        cands.update(p for p in pool if self.is_element(p))
        return sorted(x for x in cands if self.leq(x, y))

    def below(self, y, pool=()):
        return self._candidates(y, pool)


class TropicalMinMonoid(_DecimalMonoid):
    """Tropical monoid (R + {inf}, min, inf).

    Elements are :class:`decimal.Decimal` values; the neutral element
    is ``Decimal('Infinity')``, written ``inf`` in the text syntax.
    """

    kind = KIND_TMIN
    has_transportation_property = True

    @property
    def name(self):
        return "tmin"

    @property
    def zero(self):
        return INFINITY

    def _in_range(self, value):
        return not (value.is_infinite() and value < 0)

    def _add(self, x, y):
        return min(x, y)

    def _parse(self, text):
        if text in ("inf", "Infinity", "∞"):
            return INFINITY
        value = Decimal(text)
        if value.is_infinite():
            raise ValueError(text)
        return value

    def leq(self, x, y):
        return x >= y

    def closed_form(self, b, c):
        # d_ij = max(b_i, c_j)
        return [[max(bi, cj) for cj in c] for bi in b]

    def sample(self, rng):
        if rng.random() < 0.2:
            return INFINITY
        return Decimal(int(rng.integers(0, 50))).scaleb(-1)

    def probe_pool(self):
        return [Decimal(0), Decimal(1), Decimal(2), INFINITY]


class MaxUnitIntervalMonoid(_DecimalMonoid):
    """Monoid ([0,1], max, 0) of :class:`decimal.Decimal` values."""

    kind = KIND_VMAX
    has_transportation_property = True

    @property
    def name(self):
        return "vmax"

    @property
    def zero(self):
        return Decimal(0)

    def _in_range(self, value):
        return Decimal(0) <= value <= Decimal(1)

    def _add(self, x, y):
        return max(x, y)

    def leq(self, x, y):
        return x <= y

    def closed_form(self, b, c):
        # d_ij = min(b_i, c_j)
        return [[min(bi, cj) for cj in c] for bi in b]

    def sample(self, rng):
        return Decimal(int(rng.integers(0, 11))).scaleb(-1)

    def probe_pool(self):
        return [Decimal(0), Decimal("0.5"), Decimal(1)]


class PowersetMonoid(Monoid):
    """Power set monoid (P(A), union, {}) over a finite ground set A.

    Elements are frozensets of ground symbols,
    written ``{a,b}`` in the text syntax.

    Args:
        ground (iterable of str): ground symbols.
    """

    kind = KIND_POWERSET
    has_transportation_property = True

    def __init__(self, ground):
        self._ground = tuple(sorted(set(str(s) for s in ground)))

    @property
    def ground(self):
        return frozenset(self._ground)

    @property
    def name(self):
        return "pset({0})".format(",".join(self._ground))

    @property
    def params(self):
        return self._ground

    @property
    def zero(self):
        return frozenset()

    def is_element(self, value):
        return isinstance(value, frozenset) and value <= self.ground

    def _add(self, x, y):
        return x | y

    def _parse(self, text):
        mo = re.match(r"^\{(.*)\}$", text)
        if mo is None:
            raise ValueError(text)
        body = mo.group(1).strip()
        if body == "":
            return frozenset()
        return frozenset(s.strip() for s in body.split(","))

    def format(self, value):
        return _common.format_nodes(value)

    def sort_key(self, value):
        return len(value), tuple(sorted(value))

    def leq(self, x, y):
        return x <= y

    def below(self, y, pool=()):
        members = sorted(y)
        return [frozenset(comb) for r in range(len(members) + 1)
                for comb in itertools.combinations(members, r)]

    def closed_form(self, b, c):
        # d_ij = b_i & c_j
        return [[bi & cj for cj in c] for bi in b]

    def sample(self, rng):
        mask = rng.integers(0, 2, size=len(self._ground))
        return frozenset(s for s, bit in zip(self._ground, mask) if bit)

    def probe_pool(self):
        if len(self._ground) <= 3:
            return self.below(self.ground)
        return [frozenset()] + [frozenset([s]) for s in self._ground]


_monoid_patterns = [
    (re.compile(r"^boolean$"), lambda mo: BooleanMonoid()),
    (re.compile(r"^bag$"), lambda mo: BagMonoid()),
    (re.compile(r"^nsg\((?P<gens>\d+(,\d+)*)\)$"),
     lambda mo: _nsg([int(g) for g in mo.group("gens").split(",")])),
    (re.compile(r"^tmin$"), lambda mo: TropicalMinMonoid()),
    (re.compile(r"^vmax$"), lambda mo: MaxUnitIntervalMonoid()),
    (re.compile(r"^pset\((?P<ground>[^()]*)\)$"),
     lambda mo: PowersetMonoid(s for s in mo.group("ground").split(",") if s)),
]


def _nsg(gens):
    if sorted(set(gens)) == [1]:
        return BagMonoid()
    return NumericalSemigroup(gens)


def parse_monoid(text):
    """Generate a :class:`Monoid` from its text syntax.

    Accepted syntax: ``boolean``, ``bag``, ``nsg(3,5)``,
    ``tmin``, ``vmax`` and ``pset(a,b,c)``.

    Example:
        >>> parse_monoid("nsg(3,5)").is_element(7)
        False

    Raises:
        ValueError: unknown syntax or invalid parameters.
    """
    compact = re.sub(r"\s+", "", text)
    for reobj, factory in _monoid_patterns:
        mo = reobj.match(compact)
        if mo:
            return factory(mo)
    raise ValueError("unknown monoid: {0!r}".format(text))


@dataclass(frozen=True)
class TransportInstance:
    """Row sums b (length m) and column sums c (length n)."""

    b: tuple
    c: tuple

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(self.b))
        object.__setattr__(self, "c", tuple(self.c))
        if len(self.b) == 0 or len(self.c) == 0:
            raise ValueError("transport instance needs m, n >= 1")

    @property
    def shape(self):
        return len(self.b), len(self.c)

    def balanced(self, monoid):
        return monoid.sum(self.b) == monoid.sum(self.c)

    def format(self, monoid):
        return "b=({0}), c=({1})".format(
            ",".join(monoid.format(x) for x in self.b),
            ",".join(monoid.format(x) for x in self.c))


@dataclass(frozen=True)
class TransportMatrix:
    """An m x n grid of monoid elements."""

    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries",
                           tuple(tuple(row) for row in self.entries))

    @property
    def shape(self):
        return len(self.entries), len(self.entries[0]) if self.entries else 0

    def row_sums(self, monoid):
        return tuple(monoid.sum(row) for row in self.entries)

    def column_sums(self, monoid):
        return tuple(monoid.sum(col) for col in zip(*self.entries))

    def check(self, monoid, instance):
        """True iff rows sum to b and columns sum to c exactly."""
        if self.shape != instance.shape:
            return False
        return self.row_sums(monoid) == instance.b and \
            self.column_sums(monoid) == instance.c

    def to_list(self):
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class ProbeResult:
    """Outcome of :func:`probe_transportation_property`.

    Attributes:
        counterexample (TransportInstance or None): balanced instance
            without solution, if found.
        checked (int): number of balanced instances examined.
        undecided (int): instances whose search ran out of budget.
        exhausted (bool): True if the probe stopped on its own budget.
    """

    counterexample: object
    checked: int
    undecided: int
    exhausted: bool


def _northwest_corner(b, c):
    supply = list(b)
    demand = list(c)
    d = np.zeros((len(b), len(c)), dtype=np.int64)
    i = j = 0
    while i < len(b) and j < len(c):
        q = min(supply[i], demand[j])
        d[i, j] = q
        supply[i] -= q
        demand[j] -= q
        if supply[i] == 0:
            i += 1
        else:
            j += 1
    return [[int(x) for x in row] for row in d]


def search_transport(monoid, instance, budget=_common.DEFAULT_TRANSPORT_BUDGET):
    """Bounded exhaustive search for a transportation matrix.

    Candidate entries at (i, j) are the elements fitting under both
    b_i and c_j in the natural order (positivity forces this).
    Cells are filled row by row; partial row and column sums are pruned
    when they no longer fit under their targets.

    Args:
        monoid (Monoid): the monoid.
        instance (TransportInstance): row and column sums.
        budget (int, optional): maximum number of search nodes.

    Returns:
        TransportMatrix, or None if no matrix exists.

    Raises:
        BudgetExceeded: if the search is undecided within budget.
    """
    b, c = instance.b, instance.c
    m, n = instance.shape
    if monoid.sum(b) != monoid.sum(c):
        return None
    pool = set(b) | set(c)
    cand = [[[x for x in monoid.below(b[i], pool) if monoid.leq(x, c[j])]
             for j in range(n)] for i in range(m)]
    grid = [[monoid.zero] * n for _ in range(m)]
    row_acc = [monoid.zero] * m
    col_acc = [monoid.zero] * n
    counter = _common.Budget(budget, "transport search")

    def place(k):
        if k == m * n:
            return True
        i, j = divmod(k, n)
        old_row, old_col = row_acc[i], col_acc[j]
        for x in cand[i][j]:
            counter.tick()
            r = monoid._add(old_row, x)
            s = monoid._add(old_col, x)
            if not (monoid.leq(r, b[i]) and monoid.leq(s, c[j])):
                continue
            if j == n - 1 and r != b[i]:
                continue
            if i == m - 1 and s != c[j]:
                continue
            grid[i][j] = x
            row_acc[i], col_acc[j] = r, s
            if place(k + 1):
                return True
            row_acc[i], col_acc[j] = old_row, old_col
        grid[i][j] = monoid.zero
        return False

    found = place(0)
    _logger.debug("transport search %s over %s: %d nodes",
                  instance.format(monoid), monoid.name, counter.used)
    if found:
        return TransportMatrix(grid)
    return None


def solve_transport(monoid, instance, budget=_common.DEFAULT_TRANSPORT_BUDGET,
                    method="auto"):
    """Find an m x n matrix whose rows sum to b and columns sum to c.

    Monoids with the transportation property are solved in closed form
    (northwest corner for bags, d_ij = b_i and c_j for booleans,
    max / min / intersection for the tropical, unit-interval
    and power set monoids). Other monoids, or ``method="search"``,
    use :func:`search_transport`.

    Example:
        >>> inst = TransportInstance((2, 3), (1, 4))
        >>> solve_transport(BagMonoid(), inst).to_list()
        [[1, 1], [0, 3]]

    Args:
        monoid (Monoid): the monoid.
        instance (TransportInstance): row and column sums.
        budget (int, optional): search budget.
        method (str, optional): "auto" or "search".

    Returns:
        TransportMatrix, or None if sum(b) != sum(c) or no matrix exists.

    Raises:
        ElementDomainError: if an entry is not an element.
        BudgetExceeded: if the search is undecided within budget.
    """
    for x in instance.b + instance.c:
        monoid.check(x)
    if monoid.sum(instance.b) != monoid.sum(instance.c):
        return None
    if method == "auto" and monoid.has_transportation_property:
        matrix = TransportMatrix(monoid.closed_form(instance.b, instance.c))
        if not matrix.check(monoid, instance):
            msg = "closed-form solver of {0} failed on {1}".format(
                monoid.name, instance.format(monoid))
            raise RuntimeError(msg)
        return matrix
    elif method in ("auto", "search"):
        return search_transport(monoid, instance, budget=budget)
    else:
        raise ValueError("unknown method: {0}".format(method))


def probe_transportation_property(monoid, max_m, max_n, element_pool=None,
                                  budget=None,
                                  instance_budget=_common.DEFAULT_TRANSPORT_BUDGET):
    """Search for a balanced transport instance without solution.

    Instances of every shape m x n (m <= max_m, n <= max_n) with entries
    from the pool are examined in a deterministic order
    (entries as multisets, since permuting rows or columns
    does not change solvability).

    Args:
        monoid (Monoid): the monoid.
        max_m (int): maximum number of rows.
        max_n (int): maximum number of columns.
        element_pool (list, optional): entries to use.
            Defaults to :meth:`Monoid.probe_pool`.
        budget (int, optional): maximum number of instances.
        instance_budget (int, optional): search budget per instance.

    Returns:
        ProbeResult
    """
    if max_m < 1 or max_n < 1:
        raise ValueError("max_m and max_n must be positive")
    if element_pool is None:
        element_pool = monoid.probe_pool()
    pool = sorted(set(monoid.check(x) for x in element_pool), key=monoid.sort_key)
    checked = 0
    undecided = 0
    for m in range(1, max_m + 1):
        rows = list(itertools.combinations_with_replacement(pool, m))
        for n in range(1, max_n + 1):
            for b in rows:
                total = monoid.sum(b)
                for c in itertools.combinations_with_replacement(pool, n):
                    if monoid.sum(c) != total:
                        continue
                    if budget is not None and checked >= budget:
                        return ProbeResult(None, checked, undecided, True)
                    checked += 1
                    inst = TransportInstance(b, c)
                    try:
                        sol = solve_transport(monoid, inst, budget=instance_budget)
                    except _common.BudgetExceeded:
                        undecided += 1
                        continue
                    if sol is None:
                        _logger.info("transport counterexample for %s: %s",
                                     monoid.name, inst.format(monoid))
                        return ProbeResult(inst, checked, undecided, False)
    return ProbeResult(None, checked, undecided, False)


def check_laws(monoid, samples=10000, seed=0):
    """Sample the monoid laws on random triples.

    Checks associativity, commutativity, neutrality of zero
    and positivity (x + y = 0 implies x = y = 0).

    Returns:
        list of tuple: (law name, x, y, z) for each violation.
    """
    rng = np.random.default_rng(seed)
    zero = monoid.zero
    failures = []
    for _ in range(samples):
        x, y, z = monoid.sample(rng), monoid.sample(rng), monoid.sample(rng)
        if monoid.add(x, monoid.add(y, z)) != monoid.add(monoid.add(x, y), z):
            failures.append(("associativity", x, y, z))
        if monoid.add(x, y) != monoid.add(y, x):
            failures.append(("commutativity", x, y, z))
        if monoid.add(x, zero) != x:
            failures.append(("neutrality", x, y, z))
        if monoid.add(x, y) == zero and not (x == zero and y == zero):
            failures.append(("positivity", x, y, z))
    return failures
