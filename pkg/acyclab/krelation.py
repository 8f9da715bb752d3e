# coding: utf-8

"""acyclab.krelation: relations annotated with monoid values (K-relations),
marginals, consistency and consistency witness functions.

A K-relation stores only its support: a dict from tuples to nonzero
monoid values. Tuples are plain python tuples of value symbols
aligned with the attribute order of the relation.
"""

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass

from . import _common
from . import monoid as _monoid
from ._common import MonoidMismatch, SchemaError, UnsupportedMonoid

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Attribute:
    """An attribute name with its finite domain of value symbols."""

    name: str
    domain: tuple

    def __post_init__(self):
        domain = tuple(dict.fromkeys(str(v) for v in self.domain))
        if len(domain) == 0:
            raise SchemaError("empty domain of attribute {0}".format(self.name))
        object.__setattr__(self, "domain", domain)


class AttributeSet:
    """Ordered set of :class:`Attribute` with unique names.

    Comparison of attribute sets ignores order and domains:
    two sets are equal iff they have the same names.

    Args:
        attrs (iterable of Attribute): attributes in order.
    """

    def __init__(self, attrs=()):
        self._attrs = tuple(attrs)
        self._index = {}
        for i, attr in enumerate(self._attrs):
            if attr.name in self._index:
                raise SchemaError("duplicated attribute {0}".format(attr.name))
            self._index[attr.name] = i

    @classmethod
    def from_domains(cls, domains):
        """Build from a mapping (or pairs) of name -> domain."""
        if isinstance(domains, dict):
            domains = domains.items()
        return cls(Attribute(name, dom) for name, dom in domains)

    @property
    def names(self):
        return tuple(attr.name for attr in self._attrs)

    def __iter__(self):
        return iter(self._attrs)

    def __len__(self):
        return len(self._attrs)

    def __contains__(self, name):
        if isinstance(name, Attribute):
            name = name.name
        return name in self._index

    def __getitem__(self, name):
        return self._attrs[self._index[name]]

    def index(self, name):
        return self._index[name]

    def __eq__(self, other):
        return isinstance(other, AttributeSet) and \
            set(self.names) == set(other.names)

    def __hash__(self):
        return hash(frozenset(self.names))

    def __repr__(self):
        return _common.format_nodes(self.names)

    def issubset(self, other):
        return all(name in other for name in self.names)

    def select(self, names):
        """Sub-AttributeSet of the given names, in this set's order.

        Raises:
            SchemaError: if some name is not in this set.
        """
        names = set(_names(names))
        unknown = names - set(self.names)
        if unknown:
            raise SchemaError("attributes {0} not in {1}".format(
                _common.format_nodes(unknown), self))
        return AttributeSet(a for a in self._attrs if a.name in names)

    def intersection(self, other):
        return AttributeSet(a for a in self._attrs if a.name in other)

    def union(self, other):
        """Union keeping this set's order first.

        Domains of shared attributes are merged.
        """
        attrs = list(self._attrs)
        for attr in other:
            if attr.name in self._index:
                i = self._index[attr.name]
                if attrs[i].domain != attr.domain:
                    attrs[i] = Attribute(attr.name, attrs[i].domain + attr.domain)
            else:
                attrs.append(attr)
        return AttributeSet(attrs)

    def tuples(self):
        """Iterate all tuples over this set (product of domains)."""
        return itertools.product(*[attr.domain for attr in self._attrs])


def _names(attrs):
    if isinstance(attrs, AttributeSet):
        return attrs.names
    if isinstance(attrs, str):
        return (attrs,)
    return tuple(a.name if isinstance(a, Attribute) else a for a in attrs)


def _projector(attrs, names):
    idx = tuple(attrs.index(name) for name in names)

    def project(t):
        return tuple(t[i] for i in idx)

    return project


class KRelation:
    """A finitely supported K-relation R(X).

    Immutable after construction. Tuples with weight zero are dropped,
    so the stored support is exactly Supp(R).

    Example:
        >>> from acyclab.monoid import BagMonoid
        >>> attrs = AttributeSet.from_domains({"A": ["a1"], "B": ["b1", "b2"]})
        >>> r = KRelation(attrs, BagMonoid(), {("a1", "b1"): 2, ("a1", "b2"): 3})
        >>> marginal(r, ["A"]).support
        {('a1',): 5}

    Args:
        attrs (AttributeSet): the attribute set X.
        monoid (~acyclab.monoid.Monoid): the monoid K.
        support (dict, optional): tuple -> monoid value.

    Raises:
        SchemaError: if a tuple does not fit the attribute set.
        ElementDomainError: if a weight is not an element of the monoid.
    """

    def __init__(self, attrs, monoid, support=None):
        if not isinstance(attrs, AttributeSet):
            attrs = AttributeSet(attrs)
        self._attrs = attrs
        self._monoid = monoid
        self._support = {}
        for t, w in (support or {}).items():
            t = tuple(t)
            self._check_tuple(t)
            monoid.check(w)
            if w != monoid.zero:
                self._support[t] = w
        self._key = None

    def _check_tuple(self, t):
        if len(t) != len(self._attrs):
            raise SchemaError("tuple {0} does not match attributes {1}".format(
                t, self._attrs))
        for v, attr in zip(t, self._attrs):
            if v not in attr.domain:
                raise SchemaError("value {0!r} not in domain of {1}".format(
                    v, attr.name))

    @classmethod
    def from_rows(cls, attrs, monoid, rows):
        """Build from (tuple, weight) pairs.

        Raises:
            SchemaError: if a tuple appears twice.
        """
        support = {}
        for t, w in rows:
            t = tuple(t)
            if t in support:
                raise SchemaError("duplicated tuple {0}".format(t))
            support[t] = w
        return cls(attrs, monoid, support)

    @classmethod
    def empty(cls, attrs, monoid):
        return cls(attrs, monoid, {})

    @property
    def attrs(self):
        return self._attrs

    @property
    def names(self):
        return self._attrs.names

    @property
    def monoid(self):
        return self._monoid

    @property
    def support(self):
        return dict(self._support)

    def weight(self, t):
        """R(t); zero for tuples outside the support."""
        if isinstance(t, dict):
            t = tuple(t[name] for name in self.names)
        return self._support.get(tuple(t), self._monoid.zero)

    def total(self):
        """The total weight, i.e., the value of the marginal on the empty set."""
        return self._monoid.sum(self._support[t] for t in self._sorted_keys())

    def _sorted_keys(self):
        return sorted(self._support)

    def rows(self):
        """List of (tuple, weight) sorted by tuple."""
        return [(t, self._support[t]) for t in self._sorted_keys()]

    def reorder(self, names):
        """Same relation with attributes in the given order."""
        names = _names(names)
        if set(names) != set(self.names) or len(names) != len(self.names):
            raise SchemaError("{0} is not a permutation of {1}".format(
                names, self.names))
        project = _projector(self._attrs, names)
        attrs = AttributeSet(self._attrs[name] for name in names)
        return KRelation(attrs, self._monoid,
                         {project(t): w for t, w in self._support.items()})

    def is_empty(self):
        return len(self._support) == 0

    def __len__(self):
        return len(self._support)

    def __iter__(self):
        return iter(self._sorted_keys())

    def _canonical(self):
        if self._key is None:
            names = tuple(sorted(self.names))
            project = _projector(self._attrs, names)
            self._key = (names, frozenset((project(t), w)
                                          for t, w in self._support.items()))
        return self._key

    def __eq__(self, other):
        return isinstance(other, KRelation) and \
            self._monoid == other._monoid and \
            self._canonical() == other._canonical()

    def __hash__(self):
        return hash((self._monoid, self._canonical()))

    def __repr__(self):
        return "<KRelation {0} over {1}: {2} tuples>".format(
            self._attrs, self._monoid.name, len(self._support))


@dataclass(frozen=True)
class WitnessFunction:
    """A named consistency witness function W.

    Calling ``W(R, S)`` returns a relation over the union of the
    attributes. Whenever R and S are consistent, the output must
    marginalize to both inputs; outputs on inconsistent inputs
    are unconstrained.
    """

    name: str
    func: object

    def __call__(self, r, s):
        return self.func(r, s)

    def __str__(self):
        return self.name


def _check_monoid(relations):
    monoids = set(r.monoid for r in relations)
    if len(monoids) > 1:
        raise MonoidMismatch("relations over different monoids: {0}".format(
            ", ".join(sorted(m.name for m in monoids))))


def marginal(r, y):
    """The marginal R[Y]: weights summed over tuples agreeing on Y.

    Args:
        r (KRelation): relation over X.
        y (AttributeSet or iterable of str): Y, a subset of X.

    Returns:
        KRelation: relation over Y (in the attribute order of X).

    Raises:
        SchemaError: if Y is not a subset of X.
    """
    sub = r.attrs.select(_names(y))
    project = _projector(r.attrs, sub.names)
    sums = {}
    monoid = r.monoid
    for t, w in r.rows():
        key = project(t)
        if key in sums:
            sums[key] = monoid.add(sums[key], w)
        else:
            sums[key] = w
    return KRelation(sub, monoid, sums)


def support_relation(r):
    """Boolean relation with weight 1 exactly on Supp(R)."""
    return KRelation(r.attrs, _monoid.BooleanMonoid(), {t: 1 for t in r})


def shared_attributes(r, s):
    return r.attrs.intersection(s.attrs)


def inner_consistent(r, s):
    """True iff R[X & Y] = S[X & Y] as weighted relations.

    With no shared attribute, the total weights are compared.

    Raises:
        MonoidMismatch: if R and S are over different monoids.
    """
    _check_monoid([r, s])
    shared = shared_attributes(r, s).names
    return marginal(r, shared) == marginal(s, shared)


def _blocks(r, shared):
    project = _projector(r.attrs, shared)
    blocks = defaultdict(list)
    for t, w in r.rows():
        blocks[project(t)].append((t, w))
    return blocks


def consistent(r, s, budget=_common.DEFAULT_TRANSPORT_BUDGET, method="auto"):
    """Find a consistency witness T(XY) with T[X] = R and T[Y] = S.

    The tuples of R and S are grouped by their value on the shared
    attributes; every group is an independent transportation instance
    (rows: R-tuples, columns: S-tuples) and T is assembled from the
    solutions.

    Args:
        r (KRelation): relation over X.
        s (KRelation): relation over Y.
        budget (int, optional): search budget of each transport block.
        method (str, optional): "auto" or "search",
            passed to :func:`~acyclab.monoid.solve_transport`.

    Returns:
        KRelation or None: the witness, or None if R and S are inconsistent.

    Raises:
        MonoidMismatch: if R and S are over different monoids.
        BudgetExceeded: if some transport block is undecided.
    """
    if not inner_consistent(r, s):
        return None
    monoid = r.monoid
    shared = shared_attributes(r, s).names
    union = r.attrs.union(s.attrs)
    extra = tuple(name for name in s.names if name not in r.attrs)
    project_extra = _projector(s.attrs, extra)

    blocks_r = _blocks(r, shared)
    blocks_s = _blocks(s, shared)
    support = {}
    for key in sorted(blocks_r):
        rows = blocks_r[key]
        cols = blocks_s[key]
        inst = _monoid.TransportInstance([w for _, w in rows],
                                         [w for _, w in cols])
        matrix = _monoid.solve_transport(monoid, inst, budget=budget,
                                         method=method)
        if matrix is None:
            _logger.debug("no transport for block %s: %s",
                          key, inst.format(monoid))
            return None
        for (t, _), line in zip(rows, matrix.entries):
            for (u, _), d in zip(cols, line):
                if d != monoid.zero:
                    support[t + project_extra(u)] = d
    return KRelation(union, monoid, support)


def _witness_func(monoid, method, budget):

    def witness(r, s):
        _check_monoid([r, s])
        if r.monoid != monoid:
            raise MonoidMismatch("witness function on {0} applied to {1}".format(
                monoid.name, r.monoid.name))
        t = consistent(r, s, budget=budget, method=method)
        if t is None:
            return KRelation.empty(r.attrs.union(s.attrs), monoid)
        return t

    return witness


def generic_witness(monoid):
    """The consistency witness function of a monoid
    with the transportation property.

    Returns the block-assembled witness for consistent inputs,
    and the empty relation over the attribute union otherwise.

    Raises:
        UnsupportedMonoid: if the monoid has no closed-form transport.
    """
    if not monoid.has_transportation_property:
        raise UnsupportedMonoid(
            "{0} does not have the transportation property".format(monoid.name))
    return WitnessFunction("generic({0})".format(monoid.name),
                           _witness_func(monoid, "auto", None))


def search_witness(monoid, budget=_common.DEFAULT_TRANSPORT_BUDGET):
    """Consistency witness function for any monoid.

    Like :func:`generic_witness`, but every transport block is solved
    by exhaustive search, so that it is also available for monoids
    without the transportation property.
    Undecided blocks raise :class:`~acyclab.BudgetExceeded`.
    """
    return WitnessFunction("search({0})".format(monoid.name),
                           _witness_func(monoid, "search", budget))


def _natural_join(r, s):
    if r.monoid.kind != _monoid.KIND_BOOLEAN:
        raise UnsupportedMonoid("standard join requires the boolean monoid")
    _check_monoid([r, s])
    shared = shared_attributes(r, s).names
    union = r.attrs.union(s.attrs)
    extra = tuple(name for name in s.names if name not in r.attrs)
    project_extra = _projector(s.attrs, extra)
    # hash join on the shared attributes
    table = _blocks(s, shared)
    project = _projector(r.attrs, shared)
    support = {}
    for t in r:
        for u, _ in table.get(project(t), ()):
            support[t + project_extra(u)] = 1
    return KRelation(union, r.monoid, support)


standard_join = WitnessFunction("standard-join", _natural_join)
"""The natural join of ordinary (boolean) relations."""


def is_witness(t, relations):
    """True iff T[X_i] = R_i for every relation R_i over X_i."""
    for r in relations:
        if not r.attrs.issubset(t.attrs):
            return False
        if r.monoid != t.monoid or marginal(t, r.names) != r:
            return False
    return True


def pairwise_consistent(relations, budget=_common.DEFAULT_TRANSPORT_BUDGET):
    """True iff every pair of the relations is consistent.

    Raises:
        MonoidMismatch: if the relations are over different monoids.
        BudgetExceeded: if some pair is undecided.
    """
    relations = list(relations)
    _check_monoid(relations)
    for r, s in itertools.combinations(relations, 2):
        if consistent(r, s, budget=budget) is None:
            return False
    return True


def _union_attrs(relations):
    attrs = AttributeSet()
    for r in relations:
        attrs = attrs.union(r.attrs)
    return attrs


def _acyclic_witness(relations):
    from .hypergraph import Hypergraph, has_running_intersection
    from .joinexpr import evaluate, sequential
    h = Hypergraph([r.names for r in relations])
    order = has_running_intersection(h)
    if order is None:
        return None
    expr = sequential(order)
    return evaluate(expr, generic_witness(relations[0].monoid), relations)


def _search_global(relations, budget):
    monoid = relations[0].monoid
    union = _union_attrs(relations)
    projections = [_projector(union, r.names) for r in relations]

    # candidate tuples: every projection lies in the support
    candidates = [()]
    names = ()
    for r in relations:
        new_names = names + tuple(n for n in r.names if n not in names)
        common = tuple(n for n in r.names if n in names)
        extra = tuple(n for n in r.names if n not in names)
        table = defaultdict(list)
        p_common = _projector(r.attrs, common)
        p_extra = _projector(r.attrs, extra)
        for t in r:
            table[p_common(t)].append(p_extra(t))
        cur = AttributeSet(union[n] for n in names)
        p_cur = _projector(cur, common)
        candidates = [t + u for t in candidates for u in table.get(p_cur(t), ())]
        names = new_names
    reorder = _projector(AttributeSet(union[n] for n in names), union.names)
    candidates = sorted(reorder(t) for t in candidates)

    keys = [[p(t) for p in projections] for t in candidates]
    last = {}
    for k, row in enumerate(keys):
        for i, key in enumerate(row):
            last[(i, key)] = k
    for i, r in enumerate(relations):
        for key in r:
            if (i, key) not in last:
                return None

    pool = set(w for r in relations for _, w in r.rows())
    choices = []
    for row in keys:
        bounds = [relations[i].weight(key) for i, key in enumerate(row)]
        cands = monoid.below(bounds[0], pool)
        cands = [x for x in cands if all(monoid.leq(x, b) for b in bounds)]
        # nonzero values first, zero last
        choices.append([x for x in reversed(cands) if x != monoid.zero] +
                       [monoid.zero])
    acc = [dict() for _ in relations]
    weights = [monoid.zero] * len(candidates)
    counter = _common.Budget(budget, "global consistency search")

    def assign(k):
        if k == len(candidates):
            return True
        row = keys[k]
        for x in choices[k]:
            counter.tick()
            old = [acc[i].get(key, monoid.zero) for i, key in enumerate(row)]
            new = [monoid._add(o, x) for o in old]
            ok = True
            for i, key in enumerate(row):
                target = relations[i].weight(key)
                if not monoid.leq(new[i], target):
                    ok = False
                elif last[(i, key)] == k and new[i] != target:
                    ok = False
                if not ok:
                    break
            if not ok:
                continue
            for i, key in enumerate(row):
                acc[i][key] = new[i]
            weights[k] = x
            if assign(k + 1):
                return True
            for i, key in enumerate(row):
                acc[i][key] = old[i]
        weights[k] = monoid.zero
        return False

    found = assign(0)
    _logger.debug("global consistency search over %d tuples: %d nodes",
                  len(candidates), counter.used)
    if not found:
        return None
    return KRelation(union, monoid, dict(zip(candidates, weights)))


def globally_consistent(relations, budget=_common.DEFAULT_SEARCH_BUDGET):
    """Find a global consistency witness T with T[X_i] = R_i for all i.

    For monoids with the transportation property over an acyclic schema,
    the relations are joined with :func:`generic_witness` along a running
    intersection ordering and the result is verified. Otherwise
    (or if that result is not a witness while the relations are pairwise
    consistent) a backtracking search assigns weights to the tuples
    whose projections all lie in the supports.

    Args:
        relations (list of KRelation): R_1, ..., R_m.
        budget (int, optional): search budget.

    Returns:
        KRelation or None: the witness, or None if none exists.

    Raises:
        MonoidMismatch: if the relations are over different monoids.
        BudgetExceeded: if the search is undecided within budget.
    """
    relations = list(relations)
    if len(relations) == 0:
        raise ValueError("no relations given")
    _check_monoid(relations)
    monoid = relations[0].monoid
    if monoid.has_transportation_property:
        t = _acyclic_witness(relations)
        if t is not None:
            if is_witness(t, relations):
                return t
            if not pairwise_consistent(relations):
                return None
    t = _search_global(relations, budget)
    if t is not None and not is_witness(t, relations):
        raise RuntimeError("global consistency search produced a non-witness")
    return t
