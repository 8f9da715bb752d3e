# coding: utf-8

"""acyclab.theoremlab: counterexample constructions, relation samplers
and the verification suites.

Every construction here is re-checked with the general-purpose
routines of :mod:`acyclab.krelation` (marginals and transport search)
before it is used; nothing is assumed from the construction itself.
"""

import itertools
import json
import logging
from dataclasses import dataclass, field

import numpy as np

from . import _common
from . import hypergraph as hg
from . import joinexpr
from . import monoid as _monoid
from . import preset
from .krelation import Attribute, AttributeSet, KRelation
from .krelation import consistent, generic_witness, globally_consistent
from .krelation import is_witness, marginal, pairwise_consistent
from .krelation import search_witness, standard_join
from ._common import BudgetExceeded, SchemaError, WitnessContractError

_logger = logging.getLogger(__name__)

DEFAULT_DOMAIN = ("0", "1")
ADVERSARY_DOMAIN = ("f", "t")

TAG_STRUCTURAL = "structural"
TAG_LOCAL_GLOBAL = "local-global"
TAG_GAMMA_MONOTONE = "gamma-monotone"
TAG_TP = "tp"
TAG_LAWS = "laws"
TAG_TRANSPORT = "transport"


@dataclass
class VerificationReport:
    """Outcome of a verification suite.

    Attributes:
        tag (str): suite name.
        seed (int): seed of the trial stream.
        params (dict): suite inputs (schema, monoid, ...).
        trials (int): number of trials, forced instances included.
        failures (list of dict): each with a reproducible instance.
        undecided (int): trials undecided within budget.
        counts (dict): suite-specific counters and observations.
        expect_failure (bool or None): expected outcome;
            None if the suite cannot tell.
    """

    tag: str
    seed: object = None
    params: dict = field(default_factory=dict)
    trials: int = 0
    failures: list = field(default_factory=list)
    undecided: int = 0
    counts: dict = field(default_factory=dict)
    expect_failure: object = False

    def count(self, key, n=1):
        self.counts[key] = self.counts.get(key, 0) + n

    def add_failure(self, **instance):
        self.failures.append(instance)

    @property
    def failed(self):
        return len(self.failures) > 0

    def exit_status(self):
        """Exit code: 0 if the observed outcome matches the expected one,
        1 on mismatch, 2 if undecided."""
        if self.expect_failure is None:
            return _common.EXIT_OK if self.failed else _common.EXIT_UNDECIDED
        elif self.expect_failure:
            if self.failed:
                return _common.EXIT_OK
            elif self.undecided > 0:
                return _common.EXIT_UNDECIDED
            return _common.EXIT_MISMATCH
        else:
            if self.failed:
                return _common.EXIT_MISMATCH
            elif self.undecided > 0:
                return _common.EXIT_UNDECIDED
            return _common.EXIT_OK

    def to_dict(self):
        return {"tag": self.tag, "seed": self.seed, "params": self.params,
                "trials": self.trials, "failures": self.failures,
                "undecided": self.undecided, "counts": self.counts,
                "expect_failure": self.expect_failure}

    def to_text(self):
        """JSON text with sorted keys."""
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def summary(self, max_failures=3):
        if self.expect_failure is None:
            expected = "unknown"
        else:
            expected = "failure" if self.expect_failure else "no failure"
        lines = ["suite: {0}".format(self.tag)]
        for key in sorted(self.params):
            lines.append("{0}: {1}".format(key, self.params[key]))
        lines.append("seed: {0}".format(self.seed))
        lines.append("trials: {0}".format(self.trials))
        lines.append("failures: {0}".format(len(self.failures)))
        lines.append("undecided: {0}".format(self.undecided))
        for key in sorted(self.counts):
            lines.append("  {0}: {1}".format(key, self.counts[key]))
        lines.append("expected: {0}".format(expected))
        for i, instance in enumerate(self.failures[:max_failures]):
            lines.append("failure {0}: {1}".format(
                i + 1, json.dumps(instance, sort_keys=True)))
        return "\n".join(lines)


def _dump(relations):
    from .document import relation_to_dict
    return [None if r is None else relation_to_dict(r) for r in relations]


def _attrs(names, domain):
    return AttributeSet(Attribute(v, domain) for v in names)


def _nonzero(m, a=None):
    if a is None:
        a = next(x for x in m.probe_pool() if x != m.zero)
    m.check(a)
    if a == m.zero:
        raise ValueError("the weight must be nonzero")
    return a


def _cycle_roles(schema):
    """Nodes v0, ..., v(k-1) and hyperedge indices e0, ..., e(k-1) with
    e_i = {v_i, v_(i+1)}, if the schema is a graph cycle of length >= 3."""
    edges = schema.edges
    k = len(edges)
    if k < 3 or any(len(e) != 2 for e in edges) or len(set(edges)) != k:
        return None
    if len(frozenset().union(*edges)) != k:
        return None
    order = [0]
    first, second = sorted(edges[0])
    nodes = [first, second]
    while len(order) < k:
        cur = nodes[-1]
        nxt = [i for i, e in enumerate(edges) if cur in e and i not in order]
        if len(nxt) != 1:
            return None
        order.append(nxt[0])
        nodes.append(next(iter(edges[nxt[0]] - {cur})))
    if nodes[-1] != nodes[0]:
        return None
    return nodes[:-1], order


def cycle_counterexample(schema=None, m=None, a=None):
    """Pairwise consistent, globally inconsistent relations
    over a cycle of binary hyperedges.

    Every hyperedge {v_i, v_(i+1)} gets the "equal" relation
    {(0,0), (1,1)}, except the second one which gets the "different"
    relation {(0,1), (1,0)}; all weights are ``a``.
    For the triangle this is {A,B}: equal, {B,C}: different, {C,A}: equal.

    Returns:
        tuple: (schema, list of KRelation in schema order)

    Raises:
        SchemaError: if the schema is not a cycle of binary hyperedges.
    """
    if schema is None:
        schema = preset.triangle()
    if m is None:
        m = _monoid.BooleanMonoid()
    a = _nonzero(m, a)
    roles = _cycle_roles(schema)
    if roles is None:
        raise SchemaError("{0} is not a cycle of binary hyperedges".format(
            schema.format()))
    nodes, order = roles
    k = len(nodes)
    relations = [None] * k
    for pos, index in enumerate(order):
        u, v = nodes[pos], nodes[(pos + 1) % k]
        if pos == 1:
            rows = {("0", "1"): a, ("1", "0"): a}
        else:
            rows = {("0", "0"): a, ("1", "1"): a}
        relations[index] = KRelation(_attrs([u, v], DEFAULT_DOMAIN), m, rows)
    return schema, relations


def triangle_counterexample(m=None, a=None):
    """Boolean relations over the triangle: R1(A,B) = {(0,0),(1,1)},
    R2(B,C) = {(0,1),(1,0)}, R3(C,A) = {(0,0),(1,1)}.

    They are pairwise consistent but not globally consistent.

    Returns:
        tuple: (schema, [R1, R2, R3])
    """
    return cycle_counterexample(preset.triangle(), m=m, a=a)


def _path3_roles(schema):
    edges = schema.edges
    if len(edges) != 3 or any(len(e) != 2 for e in edges):
        return None
    for x1, x2, x3 in itertools.permutations(range(3)):
        p = edges[x1] & edges[x2]
        q = edges[x2] & edges[x3]
        if len(p) == 1 and len(q) == 1 and p != q and \
                not edges[x1] & edges[x3]:
            a1 = next(iter(edges[x1] - p))
            a4 = next(iter(edges[x3] - q))
            return (x1, x2, x3), (a1, next(iter(p)), next(iter(q)), a4)
    return None


def p3_counterexample(m, instance, schema=None):
    """Pairwise consistent, globally inconsistent relations over the
    3-path, built from a transport instance (b, c) without solution.

    The relations are block diagonal::

        R1(A1,A2) = {(a_i,x1): b_i} + {(a'_j,x2): c_j}
        R2(A2,A3) = {(x1,y1): sum(b), (x2,y2): sum(c)}
        R3(A3,A4) = {(y1,d_j): c_j} + {(y2,d'_i): b_i}

    Every pair is consistent (R1 and R3 match by swapping the blocks),
    while a global witness would solve (b, c) on the (x1,y1) block.

    Args:
        m (~acyclab.monoid.Monoid): the monoid.
        instance (~acyclab.monoid.TransportInstance): balanced instance.
        schema (~acyclab.hypergraph.Hypergraph, optional):
            a 3-path; defaults to :func:`acyclab.preset.path` (3).

    Returns:
        tuple: (schema, [R1, R2, R3] in schema order)
    """
    if schema is None:
        schema = preset.path(3)
    roles = _path3_roles(schema)
    if roles is None:
        raise SchemaError("{0} is not a 3-path".format(schema.format()))
    (x1, x2, x3), (n1, n2, n3, n4) = roles
    b, c = instance.b, instance.c
    if not instance.balanced(m):
        raise ValueError("transport instance is not balanced")
    rows_a = ["a{0}".format(i + 1) for i in range(len(b))]
    cols_a = ["a'{0}".format(j + 1) for j in range(len(c))]
    cols_d = ["d{0}".format(j + 1) for j in range(len(c))]
    rows_d = ["d'{0}".format(i + 1) for i in range(len(b))]

    r1 = {}
    for name, w in zip(rows_a, b):
        r1[(name, "x1")] = w
    for name, w in zip(cols_a, c):
        r1[(name, "x2")] = w
    r2 = {("x1", "y1"): m.sum(b), ("x2", "y2"): m.sum(c)}
    r3 = {}
    for name, w in zip(cols_d, c):
        r3[("y1", name)] = w
    for name, w in zip(rows_d, b):
        r3[("y2", name)] = w

    relations = [None] * 3
    relations[x1] = KRelation(AttributeSet(
        [Attribute(n1, tuple(rows_a + cols_a)), Attribute(n2, ("x1", "x2"))]), m, r1)
    relations[x2] = KRelation(AttributeSet(
        [Attribute(n2, ("x1", "x2")), Attribute(n3, ("y1", "y2"))]), m, r2)
    relations[x3] = KRelation(AttributeSet(
        [Attribute(n3, ("y1", "y2")), Attribute(n4, tuple(cols_d + rows_d))]), m, r3)
    return schema, relations


def nsg_p3_counterexample():
    """:func:`p3_counterexample` over the numerical semigroup <3,5>
    with b = (5,5,5) and c = (3,3,9)."""
    m = _monoid.NumericalSemigroup([3, 5])
    return p3_counterexample(m, _monoid.TransportInstance((5, 5, 5), (3, 3, 9)))


def forced_collections(schema, m, budget=_common.DEFAULT_TRANSPORT_BUDGET):
    """Known pairwise consistent, globally inconsistent collections
    over the schema.

    Returns:
        list of tuple: (name, relations)
    """
    forced = []
    if _cycle_roles(schema) is not None:
        _, rels = cycle_counterexample(schema, m)
        forced.append(("cycle", rels))
    if not m.has_transportation_property and _path3_roles(schema) is not None:
        probe = _monoid.probe_transportation_property(
            m, 3, 3, instance_budget=budget)
        if probe.counterexample is not None:
            _, rels = p3_counterexample(m, probe.counterexample, schema)
            forced.append(("p3/" + probe.counterexample.format(m), rels))
    return forced


@dataclass(frozen=True)
class Adversary:
    """Relations defeating a given witness function W on the
    expression ((Y1 * Y2) * Y3).

    R1, R2, R3 are pairwise consistent; S1 and S2 are two different
    witnesses of (R1, R2); R3 is chosen against W(R1, R2), so that
    W(R1, R2) and R3 are inconsistent.

    Attributes:
        subcase (int): 1 if W(R1,R2)[ABC] = S1[ABC] (R3 is S2-shaped),
            otherwise 2 (R3 is S1-shaped).
        edges (tuple of int): hyperedge indices of Y1, Y2, Y3.
    """

    r1: KRelation
    r2: KRelation
    r3: KRelation
    s1: KRelation
    s2: KRelation
    subcase: int
    edges: tuple
    joined: KRelation

    @property
    def relations(self):
        return self.r1, self.r2, self.r3

    def __iter__(self):
        return iter(self.relations)

    @property
    def expression(self):
        y1, y2, y3 = self.edges
        return joinexpr.Join(joinexpr.Join(joinexpr.Leaf(y1), joinexpr.Leaf(y2)),
                             joinexpr.Leaf(y3))

    def collection(self, schema):
        """Relations indexed by the hyperedges of the schema;
        None for hyperedges outside the expression."""
        rels = [None] * len(schema.edges)
        for i, r in zip(self.edges, self.relations):
            rels[i] = r
        return rels

    def verify(self, witness):
        """Re-check the claims against the witness function."""
        if not pairwise_consistent(self.relations):
            return False
        if not (is_witness(self.s1, [self.r1, self.r2]) and
                is_witness(self.s2, [self.r1, self.r2])):
            return False
        if self.s1 == self.s2:
            return False
        joined = witness(self.r1, self.r2)
        return consistent(joined, self.r3) is None


def gamma_adversarial(witness, m, schema, pattern=None, a=None):
    """Relations on a beta-acyclic, gamma-cyclic pattern
    Y1 & {A,B,C} = {A,B}, Y2 & {A,B,C} = {A,C}, {A,B,C} <= Y3,
    against which the witness function fails on ((Y1 * Y2) * Y3).

    All attributes range over {f, t}; attributes outside {A,B,C}
    are padded with f.

    Args:
        witness (~acyclab.krelation.WitnessFunction): W to defeat.
        m (~acyclab.monoid.Monoid): the monoid.
        schema (~acyclab.hypergraph.Hypergraph): the schema.
        pattern (~acyclab.hypergraph.HStarPattern, optional):
            roles; searched with :func:`~acyclab.hypergraph.find_hstar_pattern`
            if not given.
        a (optional): nonzero weight.

    Returns:
        Adversary

    Raises:
        SchemaError: if the schema has no such pattern.
        WitnessContractError: if W(R1, R2) is not a witness of R1 and R2.
    """
    if pattern is None:
        pattern = hg.find_hstar_pattern(schema)
        if pattern is None:
            raise SchemaError("no {A,B,C}, {A,B}, {A,C} pattern in "
                              + schema.format())
    a = _nonzero(m, a)
    na, nb, nc = pattern.a, pattern.b, pattern.c
    abc = {na, nb, nc}
    y1, y2, y3 = (schema.edges[i] for i in (pattern.y1, pattern.y2, pattern.y3))
    pad1 = sorted(y1 - abc)
    pad2 = sorted(y2 - abc)
    pad3 = sorted(y3 - abc)
    pad12 = sorted(set(pad1) | set(pad2))

    def rel(names, rows):
        support = {tuple(row) + ("f",) * (len(names) - len(row)): a
                   for row in rows}
        return KRelation(_attrs(names, ADVERSARY_DOMAIN), m, support)

    r1 = rel([na, nb] + pad1, [("f", "f"), ("f", "t")])
    r2 = rel([na, nc] + pad2, [("f", "f"), ("f", "t")])
    s_names = [na, nb, nc] + pad12
    s1 = rel(s_names, [("f", "f", "f"), ("f", "t", "t")])
    s2 = rel(s_names, [("f", "f", "t"), ("f", "t", "f")])

    joined = witness(r1, r2)
    if set(joined.names) != set(r1.names) | set(r2.names) or \
            not is_witness(joined, [r1, r2]):
        raise WitnessContractError(
            "{0} returned a non-witness for consistent relations".format(witness))
    abc_names = [na, nb, nc]
    if marginal(joined, abc_names) == marginal(s1, abc_names):
        subcase = 1
        r3 = rel([na, nb, nc] + pad3, [("f", "f", "t"), ("f", "t", "f")])
    else:
        subcase = 2
        r3 = rel([na, nb, nc] + pad3, [("f", "f", "f"), ("f", "t", "t")])
    _logger.debug("gamma adversary against %s: sub-case %d", witness, subcase)
    return Adversary(r1, r2, r3, s1, s2, subcase,
                     (pattern.y1, pattern.y2, pattern.y3), joined)


def hstar_adversarial(witness, m, a=None):
    """:func:`gamma_adversarial` on H* = {A,B,C}, {A,B}, {A,C}
    (no padding attributes)."""
    return gamma_adversarial(witness, m, preset.hstar(), a=a)


def walk_adversary(schema, relations, check=True):
    """Connected sequential expression that is not monotone for any
    witness function on a pairwise consistent, globally inconsistent
    collection: a covering walk over all hyperedges.

    If it were monotone, its value would be a global witness.

    Returns:
        ~acyclab.joinexpr.JoinExpr or None: None if the schema
        is not connected.

    Raises:
        ValueError: if ``check`` and the collection is not
            pairwise consistent or is globally consistent.
    """
    if check:
        if not pairwise_consistent(relations):
            raise ValueError("relations are not pairwise consistent")
        if globally_consistent(relations) is not None:
            raise ValueError("relations are globally consistent")
    walk = joinexpr.covering_walk(schema)
    if walk is None:
        return None
    return joinexpr.sequential(walk)


def failure_step(schema, order):
    """First j >= 1 such that Y = (X1 | ... | Xj) & X(j+1) is nonempty
    and contained in none of X1, ..., Xj; None if there is none."""
    covered = frozenset()
    for j in range(1, len(order)):
        covered = covered | schema.edges[order[j - 1]]
        y = covered & schema.edges[order[j]]
        if y and not any(y <= schema.edges[k] for k in order[:j]):
            return j
    return None


def gamma_cycle_from_failure(schema, order, step):
    """Weak gamma-cycle from a failing step of a connected sequential
    expression X1, ..., Xm.

    With Y = (X1 | ... | Xj) & X(j+1) contained in no Xk (k <= j),
    take Xk maximizing |Xk & Y|, a node A1 in Y - Xk, a shortest path
    S1 = Xk, ..., Sp of earlier hyperedges ending at one containing A1,
    a node A2 in (Xk & Y) - Sp, the last Sn (n < p) containing A2, and
    B_i in S_i & S_(i+1). The cycle is
    (Sp, A1, X(j+1), A2, Sn, Bn, S(n+1), ..., B(p-1), Sp).

    Args:
        schema (~acyclab.hypergraph.Hypergraph): the schema.
        order (list of int): hyperedge indices X1, ..., Xm.
        step (int): j, the number of hyperedges joined before the failure.

    Returns:
        ~acyclab.hypergraph.WeakCycle

    Raises:
        ValueError: if the step does not satisfy the precondition.
    """
    edges = schema.edges
    prev = list(dict.fromkeys(order[:step]))
    nxt = edges[order[step]]
    covered = frozenset().union(*[edges[i] for i in prev])
    y = covered & nxt
    if not y or any(y <= edges[i] for i in prev):
        raise ValueError("step {0} is not a failing step".format(step))

    k = max(prev, key=lambda i: (len(edges[i] & y), -prev.index(i)))
    a1 = sorted(y - edges[k])[0]
    sub = schema.sub(prev)
    targets = [pos for pos, i in enumerate(prev) if a1 in edges[i]]
    path = hg.shortest_edge_path(sub, prev.index(k), targets)
    path = [prev[pos] for pos in path]
    s = [edges[i] for i in path]
    p = len(s) - 1
    a2 = sorted((edges[k] & y) - s[p])[0]
    n = max(i for i in range(p) if a2 in s[i])
    bs = [sorted(s[i] & s[i + 1])[0] for i in range(n, p)]

    cycle = hg.WeakCycle(hg.KIND_GAMMA,
                         tuple([s[p], nxt] + s[n:p]),
                         tuple([a1, a2] + bs))
    if not hg.verify_weak_cycle(schema, cycle):
        raise RuntimeError("constructed cycle {0} is invalid".format(cycle.format()))
    return cycle


def _weights(m):
    return [x for x in m.probe_pool() if x != m.zero][:2]


def sample_globally_consistent(schema, m, seed, size=4, domain=DEFAULT_DOMAIN):
    """Marginals onto the hyperedges of a random relation T
    over all nodes; globally consistent by construction.

    Args:
        schema (~acyclab.hypergraph.Hypergraph): the schema.
        m (~acyclab.monoid.Monoid): the monoid.
        seed (int): random seed.
        size (int, optional): number of random tuples drawn for T.
        domain (tuple of str, optional): domain of every attribute.

    Returns:
        list of KRelation: in schema order.
    """
    rng = np.random.default_rng(seed)
    names = sorted(schema.nodes)
    support = {}
    for _ in range(size):
        t = tuple(domain[int(i)] for i in rng.integers(0, len(domain), len(names)))
        w = m.sample_nonzero(rng)
        support[t] = m.add(support[t], w) if t in support else w
    t_rel = KRelation(_attrs(names, domain), m, support)
    return [marginal(t_rel, sorted(e)) for e in schema.edges]


def sample_pairwise_consistent(schema, m, seed, budget=2000, size=2,
                               domain=DEFAULT_DOMAIN):
    """Rejection sampling of independent random relations (one per
    hyperedge, small weights) until they are pairwise consistent.

    Raises:
        BudgetExceeded: if no sample passes within ``budget`` attempts.
    """
    rng = np.random.default_rng(seed)
    weights = _weights(m)
    for _ in range(budget):
        relations = []
        for e in schema.edges:
            names = sorted(e)
            support = {}
            for _ in range(int(rng.integers(1, size + 1))):
                t = tuple(domain[int(i)]
                          for i in rng.integers(0, len(domain), len(names)))
                w = weights[int(rng.integers(0, len(weights)))]
                support[t] = m.add(support[t], w) if t in support else w
            relations.append(KRelation(_attrs(names, domain), m, support))
        try:
            if pairwise_consistent(relations):
                return relations
        except BudgetExceeded:
            continue
    raise BudgetExceeded("pairwise consistent sampling undecided within "
                         "budget {0}".format(budget), budget)


def _sample_trial(schema, m, attempt, trial_seed, report):
    if attempt % 2 == 0:
        try:
            return sample_pairwise_consistent(schema, m, trial_seed)
        except BudgetExceeded:
            report.count("rejection_exhausted")
            return None
    return sample_globally_consistent(schema, m, trial_seed)


def _consistent_samples(schema, m, trials, seed, report, max_attempts=None):
    """Yield (trial, seed, relations) for ``trials`` pairwise consistent
    collections, drawn alternately by rejection sampling and as
    marginals of a random relation.

    Only pairwise consistent collections count towards ``trials``.
    If ``max_attempts`` draws (default 4 * trials) do not give enough
    of them, the shortfall is counted as ``sampling_exhausted``
    and as undecided trials.
    """
    if max_attempts is None:
        max_attempts = 4 * trials
    rng = np.random.default_rng(seed)
    checked = 0
    attempt = 0
    while checked < trials and attempt < max_attempts:
        trial_seed = int(rng.integers(0, 2 ** 31))
        relations = _sample_trial(schema, m, attempt, trial_seed, report)
        attempt += 1
        if relations is None:
            continue
        try:
            if not pairwise_consistent(relations):
                continue
        except BudgetExceeded:
            report.count("sampling_undecided")
            continue
        report.trials += 1
        report.count("pairwise_consistent")
        yield checked, trial_seed, relations
        checked += 1
    report.counts["attempts"] = attempt
    if checked < trials:
        report.counts["sampling_exhausted"] = trials - checked
        report.undecided += trials - checked
        _logger.warning("%d of %d pairwise consistent samples after %d attempts",
                        checked, trials, attempt)


def verify_local_to_global(schema, m, trials=200, seed=0,
                           budget=_common.DEFAULT_SEARCH_BUDGET):
    """Check that pairwise consistent collections over the schema
    are globally consistent.

    Known counterexamples (cycles of binary hyperedges; the 3-path over
    monoids without the transportation property) are always included.
    Random collections are drawn alternately by rejection sampling
    and as marginals of a random relation.

    Returns:
        VerificationReport: a failure for each pairwise consistent,
        globally inconsistent collection.
    """
    report = VerificationReport(TAG_LOCAL_GLOBAL, seed=seed, params={
        "schema": schema.format(), "monoid": m.name})
    alpha, _ = hg.is_alpha_acyclic_gyo(schema)
    forced = forced_collections(schema, m)
    if forced:
        report.expect_failure = True
    elif alpha and m.has_transportation_property:
        report.expect_failure = False
    else:
        report.expect_failure = None
    report.counts["forced"] = len(forced)

    for name, relations in forced:
        report.trials += 1
        if not pairwise_consistent(relations):
            raise RuntimeError("forced instance {0} is not pairwise consistent".format(name))
        try:
            witness = globally_consistent(relations, budget=budget)
        except BudgetExceeded:
            report.undecided += 1
            continue
        if witness is None:
            report.add_failure(instance=name, relations=_dump(relations))

    for trial, trial_seed, relations in _consistent_samples(
            schema, m, trials, seed, report):
        try:
            witness = globally_consistent(relations, budget=budget)
        except BudgetExceeded:
            report.undecided += 1
            continue
        if witness is None:
            _logger.debug("trial %d: pairwise but not globally consistent", trial)
            report.add_failure(trial=trial, seed=trial_seed,
                               relations=_dump(relations))
    _logger.info("local-global on %s over %s: %d failures, %d undecided",
                 schema.format(), m.name, len(report.failures), report.undecided)
    return report


def _structural_checks(h):
    failures = []
    gyo, _ = hg.is_alpha_acyclic_gyo(h)
    conformal_chordal = hg.is_conformal(h) and hg.is_chordal(h)
    rip = hg.has_running_intersection(h) is not None
    definitional = hg.is_alpha_acyclic_definitional(h)
    if not gyo == conformal_chordal == rip == definitional:
        failures.append({"check": "alpha", "gyo": gyo,
                         "conformal_chordal": conformal_chordal,
                         "running_intersection": rip,
                         "definitional": definitional})
    beta = hg.is_beta_acyclic(h)
    brute = hg.is_beta_acyclic_bruteforce(h)
    if beta != brute:
        failures.append({"check": "beta", "weak_cycle": beta, "bruteforce": brute})
    gamma = hg.is_gamma_acyclic(h)
    bb = hg.is_gamma_acyclic_brault_baron(h)
    if gamma != bb:
        failures.append({"check": "gamma", "weak_cycle": gamma,
                         "brault_baron": bb})
    if (gamma and not beta) or (beta and not gyo):
        failures.append({"check": "hierarchy", "alpha": gyo, "beta": beta,
                         "gamma": gamma})
    if beta or gamma:
        m = len(h.edges)
        for size in range(1, m):
            for indices in itertools.combinations(range(m), size):
                sub = h.sub(indices)
                if beta and not hg.is_beta_acyclic(sub):
                    failures.append({"check": "beta-hereditary",
                                     "sub": sub.format()})
                if gamma and not hg.is_gamma_acyclic(sub):
                    failures.append({"check": "gamma-hereditary",
                                     "sub": sub.format()})
    return (gyo, beta, gamma), failures


def verify_structural_equivalences(max_nodes=4, max_edges=4):
    """Cross-check the acyclicity tests over all enumerated hypergraphs.

    Checks that GYO, conformal and chordal, running intersection and the
    articulation-set definition agree; that weak beta-cycle search agrees
    with the sub-hypergraph definition; that weak gamma-cycle search agrees
    with the Brault-Baron test; the hierarchy gamma => beta => alpha;
    and that beta- and gamma-acyclicity are hereditary.
    """
    report = VerificationReport(TAG_STRUCTURAL, params={
        "max_nodes": max_nodes, "max_edges": max_edges})
    for key in ("hypergraphs", "alpha_acyclic", "beta_acyclic", "gamma_acyclic"):
        report.counts[key] = 0
    for h in hg.enumerate_hypergraphs(max_nodes, max_edges):
        report.trials += 1
        report.count("hypergraphs")
        try:
            (alpha, beta, gamma), failures = _structural_checks(h)
        except BudgetExceeded:
            report.undecided += 1
            continue
        report.count("alpha_acyclic", int(alpha))
        report.count("beta_acyclic", int(beta))
        report.count("gamma_acyclic", int(gamma))
        for failure in failures:
            report.add_failure(hypergraph=h.format(), **failure)
    _logger.info("structural equivalences on %d hypergraphs: %d failures",
                 report.counts["hypergraphs"], len(report.failures))
    return report


def _default_witnesses(m):
    if m.has_transportation_property:
        witnesses = [generic_witness(m)]
        if m.kind == _monoid.KIND_BOOLEAN:
            witnesses.append(standard_join)
        return witnesses
    return [search_witness(m)]


def _record_nonmonotone(report, schema, m, expr, witness, relations,
                        failing, **extra):
    order = joinexpr.leaves(expr)
    step = len(joinexpr.leaves(failing.left))
    cycle = None
    if m.has_transportation_property and joinexpr.is_sequential(expr):
        try:
            cycle = gamma_cycle_from_failure(schema, order, step).format()
        except (ValueError, RuntimeError) as e:
            _logger.warning("no gamma-cycle for %s: %s",
                            joinexpr.format(expr, schema), e)
    report.add_failure(expression=joinexpr.format(expr, schema),
                       witness=witness.name,
                       failing=joinexpr.format(failing, schema),
                       gamma_cycle=cycle,
                       relations=_dump(relations), **extra)


def verify_gamma_monotonicity(schema, m, trials=200, max_len=4, seed=0,
                              witnesses=None,
                              budget=_common.DEFAULT_TRANSPORT_BUDGET):
    """Check that connected sequential expressions are monotone
    on pairwise consistent collections.

    Monoids with the transportation property are checked with their
    generic witness function (and the standard join for booleans),
    other monoids with :func:`~acyclab.krelation.search_witness`.
    Adversarial instances are always included when the schema allows:
    the gamma adversary on beta-acyclic {A,B,C}, {A,B}, {A,C} patterns,
    and covering walks over known counterexample collections.
    Failures on monoids with the transportation property carry the
    weak gamma-cycle built from the failing step.
    ``trials`` is the number of sampled pairwise consistent collections.

    Returns:
        VerificationReport
    """
    if witnesses is None:
        witnesses = _default_witnesses(m)
    report = VerificationReport(TAG_GAMMA_MONOTONE, seed=seed, params={
        "schema": schema.format(), "monoid": m.name, "max_len": max_len,
        "witnesses": ",".join(w.name for w in witnesses)})
    exprs = list(joinexpr.enumerate_connected_sequential(schema, max_len))
    report.counts["expressions"] = len(exprs)

    forced = []
    pattern = hg.find_hstar_pattern(schema)
    if pattern is not None and hg.is_beta_acyclic(schema):
        for w in witnesses:
            adv = gamma_adversarial(w, m, schema, pattern)
            if not adv.verify(w):
                raise RuntimeError("gamma adversary does not verify against "
                                   + w.name)
            forced.append(("gamma-adversary", adv.expression,
                           adv.collection(schema), [w]))
    for name, relations in forced_collections(schema, m):
        expr = walk_adversary(schema, relations, check=False)
        if expr is not None:
            forced.append((name, expr, relations, witnesses))
    report.counts["forced"] = len(forced)

    if forced:
        report.expect_failure = True
    elif m.has_transportation_property and hg.is_gamma_acyclic(schema):
        report.expect_failure = False
    else:
        report.expect_failure = None

    for name, expr, relations, ws in forced:
        for w in ws:
            report.trials += 1
            try:
                result = joinexpr.is_monotone_wrt(expr, w, relations, budget=budget)
            except BudgetExceeded:
                report.undecided += 1
                continue
            if not result.monotone:
                _record_nonmonotone(report, schema, m, expr, w, relations,
                                    result.failing, instance=name)

    for trial, trial_seed, relations in _consistent_samples(
            schema, m, trials, seed, report):
        for expr in exprs:
            for w in witnesses:
                try:
                    result = joinexpr.is_monotone_wrt(expr, w, relations,
                                                      budget=budget)
                except BudgetExceeded:
                    report.undecided += 1
                    continue
                if not result.monotone:
                    _record_nonmonotone(report, schema, m, expr, w, relations,
                                        result.failing, trial=trial,
                                        seed=trial_seed)
    _logger.info("gamma monotonicity on %s over %s: %d failures, %d undecided",
                 schema.format(), m.name, len(report.failures), report.undecided)
    return report


def verify_tp_characterization(m, trials=200, seed=0):
    """Cross-check three observations on the 3-path against the
    transportation property of the monoid: a transport counterexample
    is found, local-to-global consistency fails, and a connected
    sequential expression fails to be monotone.
    All three hold iff the monoid lacks the transportation property.
    """
    report = VerificationReport(TAG_TP, seed=seed, params={"monoid": m.name})
    p3 = preset.path(3)
    probe = _monoid.probe_transportation_property(m, 3, 3)
    lg = verify_local_to_global(p3, m, trials=trials, seed=seed)
    gm = verify_gamma_monotonicity(p3, m, trials=trials, max_len=3, seed=seed)
    observed = {"transport_counterexample": probe.counterexample is not None,
                "local_global_failure": lg.failed,
                "gamma_monotone_failure": gm.failed}
    expected = not m.has_transportation_property
    report.trials = 3
    report.undecided = probe.undecided + lg.undecided + gm.undecided
    report.counts.update(observed)
    report.counts["has_transportation_property"] = m.has_transportation_property
    if probe.counterexample is not None:
        report.counts["counterexample"] = probe.counterexample.format(m)
    for key in sorted(observed):
        if observed[key] != expected:
            report.add_failure(observation=key, observed=observed[key],
                               expected=expected)
    return report


def verify_monoid_laws(m, samples=10000, seed=0):
    """Sample associativity, commutativity, neutrality and positivity."""
    report = VerificationReport(TAG_LAWS, seed=seed, params={"monoid": m.name})
    report.trials = samples
    for law, x, y, z in _monoid.check_laws(m, samples=samples, seed=seed):
        report.add_failure(law=law, x=m.format(x), y=m.format(y), z=m.format(z))
    return report


def _random_instance(m, rng, max_size):
    rows = int(rng.integers(1, max_size + 1))
    cols = int(rng.integers(1, max_size + 1))
    grid = [[m.sample(rng) for _ in range(cols)] for _ in range(rows)]
    matrix = _monoid.TransportMatrix(grid)
    return _monoid.TransportInstance(matrix.row_sums(m), matrix.column_sums(m))


def verify_transport_solvers(m, trials=1000, seed=0, max_size=6,
                             budget=_common.DEFAULT_TRANSPORT_BUDGET):
    """Solve random balanced instances and check row and column sums.

    Small instances (3 x 3 or less) are also solved by exhaustive search,
    and both solvers must agree on the existence of a solution.
    Monoids without the transportation property are probed for
    a counterexample, which is recorded in the counts.
    """
    report = VerificationReport(TAG_TRANSPORT, seed=seed, params={
        "monoid": m.name, "max_size": max_size})
    rng = np.random.default_rng(seed)
    if not m.has_transportation_property:
        max_size = min(max_size, 3)
    for trial in range(trials):
        report.trials += 1
        inst = _random_instance(m, rng, max_size)
        try:
            sol = _monoid.solve_transport(m, inst, budget=budget)
            if sol is None or not sol.check(m, inst):
                report.add_failure(trial=trial, instance=inst.format(m))
                continue
            if max(inst.shape) <= 3:
                report.count("cross_checked")
                found = _monoid.search_transport(m, inst, budget=budget)
                if found is None or not found.check(m, inst):
                    report.add_failure(trial=trial, instance=inst.format(m),
                                       solver="search")
        except BudgetExceeded:
            report.undecided += 1
    if not m.has_transportation_property:
        probe = _monoid.probe_transportation_property(m, 3, 3)
        if probe.counterexample is not None:
            report.counts["counterexample"] = probe.counterexample.format(m)
        if m == _monoid.NumericalSemigroup([3, 5]):
            known = _monoid.TransportInstance((5, 5, 5), (3, 3, 9))
            if _monoid.solve_transport(m, known, budget=budget) is not None:
                report.add_failure(instance=known.format(m), solver="search",
                                   expected="no solution")
    return report
