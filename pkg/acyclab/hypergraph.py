# coding: utf-8

"""acyclab.hypergraph: schemas as hypergraphs, and the tests of
alpha-, beta- and gamma-acyclicity.

Most tests come in two independent flavours (e.g., GYO reduction and
the articulation-set definition for alpha-acyclicity) so that
they can be cross-checked on enumerated hypergraphs.
"""

import itertools
import logging
from collections import Counter, deque, namedtuple
from dataclasses import dataclass

import networkx as nx

from . import _common
from ._common import SchemaError

_logger = logging.getLogger(__name__)

KIND_BETA = "beta"
KIND_GAMMA = "gamma"


class Hypergraph:
    """A hypergraph H = (V, F), identified with a database schema.

    Hyperedges keep their given order; duplicated hyperedges are allowed.
    Each hyperedge has a display label (set notation by default).

    Example:
        >>> h = Hypergraph([["A", "B"], ["B", "C"], ["C", "A"]])
        >>> h.labels
        ('{A,B}', '{B,C}', '{A,C}')

    Args:
        edges (iterable of iterable of str): hyperedges F.
        nodes (iterable of str, optional): node set V.
            Defaults to the union of hyperedges.
        labels (iterable of str, optional): labels of the hyperedges.

    Raises:
        SchemaError: empty hyperedge, hyperedge outside V,
            or duplicated labels.
    """

    def __init__(self, edges, nodes=None, labels=None):
        self._edges = tuple(frozenset(str(v) for v in e) for e in edges)
        for e in self._edges:
            if len(e) == 0:
                raise SchemaError("empty hyperedge")
        covered = frozenset().union(*self._edges)
        if nodes is None:
            self._nodes = covered
        else:
            self._nodes = frozenset(str(v) for v in nodes)
            if not covered <= self._nodes:
                raise SchemaError("hyperedges use undeclared nodes {0}".format(
                    _common.format_nodes(covered - self._nodes)))
        if labels is None:
            self._labels = tuple(_common.format_nodes(e) for e in self._edges)
        else:
            self._labels = tuple(labels)
            if len(self._labels) != len(self._edges):
                raise SchemaError("number of labels does not match hyperedges")
            if len(set(self._labels)) != len(self._labels):
                raise SchemaError("duplicated hyperedge labels")

    @property
    def nodes(self):
        return self._nodes

    @property
    def edges(self):
        return self._edges

    @property
    def labels(self):
        return self._labels

    def label(self, index):
        return self._labels[index]

    def index(self, label):
        """Index of the hyperedge with the given label (or set notation)."""
        if label in self._labels:
            return self._labels.index(label)
        for i, e in enumerate(self._edges):
            if _common.format_nodes(e) == label:
                return i
        raise KeyError(label)

    def sub(self, indices):
        """Sub-hypergraph of the given hyperedges (over their nodes)."""
        indices = list(indices)
        return Hypergraph([self._edges[i] for i in indices],
                          labels=[self._labels[i] for i in indices])

    def __len__(self):
        return len(self._edges)

    def __eq__(self, other):
        return isinstance(other, Hypergraph) and \
            self._nodes == other._nodes and self._edges == other._edges

    def __hash__(self):
        return hash((self._nodes, self._edges))

    def format(self):
        return "{" + ", ".join(_common.format_nodes(e) for e in self._edges) + "}"

    def __repr__(self):
        return "<Hypergraph {0}>".format(self.format())


GYOStep = namedtuple("GYOStep", ["action", "item", "edge"])
GYOStep.__doc__ = """One step of the GYO reduction.

``("node", A, X)``: node A is removed from hyperedge X, the only one containing it.
``("edge", X, Y)``: hyperedge X is removed, being contained in Y
(Y is None if X became empty).
"""


@dataclass(frozen=True)
class WeakCycle:
    """A weak beta- or gamma-cycle Y1, A1, Y2, ..., Yk, Ak, Y1.

    Attributes:
        kind (str): "beta" or "gamma".
        edges (tuple of frozenset): Y1, ..., Yk.
        nodes (tuple of str): A1, ..., Ak.
    """

    kind: str
    edges: tuple
    nodes: tuple

    def __len__(self):
        return len(self.nodes)

    def format(self):
        items = []
        for e, v in zip(self.edges, self.nodes):
            items.append(_common.format_nodes(e))
            items.append(v)
        items.append(_common.format_nodes(self.edges[0]))
        return "(" + ", ".join(items) + ")"


HStarPattern = namedtuple("HStarPattern", ["a", "b", "c", "y1", "y2", "y3"])
HStarPattern.__doc__ = """Nodes A, B, C and hyperedge indices with
Y1 & {A,B,C} = {A,B}, Y2 & {A,B,C} = {A,C} and {A,B,C} <= Y3.
"""


def _check_subset(h, nodes):
    nodes = frozenset(nodes)
    if not nodes <= h.nodes:
        raise SchemaError("nodes {0} not in the hypergraph".format(
            _common.format_nodes(nodes - h.nodes)))
    return nodes


def reduction(h):
    """Remove hyperedges properly contained in another.

    Duplicated hyperedges are kept once (first occurrence).
    """
    kept = []
    for i, e in enumerate(h.edges):
        if any(e < f for f in h.edges):
            continue
        if any(e == h.edges[j] for j in kept):
            continue
        kept.append(i)
    return Hypergraph([h.edges[i] for i in kept], nodes=h.nodes,
                      labels=[h.labels[i] for i in kept])


def restriction(h, nodes):
    """The restriction H|U: reduction of the nonempty X & U over U.

    Raises:
        SchemaError: if U is not a subset of V.
    """
    u = _check_subset(h, nodes)
    edges = [e & u for e in h.edges if e & u]
    return reduction(Hypergraph(edges, nodes=u))


def induced(h, nodes):
    """The induced hypergraph H[S]: nonempty X & S, without reduction.

    Raises:
        SchemaError: if S is not a subset of V.
    """
    s = _check_subset(h, nodes)
    return Hypergraph([e & s for e in h.edges if e & s], nodes=s)


def gaifman(h):
    """Gaifman graph: nodes of H, adjacent iff they share a hyperedge."""
    g = nx.Graph()
    g.add_nodes_from(sorted(h.nodes))
    for e in h.edges:
        g.add_edges_from(itertools.combinations(sorted(e), 2))
    return g


def connected_components(h):
    """Partition of the hyperedges into connected components.

    Returns:
        list of tuple of int: hyperedge indices, ordered by first index.
    """
    g = gaifman(h)
    comp_of = {}
    for cid, comp in enumerate(nx.connected_components(g)):
        for v in comp:
            comp_of[v] = cid
    groups = {}
    for i, e in enumerate(h.edges):
        cid = comp_of[next(iter(e))]
        groups.setdefault(cid, []).append(i)
    return sorted((tuple(group) for group in groups.values()),
                  key=lambda group: group[0])


def is_connected(h):
    return len(connected_components(h)) <= 1


def find_articulation_set(h):
    """Find an articulation set of a reduced hypergraph.

    Returns:
        frozenset or None: an intersection Y of two hyperedges
        such that H|(V - Y) has more components than H.
    """
    n_comp = len(connected_components(h))
    for i, j in itertools.combinations(range(len(h.edges)), 2):
        y = h.edges[i] & h.edges[j]
        if len(y) == 0:
            continue
        rest = restriction(h, h.nodes - y)
        if len(connected_components(rest)) > n_comp:
            return y
    return None


def gyo_reduce(h):
    """Apply GYO reduction to the reduction of H.

    Returns:
        tuple: list of :class:`GYOStep`, and the remaining hyperedges
        (empty iff H is alpha-acyclic).
    """
    red = reduction(h)
    edges = [(label, set(e)) for label, e in zip(red.labels, red.edges)]
    trace = []
    changed = True
    while changed:
        changed = False
        counts = Counter(v for _, e in edges for v in e)
        for v in sorted(counts):
            if counts[v] == 1:
                for label, e in edges:
                    if v in e:
                        e.discard(v)
                        trace.append(GYOStep("node", v, label))
                changed = True
        i = 0
        while i < len(edges):
            label, e = edges[i]
            container = None
            if e:
                container = next((other for k, (other, f) in enumerate(edges)
                                  if k != i and e <= f), None)
            if not e or container is not None:
                trace.append(GYOStep("edge", label, container))
                del edges[i]
                changed = True
            else:
                i += 1
    residue = tuple(frozenset(e) for _, e in edges)
    return trace, residue


def is_alpha_acyclic_gyo(h):
    """Alpha-acyclicity by GYO reduction.

    Returns:
        tuple: (bool, list of :class:`GYOStep`)
    """
    trace, residue = gyo_reduce(h)
    return len(residue) == 0, trace


def is_alpha_acyclic_definitional(h, budget=_common.DEFAULT_SUBSET_BUDGET):
    """Alpha-acyclicity by definition: for every U, if H|U is connected
    and has two or more hyperedges, it has an articulation set.

    Raises:
        BudgetExceeded: if there are too many node subsets.
    """
    red = reduction(h)
    nodes = sorted(red.nodes)
    counter = _common.Budget(budget, "articulation set test")
    for size in range(1, len(nodes) + 1):
        for u in itertools.combinations(nodes, size):
            counter.tick()
            hu = restriction(red, u)
            if len(hu.edges) >= 2 and is_connected(hu):
                if find_articulation_set(hu) is None:
                    _logger.debug("no articulation set on %s",
                                  _common.format_nodes(u))
                    return False
    return True


def is_conformal(h):
    """True iff every maximal clique of the Gaifman graph lies in a hyperedge."""
    g = gaifman(h)
    covered = frozenset().union(*h.edges) if h.edges else frozenset()
    g = g.subgraph(sorted(covered))
    for clique in nx.find_cliques(g):
        c = frozenset(clique)
        if not any(c <= e for e in h.edges):
            return False
    return True


def is_chordal(h):
    """True iff every cycle of length 4 or more in the Gaifman graph has a chord."""
    return nx.is_chordal(gaifman(h))


def has_running_intersection(h, budget=_common.DEFAULT_SEARCH_BUDGET):
    """Find an ordering Y1, ..., Ym of all hyperedges such that
    (Y1 | ... | Y(i-1)) & Yi is contained in some Yj, j < i.

    Returns:
        list of int or None: hyperedge indices in order.

    Raises:
        BudgetExceeded: if undecided within budget.
    """
    edges = h.edges
    m = len(edges)
    dead = set()
    counter = _common.Budget(budget, "running intersection search")

    def extend(order, used, covered):
        if len(order) == m:
            return True
        if used in dead:
            return False
        for i in range(m):
            if i in used:
                continue
            counter.tick()
            shared = covered & edges[i]
            if order and not any(shared <= edges[j] for j in order):
                continue
            order.append(i)
            if extend(order, used | {i}, covered | edges[i]):
                return True
            order.pop()
        dead.add(used)
        return False

    order = []
    if extend(order, frozenset(), frozenset()):
        return order
    return None


def _distinct_edges(h):
    edges = []
    for e in h.edges:
        if e not in edges:
            edges.append(e)
    return edges


def _exclusive(kind, position):
    return kind == KIND_BETA or position < 2


def find_weak_cycle(h, kind=KIND_BETA, budget=_common.DEFAULT_CYCLE_BUDGET):
    """Search a weak beta- or gamma-cycle.

    A weak cycle Y1, A1, ..., Yk, Ak, Y1 (k >= 3) has distinct hyperedges,
    distinct nodes, Ai in Yi & Y(i+1), and exclusive nodes: Ai is in no
    other Yj of the cycle. Every Ai is exclusive in a beta-cycle;
    A1 and A2 are in a gamma-cycle.

    Hyperedges are tried in schema order and nodes in reverse lexical
    order; a cycle is extended before it is closed.

    Args:
        h (Hypergraph): the hypergraph.
        kind (str, optional): "beta" or "gamma".
        budget (int, optional): search budget.

    Returns:
        WeakCycle or None

    Raises:
        BudgetExceeded: if undecided within budget.
    """
    if kind not in (KIND_BETA, KIND_GAMMA):
        raise ValueError("unknown cycle kind: {0}".format(kind))
    edges = _distinct_edges(h)
    counter = _common.Budget(budget, "weak {0}-cycle search".format(kind))
    path_e = []
    path_n = []

    def choose(t):
        # path_e[0..t] and path_n[0..t-1] are fixed; choose path_n[t]
        current = path_e[t]
        for v in sorted(current - set(path_n), reverse=True):
            counter.tick()
            excl = _exclusive(kind, t)
            # extend with a new hyperedge containing v
            if not (excl and any(v in e for e in path_e[:t])):
                path_n.append(v)
                for e in edges:
                    if v not in e or e in path_e:
                        continue
                    if any(path_n[i] in e for i in range(t)
                           if _exclusive(kind, i)):
                        continue
                    path_e.append(e)
                    if choose(t + 1):
                        return True
                    path_e.pop()
                path_n.pop()
            # close the cycle back to the first hyperedge
            if t >= 2 and v in path_e[0] and \
                    not (excl and any(v in e for e in path_e[1:t])):
                path_n.append(v)
                return True
        return False

    for start in edges:
        path_e.append(start)
        if choose(0):
            cycle = WeakCycle(kind, tuple(path_e), tuple(path_n))
            if not verify_weak_cycle(h, cycle):
                raise RuntimeError("invalid weak cycle {0}".format(cycle.format()))
            _logger.debug("weak %s-cycle %s (%d nodes searched)",
                          kind, cycle.format(), counter.used)
            return cycle
        path_e.pop()
    return None


def verify_weak_cycle(h, cycle):
    """Check the defining conditions of a weak cycle on H."""
    k = len(cycle.nodes)
    if k < 3 or len(cycle.edges) != k:
        return False
    if any(e not in h.edges for e in cycle.edges):
        return False
    if len(set(cycle.edges)) != k or len(set(cycle.nodes)) != k:
        return False
    for i, v in enumerate(cycle.nodes):
        succ = (i + 1) % k
        if v not in cycle.edges[i] or v not in cycle.edges[succ]:
            return False
        if _exclusive(cycle.kind, i):
            for j, e in enumerate(cycle.edges):
                if j not in (i, succ) and v in e:
                    return False
    return True


def is_beta_acyclic(h, budget=_common.DEFAULT_CYCLE_BUDGET):
    """True iff H has no weak beta-cycle."""
    return find_weak_cycle(h, KIND_BETA, budget=budget) is None


def is_beta_acyclic_bruteforce(h, budget=_common.DEFAULT_SUBSET_BUDGET):
    """True iff every nonempty set of hyperedges is alpha-acyclic."""
    counter = _common.Budget(budget, "sub-hypergraph enumeration")
    m = len(h.edges)
    for size in range(1, m + 1):
        for indices in itertools.combinations(range(m), size):
            counter.tick()
            acyclic, _ = is_alpha_acyclic_gyo(h.sub(indices))
            if not acyclic:
                return False
    return True


def find_hstar_pattern(h):
    """Find nodes A, B, C with {A,B,C}, {A,B} and {A,C}
    all in the induced hypergraph H[{A,B,C}].

    Returns:
        HStarPattern or None
    """
    for triple in itertools.combinations(sorted(h.nodes), 3):
        abc = frozenset(triple)
        for a in triple:
            b, c = [v for v in triple if v != a]
            ab, ac = frozenset([a, b]), frozenset([a, c])
            y1 = y2 = y3 = None
            for i, e in enumerate(h.edges):
                part = e & abc
                if part == ab and y1 is None:
                    y1 = i
                elif part == ac and y2 is None:
                    y2 = i
                elif part == abc and y3 is None:
                    y3 = i
            if None not in (y1, y2, y3):
                return HStarPattern(a, b, c, y1, y2, y3)
    return None


def is_gamma_acyclic(h, budget=_common.DEFAULT_CYCLE_BUDGET):
    """True iff H has no weak gamma-cycle."""
    return find_weak_cycle(h, KIND_GAMMA, budget=budget) is None


def is_gamma_acyclic_brault_baron(h, budget=_common.DEFAULT_CYCLE_BUDGET):
    """True iff H is beta-acyclic and has no {ABC, AB, AC} pattern
    in any induced hypergraph on three nodes."""
    return is_beta_acyclic(h, budget=budget) and find_hstar_pattern(h) is None


def shortest_edge_path(h, source, targets):
    """Shortest path of hyperedges S1, ..., Sp from hyperedge ``source``
    to any hyperedge in ``targets``, consecutive hyperedges intersecting.

    Returns:
        list of int or None: hyperedge indices.
    """
    targets = set(targets)
    prev = {source: None}
    queue = deque([source])
    while queue:
        i = queue.popleft()
        if i in targets:
            path = []
            while i is not None:
                path.append(i)
                i = prev[i]
            return path[::-1]
        for j, e in enumerate(h.edges):
            if j not in prev and h.edges[i] & e:
                prev[j] = i
                queue.append(j)
    return None


def enumerate_hypergraphs(max_nodes, max_edges):
    """Iterate all hypergraphs with 1 to ``max_edges`` distinct hyperedges
    over the first ``max_nodes`` node names A, B, C, ...

    Isomorphic hypergraphs are not merged.
    """
    names = [chr(ord("A") + i) for i in range(max_nodes)]
    subsets = [frozenset(c) for size in range(1, max_nodes + 1)
               for c in itertools.combinations(names, size)]
    for n_edges in range(1, max_edges + 1):
        for edges in itertools.combinations(subsets, n_edges):
            yield Hypergraph(edges)
