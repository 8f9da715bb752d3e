# coding: utf-8

"""acyclab.preset is a submodule to provide the named schemas
that frequently appear in the theory of acyclic hypergraphs."""

from .hypergraph import Hypergraph


def triangle():
    """The triangle schema {A,B}, {B,C}, {C,A}: alpha-cyclic, since
    it is chordal but not conformal.

    Returns:
        :class:`~acyclab.hypergraph.Hypergraph`
    """
    return Hypergraph([("A", "B"), ("B", "C"), ("C", "A")])


def four_cycle():
    """The 4-cycle {A,B}, {B,C}, {C,D}, {D,A}: alpha-cyclic, since
    it is conformal but not chordal."""
    return Hypergraph([("A", "B"), ("B", "C"), ("C", "D"), ("D", "A")])


def path(n):
    """The n-path P_n with hyperedges X_i = {A_i, A_(i+1)}, i = 1, ..., n.

    P_n is gamma-acyclic for every n. Hyperedges are labelled
    ``X1``, ..., ``Xn``.

    Args:
        n (int): number of hyperedges.
    """
    if n < 1:
        raise ValueError("path length must be positive")
    edges = [("A{0}".format(i), "A{0}".format(i + 1)) for i in range(1, n + 1)]
    labels = ["X{0}".format(i) for i in range(1, n + 1)]
    return Hypergraph(edges, labels=labels)


def hstar():
    """H* = {A,B,C}, {A,B}, {A,C}: beta-acyclic but gamma-cyclic."""
    return Hypergraph([("A", "B", "C"), ("A", "B"), ("A", "C")])


def bfmy_acyclic():
    """{A,B,C}, {C,D,E}, {E,F,A}, {A,C,E}: alpha-acyclic but beta-cyclic."""
    return Hypergraph([("A", "B", "C"), ("C", "D", "E"),
                       ("E", "F", "A"), ("A", "C", "E")])


def covered_triangle():
    """The triangle with the covering hyperedge {A,B,C}:
    alpha-acyclic, but it contains the triangle as a sub-hypergraph."""
    return Hypergraph([("A", "B", "C"), ("A", "B"), ("B", "C"), ("C", "A")])


_presets = {
    "triangle": triangle,
    "4cycle": four_cycle,
    "p2": lambda: path(2),
    "p3": lambda: path(3),
    "p4": lambda: path(4),
    "p5": lambda: path(5),
    "hstar": hstar,
    "bfmy-acyclic": bfmy_acyclic,
    "covered-triangle": covered_triangle,
}


def names():
    """Names accepted by :func:`load`."""
    return list(_presets)


def load(name):
    """Generate a preset schema by its name.

    Raises:
        KeyError: unknown name.
    """
    try:
        return _presets[name.lower()]()
    except KeyError:
        raise KeyError("unknown preset schema: {0}".format(name))
