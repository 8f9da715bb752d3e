# coding: utf-8

"""acyclab.joinexpr: c-join expressions over a schema.

Leaves refer to hyperedges by index, so duplicated hyperedges
in a schema stay distinguishable. The text syntax is::

    expr := name | "(" expr "*" expr ")"

where names are hyperedge labels of the schema (e.g., ``X1`` or ``{A,B}``).
"""

import logging
import re
from collections import namedtuple
from dataclasses import dataclass

from . import _common
from . import krelation
from ._common import ExpressionSyntaxError, SchemaError, WitnessContractError

_logger = logging.getLogger(__name__)


class JoinExpr:
    """Base class of c-join expressions."""

    is_leaf = False


@dataclass(frozen=True)
class Leaf(JoinExpr):
    """A hyperedge X_i of the schema, given by its index."""

    index: int
    is_leaf = True


@dataclass(frozen=True)
class Join(JoinExpr):
    """The expression (left * right)."""

    left: JoinExpr
    right: JoinExpr


Monotonicity = namedtuple("Monotonicity", ["monotone", "failing"])
Monotonicity.__doc__ = """Result of :func:`is_monotone_wrt`.
``failing`` is the first join node whose operands are inconsistent."""

NodeResult = namedtuple("NodeResult", ["expr", "relation", "consistent"])
NodeResult.__doc__ = """Evaluation of one node of an expression.
``consistent`` tells if the operands of a join node are consistent
(None for leaves)."""

_token_pattern = re.compile(r"\s*(\{[^{}]*\}|[()*]|[^\s(){}*]+)")


def _tokenize(text):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        mo = _token_pattern.match(text, pos)
        if mo is None:
            msg = "unexpected character {0!r} at {1}".format(text[pos], pos + 1)
            raise ExpressionSyntaxError(msg)
        tokens.append((mo.group(1), mo.start(1) + 1))
        pos = mo.end()
    return tokens


def _normalize_name(name):
    if name.startswith("{"):
        members = [v.strip() for v in name[1:-1].split(",") if v.strip()]
        return _common.format_nodes(members)
    return name


def parse(text, schema):
    """Parse a fully parenthesized expression.

    Example:
        >>> from acyclab import preset
        >>> parse("((X1 * X2) * X3)", preset.path(3))
        Join(left=Join(left=Leaf(index=0), right=Leaf(index=1)), right=Leaf(index=2))

    Args:
        text (str): expression text.
        schema (~acyclab.hypergraph.Hypergraph): schema to resolve names.

    Raises:
        ExpressionSyntaxError: unknown hyperedge name or malformed text.
    """
    tokens = _tokenize(text)
    if len(tokens) == 0:
        raise ExpressionSyntaxError("empty expression")

    def expect(pos, symbol):
        if pos >= len(tokens):
            raise ExpressionSyntaxError(
                "expected {0!r} at end of expression".format(symbol))
        token, col = tokens[pos]
        if token != symbol:
            raise ExpressionSyntaxError(
                "expected {0!r} at {1}, found {2!r}".format(symbol, col, token))
        return pos + 1

    def parse_expr(pos):
        if pos >= len(tokens):
            raise ExpressionSyntaxError("unexpected end of expression")
        token, col = tokens[pos]
        if token == "(":
            left, pos = parse_expr(pos + 1)
            pos = expect(pos, "*")
            right, pos = parse_expr(pos)
            pos = expect(pos, ")")
            return Join(left, right), pos
        elif token in (")", "*"):
            raise ExpressionSyntaxError(
                "unexpected {0!r} at {1}".format(token, col))
        else:
            try:
                index = schema.index(_normalize_name(token))
            except KeyError:
                raise ExpressionSyntaxError(
                    "unknown hyperedge {0!r} at {1}".format(token, col))
            return Leaf(index), pos + 1

    expr, pos = parse_expr(0)
    if pos != len(tokens):
        token, col = tokens[pos]
        raise ExpressionSyntaxError(
            "unexpected {0!r} at {1}".format(token, col))
    return expr


def format(expr, schema):
    """Text of an expression with the hyperedge labels of the schema."""
    if expr.is_leaf:
        return schema.label(expr.index)
    return "({0} * {1})".format(format(expr.left, schema),
                                format(expr.right, schema))


def sequential(indices):
    """Left-deep expression ((X_i1 * X_i2) * ...) of the given hyperedges."""
    indices = list(indices)
    if len(indices) == 0:
        raise ValueError("sequential expression needs one or more leaves")
    expr = Leaf(indices[0])
    for i in indices[1:]:
        expr = Join(expr, Leaf(i))
    return expr


def leaves(expr):
    """Hyperedge indices of the leaves, left to right."""
    if expr.is_leaf:
        return [expr.index]
    return leaves(expr.left) + leaves(expr.right)


def subexpressions(expr):
    """All subexpressions in post-order (left subtree first)."""
    if expr.is_leaf:
        return [expr]
    return subexpressions(expr.left) + subexpressions(expr.right) + [expr]


def attributes(expr, schema):
    """Union of the hyperedges of the leaves."""
    return frozenset().union(*[schema.edges[i] for i in leaves(expr)])


def is_sequential(expr):
    """True iff every right operand is a leaf."""
    if expr.is_leaf:
        return True
    return expr.right.is_leaf and is_sequential(expr.left)


def is_connected(expr, schema):
    """True iff the operands of every join share an attribute."""
    if expr.is_leaf:
        return True
    if not attributes(expr.left, schema) & attributes(expr.right, schema):
        return False
    return is_connected(expr.left, schema) and is_connected(expr.right, schema)


def _leaf_relation(expr, relations):
    if expr.index >= len(relations) or relations[expr.index] is None:
        raise SchemaError("no relation for hyperedge {0}".format(expr.index))
    return relations[expr.index]


def _apply(witness, node, left, right):
    out = witness(left, right)
    expected = set(left.names) | set(right.names)
    if set(out.names) != expected or out.monoid != left.monoid:
        msg = "{0} returned a relation over {1}, expected {2}".format(
            witness, _common.format_nodes(out.names),
            _common.format_nodes(expected))
        raise WitnessContractError(msg, node=node)
    return out


def evaluate(expr, witness, relations):
    """Evaluate an expression, interpreting joins with a witness function.

    Args:
        expr (JoinExpr): the expression.
        witness (~acyclab.krelation.WitnessFunction): interpretation of joins.
        relations (list of ~acyclab.krelation.KRelation):
            R_i over the i-th hyperedge.

    Returns:
        ~acyclab.krelation.KRelation

    Raises:
        WitnessContractError: if the witness function returns a relation
            over an unexpected attribute set (``node`` is the join node).
    """
    if expr.is_leaf:
        return _leaf_relation(expr, relations)
    left = evaluate(expr.left, witness, relations)
    right = evaluate(expr.right, witness, relations)
    return _apply(witness, expr, left, right)


def trace_evaluation(expr, witness, relations,
                     budget=_common.DEFAULT_TRANSPORT_BUDGET):
    """Evaluate every node in post-order, checking at each join
    whether the two operands are consistent.

    Returns:
        list of NodeResult: the last item is the root.
    """
    results = []

    def visit(node):
        if node.is_leaf:
            rel = _leaf_relation(node, relations)
            results.append(NodeResult(node, rel, None))
            return rel
        left = visit(node.left)
        right = visit(node.right)
        ok = krelation.consistent(left, right, budget=budget) is not None
        rel = _apply(witness, node, left, right)
        results.append(NodeResult(node, rel, ok))
        return rel

    visit(expr)
    return results


def is_monotone_wrt(expr, witness, relations,
                    budget=_common.DEFAULT_TRANSPORT_BUDGET):
    """True iff at every join the two evaluated operands are consistent.

    Returns:
        Monotonicity: the verdict and the first failing join node
        in post-order (None if monotone).

    Raises:
        BudgetExceeded: if a consistency check is undecided.
    """
    if expr.is_leaf:
        return Monotonicity(True, None)

    def visit(node):
        if node.is_leaf:
            return _leaf_relation(node, relations), None
        left, failing = visit(node.left)
        if failing is not None:
            return None, failing
        right, failing = visit(node.right)
        if failing is not None:
            return None, failing
        if krelation.consistent(left, right, budget=budget) is None:
            return None, node
        return _apply(witness, node, left, right), None

    _, failing = visit(expr)
    return Monotonicity(failing is None, failing)


def enumerate_connected_sequential(schema, max_len):
    """Iterate connected sequential expressions with up to ``max_len``
    leaves; hyperedges may repeat.

    Expressions are generated by length, then by leaf indices.
    """
    m = len(schema.edges)
    level = [((i,), schema.edges[i]) for i in range(m)]
    length = 1
    while level and length <= max_len:
        for indices, _ in level:
            yield sequential(indices)
        nxt = []
        for indices, covered in level:
            for j in range(m):
                if covered & schema.edges[j]:
                    nxt.append((indices + (j,), covered | schema.edges[j]))
        level = nxt
        length += 1


def rip_expression(schema):
    """Sequential expression along a running intersection ordering,
    or None if the schema is alpha-cyclic."""
    from .hypergraph import has_running_intersection
    order = has_running_intersection(schema)
    if order is None or len(order) == 0:
        return None
    return sequential(order)


def covering_walk(schema, edges=None):
    """Walk Y1, ..., Yt through the given hyperedges (all by default)
    visiting each of them, consecutive hyperedges intersecting.

    Returns:
        list of int or None: hyperedge indices; None if the hyperedges
        are not connected.
    """
    from .hypergraph import shortest_edge_path
    if edges is None:
        edges = range(len(schema.edges))
    edges = list(edges)
    if len(edges) == 0:
        return None
    sub = schema.sub(edges)
    walk = [0]
    for target in range(1, len(edges)):
        if target in walk:
            continue
        path = shortest_edge_path(sub, walk[-1], [target])
        if path is None:
            return None
        walk.extend(path[1:])
    return [edges[i] for i in walk]
