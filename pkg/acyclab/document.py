# coding: utf-8

"""acyclab.document: schema and relation documents.

Text format (``#`` starts a comment)::

    # schema document           # relation document
    attr A f t                  monoid nsg(3,5)
    attr B f t                  edge X1
    attr C f t                  row f t 5
    edge X1 A B                 row f f 3
    edge X2 A C

``attr`` declares a node with its domain, ``edge`` a labelled hyperedge
with its attribute order. ``row`` values follow that order and the last
token is the weight, in the element syntax of the monoid.

JSON format::

    {"attrs": {"A": ["f", "t"], ...}, "edges": {"X1": ["A", "B"], ...}}
    {"monoid": "nsg(3,5)", "edge": "X1", "rows": [[["f", "t"], "5"], ...]}
"""

import json
import logging
import os
import re
from dataclasses import dataclass, field

from . import preset
from .hypergraph import Hypergraph
from .krelation import Attribute, AttributeSet, KRelation
from .monoid import parse_monoid
from ._common import DocumentError, ElementDomainError, MonoidMismatch
from ._common import SchemaError

_logger = logging.getLogger(__name__)

FORMAT_TEXT = "text"
FORMAT_JSON = "json"

_token_pattern = re.compile(r"\S+")


@dataclass
class SchemaDocument:
    """A schema with attribute domains and hyperedge attribute orders.

    Attributes:
        hypergraph (~acyclab.hypergraph.Hypergraph): the schema.
        domains (dict): node name -> tuple of value symbols;
            nodes without declaration take their domain from the relations.
        edge_attrs (list of tuple): attribute order of each hyperedge.
        source (str): document name.
    """

    hypergraph: Hypergraph
    domains: dict = field(default_factory=dict)
    edge_attrs: list = field(default_factory=list)
    source: str = None

    def __post_init__(self):
        if not self.edge_attrs:
            self.edge_attrs = [tuple(sorted(e)) for e in self.hypergraph.edges]


@dataclass
class RelationDocument:
    """A relation over one hyperedge of a schema document.

    Attributes:
        monoid (~acyclab.monoid.Monoid): the monoid.
        edge (str): hyperedge label (or set notation).
        rows (list of tuple): (values, weight, lineno) items;
            weights are already parsed.
        source (str): document name.
    """

    monoid: object
    edge: str
    rows: list = field(default_factory=list)
    source: str = None

    def to_relation(self, schema_doc):
        """Build the relation, checking it against the schema.

        Returns:
            tuple: (hyperedge index, KRelation)

        Raises:
            DocumentError: unknown hyperedge, wrong arity, value outside
                the domain or duplicated tuple.
        """
        try:
            index = schema_doc.hypergraph.index(self.edge)
        except KeyError:
            raise DocumentError("unknown hyperedge {0}".format(self.edge),
                                source=self.source)
        names = schema_doc.edge_attrs[index]
        inferred = [list() for _ in names]
        seen = {}
        for values, _, lineno in self.rows:
            if len(values) != len(names):
                raise DocumentError(
                    "{0} values for attributes {1}".format(
                        len(values), " ".join(names)),
                    lineno=lineno, source=self.source)
            if values in seen:
                raise DocumentError(
                    "duplicated tuple (first at line {0})".format(seen[values]),
                    lineno=lineno, source=self.source)
            seen[values] = lineno
            for pos, (name, v) in enumerate(zip(names, values)):
                domain = schema_doc.domains.get(name)
                if domain is not None and v not in domain:
                    raise DocumentError(
                        "value {0!r} not in domain of {1}".format(v, name),
                        lineno=lineno, column=pos + 2, source=self.source)
                if v not in inferred[pos]:
                    inferred[pos].append(v)

        attrs = []
        for pos, name in enumerate(names):
            domain = schema_doc.domains.get(name) or inferred[pos] or ["-"]
            attrs.append(Attribute(name, tuple(domain)))
        support = {values: w for values, w, _ in self.rows}
        return index, KRelation(AttributeSet(attrs), self.monoid, support)


def _tokens(line):
    line = line.split("#", 1)[0]
    return [(mo.group(0), mo.start() + 1) for mo in _token_pattern.finditer(line)]


def parse_schema_text(text, source=None):
    """Parse a schema document in text format.

    Raises:
        DocumentError: with the line and column of the problem.
    """
    domains = {}
    edges = []
    labels = []
    for lineno, line in enumerate(text.splitlines(), 1):
        tokens = _tokens(line)
        if len(tokens) == 0:
            continue
        keyword, _ = tokens[0]
        if keyword == "attr":
            if len(tokens) < 3:
                raise DocumentError("attr needs a name and a domain",
                                    lineno=lineno, column=1, source=source)
            name, col = tokens[1]
            if name in domains:
                raise DocumentError("duplicated attr {0}".format(name),
                                    lineno=lineno, column=col, source=source)
            domains[name] = tuple(dict.fromkeys(t for t, _ in tokens[2:]))
        elif keyword == "edge":
            if len(tokens) < 3:
                raise DocumentError("edge needs a label and attributes",
                                    lineno=lineno, column=1, source=source)
            label, col = tokens[1]
            if label in labels:
                raise DocumentError("duplicated edge {0}".format(label),
                                    lineno=lineno, column=col, source=source)
            attrs = []
            for name, col in tokens[2:]:
                if domains and name not in domains:
                    raise DocumentError("undeclared attr {0}".format(name),
                                        lineno=lineno, column=col, source=source)
                if name in attrs:
                    raise DocumentError("duplicated attr {0} in edge".format(name),
                                        lineno=lineno, column=col, source=source)
                attrs.append(name)
            labels.append(label)
            edges.append(tuple(attrs))
        else:
            raise DocumentError("unknown keyword {0!r}".format(keyword),
                                lineno=lineno, column=1, source=source)
    return _schema_document(domains, labels, edges, source)


def _schema_document(domains, labels, edges, source):
    if len(edges) == 0:
        raise DocumentError("schema without hyperedges", source=source)
    nodes = list(domains) if domains else None
    try:
        h = Hypergraph(edges, nodes=nodes, labels=labels)
    except SchemaError as e:
        raise DocumentError(str(e), source=source)
    return SchemaDocument(h, dict(domains), list(edges), source)


def parse_schema_json(text, source=None):
    try:
        obj = json.loads(text)
        domains = {name: tuple(str(v) for v in dom)
                   for name, dom in obj.get("attrs", {}).items()}
        labels = list(obj["edges"])
        edges = [tuple(obj["edges"][label]) for label in labels]
    except (ValueError, KeyError, TypeError, AttributeError) as e:
        raise DocumentError("malformed schema document: {0}".format(e),
                            source=source)
    for label, attrs in zip(labels, edges):
        if domains and not set(attrs) <= set(domains):
            raise DocumentError("edge {0} uses undeclared attrs".format(label),
                                source=source)
    return _schema_document(domains, labels, edges, source)


def _parse_weight(m, text, lineno, column, source):
    try:
        return m.parse(text)
    except (ElementDomainError, ValueError) as e:
        raise DocumentError("invalid weight {0!r}: {1}".format(text, e),
                            lineno=lineno, column=column, source=source)


def parse_relation_text(text, source=None):
    """Parse a relation document in text format.

    Raises:
        DocumentError: with the line and column of the problem.
    """
    m = None
    edge = None
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        tokens = _tokens(line)
        if len(tokens) == 0:
            continue
        keyword, _ = tokens[0]
        if keyword == "monoid":
            if m is not None or len(tokens) != 2:
                raise DocumentError("one monoid declaration expected",
                                    lineno=lineno, column=1, source=source)
            try:
                m = parse_monoid(tokens[1][0])
            except ValueError as e:
                raise DocumentError(str(e), lineno=lineno,
                                    column=tokens[1][1], source=source)
        elif keyword == "edge":
            if edge is not None or len(tokens) != 2:
                raise DocumentError("one edge declaration expected",
                                    lineno=lineno, column=1, source=source)
            edge = tokens[1][0]
        elif keyword == "row":
            if m is None:
                raise DocumentError("row before monoid declaration",
                                    lineno=lineno, column=1, source=source)
            if len(tokens) < 3:
                raise DocumentError("row needs values and a weight",
                                    lineno=lineno, column=1, source=source)
            weight, col = tokens[-1]
            w = _parse_weight(m, weight, lineno, col, source)
            rows.append((tuple(t for t, _ in tokens[1:-1]), w, lineno))
        else:
            raise DocumentError("unknown keyword {0!r}".format(keyword),
                                lineno=lineno, column=1, source=source)
    if m is None or edge is None:
        raise DocumentError("relation needs monoid and edge declarations",
                            source=source)
    return RelationDocument(m, edge, rows, source)


def parse_relation_json(text, source=None):
    try:
        obj = json.loads(text)
        m = parse_monoid(obj["monoid"])
        edge = str(obj["edge"])
        items = [(tuple(str(v) for v in values), str(w))
                 for values, w in obj.get("rows", [])]
    except (ValueError, KeyError, TypeError) as e:
        raise DocumentError("malformed relation document: {0}".format(e),
                            source=source)
    rows = []
    for num, (values, w) in enumerate(items, 1):
        rows.append((values, _parse_weight(m, w, num, None, source), num))
    return RelationDocument(m, edge, rows, source)


def _read(path, encoding="utf-8"):
    try:
        with open(path, "rt", encoding=encoding) as f:
            return f.read()
    except OSError as e:
        raise DocumentError("cannot read {0}: {1}".format(path, e.strerror),
                            source=path)


def load_schema(path, fmt=FORMAT_TEXT):
    """Load a schema document, or a preset schema by name.

    Args:
        path (str): file path or preset name (see :func:`acyclab.preset.names`).
        fmt (str, optional): "text" or "json".

    Returns:
        SchemaDocument
    """
    if not os.path.exists(path) and path.lower() in preset.names():
        _logger.debug("schema %s taken from presets", path)
        return SchemaDocument(preset.load(path), source=path)
    text = _read(path)
    if fmt == FORMAT_JSON:
        return parse_schema_json(text, source=path)
    return parse_schema_text(text, source=path)


def load_relation(path, fmt=FORMAT_TEXT):
    """Load a relation document."""
    text = _read(path)
    if fmt == FORMAT_JSON:
        return parse_relation_json(text, source=path)
    return parse_relation_text(text, source=path)


def collect_relations(schema_doc, relation_docs):
    """Relations of the documents, placed by hyperedge index.

    Returns:
        list: KRelation or None for each hyperedge of the schema.

    Raises:
        MonoidMismatch: if the documents use different monoids.
        DocumentError: if two documents refer to the same hyperedge.
    """
    monoids = set(doc.monoid for doc in relation_docs)
    if len(monoids) > 1:
        raise MonoidMismatch("relations over different monoids: {0}".format(
            ", ".join(sorted(m.name for m in monoids))))
    relations = [None] * len(schema_doc.hypergraph.edges)
    for doc in relation_docs:
        index, rel = doc.to_relation(schema_doc)
        if relations[index] is not None:
            raise DocumentError("second relation for hyperedge {0}".format(
                schema_doc.hypergraph.label(index)), source=doc.source)
        relations[index] = rel
    return relations


def relation_to_dict(r):
    """JSON-friendly form of a relation, rows in sorted order."""
    m = r.monoid
    return {"attrs": list(r.names), "monoid": m.name,
            "rows": [[list(t), m.format(w)] for t, w in r.rows()]}


def format_relation(r, edge=None):
    """Relation document text of a relation.

    Without ``edge``, an ``attrs`` line states the attribute order instead.
    """
    lines = ["monoid {0}".format(r.monoid.name)]
    if edge is None:
        lines.append("attrs {0}".format(" ".join(r.names)))
    else:
        lines.append("edge {0}".format(edge))
    for t, w in r.rows():
        lines.append("row {0} {1}".format(" ".join(t), r.monoid.format(w)))
    return "\n".join(lines)
