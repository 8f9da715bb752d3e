import os
import unittest

from acyclab.document import *

EXAMPLE_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                           "..", "example")


class TestSchemaDocument(unittest.TestCase):

    def test_text(self):
        doc = parse_schema_text("attr A f t\n"
                                "attr B f t  # comment\n"
                                "\n"
                                "edge X1 B A\n")
        assert doc.hypergraph.labels == ("X1",)
        assert doc.edge_attrs == [("B", "A")]
        assert doc.domains["A"] == ("f", "t")

    def test_errors(self):
        from acyclab import DocumentError
        cases = [
            ("attr A f t\nedge X1 A Z\n", 2, 11),
            ("attr A f t\nattr A f\n", 2, 6),
            ("attr A f t\nnode A\n", 2, 1),
            ("edge X1 A\nedge X1 B\n", 2, 6),
        ]
        for text, lineno, column in cases:
            with self.assertRaises(DocumentError) as cm:
                parse_schema_text(text, source="s.txt")
            assert cm.exception.lineno == lineno
            assert cm.exception.column == column
            assert str(cm.exception).startswith("s.txt:{0}:{1}:".format(
                lineno, column))

        with self.assertRaises(DocumentError):
            parse_schema_text("# nothing\n")
        with self.assertRaises(DocumentError):
            parse_schema_json("{\"edges\": 3}")

    def test_json(self):
        path = os.path.join(EXAMPLE_DIR, "hstar_json", "schema.json")
        doc = load_schema(path, fmt="json")
        assert doc.hypergraph.labels == ("Y3", "Y1", "Y2")
        assert doc.hypergraph.edges[0] == frozenset("ABC")

    def test_preset(self):
        doc = load_schema("p3")
        assert doc.hypergraph.labels == ("X1", "X2", "X3")
        assert doc.domains == {}
        assert doc.edge_attrs[0] == ("A1", "A2")

        from acyclab import DocumentError
        with self.assertRaises(DocumentError):
            load_schema("no-such-schema")


class TestRelationDocument(unittest.TestCase):

    def test_text(self):
        schema = parse_schema_text("attr A f t\nattr B f t\nedge X1 A B\n")
        doc = parse_relation_text("monoid nsg(3,5)\nedge X1\n"
                                  "row f t 5\nrow f f 3\n")
        index, rel = doc.to_relation(schema)
        assert index == 0
        assert rel.monoid.name == "nsg(3,5)"
        assert rel.support == {("f", "t"): 5, ("f", "f"): 3}

    def test_inferred_domains(self):
        schema = load_schema("triangle")
        doc = parse_relation_text("monoid bag\nedge {A,B}\nrow x y 2\n")
        _, rel = doc.to_relation(schema)
        assert rel.attrs["A"].domain == ("x",)
        assert rel.weight(("x", "y")) == 2

    def test_errors(self):
        from acyclab import DocumentError
        schema = parse_schema_text("attr A f t\nattr B f t\nedge X1 A B\n")
        with self.assertRaises(DocumentError) as cm:
            parse_relation_text("monoid nsg(3,5)\nedge X1\nrow f t 7\n")
        assert (cm.exception.lineno, cm.exception.column) == (3, 9)

        with self.assertRaises(DocumentError) as cm:
            parse_relation_text("edge X1\nrow f t 1\n")
        assert cm.exception.lineno == 2

        with self.assertRaises(DocumentError):
            parse_relation_text("monoid field\nedge X1\n")

        bad = [
            "monoid bag\nedge X9\nrow f t 1\n",
            "monoid bag\nedge X1\nrow f 1\n",
            "monoid bag\nedge X1\nrow f z 1\n",
            "monoid bag\nedge X1\nrow f t 1\nrow f t 2\n",
        ]
        for text in bad:
            doc = parse_relation_text(text)
            with self.assertRaises(DocumentError):
                doc.to_relation(schema)

    def test_collect(self):
        from acyclab import MonoidMismatch, DocumentError
        schema = parse_schema_text("attr A f t\nattr B f t\n"
                                   "edge X1 A\nedge X2 A B\n")
        r1 = parse_relation_text("monoid bag\nedge X2\nrow f t 1\n")
        r2 = parse_relation_text("monoid boolean\nedge X1\nrow f 1\n")
        rels = collect_relations(schema, [r1])
        assert rels[0] is None
        assert rels[1].total() == 1
        with self.assertRaises(MonoidMismatch):
            collect_relations(schema, [r1, r2])
        with self.assertRaises(DocumentError):
            collect_relations(schema, [r1, r1])

    def test_json(self):
        schema = load_schema(os.path.join(EXAMPLE_DIR, "hstar_json",
                                          "schema.json"), fmt="json")
        doc = load_relation(os.path.join(EXAMPLE_DIR, "hstar_json", "y1.json"),
                            fmt="json")
        index, rel = doc.to_relation(schema)
        assert index == 1
        assert rel.support == {("f", "f"): 1, ("f", "t"): 1}

    def test_format(self):
        schema = parse_schema_text("attr A f t\nattr B f t\nedge X1 A B\n")
        text = "monoid bag\nedge X1\nrow f f 3\nrow f t 5"
        _, rel = parse_relation_text(text).to_relation(schema)
        assert format_relation(rel, edge="X1") == text
        assert relation_to_dict(rel) == {
            "attrs": ["A", "B"], "monoid": "bag",
            "rows": [[["f", "f"], "3"], [["f", "t"], "5"]]}


if __name__ == "__main__":
    unittest.main()
