# coding: utf-8

# default search budgets (number of search nodes)
DEFAULT_TRANSPORT_BUDGET = 200000
DEFAULT_SEARCH_BUDGET = 500000
DEFAULT_CYCLE_BUDGET = 200000
DEFAULT_SUBSET_BUDGET = 1 << 16

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_UNDECIDED = 2
EXIT_INPUT_ERROR = 3


class ElementDomainError(ValueError):
    """ElementDomainError is raised when a value is not
    a member of the carrier set of the given monoid.
    """
    pass


class MonoidMismatch(ValueError):
    """MonoidMismatch is raised when relations over different
    monoids are combined.
    """
    pass


class SchemaError(ValueError):
    """SchemaError is raised when attribute sets or node sets
    violate the containment an operation requires
    (e.g., marginal on attributes outside the relation).
    """
    pass


class UnsupportedMonoid(ValueError):
    """UnsupportedMonoid is raised when an operation requires
    a closed-form transportation solver that the monoid does not have.
    """
    pass


class BudgetExceeded(Exception):
    """BudgetExceeded is raised when a bounded search runs out of
    budget before it can decide.

    This is the "undecided within budget" outcome. It is never
    reported as an absent result; catch it explicitly.

    Args:
        msg (str): description of the search.
        budget (int, optional): the exhausted budget.
    """

    def __init__(self, msg, budget=None):
        super().__init__(msg)
        self.budget = budget


class WitnessContractError(Exception):
    """WitnessContractError is raised when a witness function returns
    a relation over an unexpected attribute set, or a non-witness
    for consistent inputs.

    Args:
        msg (str): description of the violation.
        node (optional): the offending join expression node.
    """

    def __init__(self, msg, node=None):
        super().__init__(msg)
        self.node = node


class ExpressionSyntaxError(ValueError):
    """ExpressionSyntaxError is raised when a join expression
    text cannot be parsed against a schema.
    """
    pass


class DocumentError(ValueError):
    """DocumentError is raised when a schema or relation document
    is malformed.

    Args:
        msg (str): description.
        lineno (int, optional): 1-based line number.
        column (int, optional): 1-based column number.
        source (str, optional): document name.
    """

    def __init__(self, msg, lineno=None, column=None, source=None):
        self.lineno = lineno
        self.column = column
        self.source = source
        if lineno is not None:
            loc = "{0}:{1}:{2}".format(source or "<input>", lineno, column or 1)
            msg = "{0}: {1}".format(loc, msg)
        super().__init__(msg)


def format_nodes(nodes):
    """Set notation with sorted members, e.g. ``{A,B,C}``."""
    return "{" + ",".join(sorted(str(n) for n in nodes)) + "}"


class Budget:
    """Counter shared by the steps of one bounded search."""

    def __init__(self, limit, what="search"):
        self.limit = limit
        self.used = 0
        self._what = what

    def tick(self, n=1):
        self.used += n
        if self.limit is not None and self.used > self.limit:
            msg = "{0} undecided within budget {1}".format(self._what, self.limit)
            raise BudgetExceeded(msg, self.limit)
