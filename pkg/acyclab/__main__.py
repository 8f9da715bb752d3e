#!/usr/bin/env python

import functools
import itertools
import json
import logging
import sys

import click

from . import _common
from . import document
from . import hypergraph as hg
from . import joinexpr
from . import krelation
from . import theoremlab
from ._common import BudgetExceeded, WitnessContractError
from .monoid import KIND_BOOLEAN, parse_monoid

_logger = logging.getLogger(__package__)

SUITES = ("structural", "local-global", "gamma-monotone", "tp", "laws",
          "transport")
WITNESSES = ("generic", "standard-join", "search")

_input_errors = (_common.DocumentError, _common.SchemaError,
                 _common.MonoidMismatch, _common.UnsupportedMonoid,
                 _common.ExpressionSyntaxError, _common.ElementDomainError)


def _setup_logging(verbose):
    level = logging.DEBUG if verbose else logging.WARNING
    logging.basicConfig(stream=sys.stderr, level=level,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def common_options(func):
    options = [
        click.option("--format", "-f", "fmt", default="text",
                     type=click.Choice(["text", "json"]),
                     help="document and report format"),
        click.option("--seed", default=0, type=int,
                     help="seed of random trials"),
        click.option("--trials", default=None, type=int,
                     help="number of random trials"),
        click.option("--budget", default=None, type=int,
                     help="search budget"),
        click.option("--out", "-o", "output", default=None,
                     help="output filename"),
        click.option("--verbose", "-v", is_flag=True,
                     help="verbose output to stderr"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def handle_errors(func):
    """Map input errors and witness contract violations to exit code 3,
    exhausted budgets to 2."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        _setup_logging(kwargs.get("verbose", False))
        try:
            code = func(*args, **kwargs)
        except _input_errors as e:
            click.echo("error: {0}".format(e), err=True)
            sys.exit(_common.EXIT_INPUT_ERROR)
        except WitnessContractError as e:
            click.echo("error: contract violation: {0}".format(e), err=True)
            sys.exit(_common.EXIT_INPUT_ERROR)
        except BudgetExceeded as e:
            click.echo("undecided: {0}".format(e), err=True)
            sys.exit(_common.EXIT_UNDECIDED)
        sys.exit(code or _common.EXIT_OK)

    return wrapper


def _emit(text, output):
    if output:
        with open(output, "w") as f:
            f.write(text + "\n")
    else:
        click.echo(text)


def _yesno(flag):
    return "yes" if flag else "no"


def _load(schema, relations, fmt):
    schema_doc = document.load_schema(schema, fmt)
    docs = [document.load_relation(path, fmt) for path in relations]
    return schema_doc, document.collect_relations(schema_doc, docs)


@click.group()
def main():
    """Acyclicity and consistency of monoid-annotated relations."""


@main.command()
@click.argument("schema")
@common_options
@handle_errors
def classify(schema, fmt, seed, trials, budget, output, verbose):
    """Classify SCHEMA (a file or a preset name) as alpha-, beta-
    and gamma-acyclic or cyclic."""
    cycle_budget = budget or _common.DEFAULT_CYCLE_BUDGET
    h = document.load_schema(schema, fmt).hypergraph
    alpha, _ = hg.is_alpha_acyclic_gyo(h)
    _, residue = hg.gyo_reduce(h)
    order = hg.has_running_intersection(h)
    beta_cycle = hg.find_weak_cycle(h, hg.KIND_BETA, budget=cycle_budget)
    gamma_cycle = hg.find_weak_cycle(h, hg.KIND_GAMMA, budget=cycle_budget)

    result = {
        "schema": h.format(),
        "alpha": "acyclic" if alpha else "cyclic",
        "conformal": hg.is_conformal(h),
        "chordal": hg.is_chordal(h),
        "gyo_residue": [_common.format_nodes(e) for e in residue],
        "running_intersection": None if order is None
        else [h.label(i) for i in order],
        "beta": "acyclic" if beta_cycle is None else "cyclic",
        "beta_cycle": None if beta_cycle is None else beta_cycle.format(),
        "gamma": "acyclic" if gamma_cycle is None else "cyclic",
        "gamma_cycle": None if gamma_cycle is None else gamma_cycle.format(),
    }
    if fmt == "json":
        _emit(json.dumps(result, sort_keys=True, indent=2), output)
        return _common.EXIT_OK

    lines = ["schema: {0}".format(result["schema"]),
             "alpha: {0}".format(result["alpha"]),
             "conformal: {0}".format(_yesno(result["conformal"])),
             "chordal: {0}".format(_yesno(result["chordal"]))]
    if alpha:
        lines.append("running intersection: {0}".format(
            " ".join(result["running_intersection"])))
    else:
        lines.append("gyo residue: {0}".format(" ".join(result["gyo_residue"])))
    lines.append("beta: {0}".format(result["beta"]))
    if beta_cycle is not None:
        lines.append("weak beta-cycle: {0}".format(result["beta_cycle"]))
    lines.append("gamma: {0}".format(result["gamma"]))
    if gamma_cycle is not None:
        lines.append("weak gamma-cycle: {0}".format(result["gamma_cycle"]))
    _emit("\n".join(lines), output)
    return _common.EXIT_OK


@main.command()
@click.argument("schema")
@click.argument("relations", nargs=-1, required=True)
@click.option("--global", "-g", "check_global", is_flag=True,
              help="also search a global consistency witness")
@common_options
@handle_errors
def check(schema, relations, check_global, fmt, seed, trials, budget,
          output, verbose):
    """Check pairwise (and global) consistency of RELATIONS over SCHEMA."""
    schema_doc, rels = _load(schema, relations, fmt)
    h = schema_doc.hypergraph
    given = [(i, r) for i, r in enumerate(rels) if r is not None]
    transport_budget = budget or _common.DEFAULT_TRANSPORT_BUDGET
    code = _common.EXIT_OK

    pairs = []
    for (i, r), (j, s) in itertools.combinations(given, 2):
        inner = krelation.inner_consistent(r, s)
        try:
            verdict = krelation.consistent(r, s, budget=transport_budget) is not None
        except BudgetExceeded:
            verdict = None
            code = _common.EXIT_UNDECIDED
        pairs.append((h.label(i), h.label(j), inner, verdict))

    witness = None
    status = None
    if check_global:
        try:
            witness = krelation.globally_consistent(
                [r for _, r in given],
                budget=budget or _common.DEFAULT_SEARCH_BUDGET)
            status = "consistent" if witness is not None else "inconsistent"
        except BudgetExceeded:
            status = "undecided"
            code = _common.EXIT_UNDECIDED

    if fmt == "json":
        obj = {"pairs": [{"left": x, "right": y, "inner_consistent": inner,
                          "consistent": verdict}
                         for x, y, inner, verdict in pairs]}
        if check_global:
            obj["global"] = status
            obj["witness"] = None if witness is None \
                else document.relation_to_dict(witness)
        _emit(json.dumps(obj, sort_keys=True, indent=2), output)
        return code

    lines = []
    for x, y, inner, verdict in pairs:
        lines.append("{0} {1}: inner consistent: {2}; consistent: {3}".format(
            x, y, _yesno(inner),
            "undecided" if verdict is None else _yesno(verdict)))
    if check_global:
        lines.append("global: {0}".format(status))
        if witness is not None:
            lines.append(document.format_relation(witness))
    _emit("\n".join(lines), output)
    return code


def _witness_function(name, m, budget):
    if name == "generic":
        return krelation.generic_witness(m)
    elif name == "standard-join":
        if m.kind != KIND_BOOLEAN:
            raise _common.UnsupportedMonoid(
                "standard join requires the boolean monoid")
        return krelation.standard_join
    else:
        return krelation.search_witness(
            m, budget=budget or _common.DEFAULT_TRANSPORT_BUDGET)


@main.command(name="eval")
@click.argument("schema")
@click.argument("relations", nargs=-1, required=True)
@click.option("--expr", "-e", "expr_text", required=True,
              help="join expression, e.g. ((X1 * X2) * X3)")
@click.option("--witness", "-w", "witness_name", default="generic",
              type=click.Choice(WITNESSES),
              help="interpretation of joins")
@common_options
@handle_errors
def evaluate(schema, relations, expr_text, witness_name, fmt, seed, trials,
             budget, output, verbose):
    """Evaluate a join expression over RELATIONS, checking
    the consistency of the operands of every join."""
    schema_doc, rels = _load(schema, relations, fmt)
    h = schema_doc.hypergraph
    expr = joinexpr.parse(expr_text, h)
    used = sorted(set(joinexpr.leaves(expr)))
    for i in used:
        if rels[i] is None:
            raise _common.DocumentError("no relation for hyperedge {0}".format(
                h.label(i)))
    m = rels[used[0]].monoid
    witness = _witness_function(witness_name, m, budget)

    try:
        results = joinexpr.trace_evaluation(
            expr, witness, rels,
            budget=budget or _common.DEFAULT_TRANSPORT_BUDGET)
    except WitnessContractError as e:
        node = "" if e.node is None else " at {0}".format(
            joinexpr.format(e.node, h))
        click.echo("contract violation{0}: {1}".format(node, e), err=True)
        return _common.EXIT_MISMATCH

    result = results[-1].relation
    joins = [r for r in results if not r.expr.is_leaf]
    monotone = all(r.consistent for r in joins)
    match = krelation.is_witness(result, [rels[i] for i in used])

    if fmt == "json":
        obj = {"expression": joinexpr.format(expr, h),
               "witness": witness.name,
               "nodes": [{"node": joinexpr.format(r.expr, h),
                          "consistent": r.consistent} for r in joins],
               "monotone": monotone,
               "marginals_match": match,
               "result": document.relation_to_dict(result)}
        _emit(json.dumps(obj, sort_keys=True, indent=2), output)
        return _common.EXIT_OK

    lines = ["expression: {0}".format(joinexpr.format(expr, h)),
             "witness: {0}".format(witness.name)]
    for r in joins:
        lines.append("node {0}: {1}".format(
            joinexpr.format(r.expr, h),
            "consistent" if r.consistent else "inconsistent"))
    lines.append("monotone: {0}".format(_yesno(monotone)))
    lines.append("marginals match: {0}".format(_yesno(match)))
    lines.append("result:")
    lines.append(document.format_relation(result))
    _emit("\n".join(lines), output)
    return _common.EXIT_OK


def _parse_caps(text):
    try:
        max_nodes, max_edges = (int(x) for x in text.split(","))
    except ValueError:
        raise _common.DocumentError("--caps must be given as m,n")
    return max_nodes, max_edges


def _run_suite(suite, schema, monoid, caps, max_len, seed, trials, budget, fmt):
    try:
        m = parse_monoid(monoid)
    except ValueError as e:
        raise _common.DocumentError(str(e))

    kwargs = {"seed": seed}
    if trials is not None:
        kwargs["trials"] = trials
    if suite == "structural":
        return theoremlab.verify_structural_equivalences(*_parse_caps(caps))
    elif suite == "local-global":
        h = document.load_schema(schema, fmt).hypergraph
        if budget is not None:
            kwargs["budget"] = budget
        return theoremlab.verify_local_to_global(h, m, **kwargs)
    elif suite == "gamma-monotone":
        h = document.load_schema(schema, fmt).hypergraph
        if budget is not None:
            kwargs["budget"] = budget
        return theoremlab.verify_gamma_monotonicity(h, m, max_len=max_len,
                                                    **kwargs)
    elif suite == "tp":
        return theoremlab.verify_tp_characterization(m, **kwargs)
    elif suite == "laws":
        samples = kwargs.pop("trials", 10000)
        return theoremlab.verify_monoid_laws(m, samples=samples, **kwargs)
    else:
        if budget is not None:
            kwargs["budget"] = budget
        return theoremlab.verify_transport_solvers(m, **kwargs)


@main.command()
@click.argument("suite")
@click.option("--caps", default="4,4",
              help="maximum nodes,hyperedges of enumerated hypergraphs")
@click.option("--schema", "-s", default="p3",
              help="schema file or preset name")
@click.option("--monoid", "-m", default="boolean",
              help="monoid, e.g. boolean, bag, nsg(3,5), tmin, vmax, pset(a,b)")
@click.option("--max-len", default=4, type=int,
              help="maximum number of leaves of enumerated expressions")
@common_options
@handle_errors
def verify(suite, caps, schema, monoid, max_len, fmt, seed, trials, budget,
           output, verbose):
    """Run a verification SUITE, one of structural, local-global,
    gamma-monotone, tp, laws or transport.

    Exits with 0 if the outcome matches the expected one,
    1 on mismatch and 2 if undecided."""
    if suite not in SUITES:
        click.echo("error: unknown suite {0!r}, one of {1}".format(
            suite, ", ".join(SUITES)), err=True)
        return _common.EXIT_INPUT_ERROR
    report = _run_suite(suite, schema, monoid, caps, max_len, seed, trials,
                        budget, fmt)
    if fmt == "json":
        _emit(report.to_text(), output)
    else:
        text = report.summary()
        if "counterexample" in report.counts:
            text += "\nTP counterexample found: {0}".format(
                report.counts["counterexample"])
        _emit(text, output)
    return report.exit_status()


if __name__ == "__main__":
    main()
