import sys
from typing import Callable, Dict

from util.digraph import Digraph, UndirectedGraph, underlying_undirected
from util.errors import EXIT_FAILURE, EXIT_OK, CapacityError, InputError, exit_code
from util.expressions import evaluate
from util.graph_io import Graph, read_graph
from util.layout import NAMED_MEASURES, Layout, measure_cost
from util.logger import Logger
from util.pathdecomp import DirectedPathDecomposition, validate, width
from util.rankdecomp import parse_leaves, verify_rank_decomposition
from util.threshold import eval_threshold, recognize_threshold
from util.witness import (
    DecompositionWitness,
    ExpressionWitness,
    LayoutWitness,
    RankDecompositionWitness,
    ThresholdWitness,
    VerificationResult,
    dump_document,
    load_document,
    witness_to_expression,
    witness_to_sequence,
)


def _require_digraph(g: Graph, kind: str) -> Digraph:
    if not isinstance(g, Digraph):
        raise InputError(f"{kind} witnesses describe digraphs; the input file holds an undirected graph")
    return g


def _difference(expected: Graph, built: Graph) -> str:
    """Name the first arc or edge on which two graphs on the same vertices differ."""
    if expected.n != built.n:
        return f"witness builds {built.n} vertices, graph has {expected.n}"
    pairs = set(expected.arcs if isinstance(expected, Digraph) else expected.edges)
    found = set(built.arcs if isinstance(built, Digraph) else built.edges)
    missing, extra = sorted(pairs - found), sorted(found - pairs)
    if missing:
        return f"witness does not build {missing[0]}"
    return f"witness builds {extra[0]}, which is not in the graph"


def verify_decomposition(g: Graph, text: str) -> VerificationResult:
    g = _require_digraph(g, "dpd")
    witness = load_document(text, DecompositionWitness)
    d = DirectedPathDecomposition(witness.bags)
    report = validate(g, d)
    if not report.ok:
        return VerificationResult(kind="dpd", ok=False, condition=report.condition, detail=report.detail)
    if width(d) != witness.width:
        return VerificationResult(
            kind="dpd", ok=False, value=width(d), detail=f"bags have width {width(d)}, witness claims {witness.width}"
        )
    return VerificationResult(kind="dpd", ok=True, value=width(d))


def verify_expression(g: Graph, text: str) -> VerificationResult:
    witness = load_document(text, ExpressionWitness)
    expr = witness_to_expression(witness)
    target = g
    if not expr.directed and isinstance(g, Digraph):
        target = underlying_undirected(g)
    elif expr.directed and isinstance(g, UndirectedGraph):
        raise InputError(f"a {expr.kind} expression cannot build an undirected graph")
    built = evaluate(expr).graph
    if built != target:
        return VerificationResult(kind="expr", ok=False, value=expr.k, detail=_difference(target, built))
    if witness.value is not None and witness.value != expr.k:
        return VerificationResult(
            kind="expr", ok=False, value=expr.k, detail=f"expression uses {expr.k} labels, witness claims {witness.value}"
        )
    return VerificationResult(kind="expr", ok=True, value=expr.k)


def verify_layout(g: Graph, text: str) -> VerificationResult:
    witness = load_document(text, LayoutWitness)
    kind = NAMED_MEASURES.get(witness.measure)
    if kind is None:
        raise InputError(f"unknown layout measure {witness.measure!r}")
    if not kind.undirected:
        _require_digraph(g, witness.measure)
    cost = measure_cost(g, kind, Layout(witness.layout))
    if cost != witness.value:
        return VerificationResult(
            kind="layout", ok=False, value=cost, detail=f"layout has {witness.measure} cost {cost}, witness claims {witness.value}"
        )
    return VerificationResult(kind="layout", ok=True, value=cost)


def verify_rank_decomposition_witness(g: Graph, text: str) -> VerificationResult:
    witness = load_document(text, RankDecompositionWitness)
    check = verify_rank_decomposition(g, parse_leaves(witness.leaves, g.n), witness.width)
    return VerificationResult(kind="rankdec", ok=check.ok, value=check.width, detail=check.detail)


def verify_threshold(g: Graph, text: str) -> VerificationResult:
    g = _require_digraph(g, "threshold")
    witness = load_document(text, ThresholdWitness)
    if not witness.is_threshold:
        actual = recognize_threshold(g).is_threshold
        detail = "digraph is a threshold digraph after all" if actual else ""
        return VerificationResult(kind="threshold", ok=not actual, detail=detail)
    built = eval_threshold(witness_to_sequence(witness))
    if built != g:
        return VerificationResult(kind="threshold", ok=False, detail=_difference(g, built))
    return VerificationResult(kind="threshold", ok=True)


VERIFIERS: Dict[str, Callable[[Graph, str], VerificationResult]] = {
    "dpd": verify_decomposition,
    "expr": verify_expression,
    "layout": verify_layout,
    "rankdec": verify_rank_decomposition_witness,
    "threshold": verify_threshold,
}


def verify_witness(kind: str, g: Graph, text: str) -> VerificationResult:
    if kind not in VERIFIERS:
        raise InputError(f"unknown witness kind {kind!r}; expected one of {list(VERIFIERS)}")
    return VERIFIERS[kind](g, text)


def main(config) -> int:
    """
    Entrypoint for `witness-verify`. Exits 1 with the report when a witness fails.

    Args:
        config: Parsed configuration namespace with `kind`, `graph_file` and `witness_file`.
    """
    logger = Logger(config.log_level, config.module_name, config.log_to_file, config.log_dir or None)
    try:
        g = read_graph(config.graph_file)
        try:
            with open(config.witness_file, "r", encoding="utf-8") as f:
                text = f.read()
        except (OSError, UnicodeDecodeError) as e:
            raise InputError(f"cannot read witness file {config.witness_file}: {e}")
        result = verify_witness(config.kind, g, text)
        sys.stdout.write(dump_document(result) + "\n")
        if not result.ok:
            logger.error(f"{config.kind} witness rejected: {result.detail}")
            return EXIT_FAILURE
        logger.info(f"{config.kind} witness accepted")
        return EXIT_OK
    except (InputError, CapacityError) as e:
        logger.error(str(e))
        return exit_code(e)
    finally:
        logger.log_outro()
