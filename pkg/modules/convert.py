import sys
from typing import Optional

from pydantic import BaseModel

from util.digraph import Digraph
from util.errors import EXIT_OK, CapacityError, InputError, exit_code
from util.expressions import (
    biorient_cw,
    biorient_nlc,
    cw_to_nlc,
    drop_directions_cw,
    drop_directions_nlc,
    nlc_to_cw,
)
from util.graph_io import Graph, read_graph
from util.layout import Layout
from util.logger import Logger
from util.pathdecomp import from_layout, width
from util.rankdecomp import decomposition_width, layout_to_rank_decomposition
from util.threshold import nlc1_to_threshold, threshold_to_nlc1
from util.witness import (
    DecompositionWitness,
    ExpressionWitness,
    LayoutWitness,
    RankDecompositionWitness,
    ThresholdWitness,
    dump_document,
    expression_to_witness,
    load_document,
    sequence_to_witness,
    sniff_kind,
    witness_to_expression,
    witness_to_sequence,
)

CONVERSIONS = (
    "nlc-cw",
    "cw-nlc",
    "drop-directions",
    "biorient",
    "layout-dpd",
    "layout-rankdec",
    "threshold-nlc1",
    "nlc1-threshold",
)
EXPRESSION_CONVERSIONS = ("nlc-cw", "cw-nlc", "drop-directions", "biorient")

_EXPRESSION_CONVERTERS = {
    ("nlc-cw", "nlc"): nlc_to_cw,
    ("cw-nlc", "cw"): cw_to_nlc,
    ("drop-directions", "nlc"): drop_directions_nlc,
    ("drop-directions", "cw"): drop_directions_cw,
    ("biorient", "unlc"): biorient_nlc,
    ("biorient", "ucw"): biorient_cw,
}


def normalize_conversion(name: str) -> str:
    name = name.replace("→", "-").replace("->", "-").replace("_", "-").lower()
    if name not in CONVERSIONS:
        raise InputError(f"unknown conversion {name!r}; expected one of {list(CONVERSIONS)}")
    return name


def _convert_expression(conversion: str, text: str) -> ExpressionWitness:
    kind = sniff_kind(text)
    converter = _EXPRESSION_CONVERTERS.get((conversion, kind))
    if converter is None:
        accepted = [k for c, k in _EXPRESSION_CONVERTERS if c == conversion]
        raise InputError(f"{conversion} takes a {' or '.join(accepted)} expression, got {kind!r}")
    out = converter(witness_to_expression(load_document(text, ExpressionWitness)))
    return expression_to_witness(out, out.k)


def _layout_for(g: Optional[Graph], text: str) -> Layout:
    if g is None:
        raise InputError("layout conversions need the graph file (--graph)")
    witness = load_document(text, LayoutWitness)
    layout = Layout(witness.layout)
    layout.validate(g.n)
    return layout


def convert_document(conversion: str, text: str, g: Optional[Graph] = None) -> BaseModel:
    conversion = normalize_conversion(conversion)
    if conversion in EXPRESSION_CONVERSIONS:
        return _convert_expression(conversion, text)

    if conversion == "layout-dpd":
        layout = _layout_for(g, text)
        if not isinstance(g, Digraph):
            raise InputError("directed path decompositions need a digraph")
        d = from_layout(g, layout)
        return DecompositionWitness(width=width(d), bags=d.as_lists())

    if conversion == "layout-rankdec":
        layout = _layout_for(g, text)
        dec = layout_to_rank_decomposition(g, layout)
        return RankDecompositionWitness(width=decomposition_width(g, dec), leaves=list(dec.leaves))

    if conversion == "threshold-nlc1":
        expr = threshold_to_nlc1(witness_to_sequence(load_document(text, ThresholdWitness)))
        return expression_to_witness(expr, 1)

    expr = witness_to_expression(load_document(text, ExpressionWitness))
    return sequence_to_witness(nlc1_to_threshold(expr))


def main(config) -> int:
    """
    Entrypoint for `convert`. Reads one witness and prints the converted one.

    Args:
        config: Parsed configuration namespace with `conversion`, `witness_file`
            and an optional `graph_file`.
    """
    logger = Logger(config.log_level, config.module_name, config.log_to_file, config.log_dir or None)
    try:
        try:
            with open(config.witness_file, "r", encoding="utf-8") as f:
                text = f.read()
        except (OSError, UnicodeDecodeError) as e:
            raise InputError(f"cannot read witness file {config.witness_file}: {e}")
        graph_file = getattr(config, "graph_file", None)
        g = read_graph(graph_file) if graph_file else None
        document = convert_document(config.conversion, text, g)
        logger.info(f"Converted {config.witness_file} with {config.conversion}")
        sys.stdout.write(dump_document(document) + "\n")
        return EXIT_OK
    except (InputError, CapacityError) as e:
        logger.error(str(e))
        return exit_code(e)
    finally:
        logger.log_outro()
