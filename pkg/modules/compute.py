import sys
from typing import Optional

from pydantic import BaseModel

from util.digraph import Digraph, underlying_undirected
from util.errors import EXIT_OK, CapacityError, InputError, exit_code
from util.expressions import exact_dlcw, exact_dlnlc, exact_lcw, exact_lnlc
from util.graph_io import Graph, read_graph
from util.layout import NAMED_MEASURES, solve_exact, undirected_measure
from util.logger import Logger
from util.utility import print_settings
from util.witness import LayoutWitness, dump_document, expression_to_witness

EXPRESSION_MEASURES = {
    "dlnlc": exact_dlnlc,
    "dlcw": exact_dlcw,
    "lnlc": exact_lnlc,
    "lcw": exact_lcw,
}
MEASURES = tuple(NAMED_MEASURES) + tuple(EXPRESSION_MEASURES)
UNDIRECTED_MEASURES = ("pw", "cutw", "nw", "lrw", "lnlc", "lcw")


def compute_document(
    g: Graph,
    measure: str,
    dp_limit: Optional[int] = None,
    expression_limit: Optional[int] = None,
    logger=None,
) -> BaseModel:
    """Exact value of one measure with its witness, as a JSON document model.

    Undirected measures run on the underlying graph of a digraph; directed
    measures need a digraph.
    """
    if measure not in MEASURES:
        raise InputError(f"unknown measure {measure!r}; expected one of {list(MEASURES)}")
    directed = measure not in UNDIRECTED_MEASURES
    if directed and not isinstance(g, Digraph):
        raise InputError(f"{measure} is a directed measure; the input file holds an undirected graph")
    target = g if directed or not isinstance(g, Digraph) else underlying_undirected(g)

    if measure in EXPRESSION_MEASURES:
        value, expr = EXPRESSION_MEASURES[measure](target, limit=expression_limit, logger=logger)
        return expression_to_witness(expr, value)
    kind = NAMED_MEASURES[measure]
    if directed:
        result = solve_exact(target, kind, limit=dp_limit, logger=logger)
    else:
        result = undirected_measure(target, kind, limit=dp_limit, logger=logger)
    return LayoutWitness(measure=measure, value=result.value, layout=list(result.witness.order))


def main(config) -> int:
    """
    Entrypoint for `compute`. Prints the value and witness of one measure.

    Args:
        config: Parsed configuration namespace with `measure` and `file`.
    """
    logger = Logger(config.log_level, config.module_name, config.log_to_file, config.log_dir or None)
    try:
        if config.log_level.lower() == "debug":
            print_settings(logger, config)
        g = read_graph(config.file)
        logger.info(f"Computing {config.measure} on {g.n} vertices from {config.file}")
        document = compute_document(g, config.measure, config.dp_limit, config.expression_limit, logger)
        sys.stdout.write(dump_document(document) + "\n")
        return EXIT_OK
    except (InputError, CapacityError) as e:
        logger.error(str(e))
        return exit_code(e)
    finally:
        logger.log_outro()
