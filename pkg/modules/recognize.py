import sys

from pydantic import BaseModel

from util.digraph import Digraph, classify, is_dag
from util.errors import EXIT_OK, CapacityError, InputError, exit_code
from util.graph_io import Graph, read_graph
from util.logger import Logger
from util.threshold import recognize_threshold
from util.witness import ClassificationResult, ThresholdWitness, dump_document, sequence_to_witness

RECOGNIZERS = ("threshold", "oriented_threshold", "dag", "semicomplete")


def recognize_document(recognizer: str, g: Graph, logger=None) -> BaseModel:
    if recognizer not in RECOGNIZERS:
        raise InputError(f"unknown class {recognizer!r}; expected one of {list(RECOGNIZERS)}")
    if not isinstance(g, Digraph):
        raise InputError("recognition works on digraphs; the input file holds an undirected graph")
    if g.n == 0:
        raise InputError("recognition needs at least one vertex")

    if recognizer in ("threshold", "oriented_threshold"):
        result = recognize_threshold(g, oriented=recognizer == "oriented_threshold", logger=logger)
        if result.is_threshold:
            return sequence_to_witness(result.sequence)
        return ThresholdWitness(is_threshold=False, residual=list(result.residual_vertices))

    graph_class = classify(g)
    if recognizer == "dag":
        holds = is_dag(g)
    else:
        holds = graph_class in ("tournament", "semicomplete", "complete") or g.n == 1
    return ClassificationResult(recognizer=recognizer, holds=holds, graph_class=graph_class)


def main(config) -> int:
    """
    Entrypoint for `recognize`. A negative answer is a result, not a failure.

    Args:
        config: Parsed configuration namespace with `recognizer` and `file`.
    """
    logger = Logger(config.log_level, config.module_name, config.log_to_file, config.log_dir or None)
    try:
        g = read_graph(config.file)
        document = recognize_document(config.recognizer, g, logger)
        sys.stdout.write(dump_document(document) + "\n")
        return EXIT_OK
    except (InputError, CapacityError) as e:
        logger.error(str(e))
        return exit_code(e)
    finally:
        logger.log_outro()
