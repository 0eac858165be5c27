import sys

from util.errors import EXIT_OK, CapacityError, InputError, exit_code
from util.families import UNDIRECTED_FAMILIES, generate, generate_undirected, parse_family_params
from util.graph_io import Graph, format_graph
from util.logger import Logger


def generate_graph(family: str, params) -> Graph:
    """Directed families by name; `u:<name>` selects an undirected family."""
    if family.startswith("u:"):
        name = family[2:]
        if name not in UNDIRECTED_FAMILIES:
            raise InputError(f"unknown undirected family {name!r}; expected one of {list(UNDIRECTED_FAMILIES)}")
        try:
            values = [int(p, 0) for p in params]
        except ValueError:
            raise InputError(f"family parameters must be integers, got {list(params)}")
        if not 1 <= len(values) <= 2:
            raise InputError(f"{name} takes parameters n [m]")
        return generate_undirected(name, *values)
    return generate(parse_family_params(family, list(params)))


def main(config) -> int:
    logger = Logger(config.log_level, config.module_name, config.log_to_file, config.log_dir or None)
    try:
        g = generate_graph(config.family, config.params)
        logger.info(f"Generated {config.family} {' '.join(config.params)} with {g.n} vertices")
        sys.stdout.write(format_graph(g))
        return EXIT_OK
    except (InputError, CapacityError) as e:
        logger.error(str(e))
        return exit_code(e)
    finally:
        logger.log_outro()
