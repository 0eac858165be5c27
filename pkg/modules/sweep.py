import sys
from typing import Iterable, List, Union

from util.errors import EXIT_FAILURE, EXIT_OK, CapacityError, InputError, exit_code
from util.harness import check_biorientation_equalities, check_table1, merge_reports, run_sweep
from util.logger import Logger
from util.utility import print_settings
from util.witness import SweepReport, dump_document


def parse_properties(properties: Union[str, Iterable[str], None]) -> List[str]:
    """Accept the comma separated flag value as well as a YAML list."""
    if not properties:
        return []
    if isinstance(properties, str):
        properties = properties.split(",")
    return [p.strip() for p in properties if p and p.strip()]


def run_checks(config, logger=None) -> SweepReport:
    """Run the exhaustive sweep plus the optional family checks and merge the reports.

    `n = 0` skips the exhaustive sweep, which leaves only the family checks.
    """
    if config.n < 0:
        raise InputError(f"sweep size must be non-negative, got {config.n}")
    if config.workers < 1:
        raise InputError(f"workers must be at least 1, got {config.workers}")
    reports = []
    if config.n > 0:
        reports.append(
            run_sweep(
                config.n,
                up_to_iso=config.iso,
                properties=parse_properties(config.properties),
                workers=config.workers,
                dp_limit=config.dp_limit,
                expression_limit=config.expression_limit,
                show_progress=config.progress,
                logger=logger,
            )
        )
    if config.table1:
        reports.append(
            check_table1(
                config.table1_max_n,
                orientation_max_n=config.orientation_max_n,
                dp_limit=config.dp_limit,
                expression_limit=config.expression_limit,
                logger=logger,
            )
        )
    if config.biorientation:
        reports.append(
            check_biorientation_equalities(
                config.bio_max_n, dp_limit=config.dp_limit, expression_limit=config.expression_limit, logger=logger
            )
        )
    if not reports:
        raise InputError("nothing to check: give --n > 0, --table1 or --biorientation")
    return reports[0] if len(reports) == 1 else merge_reports(reports)


def main(config) -> int:
    """
    Entrypoint for `sweep`. Exits 1 iff the report lists violations.

    Args:
        config: Parsed configuration namespace with the `sweep` and `solver` sections.
    """
    logger = Logger(config.log_level, config.module_name, config.log_to_file, config.log_dir or None)
    try:
        if config.log_level.lower() == "debug":
            print_settings(logger, config)
        report = run_checks(config, logger)
        sys.stdout.write(dump_document(report) + "\n")
        for note in report.notes:
            logger.info(note)
        if report.violations:
            for v in report.violations[:10]:
                logger.error(f"{v.property} fails on n={v.n} arcs={v.arcs}: {v.detail}")
            if len(report.violations) > 10:
                logger.error(f"... and {len(report.violations) - 10} more")
            return EXIT_FAILURE
        return EXIT_OK
    except (InputError, CapacityError) as e:
        logger.error(str(e))
        return exit_code(e)
    finally:
        logger.log_outro()
