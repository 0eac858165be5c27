import argparse
import importlib
import sys
from typing import Any, Dict, List, Optional

from util.config import Config, report_reconciliation
from util.errors import EXIT_FAILURE, CapacityError, InputError, exit_code
from util.logger import Logger
from util.version import get_version

# command name on the command line -> module under modules/
list_of_python_modules = {
    "compute": "compute",
    "generate": "generate",
    "recognize": "recognize",
    "witness-verify": "witness_verify",
    "convert": "convert",
    "sweep": "sweep",
}

# flag destination -> config section it overrides
OVERRIDE_SECTIONS = {
    "log_level": "main",
    "progress": "main",
    "dp_limit": "solver",
    "expression_limit": "solver",
    "workers": "solver",
    "n": "sweep",
    "iso": "sweep",
    "properties": "sweep",
    "table1": "sweep",
    "table1_max_n": "sweep",
    "biorientation": "sweep",
    "bio_max_n": "sweep",
    "orientation_max_n": "sweep",
}


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", dest="config_path", default=None, help="YAML file overlaying the defaults.")
    common.add_argument("--log-level", default=None, choices=["debug", "info", "warning", "error", "critical"])
    common.add_argument("--dp-limit", type=int, default=None, help="Largest n the subset DP accepts.")
    common.add_argument("--expression-limit", type=int, default=None, help="Largest n the expression solvers accept.")
    common.add_argument("--workers", type=int, default=None, help="Worker processes for sweeps.")
    common.add_argument("--progress", action="store_true", default=None, help="Show progress bars on stderr.")
    return common


def build_parser() -> argparse.ArgumentParser:
    from modules.compute import MEASURES
    from modules.convert import CONVERSIONS
    from modules.recognize import RECOGNIZERS
    from modules.witness_verify import VERIFIERS

    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="diwidth", description="Exact directed width parameters of small digraphs, with witnesses."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {get_version()}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="Exact value and witness of one measure.")
    p.add_argument("measure", choices=MEASURES)
    p.add_argument("file")

    p = sub.add_parser("generate", parents=[common], help="Print a family member in the graph text format.")
    p.add_argument("family")
    p.add_argument("params", nargs="*")

    p = sub.add_parser("recognize", parents=[common], help="Decide class membership.")
    p.add_argument("recognizer", choices=RECOGNIZERS)
    p.add_argument("file")

    p = sub.add_parser("witness-verify", parents=[common], help="Check a JSON witness against a graph.")
    p.add_argument("kind", choices=sorted(VERIFIERS))
    p.add_argument("graph_file")
    p.add_argument("witness_file")

    p = sub.add_parser("convert", parents=[common], help="Turn one witness into another representation.")
    p.add_argument("conversion", help=f"one of {', '.join(CONVERSIONS)}")
    p.add_argument("witness_file")
    p.add_argument("--graph", dest="graph_file", default=None, help="Graph file, needed by layout conversions.")

    p = sub.add_parser("sweep", parents=[common], help="Check the width relations exhaustively.")
    p.add_argument("--n", type=int, default=None, help="Largest vertex count of the exhaustive sweep; 0 skips it.")
    p.add_argument("--iso", action="store_true", default=None, help="One digraph per isomorphism class.")
    p.add_argument("--properties", default=None, help="Comma separated property ids or prefixes.")
    p.add_argument("--table1", action="store_true", default=None, help="Also check the family values.")
    p.add_argument("--table1-max-n", type=int, default=None)
    p.add_argument("--orientation-max-n", type=int, default=None)
    p.add_argument("--biorientation", action="store_true", default=None, help="Also check biorientation equalities.")
    p.add_argument("--bio-max-n", type=int, default=None)
    return parser


def collect_overrides(args: argparse.Namespace) -> Dict[str, Dict[str, Any]]:
    overrides: Dict[str, Dict[str, Any]] = {}
    for key, section in OVERRIDE_SECTIONS.items():
        value = getattr(args, key, None)
        if value is not None:
            overrides.setdefault(section, {})[key] = value
    return overrides


def run_module(args: argparse.Namespace) -> int:
    module_name = list_of_python_modules[args.command]
    config = Config(module_name, args.config_path, collect_overrides(args))
    module_config = config.module_config
    for key, value in vars(args).items():
        if key not in OVERRIDE_SECTIONS and key not in ("command", "config_path"):
            setattr(module_config, key, value)
    if config.config_path:
        report_reconciliation(config, Logger(module_config.log_level, module_name))
    module = importlib.import_module(f"modules.{module_name}")
    return module.main(module_config)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run_module(args)
    except (InputError, CapacityError) as e:
        Logger(args.log_level or "info", "main").error(str(e))
        return exit_code(e)
    except Exception:
        Logger(args.log_level or "info", "main").error("\n\nAn error occurred:\n", exc_info=True)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
