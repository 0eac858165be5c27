import math
import os
from pathlib import Path
from types import SimpleNamespace
from typing import Any, Iterable, Optional, Sequence

import yaml
from prettytable import PrettyTable
from tqdm import tqdm


def print_settings(logger: Any, module_config: SimpleNamespace) -> None:
    """Log the effective settings of a command in YAML format.

    Args:
        logger (Any): Logger instance.
        module_config (SimpleNamespace): Configuration object.
    """
    logger.debug(create_bar("Settings"))

    def ns_to_dict(obj: Any) -> Any:
        if isinstance(obj, SimpleNamespace):
            return {k: ns_to_dict(v) for k, v in vars(obj).items()}
        if isinstance(obj, dict):
            return {k: ns_to_dict(v) for k, v in obj.items()}
        if isinstance(obj, list):
            return [ns_to_dict(i) for i in obj]
        return obj

    raw = {k: v for k, v in vars(module_config).items() if k != "module_name"}
    try:
        yaml_output = yaml.dump(
            {getattr(module_config, "module_name", "settings"): ns_to_dict(raw)},
            sort_keys=False,
            allow_unicode=True,
            default_flow_style=False,
        )
        logger.debug("\n" + yaml_output)
    except yaml.YAMLError:
        logger.warning("Failed to render settings as YAML; falling back to key:value lines.")
        for key, value in raw.items():
            logger.debug(f"{key}: {value}")

    logger.debug(create_bar("-"))


def create_table(field_names: Sequence[str], rows: Iterable[Sequence[Any]], left: Sequence[str] = ()) -> str:
    """Render rows under the given headers as a PrettyTable.

    Args:
        field_names (Sequence[str]): Column headers.
        rows (Iterable[Sequence[Any]]): One sequence per row, in header order.
        left (Sequence[str]): Columns to align left; the rest are centred.

    Returns:
        str: Formatted table string.
    """
    table = PrettyTable()
    table.field_names = list(field_names)
    for name in left:
        table.align[name] = "l"
    for row in rows:
        table.add_row(list(row))
    return table.get_string()


def create_bar(middle_text: str) -> str:
    """Create a separation bar with text centered.

    Args:
        middle_text (str): Text to place in center of bar.

    Returns:
        str: Formatted separation bar.
    """
    total_length = 80
    if len(middle_text) == 1:
        return f"\n{middle_text * (total_length - 2)}\n"
    remaining_length = total_length - len(middle_text) - 4
    left_side_length = math.floor(remaining_length / 2)
    right_side_length = remaining_length - left_side_length
    return f"\n{'*' * left_side_length} {middle_text} {'*' * right_side_length}\n"


class DummyProgress:
    """Stand-in for a tqdm bar when progress output is disabled."""

    def __init__(self, iterable: Any) -> None:
        self.iterable = iterable

    def __enter__(self) -> "DummyProgress":
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        pass

    def __iter__(self):
        return iter(self.iterable)

    def update(self, n: int = 1) -> None:
        pass


def progress(
    iterable: Any,
    desc: Optional[str] = None,
    total: Optional[int] = None,
    unit: Optional[str] = None,
    enabled: bool = False,
    leave: bool = True,
    **kwargs: Any,
) -> Any:
    """Wrap tqdm so progress bars can be switched off from the config.

    Bars are written to stderr; stdout carries JSON only.

    Args:
        iterable (Any): Iterable to wrap.
        desc (Optional[str]): Description for progress bar.
        total (Optional[int]): Total iterations.
        unit (Optional[str]): Unit of progress.
        enabled (bool): Show a bar at all.
        leave (bool): Keep progress bar after completion.
        **kwargs: Additional tqdm args.

    Returns:
        tqdm or DummyProgress: Progress bar or dummy context manager.
    """
    if not enabled:
        return DummyProgress(iterable)
    return tqdm(iterable, desc=desc, total=total, unit=unit, leave=leave, **kwargs)


def get_log_dir(module_name: str, log_base: Optional[str] = None) -> str:
    """Return (and create) the log directory for a given module."""
    if log_base:
        log_dir = Path(log_base) / module_name
    else:
        log_dir = Path(__file__).resolve().parents[1] / "logs" / module_name
    os.makedirs(log_dir, exist_ok=True)
    return str(log_dir)
