import json
import pathlib
from copy import deepcopy
from types import SimpleNamespace
from typing import Any, Dict, List, Optional, Tuple

import yaml

from util.errors import InputError

TEMPLATE_PATH = pathlib.Path(__file__).parent / "template" / "config_template.json"

# sections merged into every command's namespace, in this order
SHARED_SECTIONS = ("main", "solver")


class Config:
    """Builds the settings of one command from the template, a YAML file and CLI overrides."""

    def __init__(
        self,
        module_name: str,
        config_path: Optional[str] = None,
        overrides: Optional[Dict[str, Dict[str, Any]]] = None,
    ) -> None:
        """
        Initialize Config with module name.

        Args:
            module_name (str): Name of the command requesting configuration.
            config_path (Optional[str]): YAML file overlaying the template.
            overrides (Optional[dict]): Section -> key -> value from flags; None values are ignored.
        """
        self.config_path = config_path
        self.module_name = module_name
        self.added_keys: List[str] = []
        self.removed_keys: List[str] = []
        self.load_config(overrides or {})

    def load_config(self, overrides: Dict[str, Dict[str, Any]]) -> None:
        template = load_template()
        data = template
        if self.config_path:
            user = load_user_config(self.config_path)
            data, self.added_keys, self.removed_keys = _reconcile_config_data(template, user)
        data = _apply_overrides(data, overrides)
        self._config = data

        merged: Dict[str, Any] = {}
        for section in SHARED_SECTIONS:
            merged.update(data.get(section, {}))
        merged.update(data.get(self.module_name, {}))
        self.module_config = SimpleNamespace(**merged)
        self.module_config.module_name = self.module_name

    def section(self, name: str) -> Dict[str, Any]:
        return deepcopy(self._config.get(name, {}))


def load_template(path: pathlib.Path = TEMPLATE_PATH) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"[CONFIG] Could not read template configuration {path}: {e}")


def load_user_config(path: str) -> Dict[str, Any]:
    """
    Load YAML configuration from the specified file path.

    Args:
        path (str): Path to the YAML configuration file.

    Returns:
        dict: Parsed configuration dictionary; an empty file gives an empty dict.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f.read())
    except FileNotFoundError:
        raise InputError(f"[CONFIG] config file {path} not found")
    except yaml.YAMLError as e:
        raise InputError(f"[CONFIG] Error parsing config file {path}: {e}")
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise InputError(f"[CONFIG] config file {path} must hold a mapping of sections")
    return data


def _reconcile_config_data(
    template_data: Dict[str, Any], user_data: Dict[str, Any]
) -> Tuple[Dict[str, Any], List[str], List[str]]:
    """
    Recursively reconcile user configuration with a template.

    Args:
        template_data (dict): Template configuration dictionary.
        user_data (dict): User configuration dictionary.

    Returns:
        Tuple containing reconciled dictionary, list of added keys, and list of removed keys.
    """
    reconciled_dict: Dict[str, Any] = {}
    added_keys: List[str] = []
    removed_keys: List[str] = []

    for key, template_value in template_data.items():
        if key in user_data:
            user_value = user_data[key]
            if isinstance(template_value, dict):
                if isinstance(user_value, dict):
                    rec, add, rem = _reconcile_config_data(template_value, user_value)
                    reconciled_dict[key] = rec
                    added_keys.extend([f"{key}.{k}" for k in add])
                    removed_keys.extend([f"{key}.{k}" for k in rem])
                else:
                    reconciled_dict[key] = deepcopy(template_value)
                    removed_keys.append(key)
            else:
                reconciled_dict[key] = user_value
        else:
            reconciled_dict[key] = deepcopy(template_value)
            added_keys.append(key)

    for key in user_data.keys():
        if key not in template_data:
            removed_keys.append(key)
    return reconciled_dict, added_keys, removed_keys


def _apply_overrides(data: Dict[str, Any], overrides: Dict[str, Dict[str, Any]]) -> Dict[str, Any]:
    result = deepcopy(data)
    for section, values in overrides.items():
        target = result.setdefault(section, {})
        for key, value in values.items():
            if value is not None:
                target[key] = value
    return result


def report_reconciliation(config: Config, logger: Any) -> None:
    """Log the keys a user config file was missing or carried beyond the template."""
    if config.added_keys:
        logger.debug(f"[CONFIG] Keys filled from template: {config.added_keys}")
    if config.removed_keys:
        logger.warning(f"[CONFIG] Unknown keys ignored in {config.config_path}: {config.removed_keys}")
