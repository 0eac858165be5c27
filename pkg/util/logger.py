import logging
import os
import sys
from datetime import datetime
from typing import Optional

from util.utility import create_bar, get_log_dir
from util.version import get_version


class Logger:
    """Logger with optional file rotation, stderr console output and a versioned header.

    stdout belongs to the JSON results, so every handler writes to stderr
    or to the log file.
    """

    def __init__(
        self,
        log_level: str,
        module_name: str,
        log_to_file: bool = False,
        log_dir: Optional[str] = None,
        max_logs: int = 9,
        stream=None,
    ):
        stream = stream if stream is not None else sys.stderr
        self._logger = logging.getLogger(f"{module_name}_{os.getpid()}")
        self._logger.handlers.clear()
        self._logger.propagate = False
        self._logger.setLevel(getattr(logging, log_level.upper(), logging.INFO))

        if log_to_file:
            self._add_file_handler(module_name, log_dir, max_logs)

        console = logging.StreamHandler(stream)
        console.setLevel(self._logger.level)
        console.addFilter(lambda record: record.levelno < logging.ERROR)
        console.setFormatter(logging.Formatter("%(message)s"))
        self._logger.addHandler(console)

        error_console = logging.StreamHandler(stream)
        error_console.setLevel(logging.ERROR)
        error_console.setFormatter(logging.Formatter(f"%(levelname)s [{module_name}]: %(message)s"))
        self._logger.addHandler(error_console)

        if not hasattr(logging, log_level.upper()):
            self._logger.warning(f"Invalid log level '{log_level}', defaulting to INFO")

        self.module_name = module_name
        self.start_time = datetime.now()
        self._logger.debug(create_bar(f"{module_name.replace('_', ' ').upper()} Version: {get_version()}"))

    def _add_file_handler(self, module_name: str, log_dir: Optional[str], max_logs: int) -> None:
        """Rotate earlier runs to <name>.1.log .. <name>.<max_logs>.log and log to a fresh file."""
        from logging.handlers import RotatingFileHandler

        base = os.path.join(get_log_dir(module_name, log_dir), module_name)
        log_file = f"{base}.log"
        if os.path.isfile(log_file):
            for i in range(max_logs - 1, 0, -1):
                old = f"{base}.{i}.log"
                if os.path.exists(old):
                    os.replace(old, f"{base}.{i + 1}.log")
            os.replace(log_file, f"{base}.1.log")

        formatter = logging.Formatter(
            fmt="%(asctime)s %(levelname)s: %(message)s", datefmt="%m/%d/%y %I:%M:%S %p"
        )
        file_handler = RotatingFileHandler(log_file, mode="w", backupCount=max_logs)
        file_handler.setFormatter(formatter)
        self._logger.addHandler(file_handler)

    def log_outro(self) -> None:
        """Log runtime duration since start_time."""
        duration = datetime.now() - self.start_time
        hours, remainder = divmod(duration.total_seconds(), 3600)
        minutes, seconds = divmod(remainder, 60)
        formatted_duration = f"{int(hours)}h {int(minutes)}m {seconds:.1f}s"
        name = self.module_name.replace("_", " ").upper()
        self._logger.debug(create_bar(f"{name} | Run Time: {formatted_duration}"))

    def __getattr__(self, name):
        return getattr(self._logger, name)
