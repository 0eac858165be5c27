import io
import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
from util.logger import Logger

# ─── Console output ────────────────────────────────────────────

def test_errors_carry_module_prefix():
    stream = io.StringIO()
    logger = Logger("info", "compute", stream=stream)
    logger.info("plain message")
    logger.error("bad input")
    lines = stream.getvalue().splitlines()
    assert lines == ["plain message", "ERROR [compute]: bad input"]

def test_level_filters_debug():
    stream = io.StringIO()
    logger = Logger("warning", "sweep", stream=stream)
    logger.info("hidden")
    logger.warning("shown")
    assert stream.getvalue() == "shown\n"

def test_invalid_level_falls_back_to_info():
    stream = io.StringIO()
    logger = Logger("loud", "sweep", stream=stream)
    logger.info("shown")
    assert "Invalid log level 'loud'" in stream.getvalue()
    assert "shown" in stream.getvalue()

# ─── Log files ─────────────────────────────────────────────────

def test_file_logs_rotate(tmp_path):
    for run in range(3):
        logger = Logger("info", "convert", log_to_file=True, log_dir=str(tmp_path), max_logs=2, stream=io.StringIO())
        logger.info(f"run {run}")
        for handler in logger.handlers:
            handler.flush()
            handler.close()
    names = sorted(os.listdir(tmp_path / "convert"))
    assert names == ["convert.1.log", "convert.2.log", "convert.log"]
    assert "run 2" in (tmp_path / "convert" / "convert.log").read_text()
    assert "run 0" in (tmp_path / "convert" / "convert.2.log").read_text()
