import os
import sys
from types import SimpleNamespace

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
from util.utility import (
    DummyProgress,
    create_bar,
    create_table,
    get_log_dir,
    print_settings,
    progress,
)


class DummyLogger:
    def __init__(self):
        self.logs = []

    def debug(self, msg): self.logs.append(f"DEBUG: {msg}")
    def warning(self, msg): self.logs.append(f"WARNING: {msg}")

# ─── Table and Bar Formatting ──────────────────────────────────

def test_create_table():
    table_output = create_table(["Measure", "Value"], [["dpw", 0], ["dlcw", 2]], left=["Measure"])
    lines = table_output.splitlines()
    assert "Measure" in lines[1] and "Value" in lines[1]
    assert "| dlcw " in table_output
    assert len(lines) == 6

def test_create_table_without_rows():
    table_output = create_table(["Family", "n"], [])
    assert "Family" in table_output
    assert "|" in table_output

def test_create_bar_single_char():
    bar = create_bar("-")
    assert bar == "\n" + "-" * 78 + "\n"

def test_create_bar_with_text():
    bar = create_bar("SWEEP")
    assert " SWEEP " in bar
    assert bar.startswith("\n")
    assert len(bar.strip()) == 78

# ─── Settings ──────────────────────────────────────────────────

def test_print_settings_renders_yaml():
    logger = DummyLogger()
    config = SimpleNamespace(module_name="compute", log_level="debug", dp_limit=20, solver=SimpleNamespace(workers=2))
    print_settings(logger, config)
    rendered = "\n".join(logger.logs)
    assert "compute:" in rendered
    assert "dp_limit: 20" in rendered
    assert "workers: 2" in rendered

# ─── Progress ──────────────────────────────────────────────────

def test_progress_disabled_is_a_passthrough():
    bar = progress([1, 2, 3], desc="sweep", total=3)
    assert isinstance(bar, DummyProgress)
    with bar as it:
        it.update()
        assert list(it) == [1, 2, 3]

def test_progress_enabled_wraps_tqdm():
    bar = progress(range(3), desc="sweep", total=3, enabled=True, disable=True)
    assert not isinstance(bar, DummyProgress)
    assert list(bar) == [0, 1, 2]

# ─── Log directories ───────────────────────────────────────────

def test_get_log_dir_creates_directory(tmp_path):
    path = get_log_dir("sweep", str(tmp_path))
    assert path == str(tmp_path / "sweep")
    assert os.path.isdir(path)
