import subprocess
from pathlib import Path

BASE = Path(__file__).parents[1] / "VERSION"


def get_version() -> str:
    """Version from the VERSION file, suffixed with branch and commit count inside a git checkout."""
    try:
        base_version = BASE.read_text().strip()
    except OSError:
        base_version = "0.0.0"
    try:
        branch = (
            subprocess.check_output(
                ["git", "rev-parse", "--abbrev-ref", "HEAD"],
                stderr=subprocess.DEVNULL,
                cwd=BASE.parent,
            )
            .decode()
            .strip()
        )
        commit_count = (
            subprocess.check_output(
                ["git", "rev-list", "--count", "HEAD"],
                stderr=subprocess.DEVNULL,
                cwd=BASE.parent,
            )
            .decode()
            .strip()
        )
        return f"{base_version}.{branch}{commit_count}"
    except (OSError, subprocess.CalledProcessError):
        return base_version
