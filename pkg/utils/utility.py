"""
utils/utility.py – logging setup and run-folder helpers for the CLI.
"""

import logging
import re
import sys
from datetime import datetime
from pathlib import Path
from typing import Optional, Union

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(message)s"
_RUN_PREFIX = re.compile(r"^(\d{3})_")


def setup_logger(log_file_path: Optional[Path] = None, *, console_level: int = logging.INFO) -> None:
    """
    Root logger with a console handler (INFO) and, when a path is given, a
    DEBUG file handler. Handlers from an earlier call are closed first, so
    repeated CLI invocations in one process never share a log file.
    """
    root = logging.getLogger()
    root.setLevel(logging.DEBUG)
    for handler in list(root.handlers):
        handler.close()
    root.handlers.clear()

    console = logging.StreamHandler(sys.stdout)
    console.setLevel(console_level)
    console.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(console)

    if log_file_path is not None:
        to_file = logging.FileHandler(log_file_path, encoding="utf-8")
        to_file.setLevel(logging.DEBUG)
        to_file.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(to_file)


def sanitize_path_segment(name: str) -> str:
    """Anything outside [A-Za-z0-9_-] becomes '_' (e.g. 'a/b' → 'a_b')."""
    return re.sub(r"[^a-zA-Z0-9_\-]", "_", name)


def get_next_run_number(runs_dir: Path) -> str:
    """Next free 3-digit prefix among `runs_dir`'s 'NNN_…' folders ('000' if none)."""
    if not runs_dir.exists():
        return "000"
    used = [int(m.group(1)) for d in runs_dir.iterdir()
            if d.is_dir() and (m := _RUN_PREFIX.match(d.name))]
    return f"{max(used) + 1:03d}" if used else "000"


def create_run_folder(command: str, label: str, root: Union[str, Path] = "runs") -> Path:
    """runs/NNN_DD_MM_YY_HH_MM_<command>_<label>, created on the spot."""
    runs_dir = Path(root)
    runs_dir.mkdir(parents=True, exist_ok=True)
    stamp = datetime.now().strftime("%d_%m_%y_%H_%M")
    name = "_".join([get_next_run_number(runs_dir), stamp,
                     sanitize_path_segment(command), sanitize_path_segment(label)])
    run_path = runs_dir / name
    run_path.mkdir(exist_ok=True)
    return run_path
