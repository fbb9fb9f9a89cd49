from __future__ import annotations

import logging
import sys
import time
from typing import Optional

from .metadata import MetadataRecorder


class ProgressTracker:
    """
    Very light progress reporter for batch cells.
    ───────────────────────────
    • Prints one-line updates to stdout **live** (over-writable).
    • Logs start / finish through the given logger.
    • Notifies MetadataRecorder when a phase starts / ends so timings end up
      in run_metadata.json.
    """

    def __init__(
        self,
        phase_name: str,
        logger: logging.Logger,
        metadata: Optional[MetadataRecorder] = None,
        total: Optional[int] = None,
        *,
        live: bool = True,
    ):
        self.phase   = phase_name
        self.logger  = logger
        self.meta    = metadata
        self.total   = total or 0
        self.live    = live
        self.counter = 0
        self._start  = time.perf_counter()
        if self.meta:
            self.meta.start(self.phase)
        self.logger.info(f"[{self.phase}] ▶ started (total={self.total})")

    # ------------------------------------------------------------------ public
    def tick(self, msg: str = ""):
        """Call once per finished unit of work (one simulated run)."""
        self.counter += 1
        if not self.live:
            self.logger.debug(f"[{self.phase}] {self.counter}/{self.total} {msg}")
            return
        bar = f"{self.counter}/{self.total}" if self.total else f"{self.counter}"
        try:
            sys.stdout.write(f"\r[{self.phase}] {bar} {msg:60s}")
            sys.stdout.flush()
        except (OSError, ValueError):
            # stdout may be closed
            pass

    def done(self, **extra):
        """Finish the phase: newline, log line, metadata update."""
        elapsed = time.perf_counter() - self._start
        if self.live:
            try:
                sys.stdout.write("\n")
            except (OSError, ValueError):
                pass
        self.logger.info(f"[{self.phase}] ✔ finished in {elapsed:.2f}s")
        if self.meta:
            self.meta.stop(self.phase, total=self.counter, **extra)
