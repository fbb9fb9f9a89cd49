from .csv_io import load_layout, read_csv, rounds_frame, write_csv
from .metrics import energy_variance, lifetime_metrics, residual_curve, snapshot_at
from .records import LifetimeMetrics, RoundLog

# batch and cli import the protocol package, which imports this one; load
# them as metrics_io.batch / metrics_io.cli.
__all__ = [
    "load_layout", "read_csv", "rounds_frame", "write_csv",
    "energy_variance", "lifetime_metrics", "residual_curve", "snapshot_at",
    "LifetimeMetrics", "RoundLog",
]
