#!/usr/bin/env python3
"""
metrics_io/cli.py – command-line entry point.

  simulate         one run → rounds/events/alive/metrics/decision_graph/residual_curve CSV
  batch            protocols × seeds → runs.csv + summary.csv
  cluster          clustering only on a layout → assignment.csv + decision_graph.csv
  deploy           seeded uniform layout → layout CSV
  beta-sweep       boundary-node memberships for several β → beta_sweep.csv
  validate-config  load + validate, print the resolved configuration

Configuration layering: built-in defaults → --config YAML → explicit flags.
Exit status 0 on success, 2 on configuration / parameter errors, 1 on I/O
or clustering failures.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import yaml

from common.metadata import MetadataRecorder
from core.config import NetworkConfig, load_config
from core.deploy import deploy_network
from core.errors import ConfigError, DegenerateClusterError, ParameterError
from core.network import Network
from core.types import Role
from density.peaks import decision_graph
from protocol.base import ProtocolFactory
from protocol.simulator import simulate
from protocol.state import ProtocolKind
from utils.utility import create_run_folder, setup_logger

from .batch import beta_sweep, run_batch
from .csv_io import decision_graph_frame, layout_frame, load_layout, write_csv, write_run_tables

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2

# flag dest → NetworkConfig field
_OVERRIDES = {
    "seed":               "rng_seed",
    "density":            "density_method",
    "bandwidth":          "kde_bandwidth",
    "k":                  "forced_k",
    "dc_fraction":        "dc_neighbor_fraction",
    "beta":               "beta",
    "reassign_threshold": "reassign_threshold",
    "eps":                "convergence_eps",
    "max_iter":           "r_max",
    "max_rounds":         "max_rounds",
    "switch_threshold":   "switch_threshold",
    "checkpoints":        "ev_checkpoints",
}


# ─────────────────────────── argument parsing ───────────────────────────
def _int_list(text: str) -> List[int]:
    """'1-20', '1,2,5' or a mix such as '1-3,7'."""
    out: List[int] = []
    try:
        for part in filter(None, (p.strip() for p in text.split(","))):
            if "-" in part[1:]:
                lo, hi = part.split("-", 1)
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers like '1-20' or '1,2,5', got {text!r}")
    if not out:
        raise argparse.ArgumentTypeError(f"empty integer list {text!r}")
    return out


def _float_list(text: str) -> List[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _name_list(text: str) -> List[str]:
    return [p.strip() for p in text.split(",") if p.strip()]


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    # ─────────────────────────── custom yaml ───────────────────────────
    p.add_argument("-c", "--config", help="YAML configuration (e.g. config/ISKM_default.yaml); defaults to the 100 m field")
    # ─────────────────────────── overrides ─────────────────────────────
    p.add_argument("--seed",               type=int)
    p.add_argument("--density",            choices=["kde", "cutoff"])
    p.add_argument("--bandwidth",          help="KDE bandwidth in meters or 'auto'")
    p.add_argument("--k",                  type=int, help="forced cluster count")
    p.add_argument("--dc-fraction",        type=float)
    p.add_argument("--beta",               type=float)
    p.add_argument("--reassign-threshold", type=float)
    p.add_argument("--eps",                type=float)
    p.add_argument("--max-iter",           type=int)
    p.add_argument("--max-rounds",         type=int)
    p.add_argument("--switch-threshold",   type=float)
    p.add_argument("--checkpoints",        type=_int_list, help="EV checkpoint rounds, e.g. 200,400,600")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="run_simulation.py", description="Soft k-means WSN clustering simulator")
    sub = ap.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="simulate one network lifetime")
    _add_config_flags(sim)
    sim.add_argument("--protocol", default=ProtocolKind.ISKMEANS.value)
    sim.add_argument("--layout",   help="layout CSV (node_id, x_m, y_m) instead of a seeded deployment")
    sim.add_argument("--out-dir")

    bat = sub.add_parser("batch", help="compare protocols over many seeds")
    _add_config_flags(bat)
    bat.add_argument("--protocols", type=_name_list, default=[k.value for k in ProtocolKind])
    bat.add_argument("--seeds",     type=_int_list, default=list(range(1, 21)))
    bat.add_argument("--workers",   type=int, default=1)
    bat.add_argument("--out-dir")

    clu = sub.add_parser("cluster", help="run the clustering pipeline once on a layout")
    _add_config_flags(clu)
    clu.add_argument("--protocol", default=ProtocolKind.ISKMEANS.value)
    clu.add_argument("--layout",   help="layout CSV; a seeded deployment when omitted")
    clu.add_argument("--out-dir")

    dep = sub.add_parser("deploy", help="write a seeded uniform layout")
    _add_config_flags(dep)
    dep.add_argument("--out", required=True, help="layout CSV path")

    bsw = sub.add_parser("beta-sweep", help="boundary-node memberships for several stiffness values")
    _add_config_flags(bsw)
    bsw.add_argument("--betas",  type=_float_list, default=[0.2, 0.5, 1.0])
    bsw.add_argument("--layout", help="layout CSV; a seeded deployment when omitted")
    bsw.add_argument("--out-dir")

    val = sub.add_parser("validate-config", help="load and validate a configuration")
    _add_config_flags(val)
    return ap


def resolve_config(args: argparse.Namespace) -> NetworkConfig:
    overrides: Dict[str, Any] = {}
    for dest, field_name in _OVERRIDES.items():
        value = getattr(args, dest, None)
        if value is not None:
            overrides[field_name] = value
    return load_config(args.config, overrides)


def _out_dir(args: argparse.Namespace, label: str) -> Path:
    if getattr(args, "out_dir", None):
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        return out
    return create_run_folder(args.command, label)


def _network(args: argparse.Namespace, cfg: NetworkConfig) -> tuple[NetworkConfig, Network]:
    if getattr(args, "layout", None):
        xy = load_layout(args.layout)
        cfg = cfg.replace(n_nodes=len(xy))
        return cfg, deploy_network(cfg, cfg.rng_seed, xy)
    return cfg, deploy_network(cfg, cfg.rng_seed)


# ─────────────────────────── commands ───────────────────────────
def cmd_simulate(args: argparse.Namespace, cfg: NetworkConfig) -> int:
    kind = ProtocolKind.parse(args.protocol)
    out = _out_dir(args, f"{kind.value}_seed{cfg.rng_seed}")
    setup_logger(out / "run.log")
    meta = MetadataRecorder(logger)

    layout = None
    if args.layout:
        layout = load_layout(args.layout)
        cfg = cfg.replace(n_nodes=len(layout))
    meta.start("simulate")
    result = simulate(cfg, kind, cfg.rng_seed, layout=layout)
    meta.stop("simulate", rounds=len(result.logs))

    write_run_tables(result, out)
    cfg.dump_yaml(out / "config_resolved.yaml")
    meta.note(command="simulate", protocol=kind.value, seed=cfg.rng_seed,
              metrics=result.metrics.as_row(), warnings=result.warnings)
    meta.write(out / "run_metadata.json")
    logger.info("✅ simulate finished → %s", out)
    return EXIT_OK


def cmd_batch(args: argparse.Namespace, cfg: NetworkConfig) -> int:
    kinds = [ProtocolKind.parse(k).value for k in args.protocols]
    out = _out_dir(args, f"{'-'.join(kinds)}_{len(args.seeds)}seeds")
    setup_logger(out / "run.log")
    meta = MetadataRecorder(logger)

    result = run_batch(cfg, kinds, args.seeds, workers=args.workers, metadata=meta, live_progress=True)
    write_csv(result.runs, out / "runs.csv")
    write_csv(result.summary, out / "summary.csv")
    cfg.dump_yaml(out / "config_resolved.yaml")
    meta.note(command="batch", protocols=kinds, seeds=list(args.seeds), workers=args.workers,
              errors=result.errors)
    meta.write(out / "run_metadata.json")
    if result.errors:
        logger.warning("%d of %d runs failed; see runs.csv", len(result.errors), len(result.runs))
    logger.info("✅ batch finished → %s", out)
    return EXIT_OK


def cmd_cluster(args: argparse.Namespace, cfg: NetworkConfig) -> int:
    kind = ProtocolKind.parse(args.protocol)
    out = _out_dir(args, kind.value)
    setup_logger(out / "run.log")
    cfg, network = _network(args, cfg)

    protocol = ProtocolFactory.create(kind, config=cfg, rng=np.random.default_rng(cfg.rng_seed))
    state = protocol.form_state(network)
    table = layout_frame(network.positions, state.labels(network.n))
    table["role"] = [Role(int(r)).label for r in state.roles(network.n)]
    write_csv(table, out / "assignment.csv")
    write_csv(decision_graph_frame(decision_graph(network.positions, cfg)), out / "decision_graph.csv")
    cfg.dump_yaml(out / "config_resolved.yaml")
    logger.info("✅ %d clusters, sizes %s → %s", state.k,
                [len(state.members(v)) for v in range(state.k)], out)
    return EXIT_OK


def cmd_deploy(args: argparse.Namespace, cfg: NetworkConfig) -> int:
    setup_logger(None)
    network = deploy_network(cfg, cfg.rng_seed)
    write_csv(layout_frame(network.positions), args.out)
    logger.info("✅ %d nodes (seed %d) → %s", network.n, cfg.rng_seed, args.out)
    return EXIT_OK


def cmd_beta_sweep(args: argparse.Namespace, cfg: NetworkConfig) -> int:
    out = _out_dir(args, "beta")
    setup_logger(out / "run.log")
    cfg, network = _network(args, cfg)
    table = beta_sweep(network.positions, cfg, args.betas)
    write_csv(table, out / "beta_sweep.csv")
    logger.info("✅ %d boundary nodes over β=%s → %s", table["node_id"].nunique(), args.betas, out)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace, cfg: NetworkConfig) -> int:
    print(yaml.safe_dump(cfg.to_mapping(), sort_keys=False), end="")
    print("configuration OK")
    return EXIT_OK


COMMANDS = {
    "simulate":        cmd_simulate,
    "batch":           cmd_batch,
    "cluster":         cmd_cluster,
    "deploy":          cmd_deploy,
    "beta-sweep":      cmd_beta_sweep,
    "validate-config": cmd_validate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed usage / --help
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](args, cfg)
    except (ConfigError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, DegenerateClusterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
