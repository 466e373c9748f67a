"""Command-line entry point: ``ugclass classify|evaluate|perturb|ingest``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .config import ExperimentConfig, load_config
from .errors import ConfigError, UGClassError
from .evaluation import classify, run_experiment
from .ingest import ingest_citation, ingest_cooccurrence, read_citations, read_cooccurrence_records
from .io import atomic_write, edge_list_text, label_text, load_dataset
from .perturb import perturb
from .graph import build_graph

log = logging.getLogger("ugclass")

REPORT_COLUMNS = ["run", "seed", "classifier", "phi", "sigma", "Phi", "Gamma", "accuracy", "seconds", "ci95"]
SUMMARY_COLUMNS = ["classifier", "phi", "sigma", "Phi", "Gamma", "repeats", "mean_accuracy", "ci95", "mean_seconds"]


def _num(x) -> str:
    if x is None:
        return "NA"
    return format(float(x), ".10g")


def _require(path, what):
    if path is None:
        raise ConfigError(f"no {what} file configured")
    if not Path(path).is_file():
        raise ConfigError(f"{what} file not found: {path}")
    return path


def _single(values, key):
    if len(values) != 1:
        raise ConfigError(f"{key} takes a single value for this command, got {values}")
    return values[0]


def cmd_classify(cfg: ExperimentConfig) -> dict:
    """Label every node and write ``predictions.tsv`` plus ``classify_meta.json``."""
    name = _single(cfg.classifiers, "classifier name")
    g, seeds = load_dataset(_require(cfg.graph, "graph"), _require(cfg.labels, "labels"))
    start = time.perf_counter()
    result = classify(g, seeds, cfg.classifier_spec(name), seed=cfg.seed)
    seconds = time.perf_counter() - start
    out = Path(cfg.out_dir)
    atomic_write(out / "predictions.tsv", label_text(g.names, result.labels, skip_unlabeled=False))
    meta = {
        "classifier": name,
        "parameters": cfg.parameters(),
        "seed": cfg.seed,
        "nodes": g.node_count,
        "edges": g.num_edges,
        "seed_labels": int(np.count_nonzero(seeds)),
        "theta_star": result.info.get("theta_star"),
        "iterations": result.info.get("iterations"),
        "seconds": seconds if cfg.timing else None,
    }
    atomic_write(out / "classify_meta.json", json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return meta


def cmd_evaluate(cfg: ExperimentConfig) -> list:
    """Run every (perturbation, classifier) combination; write ``report.csv`` and ``summary.csv``."""
    g, truth = load_dataset(_require(cfg.graph, "graph"), _require(cfg.truth or cfg.labels, "truth labels"))
    report = [",".join(REPORT_COLUMNS)]
    summary = [",".join(SUMMARY_COLUMNS)]
    reports = []
    for pert in cfg.perturbations():
        setting = [_num(pert.phi), _num(pert.sigma), _num(pert.edge_removal), _num(pert.label_ratio)]
        for name in cfg.classifiers:
            rep = run_experiment(g, truth, cfg.classifier_spec(name), pert, cfg.split_spec())
            reports.append(rep)
            for r in rep.per_run:
                secs = _num(r.seconds) if cfg.timing else "NA"
                report.append(",".join([str(r.run), str(r.seed), name, *setting, _num(r.accuracy), secs, ""]))
            mean_secs = _num(rep.mean_seconds) if cfg.timing else "NA"
            ci = _num(rep.ci95_halfwidth)
            report.append(",".join(["mean", str(cfg.seed), name, *setting, _num(rep.mean_accuracy), mean_secs, ci]))
            summary.append(",".join([name, *setting, str(len(rep.per_run)), _num(rep.mean_accuracy), ci, mean_secs]))
    out = Path(cfg.out_dir)
    atomic_write(out / "report.csv", "\n".join(report) + "\n")
    atomic_write(out / "summary.csv", "\n".join(summary) + "\n")
    return reports


def cmd_perturb(cfg: ExperimentConfig):
    """Write the perturbed ``graph.tsv`` and ``labels.tsv`` with a provenance header."""
    g, labels = load_dataset(_require(cfg.graph, "graph"), cfg.labels and _require(cfg.labels, "labels"))
    pert = cfg.perturbations()
    if len(pert) != 1:
        raise ConfigError("perturb takes a single value for each perturbation parameter")
    pert = pert[0]
    result = perturb(g, labels, pert)
    header = (
        f"ugclass {__version__} perturb phi={_num(pert.phi)} sigma={_num(pert.sigma)} "
        f"edge_removal={_num(pert.edge_removal)} label_ratio={_num(pert.label_ratio)} seed={pert.seed}\n"
        f"order: {' -> '.join(result.stages)}; edges {g.num_edges} -> {result.graph.num_edges}"
    )
    out = Path(cfg.out_dir)
    atomic_write(out / "graph.tsv", edge_list_text(result.graph, header))
    atomic_write(out / "labels.tsv", label_text(result.graph.names, result.labels, header))
    return result


def cmd_ingest(cfg: ExperimentConfig):
    """Estimate edge probabilities from raw event records and write an edge list."""
    if cfg.ingest_kind is None:
        raise ConfigError("[ingest] kind is required")
    src = _require(cfg.ingest_input, "ingest input")
    if cfg.ingest_kind == "cooccurrence":
        edges = ingest_cooccurrence(*read_cooccurrence_records(src))
    else:
        edges = ingest_citation(*read_citations(src))
    g = build_graph(((u, v, p) for (u, v), p in edges.items()),
                    nodes=sorted({x for pair in edges for x in pair}))
    dest = cfg.ingest_output or Path(cfg.out_dir) / "graph.tsv"
    atomic_write(dest, edge_list_text(g, f"ugclass {__version__} ingest kind={cfg.ingest_kind}"))
    return g


COMMANDS = {"classify": cmd_classify, "evaluate": cmd_evaluate, "perturb": cmd_perturb, "ingest": cmd_ingest}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ugclass", description="Collective classification on uncertain graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        p = sub.add_parser(name, help=fn.__doc__.splitlines()[0])
        p.add_argument("--config", required=True, type=Path, help="INI experiment config")
        p.add_argument("--seed", type=int)
        p.add_argument("--phi", type=float, help="noisy-edge ratio")
        p.add_argument("--sigma", type=float, help="std. deviation of noisy-edge probabilities")
        p.add_argument("--edge-removal", type=float, help="ratio of edges removed after noise")
        p.add_argument("--label-ratio", type=float, help="ratio of labeled nodes that keep their label")
        p.add_argument("--out", type=Path, help="output directory")
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = load_config(args.config).override(
            seed=args.seed,
            phi=None if args.phi is None else [args.phi],
            sigma=None if args.sigma is None else [args.sigma],
            edge_removal=None if args.edge_removal is None else [args.edge_removal],
            label_ratio=None if args.label_ratio is None else [args.label_ratio],
            out_dir=args.out,
        )
        COMMANDS[args.command](cfg)
    except (UGClassError, OSError, ValueError) as exc:
        print(f"ugclass {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
