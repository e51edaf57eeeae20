"""Command line interface: generate graphs, export transforms, downsample,
reconstruct signals, and run the experiment harness.

Vertex labels in every file this tool writes or reads are 1-indexed; the
library itself is 0-indexed and the shift happens only here. Exit codes:
0 success, 2 bad input (files, dimensions, configs), 3 domain errors such as
a non-reconstructible partition or a defective spectrum.
"""

import argparse
import importlib.resources
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, baselines, downsampling, experiments, graphs, spectral
from . import io as gio
from .errors import INPUT_ERRORS, DimensionError, GraphDownsampleError
from .experiments import DEFAULT_SEED, TrialConfig

SEED_ENV = "GFTDOWN_SEED"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DOMAIN = 3

_PRESETS = ("table3", "dct", "sweep")


def _env_seed() -> int:
    raw = os.environ.get(SEED_ENV, "").strip()
    if not raw:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{SEED_ENV} must be an integer, got {raw!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gftdown",
        description="Downsample signals on arbitrary graphs by maximizing the "
                    "smallest singular value of the high-frequency transform block.")
    parser.add_argument("--version", action="version", version=f"gftdown {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a graph file")
    gen.add_argument("kind", choices=("cycle", "dct", "random", "bipartite"))
    gen.add_argument("--n", type=int, default=8, help="vertex count (cycle/dct/random)")
    gen.add_argument("--directed", action="store_true",
                     help="cycles are directed regardless; makes `random` directed")
    gen.add_argument("--density", type=float, default=0.2, help="edge probability (random)")
    gen.add_argument("--model", choices=graphs.WEIGHT_MODELS, default="uniform01",
                     help="weight distribution (random)")
    gen.add_argument("--p", type=int, default=3, help="left side size (bipartite)")
    gen.add_argument("--q", type=int, default=3, help="right side size (bipartite)")
    gen.add_argument("--seed", type=int, default=None,
                     help=f"RNG seed (default: ${SEED_ENV} or {DEFAULT_SEED})")
    gen.add_argument("--out", type=Path, default=None,
                     help="output path; .mtx/.mm selects Matrix Market, else CSV")
    gen.set_defaults(func=cmd_gen)

    gftp = sub.add_parser("gft", help="export the graph Fourier basis to CSV")
    gftp.add_argument("--graph", type=Path, required=True)
    gftp.add_argument("--variant", choices=spectral.VARIANTS, default="adjacency")
    gftp.add_argument("--out", type=Path, default=None)
    gftp.set_defaults(func=cmd_gft)

    down = sub.add_parser("downsample", help="pick kept/purged vertices for a graph")
    down.add_argument("--graph", type=Path, required=True)
    down.add_argument("--method", choices=("greedy", "exhaustive", "mst", "polarity"),
                      default="greedy")
    down.add_argument("--variant", choices=spectral.VARIANTS, default="adjacency")
    down.add_argument("--max-exhaustive-n", type=int, default=16)
    down.add_argument("--include-matrices", action="store_true",
                      help="embed the reconstruction map and downsampled transform")
    down.add_argument("--no-timestamp", action="store_true")
    down.add_argument("--out", type=Path, default=None)
    down.set_defaults(func=cmd_downsample)

    rec = sub.add_parser("reconstruct", help="rebuild a full signal from kept samples")
    rec.add_argument("--graph", type=Path, required=True)
    rec.add_argument("--partition", type=Path, required=True,
                     help="JSON with kept/purged lists (downsample output works)")
    rec.add_argument("--signal", type=Path, required=True,
                     help="CSV of samples: full length to score accuracy, or kept-only")
    rec.add_argument("--variant", choices=spectral.VARIANTS, default=None,
                     help="override the variant recorded in the partition file")
    rec.add_argument("--out", type=Path, default=None)
    rec.set_defaults(func=cmd_reconstruct)

    bench = sub.add_parser("bench", help="run experiment configs and write reports")
    src = bench.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", type=Path, help="experiment config JSON")
    src.add_argument("--preset", choices=_PRESETS, help="bundled config")
    bench.add_argument("--out-dir", type=Path, default=Path("."))
    bench.add_argument("--jobs", type=int, default=1)
    bench.add_argument("--dry-run", action="store_true")
    bench.add_argument("--no-timestamp", action="store_true")
    bench.set_defaults(func=cmd_bench)
    return parser


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else _env_seed()
    if args.kind == "cycle":
        graph = graphs.generate_directed_cycle(args.n)
    elif args.kind == "dct":
        graph = graphs.generate_dct_path(args.n)
    elif args.kind == "random":
        graph = graphs.generate_random(args.n, args.density, args.model,
                                       undirected=not args.directed, seed=seed)
    else:
        graph = graphs.generate_bipartite(args.p, args.q, seed=seed)
    out = args.out
    if out is None:
        stem = f"{args.kind}_{args.p}x{args.q}" if args.kind == "bipartite" else f"{args.kind}_{args.n}"
        out = Path(f"{stem}.csv")
    gio.save_graph(graph, out)
    print(f"wrote {out}")
    return EXIT_OK


def cmd_gft(args) -> int:
    graph = gio.load_graph(args.graph)
    basis = spectral.gft(graph, args.variant)
    out = args.out or args.graph.with_suffix(f".{args.variant}.basis.csv")
    gio.save_basis_csv(basis, out)
    print(f"wrote {out}")
    return EXIT_OK


def cmd_downsample(args) -> int:
    graph = gio.load_graph(args.graph)
    basis = spectral.gft(graph, args.variant)
    table = None
    if args.method == "greedy":
        partition, operator = downsampling.greedy_downsample(basis)
    elif args.method == "exhaustive":
        result = downsampling.exhaustive_downsample(basis, args.max_exhaustive_n)
        partition, operator = result.partition, result.operator
        if basis.n <= 16:
            table = result.table
    elif args.method == "mst":
        partition = baselines.mst_downsample(graph)
        operator = downsampling.partition_blocks(basis, partition)
    else:
        partition = baselines.polarity_downsample(basis)
        operator = downsampling.partition_blocks(basis, partition)

    doc = gio.operator_to_dict(operator, index_base=1,
                               include_matrices=args.include_matrices)
    doc["method"] = args.method
    doc["variant"] = args.variant
    doc["cut_index"] = baselines.cut_index(graph, partition).cut_index
    doc["code_version"] = __version__
    if not args.no_timestamp:
        doc["timestamp"] = experiments.utc_timestamp()
    if table is not None:
        doc["table"] = [
            {"kept": sorted(int(v) + 1 for v in part.kept),
             "sdqm": score,
             "cut_index": baselines.cut_index(graph, part).cut_index}
            for part, score in table
        ]
    out = args.out or args.graph.with_suffix(f".{args.method}.json")
    Path(out).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    graph = gio.load_graph(args.graph)
    try:
        doc = json.loads(Path(args.partition).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"cannot parse partition file {args.partition}: {exc}") from exc
    doc.setdefault("index_base", 1)
    partition = gio.partition_from_dict(doc)
    variant = args.variant or doc.get("variant", "adjacency")
    basis = spectral.gft(graph, variant)
    operator = downsampling.partition_blocks(basis, partition)

    signal = gio.load_signal_csv(args.signal)
    n, n_kept = graph.n, partition.kept.size
    truth = None
    if signal.shape[0] == n:
        truth = signal
        kept_values = signal[partition.kept]
    elif signal.shape[0] == n_kept:
        kept_values = signal
    else:
        raise DimensionError(
            f"signal has {signal.shape[0]} values; expected {n} (full) or {n_kept} (kept)")

    full = downsampling.reconstruct_signal(operator, kept_values)
    accuracy = None
    if truth is not None:
        error = full[partition.purged] - truth[partition.purged]
        accuracy = downsampling.reconstruction_accuracy(truth, error)

    out = args.out or args.signal.with_suffix(".reconstructed.csv")
    comments = [f"reconstructed from {n_kept} kept samples, sdqm={operator.sdqm:.12g}"]
    if accuracy is not None:
        comments.append("accuracy_db=" +
                        ("perfect" if math.isinf(accuracy) else f"{accuracy:.6f}"))
    gio.save_signal_csv(full, out, comments=comments)
    summary = {"out": str(out), "sdqm": operator.sdqm,
               "accuracy_db": ("perfect" if accuracy is not None and math.isinf(accuracy)
                               else accuracy)}
    print(json.dumps(summary, sort_keys=True))
    return EXIT_OK


# ---------------------------------------------------------------------------
# bench config handling
# ---------------------------------------------------------------------------

def _load_bench_config(args) -> dict:
    if args.preset:
        resource = importlib.resources.files("gftdown") / "configs" / f"{args.preset}.json"
        text = resource.read_text(encoding="utf-8")
    else:
        text = Path(args.config).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("experiments"), list) \
            or not doc["experiments"]:
        raise ValueError("config must be an object with a non-empty 'experiments' list")
    for entry in doc["experiments"]:
        if not isinstance(entry, dict) or entry.get("kind") not in (
                "random_trial", "accuracy_sweep", "dct_demo"):
            raise ValueError("each experiment needs kind random_trial, accuracy_sweep "
                             "or dct_demo")
    return doc


def _graph_from_config(desc, base_dir: Path):
    if not isinstance(desc, dict):
        raise ValueError("accuracy_sweep needs a 'graph' object")
    if "file" in desc:
        return gio.load_graph(base_dir / desc["file"])
    generator = desc.get("generator")
    n = int(desc.get("n", 0))
    if generator == "cycle":
        return graphs.generate_directed_cycle(n)
    if generator == "dct":
        return graphs.generate_dct_path(n)
    if generator == "random":
        return graphs.generate_random(n, float(desc.get("density", 0.2)),
                                      desc.get("model", "uniform01"),
                                      undirected=not desc.get("directed", False),
                                      seed=int(desc.get("seed", DEFAULT_SEED)))
    if generator == "bipartite":
        return graphs.generate_bipartite(int(desc.get("p", 3)), int(desc.get("q", 3)),
                                         seed=int(desc.get("seed", DEFAULT_SEED)))
    raise ValueError(f"unknown graph generator {generator!r}")


def _run_bench_entry(entry: dict, base_dir: Path, jobs: int):
    kind = entry["kind"]
    if kind == "random_trial":
        fields = {k: entry[k] for k in
                  ("n", "instances", "density_range", "weight_model", "variant", "seed")
                  if k in entry}
        if "density_range" in fields:
            fields["density_range"] = tuple(fields["density_range"])
        try:
            config = TrialConfig(**fields)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"bad random_trial config: {exc}") from exc
        return experiments.random_graph_trial(config, jobs=jobs)
    if kind == "accuracy_sweep":
        graph = _graph_from_config(entry.get("graph"), base_dir)
        basis = spectral.gft(graph, entry.get("variant", "adjacency"))
        kept_lists = entry.get("partitions_kept")
        if not isinstance(kept_lists, list) or not kept_lists:
            raise ValueError("accuracy_sweep needs 'partitions_kept', 1-indexed kept sets")
        partitions = [
            downsampling.Partition.from_kept(np.array([int(v) - 1 for v in kept]), graph.n)
            for kept in kept_lists
        ]
        eps_grid = entry.get("eps_grid")
        if not isinstance(eps_grid, list) or not eps_grid:
            raise ValueError("accuracy_sweep needs a non-empty 'eps_grid'")
        return experiments.accuracy_sweep(basis, partitions,
                                          [float(e) for e in eps_grid],
                                          trials=int(entry.get("trials", 50)),
                                          seed=int(entry.get("seed", DEFAULT_SEED)),
                                          jobs=jobs)
    return experiments.dct_demo(n=int(entry.get("n", 16)),
                                blocks=int(entry.get("blocks", 100)),
                                eps=float(entry.get("eps", 0.05)),
                                seed=int(entry.get("seed", DEFAULT_SEED)))


def cmd_bench(args) -> int:
    doc = _load_bench_config(args)
    base_dir = args.config.parent if args.config else Path(".")
    if args.dry_run:
        for i, entry in enumerate(doc["experiments"]):
            print(f"plan[{i}]: {json.dumps(entry, sort_keys=True)}")
        print(f"would write reports to {args.out_dir}")
        return EXIT_OK
    for entry in doc["experiments"]:
        report = _run_bench_entry(entry, base_dir, args.jobs)
        json_path, csv_path = experiments.save_report(
            report, args.out_dir, timestamp=not args.no_timestamp)
        print(f"wrote {json_path}")
        print(f"wrote {csv_path}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _error_json(exc) -> str:
    return json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}},
                      sort_keys=True)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(_error_json(exc))
        return EXIT_INPUT
    except (ValueError, OSError, KeyError) as exc:
        print(_error_json(exc))
        return EXIT_INPUT
    except GraphDownsampleError as exc:
        print(_error_json(exc))
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
