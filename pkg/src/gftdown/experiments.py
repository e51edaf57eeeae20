"""Desk-scale experiment harness: random-graph method comparisons, accuracy
sweeps over high-frequency content, and the cosine-grid block study.

Every experiment is a pure function of (config, seed, code version). Per-item
random streams are derived from (seed, item index) with numpy's SeedSequence,
so serial and parallel runs produce identical reports.
"""

import csv
import datetime
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from . import __version__
from .baselines import cut_index, mst_downsample, polarity_downsample
from .downsampling import (Partition, greedy_downsample, partition_blocks,
                           reconstruct, reconstruction_accuracy)
from .errors import GraphDownsampleError, NotReconstructible
from .graphs import generate_dct_path, generate_random
from .spectral import gft, low_band_size, make_lowpass_signal

DEFAULT_SEED = 42
METHODS = ("greedy", "mst", "polarity")


@dataclass(frozen=True)
class TrialConfig:
    """Setup for one batch of random-graph comparisons."""

    n: int = 50
    instances: int = 50
    density_range: Tuple[float, float] = (0.02, 0.30)
    weight_model: str = "uniform01"
    variant: str = "adjacency"
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        lo, hi = self.density_range
        if not (0 < lo <= hi <= 1):
            raise ValueError("density_range must satisfy 0 < lo <= hi <= 1")
        if self.instances < 1:
            raise ValueError("instances must be at least 1")
        if self.n < 2:
            raise ValueError("n must be at least 2")


@dataclass
class ExperimentReport:
    """Aggregates plus the per-item rows they were computed from."""

    experiment: str
    config: dict
    seed: int
    code_version: str
    aggregates: dict
    rows: List[dict]
    curves: Optional[List[dict]] = None
    failures: int = 0
    timestamp: Optional[str] = None

    def self_check(self, atol: float = 1e-12) -> None:
        """Verify every aggregate mean is reproducible from the rows."""
        for group, stats in self.aggregates.items():
            for key, value in stats.items():
                if not key.startswith("mean_"):
                    continue
                column = key[len("mean_"):]
                samples = [r for r in self.rows if "error" not in r]
                if f"{column}_{group}" in (samples[0] if samples else {}):
                    data = [r[f"{column}_{group}"] for r in samples]
                else:
                    data = [r[column] for r in samples if r.get("group") == group]
                if not data:
                    continue
                mean = float(np.mean(data))
                if not (math.isinf(value) and math.isinf(mean)) and abs(mean - value) > atol:
                    raise ValueError(
                        f"aggregate {group}.{key} = {value} but rows give {mean}")

    def to_dict(self, index_base: int = 0) -> dict:
        doc = asdict(self)
        doc["index_base"] = index_base
        if index_base:
            doc = _shift_indices(doc, index_base)
        return _sanitize(doc)


def _shift_indices(obj, base):
    if isinstance(obj, dict):
        out = {}
        for key, value in obj.items():
            if key in ("kept", "purged") and isinstance(value, (list, tuple)):
                out[key] = [int(v) + base for v in value]
            else:
                out[key] = _shift_indices(value, base)
        return out
    if isinstance(obj, list):
        return [_shift_indices(v, base) for v in obj]
    return obj


def _sanitize(obj):
    """Make a structure strict-JSON safe (numpy scalars, non-finite floats)."""
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(obj, np.ndarray):
        return _sanitize(obj.tolist())
    return obj


def utc_timestamp():
    return datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")


def save_report(report: ExperimentReport, out_dir, timestamp: bool = True,
                index_base: int = 1) -> Tuple[Path, Path]:
    """Write report_<experiment>_<seed>.json and a flat CSV of the rows.

    Vertex lists are shifted to 1-indexed labels by default, matching the rest
    of the command-line output; pass index_base=0 to keep raw indices.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report.timestamp = utc_timestamp() if timestamp else None
    doc = report.to_dict(index_base=index_base)
    json_path = out_dir / f"report_{report.experiment}_{report.seed}.json"
    csv_path = out_dir / f"report_{report.experiment}_{report.seed}.csv"
    json_path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    columns = sorted({key for row in report.rows for key in row})
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns, restval="")
        writer.writeheader()
        for row in report.rows:
            writer.writerow(_sanitize(row))
    return json_path, csv_path


# ---------------------------------------------------------------------------
# random graph trials
# ---------------------------------------------------------------------------

def _run_instance(config: TrialConfig, index: int) -> dict:
    rng = np.random.default_rng([config.seed, index])
    lo, hi = config.density_range
    density = float(rng.uniform(lo, hi))
    graph = generate_random(config.n, density, config.weight_model,
                            undirected=True, seed=[config.seed, index, 1])
    row = {"instance": index, "density": density}
    try:
        basis = gft(graph, config.variant)
        partitions = {
            "greedy": greedy_downsample(basis)[0],
            "mst": mst_downsample(graph),
            "polarity": polarity_downsample(basis),
        }
        for name, partition in partitions.items():
            row[f"sdqm_{name}"] = partition_blocks(basis, partition).sdqm
            row[f"cut_index_{name}"] = cut_index(graph, partition).cut_index
    except GraphDownsampleError as exc:
        row["error"] = type(exc).__name__
    return row


def random_graph_trial(config: TrialConfig, jobs: int = 1) -> ExperimentReport:
    """Compare the greedy search against both baselines on random graphs.

    Each instance draws its own density from config.density_range, builds an
    undirected random graph, and records sdqm and cut index for every method.
    Instances that fail (defective spectrum and the like) are skipped and
    counted in the report.
    """
    indices = range(config.instances)
    if jobs == 1:
        rows = [_run_instance(config, i) for i in indices]
    else:
        rows = Parallel(n_jobs=jobs)(delayed(_run_instance)(config, i) for i in indices)
    good = [r for r in rows if "error" not in r]
    aggregates = {}
    if good:
        for method in METHODS:
            aggregates[method] = {
                "mean_sdqm": float(np.mean([r[f"sdqm_{method}"] for r in good])),
                "mean_cut_index": float(np.mean([r[f"cut_index_{method}"] for r in good])),
            }
    return ExperimentReport(
        experiment=f"random_trial_{config.weight_model}",
        config=asdict(config),
        seed=config.seed,
        code_version=__version__,
        aggregates=aggregates,
        rows=rows,
        failures=len(rows) - len(good),
    )


# ---------------------------------------------------------------------------
# accuracy sweeps
# ---------------------------------------------------------------------------

def _sweep_cell(basis, op, eps, eps_index, trials, seed):
    n = basis.n
    kept, purged = op.partition.kept, op.partition.purged
    accuracies = []
    for t in range(trials):
        rng = np.random.default_rng([seed, eps_index, t])
        profile = rng.standard_normal(low_band_size(n))
        if np.iscomplexobj(basis.F_inv):
            profile = profile + 1j * rng.standard_normal(low_band_size(n))
        profile = profile / np.linalg.norm(profile)  # low band pinned to unit norm
        x = make_lowpass_signal(basis, profile, eps, rng)
        estimate = reconstruct(op, x[kept])
        accuracies.append(reconstruction_accuracy(x, estimate - x[purged]))
    return float(np.mean(accuracies))


def accuracy_sweep(basis, partitions: Sequence[Partition], eps_grid: Sequence[float],
                   trials: int, seed: int = DEFAULT_SEED, jobs: int = 1) -> ExperimentReport:
    """Mean reconstruction accuracy (dB) per partition over a high-band grid.

    Signals are shared across partitions at each (eps, trial) cell, so curves
    are directly comparable. Partitions that cannot reconstruct are skipped
    and flagged in the curve list.
    """
    rows = []
    curves = []
    aggregates = {}
    for partition in partitions:
        op = partition_blocks(basis, partition)
        label = "kept:" + ",".join(str(int(v)) for v in sorted(partition.kept))
        kept_list = sorted(int(v) for v in partition.kept)
        if op.reconstruction_map is None:
            curves.append({"kept": kept_list, "sdqm": op.sdqm, "skipped": True})
            continue
        cells = list(enumerate(eps_grid))
        if jobs == 1:
            means = [_sweep_cell(basis, op, eps, ei, trials, seed) for ei, eps in cells]
        else:
            means = Parallel(n_jobs=jobs)(
                delayed(_sweep_cell)(basis, op, eps, ei, trials, seed) for ei, eps in cells)
        for (_, eps), mean_db in zip(cells, means):
            rows.append({"group": label, "eps": float(eps),
                         "mean_accuracy_db": mean_db, "trials": trials})
        curves.append({"kept": kept_list, "sdqm": op.sdqm, "skipped": False,
                       "eps": [float(e) for e in eps_grid],
                       "mean_accuracy_db": means})
        aggregates[label] = {"mean_mean_accuracy_db": float(np.mean(means))}
    return ExperimentReport(
        experiment="accuracy_sweep",
        config={"eps_grid": [float(e) for e in eps_grid], "trials": trials,
                "partitions": [sorted(int(v) for v in p.kept) for p in partitions],
                "variant": basis.variant, "n": basis.n},
        seed=seed,
        code_version=__version__,
        aggregates=aggregates,
        rows=rows,
        curves=curves,
        failures=sum(1 for c in curves if c.get("skipped")),
    )


# ---------------------------------------------------------------------------
# cosine-grid block study
# ---------------------------------------------------------------------------

def _expand_rows(op, block):
    out = np.zeros((op.partition.n, block.shape[1]), dtype=np.result_type(block, op.reconstruction_map))
    out[op.partition.kept] = block
    out[op.partition.purged] = op.reconstruction_map @ block
    return out


def separable_reconstruct(op, block_on_kept) -> np.ndarray:
    """Rebuild a 2-D block from its kept-row/kept-column samples.

    Applies the 1-D reconstruction along rows and then columns; exact whenever
    the block's 2-D spectrum lives in the low/low quarter.
    """
    if op.reconstruction_map is None:
        raise NotReconstructible("the partition cannot reconstruct 2-D blocks")
    half = _expand_rows(op, np.asarray(block_on_kept))
    return _expand_rows(op, half.T).T


def _smooth_block(basis, eps, seed):
    """Random block with unit-norm low/low spectrum plus eps-norm remainder."""
    n = basis.n
    nl = low_band_size(n)
    rng = np.random.default_rng(seed)
    coeffs = np.zeros((n, n))
    low = rng.standard_normal((nl, nl))
    coeffs[:nl, :nl] = low / np.linalg.norm(low)
    rest = rng.standard_normal((n, n))
    rest[:nl, :nl] = 0.0
    if eps > 0:
        coeffs = coeffs + rest * (eps / np.linalg.norm(rest))
    return basis.F_inv @ coeffs @ basis.F_inv.T


def dct_demo(n: int = 16, blocks: int = 100, eps: float = 0.05,
             seed: int = DEFAULT_SEED) -> ExperimentReport:
    """Compare the greedy kept set against plain alternate sampling on 2-D blocks.

    Builds the cosine-grid path graph, runs the greedy search, and scores both
    its kept set and the every-other-vertex reference on randomly generated
    smooth n-by-n blocks (low/low spectrum of unit norm plus an eps-norm high
    band), reporting the blockwise mean percentage reconstruction error.
    """
    if n % 2:
        raise ValueError("the block study needs an even number of vertices")
    graph = generate_dct_path(n)
    basis = gft(graph, "adjacency")
    part_greedy, op_greedy = greedy_downsample(basis)
    part_alt = Partition.from_kept(np.arange(0, n, 2), n)
    op_alt = partition_blocks(basis, part_alt)
    schemes = {"greedy": op_greedy, "alternate": op_alt}
    rows = []
    for b in range(blocks):
        block = _smooth_block(basis, eps, [seed, b])
        norm = np.linalg.norm(block)
        row = {"block": b}
        for tag, op in schemes.items():
            sampled = block[np.ix_(op.partition.kept, op.partition.kept)]
            rebuilt = separable_reconstruct(op, sampled)
            row[f"pct_error_{tag}"] = float(100.0 * np.linalg.norm(rebuilt - block) / norm)
        rows.append(row)
    aggregates = {
        tag: {
            "sdqm": op.sdqm,
            "kept": sorted(int(v) for v in op.partition.kept),
            "mean_pct_error": float(np.mean([r[f"pct_error_{tag}"] for r in rows])),
        }
        for tag, op in schemes.items()
    }
    return ExperimentReport(
        experiment="dct_demo",
        config={"n": n, "blocks": blocks, "eps": eps},
        seed=seed,
        code_version=__version__,
        aggregates=aggregates,
        rows=rows,
    )
