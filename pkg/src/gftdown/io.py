"""File formats: adjacency CSV / Matrix Market, spatial tables, signals, and
JSON serialization of partitions and operators.

CSV adjacency files carry a ``# directed=true|false`` header comment followed
by n rows of n comma-separated decimals. Matrix Market files use the
coordinate format with the symmetry field standing in for the directedness
flag. Complex values are written as ``re+imj`` pairs that ``complex()`` parses
back. Floats are printed with %.17g so round trips are bit exact.
"""

import csv
import json
from pathlib import Path

import numpy as np
from scipy import io as scipy_io
from scipy import sparse

from .downsampling import DownsampleOperator, Partition
from .graphs import Graph, SpatialTable
from .spectral import SpectralBasis, Spectrum


def format_real(x) -> str:
    return f"{float(x):.17g}"


def format_complex(z) -> str:
    z = complex(z)
    return f"{z.real:.17g}{z.imag:+.17g}j"


def _format_value(v) -> str:
    if np.iscomplexobj(np.asarray(v)) and complex(v).imag != 0:
        return format_complex(v)
    return format_real(np.real(v))


# ---------------------------------------------------------------------------
# adjacency matrices
# ---------------------------------------------------------------------------

def save_adjacency_csv(graph: Graph, path) -> None:
    lines = [f"# directed={'true' if graph.directed else 'false'}"]
    for row in graph.weights:
        lines.append(",".join(format_real(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_adjacency_csv(path) -> Graph:
    directed = None
    rows = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if body.startswith("directed="):
                directed = body.split("=", 1)[1].strip().lower() == "true"
            continue
        try:
            rows.append([float(tok) for tok in line.split(",")])
        except ValueError as exc:
            raise ValueError(f"cannot parse adjacency row {line!r}") from exc
    if not rows:
        raise ValueError(f"no adjacency data in {path}")
    lengths = {len(r) for r in rows}
    if len(lengths) != 1:
        raise ValueError("adjacency rows have inconsistent lengths")
    weights = np.array(rows, dtype=float)
    if directed is None:
        directed = not np.array_equal(weights, weights.T)
    return Graph(weights, directed=directed)


def save_adjacency_mm(graph: Graph, path) -> None:
    matrix = sparse.coo_matrix(graph.weights)
    symmetry = "general" if graph.directed else "symmetric"
    scipy_io.mmwrite(str(path), matrix, symmetry=symmetry)


def load_adjacency_mm(path) -> Graph:
    info = scipy_io.mminfo(str(path))
    matrix = scipy_io.mmread(str(path))
    weights = matrix.toarray() if sparse.issparse(matrix) else np.asarray(matrix)
    directed = info[5] == "general"
    if not directed:
        weights = (weights + weights.T) / 2.0  # exactness guard for the symmetric flag
    return Graph(weights, directed=directed)


_MM_SUFFIXES = {".mtx", ".mm"}


def save_graph(graph: Graph, path) -> None:
    """Write adjacency by extension: .mtx/.mm Matrix Market, anything else CSV."""
    if Path(path).suffix.lower() in _MM_SUFFIXES:
        save_adjacency_mm(graph, path)
    else:
        save_adjacency_csv(graph, path)


def load_graph(path) -> Graph:
    if Path(path).suffix.lower() in _MM_SUFFIXES:
        return load_adjacency_mm(path)
    return load_adjacency_csv(path)


# ---------------------------------------------------------------------------
# spatial tables: id, x, y, s1..sk
# ---------------------------------------------------------------------------

def save_spatial_table(table: SpatialTable, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "x", "y"] + [f"s{i + 1}" for i in range(table.n_samples)])
        for i in range(table.n):
            writer.writerow([table.ids[i],
                             format_real(table.coordinates[i, 0]),
                             format_real(table.coordinates[i, 1])]
                            + [format_real(v) for v in table.samples[i]])


def load_spatial_table(path) -> SpatialTable:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or [h.strip().lower() for h in header[:3]] != ["id", "x", "y"]:
            raise ValueError("spatial table must start with columns id, x, y")
        ids, coords, samples = [], [], []
        for row in reader:
            if not row or not "".join(row).strip():
                continue
            ids.append(row[0])
            coords.append([float(row[1]), float(row[2])])
            samples.append([float(v) for v in row[3:]])
    if not ids:
        raise ValueError(f"no rows in spatial table {path}")
    return SpatialTable(np.array(coords), np.array(samples), ids=tuple(ids))


# ---------------------------------------------------------------------------
# signals: single "value" column, complex aware
# ---------------------------------------------------------------------------

def save_signal_csv(values, path, comments=()) -> None:
    lines = [f"# {c}" for c in comments]
    lines.append("value")
    lines.extend(_format_value(v) for v in np.asarray(values))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_signal_csv(path) -> np.ndarray:
    values = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#") or line.lower() == "value":
            continue
        try:
            values.append(complex(line))
        except ValueError as exc:
            raise ValueError(f"cannot parse signal value {line!r}") from exc
    if not values:
        raise ValueError(f"no signal values in {path}")
    arr = np.array(values)
    if np.all(arr.imag == 0):
        arr = arr.real
    return arr


# ---------------------------------------------------------------------------
# partitions and operators
# ---------------------------------------------------------------------------

def partition_to_dict(partition: Partition, index_base: int = 0) -> dict:
    return {
        "n": int(partition.n),
        "index_base": index_base,
        "kept": sorted(int(v) + index_base for v in partition.kept),
        "purged": sorted(int(v) + index_base for v in partition.purged),
    }


def partition_from_dict(doc: dict) -> Partition:
    base = int(doc.get("index_base", 0))
    kept = np.array([int(v) - base for v in doc["kept"]])
    purged = np.array([int(v) - base for v in doc["purged"]])
    return Partition(kept, purged)


def matrix_to_pairs(matrix) -> list:
    """Nested [re, im] pairs, the JSON spelling for complex matrices."""
    m = np.asarray(matrix, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_pairs(pairs) -> np.ndarray:
    m = np.array([[complex(re, im) for re, im in row] for row in pairs])
    if np.all(m.imag == 0):
        m = m.real
    return m


def operator_to_dict(op: DownsampleOperator, index_base: int = 0,
                     include_matrices: bool = False) -> dict:
    doc = partition_to_dict(op.partition, index_base)
    doc["sdqm"] = float(op.sdqm)
    doc["reconstructible"] = op.reconstruction_map is not None
    if include_matrices and op.reconstruction_map is not None:
        doc["reconstruction_map"] = matrix_to_pairs(op.reconstruction_map)
        doc["downsampled_gft"] = matrix_to_pairs(op.downsampled_gft)
    return doc


def save_operator_json(op: DownsampleOperator, path, index_base: int = 0,
                       include_matrices: bool = False) -> None:
    doc = operator_to_dict(op, index_base, include_matrices)
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# spectral exports (inspection only)
# ---------------------------------------------------------------------------

def save_basis_csv(basis: SpectralBasis, path) -> None:
    lines = [f"# gft variant={basis.variant} n={basis.n}", "# eigenvalues"]
    lines.append(",".join(format_complex(v) for v in np.asarray(basis.eigenvalues, dtype=complex)))
    lines.append("# forward rows (low to high frequency)")
    for row in np.asarray(basis.F, dtype=complex):
        lines.append(",".join(format_complex(v) for v in row))
    lines.append("# inverse")
    for row in np.asarray(basis.F_inv, dtype=complex):
        lines.append(",".join(format_complex(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_basis_csv(path) -> dict:
    """Parse a basis export back into arrays (variant, eigenvalues, F, F_inv)."""
    variant = None
    sections = {"eigenvalues": [], "forward": [], "inverse": []}
    current = None
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip().lower()
            if body.startswith("gft"):
                for token in body.split():
                    if token.startswith("variant="):
                        variant = token.split("=", 1)[1]
            elif body.startswith("eigenvalues"):
                current = "eigenvalues"
            elif body.startswith("forward"):
                current = "forward"
            elif body.startswith("inverse"):
                current = "inverse"
            continue
        if current is None:
            raise ValueError("basis file has data before any section marker")
        sections[current].append([complex(tok) for tok in line.split(",")])
    return {
        "variant": variant,
        "eigenvalues": np.array(sections["eigenvalues"][0]),
        "F": np.array(sections["forward"]),
        "F_inv": np.array(sections["inverse"]),
    }


def save_spectrum_csv(spectrum: Spectrum, path) -> None:
    save_signal_csv(spectrum.coefficients, path, comments=(f"spectrum n={spectrum.n}",))
