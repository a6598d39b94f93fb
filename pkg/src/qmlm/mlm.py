"""Classical minimal learning machine over Euclidean distance matrices.

Training solves ``Dx @ b = Dy`` in the least-squares sense, where
``Dx[i, j] = ||x_i - r_j||`` against a reference set and
``Dy[i, j] = ||y_i - y_j||`` between label vectors.  Prediction maps a new
point's distance row through ``b`` and returns the training instance whose
estimated output distance is smallest (ties break to the lowest index).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch
from .linalg import solve_linear_map


def distance_matrix(points, refs) -> np.ndarray:
    """Pairwise Euclidean distances, shape (len(points), len(refs))."""
    p = np.asarray(points, dtype=float)
    r = np.asarray(refs, dtype=float)
    if p.ndim != 2 or r.ndim != 2:
        raise ValueError("points and refs must be 2-D arrays")
    if p.shape[1] != r.shape[1]:
        raise DimensionMismatch(
            f"points have dim {p.shape[1]}, refs have dim {r.shape[1]}"
        )
    diff = p[:, None, :] - r[None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=-1))


def hamming(a, b) -> int:
    """Number of positions where two equal-length bit vectors differ."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"bit vectors must share one shape, got {a.shape} vs {b.shape}")
    return int(np.sum(a != b))


def _as_bit_matrix(labels) -> np.ndarray:
    y = np.asarray(labels)
    if y.ndim != 2:
        raise ValueError("labels must be a 2-D 0/1 array")
    if not np.isin(y, (0, 1)).all():
        raise ValueError("labels must contain only 0 and 1")
    return y.astype(float)


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """Real input vectors paired with 0/1 label vectors.

    With ``mlc=True`` the set must contain at least one instance carrying
    more than one active label, the defining property of a multi-label
    classification task.
    """

    inputs: np.ndarray
    labels: np.ndarray
    mlc: bool = False

    def __post_init__(self) -> None:
        x = np.array(self.inputs, dtype=float)
        if x.ndim != 2 or x.size == 0:
            raise ValueError("inputs must be a non-empty 2-D array")
        if not np.all(np.isfinite(x)):
            raise ValueError("inputs contain non-finite entries")
        y = _as_bit_matrix(self.labels)
        if y.shape[0] != x.shape[0]:
            raise DimensionMismatch(
                f"{x.shape[0]} inputs but {y.shape[0]} label rows"
            )
        if self.mlc and not np.any(y.sum(axis=1) > 1):
            raise ValueError(
                "mlc dataset needs at least one instance with multiple labels"
            )
        x.flags.writeable = False
        y.flags.writeable = False
        object.__setattr__(self, "inputs", x)
        object.__setattr__(self, "labels", y)

    @property
    def size(self) -> int:
        return self.inputs.shape[0]


@dataclass(frozen=True, eq=False)
class MlmModel:
    references: np.ndarray
    train_labels: np.ndarray
    b: np.ndarray = field(repr=False)


def train_mlm(data: LabeledDataset, refs=None, rcond: float | None = None) -> MlmModel:
    """Fit the distance-to-distance linear map.

    ``refs`` defaults to the training inputs themselves, the configuration
    under which training points reproduce their own label rows exactly.
    """
    references = data.inputs if refs is None else np.asarray(refs, dtype=float)
    dx = distance_matrix(data.inputs, references)
    dy = distance_matrix(data.labels, data.labels)
    b = solve_linear_map(dx, dy, rcond)
    return MlmModel(references=references.copy(), train_labels=data.labels.copy(), b=b)


def predict_mlm(model: MlmModel, x) -> tuple[int, np.ndarray]:
    """Nearest training instance in estimated output-space distance.

    Returns ``(index, label_row)``; ties break to the lowest index.
    """
    x = np.asarray(x, dtype=float).reshape(1, -1)
    d = distance_matrix(x, model.references)
    estimated = (d @ model.b)[0]
    idx = int(np.argmin(estimated))
    return idx, model.train_labels[idx].copy()


# --- file formats -----------------------------------------------------------

def save_dataset_csv(data: LabeledDataset, path) -> None:
    """Header ``x_1..x_M,y_1..y_L``; one instance per row."""
    m = data.inputs.shape[1]
    l = data.labels.shape[1]
    header = [f"x_{j + 1}" for j in range(m)] + [f"y_{j + 1}" for j in range(l)]
    with open(path, "w", encoding="ascii") as f:
        f.write(",".join(header) + "\n")
        for xi, yi in zip(data.inputs, data.labels):
            row = [f"{v:.17g}" for v in xi] + [str(int(v)) for v in yi]
            f.write(",".join(row) + "\n")


def load_dataset_csv(path, mlc: bool = False) -> LabeledDataset:
    """Parse the output of :func:`save_dataset_csv`."""
    with open(path, "r", encoding="ascii") as f:
        lines = [ln.strip() for ln in f if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty file")
    names = lines[0].split(",")
    m = sum(1 for n in names if n.startswith("x_"))
    l = sum(1 for n in names if n.startswith("y_"))
    expected = [f"x_{j + 1}" for j in range(m)] + [f"y_{j + 1}" for j in range(l)]
    if names != expected or m == 0 or l == 0:
        raise ValueError(f"{path}: header must be x_1..x_M,y_1..y_L, got {names}")
    rows = []
    for ln in lines[1:]:
        vals = [float(tok) for tok in ln.split(",")]
        if len(vals) != m + l:
            raise ValueError(f"{path}: row has {len(vals)} fields, expected {m + l}")
        rows.append(vals)
    if not rows:
        raise ValueError(f"{path}: no data rows")
    arr = np.array(rows)
    return LabeledDataset(inputs=arr[:, :m], labels=arr[:, m:], mlc=mlc)


def save_mlm_model(model: MlmModel, path) -> None:
    """Single CSV file with ``# references`` / ``# labels`` / ``# b`` blocks."""
    with open(path, "w", encoding="ascii") as f:
        for marker, block in (
            ("# references", model.references),
            ("# labels", model.train_labels),
            ("# b", model.b),
        ):
            f.write(marker + "\n")
            for row in np.atleast_2d(block):
                f.write(",".join(f"{v:.17g}" for v in row) + "\n")


def load_mlm_model(path) -> MlmModel:
    """Parse the output of :func:`save_mlm_model`."""
    blocks: dict[str, list[list[float]]] = {}
    current: list[list[float]] | None = None
    with open(path, "r", encoding="ascii") as f:
        for ln in f:
            ln = ln.strip()
            if not ln:
                continue
            if ln.startswith("#"):
                name = ln.lstrip("#").strip()
                current = blocks.setdefault(name, [])
            elif current is None:
                raise ValueError(f"{path}: data before any block marker")
            else:
                current.append([float(tok) for tok in ln.split(",")])
    missing = {"references", "labels", "b"} - set(blocks)
    if missing:
        raise ValueError(f"{path}: missing blocks {sorted(missing)}")
    return MlmModel(
        references=np.array(blocks["references"]),
        train_labels=np.array(blocks["labels"]),
        b=np.array(blocks["b"]),
    )
