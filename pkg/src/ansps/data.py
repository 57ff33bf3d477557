"""Datasets for the hinge-loss benchmark: LIBSVM-format I/O and a synthetic generator.

A :class:`Dataset` is a sparse CSR feature matrix paired with labels in
``{-1.0, +1.0}``. The text format is the usual sparse one::

    <label> <index>:<value> <index>:<value> ...

with 1-based, unique indices per line. Three label encodings are accepted
and normalized on load: ``{-1,+1}`` as is, ``{0,1}`` with 0 mapped to -1,
and ``{1,2}`` with 2 mapped to -1.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp


class ParseError(ValueError):
    """Malformed dataset text; the message carries the 1-based line number."""


@dataclass
class Dataset:
    """Feature rows and binary labels.

    Attributes
    ----------
    features : scipy.sparse.csr_matrix
        Shape ``(n_samples, n_features)``, float64.
    labels : numpy.ndarray
        Shape ``(n_samples,)``, entries in ``{-1.0, +1.0}``.
    """

    features: sp.csr_matrix
    labels: np.ndarray

    def __post_init__(self):
        if not sp.issparse(self.features):
            self.features = sp.csr_matrix(np.asarray(self.features, dtype=float))
        self.features = self.features.tocsr().astype(float)
        self.labels = np.asarray(self.labels, dtype=float).ravel()
        if self.features.shape[0] != self.labels.shape[0]:
            raise ValueError(
                f"{self.features.shape[0]} feature rows but {self.labels.shape[0]} labels"
            )
        if self.features.shape[0] == 0:
            raise ValueError("dataset has no rows")
        bad = ~np.isin(self.labels, (-1.0, 1.0))
        if bad.any():
            raise ValueError(f"labels must be -1 or +1, got {self.labels[bad][0]!r}")

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]


def _normalize_labels(raw: np.ndarray) -> np.ndarray:
    values = set(np.unique(raw).tolist())
    if values <= {-1.0, 1.0}:
        return raw
    if values <= {0.0, 1.0}:
        return np.where(raw == 0.0, -1.0, 1.0)
    if values <= {1.0, 2.0}:
        return np.where(raw == 2.0, -1.0, 1.0)
    raise ParseError(
        f"unrecognized label set {sorted(values)}; expected {{-1,+1}}, {{0,1}} or {{1,2}}"
    )


def parse_libsvm(source, n_features: int | None = None) -> Dataset:
    """Read a dataset in LIBSVM text format.

    Parameters
    ----------
    source : str, os.PathLike, file object, or iterable of str
        Path to a file, an open text stream, or the lines themselves.
    n_features : int, optional
        Force the feature dimension. Without it the dimension is the
        largest index seen. An index beyond an explicit dimension is an
        error.

    Returns
    -------
    Dataset

    Raises
    ------
    ParseError
        On malformed lines (with the line number), unknown label sets,
        or an input with no data lines.
    """
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, "r") as fh:
            return parse_libsvm(fh, n_features=n_features)

    labels: list[float] = []
    data: list[float] = []
    col: list[int] = []
    rowptr = [0]
    max_index = -1

    for lineno, line in enumerate(source, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        try:
            labels.append(float(tokens[0]))
        except ValueError:
            raise ParseError(f"line {lineno}: bad label {tokens[0]!r}") from None
        seen = set()
        for tok in tokens[1:]:
            idx_str, sep, val_str = tok.partition(":")
            if not sep:
                raise ParseError(f"line {lineno}: expected index:value, got {tok!r}")
            try:
                idx = int(idx_str)
                val = float(val_str)
            except ValueError:
                raise ParseError(f"line {lineno}: bad feature entry {tok!r}") from None
            if idx < 1:
                raise ParseError(f"line {lineno}: feature indices are 1-based, got {idx}")
            if idx in seen:
                raise ParseError(f"line {lineno}: duplicate feature index {idx}")
            seen.add(idx)
            col.append(idx - 1)
            data.append(val)
            max_index = max(max_index, idx - 1)
        rowptr.append(len(data))

    if not labels:
        raise ParseError("no data lines in input")

    if n_features is None:
        n_features = max_index + 1 if max_index >= 0 else 1
    elif max_index >= n_features:
        raise ParseError(
            f"feature index {max_index + 1} exceeds requested dimension {n_features}"
        )

    matrix = sp.csr_matrix(
        (np.asarray(data, dtype=float), np.asarray(col, dtype=np.int64), np.asarray(rowptr)),
        shape=(len(labels), n_features),
    )
    matrix.sort_indices()  # lines may list indices out of order
    return Dataset(matrix, _normalize_labels(np.asarray(labels)))


def dumps_libsvm(dataset: Dataset) -> str:
    """Serialize to LIBSVM text with ``repr`` floats, so parsing it back
    reproduces the matrix exactly."""
    out = io.StringIO()
    matrix = dataset.features
    for i in range(dataset.n_samples):
        parts = ["+1" if dataset.labels[i] > 0 else "-1"]
        start, stop = matrix.indptr[i], matrix.indptr[i + 1]
        for j, v in zip(matrix.indices[start:stop], matrix.data[start:stop]):
            parts.append(f"{j + 1}:{float(v)!r}")
        out.write(" ".join(parts))
        out.write("\n")
    return out.getvalue()


def write_libsvm(dataset: Dataset, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_libsvm(dataset))


def make_synthetic(
    n_features: int,
    n_samples: int,
    separation: float = 2.0,
    seed: int | None = None,
) -> Dataset:
    """Generate a linear classification problem with controllable noise.

    Recipe, in fixed draw order from ``default_rng(seed)``: a planted unit
    normal ``u`` (normalized standard normal), feature rows ``w_i`` iid
    standard normal, clean labels ``sign(u . w_i)``, then each label flips
    independently with probability ``0.5 * exp(-separation * |u . w_i|)``.
    Rows near the plane are noisy, far rows almost never flip. With
    ``separation=inf`` nothing flips and the planted normal separates the
    data exactly.
    """
    if n_features < 1 or n_samples < 1:
        raise ValueError("n_features and n_samples must be at least 1")
    if separation < 0:
        raise ValueError("separation must be nonnegative")
    rng = np.random.default_rng(seed)
    u = rng.standard_normal(n_features)
    u /= np.linalg.norm(u)
    rows = rng.standard_normal((n_samples, n_features))
    dots = rows @ u
    labels = np.where(dots >= 0.0, 1.0, -1.0)
    if np.isfinite(separation):
        flip = rng.random(n_samples) < 0.5 * np.exp(-separation * np.abs(dots))
        labels[flip] *= -1.0
    return Dataset(sp.csr_matrix(rows), labels)
