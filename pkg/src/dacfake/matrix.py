"""Named dense feature tables and their CSV + JSON sidecar persistence."""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

PROVENANCES = ("LF", "WVF1", "WVF2", "FUSED")


class HashMismatchError(ValueError):
    """Two artifacts were derived from different corpora."""


@dataclass
class FeatureMatrix:
    values: np.ndarray
    columns: tuple[str, ...]
    provenance: str
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 2:
            self.values = self.values.reshape(len(self.values), -1)
        self.columns = tuple(self.columns)
        if self.values.shape[1] != len(self.columns):
            raise ValueError(f"{self.values.shape[1]} value columns but {len(self.columns)} names")
        if len(set(self.columns)) != len(self.columns):
            raise ValueError("column names must be unique")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("feature matrix holds NaN or Inf")

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    @property
    def corpus_hash(self) -> str | None:
        return self.meta.get("corpus_hash")

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self.columns.index(name)]

    def save(self, path: str | Path, labels=None) -> None:
        """Write ``path`` (CSV, final column ``label`` when given) and ``path``.json."""
        path = Path(path)
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            header = list(self.columns) + (["label"] if labels is not None else [])
            w.writerow(header)
            for i, row in enumerate(self.values):
                cells = [repr(float(v)) for v in row]
                if labels is not None:
                    cells.append(str(int(labels[i])))
                w.writerow(cells)
        sidecar = {"provenance": self.provenance, "shape": list(self.shape), **self.meta}
        with open(sidecar_path(path), "w", encoding="utf-8") as fh:
            json.dump(sidecar, fh, indent=2, sort_keys=True)

    @classmethod
    def load(cls, path: str | Path) -> tuple["FeatureMatrix", np.ndarray | None]:
        path = Path(path)
        with open(sidecar_path(path), encoding="utf-8") as fh:
            meta = json.load(fh)
        provenance = meta.pop("provenance")
        meta.pop("shape", None)
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
        header, body = rows[0], rows[1:]
        labels = None
        if header and header[-1] == "label":
            labels = np.array([int(r[-1]) for r in body], dtype=np.int64)
            header = header[:-1]
            body = [r[:-1] for r in body]
        values = np.array(body, dtype=np.float64).reshape(len(body), len(header))
        return cls(values, tuple(header), provenance, meta), labels


def sidecar_path(path: str | Path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".json")


def concat(left: FeatureMatrix, right: FeatureMatrix) -> FeatureMatrix:
    """Column-wise join, ``left`` columns first."""
    if left.shape[0] != right.shape[0]:
        raise ValueError(f"row count mismatch: {left.shape[0]} vs {right.shape[0]}")
    lh, rh = left.corpus_hash, right.corpus_hash
    if lh is not None and rh is not None and lh != rh:
        raise HashMismatchError(f"corpus hash mismatch: {lh[:12]} vs {rh[:12]}")
    cols = list(left.columns)
    taken = set(cols)
    for c in right.columns:
        name = c
        if name in taken:
            name = f"{right.provenance.lower()}:{c}"
        taken.add(name)
        cols.append(name)
    meta = {**right.meta, **left.meta, "sources": [left.provenance, right.provenance]}
    if right.shape[1] == 0:
        values = left.values.copy()
    else:
        values = np.hstack([left.values, right.values])
    return FeatureMatrix(values, tuple(cols), "FUSED", meta)
