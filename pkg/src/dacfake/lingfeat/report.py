from __future__ import annotations

import numpy as np

from ..matrix import FeatureMatrix
from .registry import TABLE4_FEATURES


class MissingClassError(ValueError):
    pass


def table4_report(labels, matrix: FeatureMatrix) -> list[dict]:
    """Per-class means of the summary feature subset (fake vs true).

    ``labels`` is a corpus or a label sequence aligned with the matrix rows.
    Returns one dict per feature: ``{"feature", "id", "true", "fake"}``.
    """
    if matrix.provenance != "LF":
        raise ValueError(f"expected an LF matrix, got {matrix.provenance}")
    if hasattr(labels, "labels"):
        labels = labels.labels
    y = np.asarray(labels)
    if len(y) != matrix.shape[0]:
        raise ValueError("labels and matrix rows differ in length")
    for cls, name in ((0, "true"), (1, "fake")):
        if not np.any(y == cls):
            raise MissingClassError(f"class {name!r} (label {cls}) absent from corpus")
    rows = []
    for title, fid in TABLE4_FEATURES:
        col = matrix.column(fid)
        rows.append({
            "feature": title,
            "id": fid,
            "true": float(col[y == 0].mean()),
            "fake": float(col[y == 1].mean()),
        })
    return rows


def format_table4(rows: list[dict]) -> str:
    width = max(len(r["feature"]) for r in rows)
    out = [f"{'Features':<{width}}  {'True News':>10}  {'Fake News':>10}"]
    for r in rows:
        out.append(f"{r['feature']:<{width}}  {r['true']:>10.3f}  {r['fake']:>10.3f}")
    return "\n".join(out)
