"""Confusion counts and the four headline metrics (positive class = 1 = fake)."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

METRIC_NAMES = ("accuracy", "precision", "recall", "f1")


def _div(num: float, den: float) -> float:
    return num / den if den else 0.0


def confusion(y_true, y_pred) -> tuple[int, int, int, int]:
    """(TP, FP, FN, TN) with label 1 as the positive class."""
    t = np.asarray(y_true).ravel()
    p = np.asarray(y_pred).ravel()
    if t.shape != p.shape:
        raise ValueError(f"length mismatch: {t.size} true vs {p.size} predicted labels")
    if t.size == 0:
        raise ValueError("no labels to evaluate")
    for name, a in (("y_true", t), ("y_pred", p)):
        if not np.all((a == 0) | (a == 1)):
            raise ValueError(f"{name} must hold binary 0/1 labels")
    tp = int(np.sum((t == 1) & (p == 1)))
    fp = int(np.sum((t == 0) & (p == 1)))
    fn = int(np.sum((t == 1) & (p == 0)))
    tn = int(np.sum((t == 0) & (p == 0)))
    return tp, fp, fn, tn


def scores_from_confusion(tp: int, fp: int, fn: int, tn: int, average: str = "binary") -> dict[str, float]:
    """Accuracy, precision, recall, F1. A zero denominator makes the metric 0.

    ``average='macro'`` averages precision/recall/F1 over both classes treated as positive in turn.
    """
    acc = _div(tp + tn, tp + fp + fn + tn)

    def prf(tp_, fp_, fn_):
        p = _div(tp_, tp_ + fp_)
        r = _div(tp_, tp_ + fn_)
        # same value as 2PR/(P+R), with one rounding instead of several
        return p, r, _div(2 * tp_, 2 * tp_ + fp_ + fn_)

    if average == "binary":
        p, r, f = prf(tp, fp, fn)
    elif average == "macro":
        p1, r1, f1 = prf(tp, fp, fn)
        p0, r0, f0 = prf(tn, fn, fp)
        p, r, f = (p0 + p1) / 2, (r0 + r1) / 2, (f0 + f1) / 2
    else:
        raise ValueError("average must be 'binary' or 'macro'")
    return {"accuracy": acc, "precision": p, "recall": r, "f1": f}


@dataclass
class EvalReport:
    accuracy: float
    precision: float
    recall: float
    f1: float
    confusion: tuple[int, int, int, int]
    protocol: str = "holdout"
    std: dict | None = None
    per_fold: list["EvalReport"] | None = None
    config: dict = field(default_factory=dict)

    @property
    def n_rows(self) -> int:
        return sum(self.confusion)

    def scores(self) -> dict[str, float]:
        return {k: getattr(self, k) for k in METRIC_NAMES}

    def to_dict(self) -> dict:
        d = asdict(self)
        d["confusion"] = dict(zip(("TP", "FP", "FN", "TN"), self.confusion))
        if self.per_fold is not None:
            d["per_fold"] = [f.to_dict() for f in self.per_fold]
        return d

    def format(self) -> str:
        tp, fp, fn, tn = self.confusion
        lines = [f"protocol: {self.protocol}"]
        for k in METRIC_NAMES:
            v = getattr(self, k)
            sd = f" ± {self.std[k]:.4f}" if self.std else ""
            lines.append(f"{k:>9}: {v:.4f}{sd}")
        lines.append(f"confusion: TP={tp} FP={fp} FN={fn} TN={tn}")
        if self.per_fold:
            accs = " ".join(f"{f.accuracy:.4f}" for f in self.per_fold)
            lines.append(f"fold accuracies: {accs}")
        return "\n".join(lines)


def metrics(y_true, y_pred, average: str = "binary", config: dict | None = None) -> EvalReport:
    cm = confusion(y_true, y_pred)
    return EvalReport(**scores_from_confusion(*cm, average=average), confusion=cm, config=dict(config or {}))


def aggregate(folds: list[EvalReport], config: dict | None = None) -> EvalReport:
    """Mean and population std of each metric over folds; confusion counts are summed."""
    if not folds:
        raise ValueError("no folds to aggregate")
    table = {k: np.array([getattr(f, k) for f in folds]) for k in METRIC_NAMES}
    cm = tuple(int(sum(f.confusion[i] for f in folds)) for i in range(4))
    return EvalReport(
        **{k: float(v.mean()) for k, v in table.items()},
        confusion=cm,
        protocol=f"{len(folds)}-fold-cv",
        std={k: float(v.std()) for k, v in table.items()},
        per_fold=list(folds),
        config=dict(config or {}),
    )
