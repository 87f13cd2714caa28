"""Splits, cross-validation, metrics and the benchmark grid."""
from .cv import SCALER_CHOICES, build_pipeline, cross_validate, holdout_evaluate
from .experiment import (
    FEATURE_SETS,
    ExperimentRow,
    ExperimentTable,
    build_feature_sets,
    run_experiment_matrix,
)
from .metrics import METRIC_NAMES, EvalReport, aggregate, confusion, metrics, scores_from_confusion
from .split import FoldPlan, holdout_counts, train_test_indices, train_test_split

__all__ = [
    "FEATURE_SETS",
    "METRIC_NAMES",
    "SCALER_CHOICES",
    "EvalReport",
    "ExperimentRow",
    "ExperimentTable",
    "FoldPlan",
    "aggregate",
    "build_feature_sets",
    "build_pipeline",
    "confusion",
    "cross_validate",
    "holdout_counts",
    "holdout_evaluate",
    "metrics",
    "run_experiment_matrix",
    "scores_from_confusion",
    "train_test_indices",
    "train_test_split",
]
