"""Run configuration stored as flat ``key = value`` text.

Classifier hyperparameters use ``hp.<name> = <json value>`` lines. Unknown
keys are rejected so typos surface immediately.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    input: str = ""
    col_text: str = "text"
    col_title: str = "title"
    col_label: str = "label"
    concat_title: bool = False
    out_dir: str = ""
    lexicon_dir: str = ""
    wv_mode: str = "sg"
    doc_vec_mode: str = "mean"
    vector_size: int = 100
    window: int = 5
    negative: int = 5
    epochs: int = 5
    max_vocab: int = 1000
    scaler: str = "minmax+zscore"
    corr_threshold: float = 0.7
    classifier: str = "gb"
    classifiers: str = "nb,lr,knn,svm,dt,etc,rf,gb,ada,bag"
    hyperparams: dict = field(default_factory=dict)
    seed: int = 0
    train_fraction: float = 0.8
    k: int = 10
    protocol: str = "holdout"
    n_jobs: int = 1

    def validate(self) -> "RunConfig":
        choices = {
            "wv_mode": ("sg", "cbow"),
            "doc_vec_mode": ("mean", "pooled"),
            "scaler": ("minmax+zscore", "minmax", "zscore", "none"),
            "protocol": ("holdout", "cv"),
        }
        for key, allowed in choices.items():
            if getattr(self, key) not in allowed:
                raise ConfigError(f"{key} must be one of {allowed}, got {getattr(self, key)!r}")
        if not 0.0 < self.corr_threshold < 1.0:
            raise ConfigError("corr_threshold must lie in (0, 1)")
        if not 0.0 < self.train_fraction < 1.0:
            raise ConfigError("train_fraction must lie in (0, 1)")
        if self.k < 2:
            raise ConfigError("k must be at least 2")
        return self

    @property
    def feature_set(self) -> str:
        return "LF+WVF2" if self.wv_mode == "sg" else "LF+WVF1"

    @property
    def classifier_list(self) -> list[str]:
        return [c.strip() for c in self.classifiers.split(",") if c.strip()]

    def resolved_out_dir(self) -> Path:
        return Path(self.out_dir or os.environ.get("DACFAKE_DATA_DIR") or "dacfake-artifacts")

    def snapshot(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def with_overrides(self, **kw) -> "RunConfig":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw).validate()


_FIELDS = {f.name: f for f in fields(RunConfig)}


def _coerce(name: str, raw: str):
    kind = type(getattr(RunConfig(), name))
    if kind is bool:
        low = raw.lower()
        if low in ("true", "1", "yes", "on"):
            return True
        if low in ("false", "0", "no", "off"):
            return False
        raise ConfigError(f"{name}: expected a boolean, got {raw!r}")
    if kind in (int, float):
        try:
            return kind(raw)
        except ValueError:
            raise ConfigError(f"{name}: expected {kind.__name__}, got {raw!r}") from None
    return raw


def render(cfg: RunConfig) -> str:
    lines = []
    for name in _FIELDS:
        if name == "hyperparams":
            continue
        v = getattr(cfg, name)
        if isinstance(v, bool):
            v = "true" if v else "false"
        elif isinstance(v, float):
            v = repr(v)
        lines.append(f"{name} = {v}")
    for k in sorted(cfg.hyperparams):
        lines.append(f"hp.{k} = {json.dumps(cfg.hyperparams[k])}")
    return "\n".join(lines) + "\n"


def parse(text: str) -> RunConfig:
    values: dict = {}
    hp: dict = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        if "=" not in s:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, raw = (p.strip() for p in s.split("=", 1))
        if key.startswith("hp."):
            try:
                hp[key[3:]] = json.loads(raw)
            except json.JSONDecodeError:
                hp[key[3:]] = raw
        elif key in _FIELDS and key != "hyperparams":
            values[key] = _coerce(key, raw)
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    return RunConfig(**values, hyperparams=hp).validate()


def load_config(path) -> RunConfig:
    try:
        return parse(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e.strerror}") from None
