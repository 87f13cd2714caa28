"""Versioned JSON persistence for fitted estimators and pipelines.

Only classes listed in ``SERIALIZABLE`` can be loaded; arbitrary code is never
imported from a model file. Floats go through ``repr`` so round-trips are exact.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np
from sklearn.pipeline import Pipeline

from .tree import Tree

FORMAT_NAME = "dacfake-model"
FORMAT_VERSION = 1

SERIALIZABLE: dict[str, type] = {}


class ModelFormatError(ValueError):
    pass


def register(cls: type) -> type:
    SERIALIZABLE[cls.__name__] = cls
    return cls


def _encode(obj):
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        if not np.isfinite(f):
            return {"__float__": repr(f)}
        return f
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return {"__ndarray__": _encode(obj.tolist()), "dtype": obj.dtype.str, "shape": list(obj.shape)}
    if isinstance(obj, list):
        return [_encode(v) for v in obj]
    if isinstance(obj, tuple):
        return {"__tuple__": [_encode(v) for v in obj]}
    if isinstance(obj, dict):
        if not all(isinstance(k, str) for k in obj):
            raise TypeError("only string-keyed dicts can be serialized")
        return {"__dict__": {k: _encode(v) for k, v in obj.items()}}
    if isinstance(obj, Tree):
        return {"__tree__": obj.to_dict()}
    if isinstance(obj, Pipeline):
        return {"__pipeline__": [[name, _encode(step)] for name, step in obj.steps]}
    name = type(obj).__name__
    if SERIALIZABLE.get(name) is type(obj):
        state = {k: v for k, v in vars(obj).items() if k.endswith("_") and not k.startswith("_")}
        return {
            "__estimator__": name,
            "params": _encode(obj.get_params(deep=False)),
            "state": _encode(state),
        }
    raise TypeError(f"cannot serialize object of type {name}")


def _decode(obj):
    if isinstance(obj, list):
        return [_decode(v) for v in obj]
    if not isinstance(obj, dict):
        return obj
    if "__float__" in obj:
        return float(obj["__float__"])
    if "__ndarray__" in obj:
        arr = np.array(_decode(obj["__ndarray__"]), dtype=np.dtype(obj["dtype"]))
        return arr.reshape(obj["shape"])
    if "__tuple__" in obj:
        return tuple(_decode(v) for v in obj["__tuple__"])
    if "__dict__" in obj:
        return {k: _decode(v) for k, v in obj["__dict__"].items()}
    if "__tree__" in obj:
        return Tree.from_dict(obj["__tree__"])
    if "__pipeline__" in obj:
        return Pipeline([(name, _decode(step)) for name, step in obj["__pipeline__"]])
    if "__estimator__" in obj:
        name = obj["__estimator__"]
        if name not in SERIALIZABLE:
            raise ModelFormatError(f"model file names unknown class {name!r}")
        est = SERIALIZABLE[name](**_decode(obj["params"]))
        for k, v in _decode(obj["state"]).items():
            setattr(est, k, v)
        return est
    raise ModelFormatError(f"unrecognised object in model file: keys {sorted(obj)}")


def dumps(model, meta: dict | None = None) -> str:
    doc = {"format": FORMAT_NAME, "version": FORMAT_VERSION, "meta": meta or {}, "model": _encode(model)}
    return json.dumps(doc, sort_keys=True)


def loads(text: str):
    """Return ``(model, meta)``; rejects foreign formats and other versions."""
    doc = json.loads(text)
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_NAME:
        raise ModelFormatError("not a dacfake model file")
    if doc.get("version") != FORMAT_VERSION:
        raise ModelFormatError(
            f"model format version {doc.get('version')!r} is not supported (expected {FORMAT_VERSION})"
        )
    return _decode(doc["model"]), doc.get("meta", {})


def save_model(model, path, meta: dict | None = None) -> Path:
    path = Path(path)
    path.write_text(dumps(model, meta), encoding="utf-8")
    return path


def load_model(path):
    return loads(Path(path).read_text(encoding="utf-8"))
