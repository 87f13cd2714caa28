"""Artifact directory: file naming, content hashes, stage metadata and the run lock."""
from __future__ import annotations

import hashlib
import json
import os
from contextlib import contextmanager
from pathlib import Path

from .matrix import HashMismatchError


class MissingArtifactError(FileNotFoundError):
    def __init__(self, missing: list[Path], stage: str):
        self.missing = missing
        names = ", ".join(str(p) for p in missing)
        super().__init__(f"missing artifact(s): {names}; run `dacfake {stage}` first")


class LockedError(RuntimeError):
    pass


def file_hash(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


class ArtifactStore:
    LOCK = ".dacfake.lock"

    def __init__(self, root):
        self.root = Path(root)

    def path(self, name: str) -> Path:
        return self.root / name

    def require(self, stage: str, *names: str) -> list[Path]:
        paths = [self.path(n) for n in names]
        missing = [p for p in paths if not p.exists()]
        if missing:
            raise MissingArtifactError(missing, stage)
        return paths

    def write_json(self, name: str, obj) -> Path:
        p = self.path(name)
        p.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return p

    def read_json(self, name: str, stage: str) -> dict:
        (p,) = self.require(stage, name)
        return json.loads(p.read_text(encoding="utf-8"))

    @contextmanager
    def lock(self):
        """Exclusive per-directory lock; a leftover lock file must be removed by hand."""
        self.root.mkdir(parents=True, exist_ok=True)
        p = self.path(self.LOCK)
        try:
            fd = os.open(p, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise LockedError(
                f"{p} exists: another dacfake process is writing to {self.root} "
                "(delete the file if that process is gone)"
            ) from None
        try:
            os.write(fd, str(os.getpid()).encode())
            os.close(fd)
            yield self
        finally:
            p.unlink(missing_ok=True)


def check_chain(found: str | None, expected: str, artifact: str, rerun: str) -> None:
    """Raise when an artifact was built from a different corpus than the current one."""
    if found != expected:
        raise HashMismatchError(
            f"{artifact} was built from corpus {str(found)[:12]}, current corpus is {expected[:12]}; "
            f"re-run `dacfake {rerun}`"
        )
