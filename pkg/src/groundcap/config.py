"""Run configuration: one frozen document drives a whole dataset build.

The config file is JSON with the field names below; command-line flags
override individual values.  The auth token is never part of the file, it
comes from the environment variable named by ``api_key_env``.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Optional

from .jsonio import canonical_json


@dataclass(frozen=True)
class PipelineConfig:
    endpoint: str = ""
    model: str = ""
    temperature: float = 0.0
    seed: Optional[int] = 0
    retries: int = 2
    backoff: float = 0.5
    max_in_flight: int = 4
    fps: float = 5.0
    iou_thresh: float = 0.5
    sim_thresh: float = 0.5
    similarity: str = "lexical"
    embedding_endpoint: Optional[str] = None
    objectness_threshold: float = 0.5
    api_key_env: str = "GROUNDCAP_API_KEY"

    @classmethod
    def from_dict(cls, obj: dict) -> "PipelineConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(obj) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**obj)

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineConfig":
        return cls.from_dict(json.loads(Path(path).read_text("utf-8")))

    def override(self, **kwargs) -> "PipelineConfig":
        """A copy with the non-None keyword values replaced."""
        changes = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **changes) if changes else self

    def to_dict(self) -> dict:
        return {
            "endpoint": self.endpoint,
            "model": self.model,
            "temperature": self.temperature,
            "seed": self.seed,
            "retries": self.retries,
            "backoff": self.backoff,
            "max_in_flight": self.max_in_flight,
            "fps": self.fps,
            "iou_thresh": self.iou_thresh,
            "sim_thresh": self.sim_thresh,
            "similarity": self.similarity,
            "embedding_endpoint": self.embedding_endpoint,
            "objectness_threshold": self.objectness_threshold,
            "api_key_env": self.api_key_env,
        }

    def config_hash(self) -> str:
        return hashlib.sha256(canonical_json(self.to_dict()).encode("utf-8")).hexdigest()

    def api_key(self) -> Optional[str]:
        return os.environ.get(self.api_key_env)
