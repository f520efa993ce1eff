"""Resource caps, run configuration and result records.

Caps can be overridden through the ``REDMAX_CAPS`` environment variable,
either as JSON (``{"dp_max_n": 10}``) or as ``key=value`` pairs separated
by commas.
"""
from __future__ import annotations

import json
import os
import platform
import time
from dataclasses import asdict, dataclass, field, fields
from typing import Any

from .errors import InvalidInput, ResourceCapError


@dataclass(frozen=True)
class Caps:
    dfs_max_k: int = 5
    dfs_max_n: int = 14
    dp_max_n: int = 9
    tk_max_k: int = 3
    tk_max_nodes: int = 200_000
    oracle_max_order: int = 50_000
    time_budget: float = 3600.0
    jobs: int = 1

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise InvalidInput(f"cap {f.name} must be positive")

    def replace(self, **kw) -> "Caps":
        return Caps(**{**asdict(self), **kw})


def _parse_caps(text: str) -> dict[str, Any]:
    text = text.strip()
    if not text:
        return {}
    if text.startswith("{"):
        raw = json.loads(text)
    else:
        raw = {}
        for part in text.split(","):
            key, _, val = part.partition("=")
            raw[key.strip()] = val.strip()
    known = {f.name: f.type for f in fields(Caps)}
    out = {}
    for key, val in raw.items():
        if key not in known:
            raise InvalidInput(f"unknown cap {key!r}")
        try:
            out[key] = float(val) if key == "time_budget" else int(val)
        except (TypeError, ValueError) as exc:
            raise InvalidInput(f"cap {key} needs a number, got {val!r}") from exc
    return out


def load_caps(env: dict | None = None) -> Caps:
    env = os.environ if env is None else env
    return Caps(**_parse_caps(env.get("REDMAX_CAPS", "")))


def require(cond: bool, what: str) -> None:
    if not cond:
        raise ResourceCapError(what)


@dataclass(frozen=True)
class RunConfig:
    command: str
    args: dict
    caps: Caps = field(default_factory=load_caps)
    output: str = "text"
    out_path: str | None = None
    seed: int = 0

    def __post_init__(self):
        if self.output not in ("json", "csv", "svg", "text"):
            raise InvalidInput(f"unknown output format {self.output!r}")


@dataclass
class ResultRecord:
    command: str
    inputs: dict
    values: Any
    witness: Any = None
    wall_time: float = 0.0
    versions: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)


def versions() -> dict:
    from . import __version__
    from ._kernels import BACKEND

    return {"redmax": __version__, "kernel": BACKEND, "python": platform.python_version()}


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        return False
