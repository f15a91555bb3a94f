"""The shipped instance matrix and per-suite case lists."""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

THREADS_ENV = "QUOTCODES_THREADS"


def load_config(path: str | os.PathLike | None = None) -> dict:
    if path is None:
        text = resources.files("quotcodes").joinpath("data/instances.toml").read_text()
    else:
        text = Path(path).read_text()
    cfg = tomllib.loads(text)
    for q, m in cfg.get("instances", []):
        if (q + 1) % m:
            raise ValueError(f"configured instance ({q}, {m}) has m not dividing q + 1")
    return cfg


def thread_count(flag: int | None) -> int:
    if flag is not None:
        return max(1, flag)
    env = os.environ.get(THREADS_ENV)
    return max(1, int(env)) if env else 1
