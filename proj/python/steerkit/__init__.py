"""Python front end for the steerkit native core.

Every command takes a run configuration (dict or JSON string) and returns a dict,
mirroring the ``steerkit`` command line tool.
"""

from __future__ import annotations

import json
from typing import Any, Mapping, Sequence, Tuple, Union

from . import _core
from ._core import ConfigError, realization_seed

__all__ = [
    "ConfigError",
    "SCHEMA_VERSION",
    "build",
    "spectrum",
    "steer",
    "classify",
    "glassfloor",
    "ensemble",
    "fit",
    "temperature_floor",
    "realization_seed",
]

SCHEMA_VERSION: int = _core.SCHEMA_VERSION

Config = Union[str, Mapping[str, Any]]


def _text(config: Config) -> str:
    if isinstance(config, str):
        return config
    cfg = dict(config)
    cfg.setdefault("schema_version", SCHEMA_VERSION)
    return json.dumps(cfg)


def build(config: Config) -> dict:
    return json.loads(_core.build(_text(config)))


def spectrum(config: Config) -> dict:
    return json.loads(_core.spectrum(_text(config)))


def steer(config: Config) -> dict:
    return json.loads(_core.steer(_text(config)))


def classify(config: Config) -> dict:
    return json.loads(_core.classify(_text(config)))


def glassfloor(config: Config) -> dict:
    return json.loads(_core.glassfloor(_text(config)))


def ensemble(config: Config, out: str = "") -> dict:
    """Disorder sweep; writes realizations.csv and summary.json into ``out`` when given."""
    return json.loads(_core.ensemble(_text(config), out))


def fit(config: Config) -> dict:
    return json.loads(_core.fit(_text(config)))


def temperature_floor(levels: Sequence[Tuple[float, float]], degeneracy: float, e_gs: float, p: float) -> dict:
    return _core.temperature_floor(list(levels), degeneracy, e_gs, p)
