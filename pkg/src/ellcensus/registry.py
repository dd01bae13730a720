"""Curve registry and embedded expected-table data.

The registry path defaults to the packaged ``data/curves.json`` and can be
overridden with the ``ELLIPTIC_REGISTRY`` environment variable.
"""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

from .curve import CurveQ
from .errors import ConfigurationError

REGISTRY_ENV = "ELLIPTIC_REGISTRY"


def _read_json(path: str | Path | None, default: str) -> dict:
    try:
        if path is None:
            text = resources.files("ellcensus").joinpath("data").joinpath(default).read_text(encoding="utf-8")
        else:
            text = Path(path).read_text(encoding="utf-8")
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read {path or default}: {exc}") from exc


def registry_path() -> str | None:
    return os.environ.get(REGISTRY_ENV) or None


def load_registry(path: str | Path | None = None) -> dict[str, CurveQ]:
    data = _read_json(path if path is not None else registry_path(), "curves.json")
    curves = {}
    try:
        for entry in data["curves"]:
            gen = entry.get("generator")
            curves[entry["label"]] = CurveQ(
                label=entry["label"],
                a=int(entry["a"]),
                b=int(entry["b"]),
                conductor=entry.get("conductor"),
                cm_discriminant=entry.get("cm_discriminant"),
                rank=entry.get("rank"),
                torsion_order=entry.get("torsion_order"),
                generator=tuple(gen) if gen else None,
                d_E=entry.get("d_E"),
                notes=entry.get("notes") or {},
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"malformed registry entry: {exc}") from exc
    return curves


def get_curve(label: str, path: str | Path | None = None) -> CurveQ:
    curves = load_registry(path)
    if label not in curves:
        raise ConfigurationError(f"unknown curve {label!r}; known: {', '.join(sorted(curves))}")
    return curves[label]


def load_tables() -> list[dict]:
    return _read_json(None, "tables.json")["tables"]
