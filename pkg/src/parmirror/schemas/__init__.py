"""Bundled JSON schemas describing every CLI output document."""

from __future__ import annotations

import json
from importlib.resources import files

_NAMES = (
    "tms_report",
    "sweep",
    "variant",
    "stringy",
    "walls",
    "lemma",
    "orbits",
    "section",
)


def available() -> tuple[str, ...]:
    return _NAMES


def load(name: str) -> dict:
    if name not in _NAMES:
        raise KeyError(f"unknown schema {name!r}; have {_NAMES}")
    text = files(__package__).joinpath(f"{name}.schema.json").read_text(encoding="utf-8")
    return json.loads(text)
