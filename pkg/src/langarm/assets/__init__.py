"""Bundled asset files: canonical prompt texts, hazard rules, URDF fixtures."""

from __future__ import annotations

import hashlib
from pathlib import Path

_ROOT = Path(__file__).parent


def asset_path(relative: str) -> Path:
    p = _ROOT / relative
    if not p.is_file():
        raise FileNotFoundError(f"no bundled asset {relative!r}")
    return p


def load_text(relative: str) -> str:
    return asset_path(relative).read_text(encoding="utf-8")


def checksum(relative: str) -> str:
    return hashlib.sha256(asset_path(relative).read_bytes()).hexdigest()
