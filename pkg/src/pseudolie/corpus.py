"""Bundled algebra and realization files, and file loading with fallback to them."""

from __future__ import annotations

import json
import re
from importlib import resources
from pathlib import Path

from .lie.algebra import AlgebraError, LieAlgebra, abelian
from .weyl import Realization

_ABELIAN = re.compile(r"^abelian_(\d+)(\.json)?$")


def _data_dir():
    return resources.files("pseudolie") / "data"


def bundled_names() -> list[str]:
    return sorted(p.name[:-5] for p in _data_dir().iterdir() if p.name.endswith(".json"))


def bundled_algebras() -> list[str]:
    return [n for n in bundled_names() if not n.endswith("_real")]


def bundled_realizations() -> list[str]:
    return [n for n in bundled_names() if n.endswith("_real")]


def _bundled_text(name: str) -> str | None:
    stem = name[:-5] if name.endswith(".json") else name
    f = _data_dir() / f"{stem}.json"
    return f.read_text() if f.is_file() else None


def read_json(ref: str, base: Path | None = None) -> tuple[dict, Path | None]:
    """Parsed JSON from a path (relative to ``base`` if given) or a bundled name.

    Raises FileNotFoundError when neither exists and ValueError on bad JSON.
    """
    candidates = [Path(ref)]
    if base is not None and not Path(ref).is_absolute():
        candidates.insert(0, base / ref)
    for p in candidates:
        if p.is_file():
            return json.loads(p.read_text()), p.parent
    text = _bundled_text(Path(ref).name)
    if text is None:
        raise FileNotFoundError(ref)
    return json.loads(text), None


def load_algebra(ref: str, base: Path | None = None) -> LieAlgebra:
    m = _ABELIAN.match(Path(ref).name)
    if m and not Path(ref).is_file() and not (base and (base / ref).is_file()):
        return abelian(int(m.group(1)))
    data, _ = read_json(ref, base)
    if not isinstance(data, dict):
        raise AlgebraError("algebra file must hold a JSON object")
    return LieAlgebra.from_json(data)


def load_realization(ref: str, base: Path | None = None) -> Realization:
    data, where = read_json(ref, base)
    if not isinstance(data, dict):
        raise ValueError("realization file must hold a JSON object")
    return Realization.from_json(data, resolve=lambda r: load_algebra(r, where))
