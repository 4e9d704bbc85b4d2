"""Deterministic JSON/CSV emission.

Reports must be byte-identical across reruns with the same flags: keys
keep insertion order, floats go through repr (shortest round-trip), and
no timestamps or environment data are ever written.
"""

from __future__ import annotations

import json
from pathlib import Path

SCHEMA_VERSION = 1


def json_report(command: str, config: dict, body: dict) -> dict:
    out = {"schema": SCHEMA_VERSION, "command": command, "config": config}
    out.update(body)
    return out


def dumps_json(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def write_text(path: str | Path, text: str) -> Path:
    path = Path(path)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def f17(value: float) -> str:
    """17 significant digits: enough to reproduce the double exactly."""
    return f"{value:.17g}"


def kv_csv(pairs: list[tuple[str, object]]) -> str:
    lines = ["key,value"]
    for key, value in pairs:
        if isinstance(value, float):
            value = f17(value)
        lines.append(f"{key},{value}")
    return "\n".join(lines) + "\n"
