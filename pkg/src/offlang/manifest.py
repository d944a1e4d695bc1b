"""Run manifests: deterministic JSON records of what a command consumed and
produced.

Manifests carry the full config snapshot, the seed, sha256 digests of every
input and output file and the tool version.  They contain no timestamps,
host names or absolute environment details, so re-running the same command
on the same inputs yields a byte-identical manifest.
"""

import hashlib
import json
from pathlib import Path


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def canonical_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def build(command: str, config_values: dict | None, seed: int | None,
          inputs: dict | None = None, outputs: dict | None = None,
          extra: dict | None = None) -> dict:
    """Assemble the manifest payload; input/output dicts map role -> path."""
    from . import __version__
    payload = {
        "command": command,
        "tool": {"name": "offlang", "version": __version__},
        "config": dict(config_values) if config_values else {},
        "seed": seed,
        "inputs": {role: {"path": str(p), "sha256": file_digest(p)}
                   for role, p in (inputs or {}).items()},
        "outputs": {role: {"path": str(p), "sha256": file_digest(p)}
                    for role, p in (outputs or {}).items()},
    }
    if extra:
        payload.update(extra)
    return payload


def write(path, payload: dict) -> None:
    Path(path).write_text(canonical_json(payload), encoding="utf-8")
