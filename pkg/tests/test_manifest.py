"""Run manifests: reproducible JSON records with file digests."""

import hashlib
import json

from offlang import __version__
from offlang import manifest


def test_file_digest_matches_hashlib(tmp_path):
    p = tmp_path / "blob.bin"
    p.write_bytes(b"abc" * 50000)  # spans multiple read chunks
    assert manifest.file_digest(p) == hashlib.sha256(b"abc" * 50000).hexdigest()


def test_canonical_json_is_sorted_and_stable():
    a = manifest.canonical_json({"b": 1, "a": {"z": 1, "y": 2}})
    b = manifest.canonical_json({"a": {"y": 2, "z": 1}, "b": 1})
    assert a == b
    assert a.endswith("\n")
    assert a.index('"a"') < a.index('"b"')


def test_build_payload(tmp_path):
    src = tmp_path / "in.tsv"
    src.write_text("x\n", encoding="utf-8")
    out = tmp_path / "out.bin"
    out.write_bytes(b"\x00")
    payload = manifest.build("train", {"seed": "7"}, 7,
                             inputs={"corpus": src}, outputs={"model": out},
                             extra={"metrics": {"accuracy": 1.0}})
    assert payload["command"] == "train"
    assert payload["tool"] == {"name": "offlang", "version": __version__}
    assert payload["seed"] == 7
    assert payload["config"] == {"seed": "7"}
    assert payload["inputs"]["corpus"]["sha256"] == manifest.file_digest(src)
    assert payload["inputs"]["corpus"]["path"] == str(src)
    assert payload["outputs"]["model"]["sha256"] == manifest.file_digest(out)
    assert payload["metrics"] == {"accuracy": 1.0}


def test_build_defaults():
    payload = manifest.build("stats", None, None)
    assert payload["config"] == {}
    assert payload["inputs"] == {}
    assert payload["outputs"] == {}
    assert payload["seed"] is None


def test_manifest_has_no_timestamps(tmp_path):
    src = tmp_path / "in.tsv"
    src.write_text("x\n", encoding="utf-8")
    one = manifest.build("stats", {"a": "1"}, 1, inputs={"corpus": src})
    two = manifest.build("stats", {"a": "1"}, 1, inputs={"corpus": src})
    assert manifest.canonical_json(one) == manifest.canonical_json(two)


def test_write_round_trips(tmp_path):
    dest = tmp_path / "run.manifest.json"
    payload = manifest.build("stats", {"k": "v"}, 3)
    manifest.write(dest, payload)
    assert json.loads(dest.read_text(encoding="utf-8")) == payload
