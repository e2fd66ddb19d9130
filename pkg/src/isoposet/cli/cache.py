"""Versioned JSON serialization of subgroup lattices and Iso posets, and an
on-disk cache keyed by a content digest of (specification, caps, version)."""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

import numpy as np

from ..errors import IsoPosetError
from ..group_core import Group
from ..grpiso import fingerprint
from ..poset import IsoPoset, Poset
from ..subgrp import SubgroupLattice, SubgroupSet

CACHE_VERSION = 1
log = logging.getLogger(__name__)


class CorruptEntry(IsoPosetError):
    pass


def _canonical(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()


def _sha(obj) -> str:
    return hashlib.sha256(_canonical(obj)).hexdigest()


def bit_rows(leq: np.ndarray) -> list[str]:
    return ["".join("1" if x else "0" for x in row) for row in leq]


def from_bit_rows(rows: list[str]) -> np.ndarray:
    return np.array([[c == "1" for c in row] for row in rows], dtype=bool).reshape(len(rows), len(rows))


def poset_to_json(p: Poset) -> dict:
    return {"labels": list(p.labels), "leq": bit_rows(p.leq)}


def poset_digest(p: Poset) -> str:
    return _sha(poset_to_json(p))


def table_digest(g: Group) -> str:
    return hashlib.sha256(np.ascontiguousarray(g.table, dtype=np.int32).tobytes()).hexdigest()


def lattice_to_json(lat: SubgroupLattice) -> dict:
    return {
        "order": lat.parent.order,
        "table": table_digest(lat.parent),
        "subgroups": [{"members": format(s.members, "x"), "generators": list(map(int, s.generators))}
                      for s in lat.subgroups],
    }


def iso_to_json(ip: IsoPoset) -> dict:
    return {"classes": [list(c) for c in ip.classes], **poset_to_json(ip.poset)}


def cache_key(spec_text: str, caps: dict, version: int = CACHE_VERSION) -> str:
    return _sha({"spec": spec_text, "caps": caps, "version": version})


def _entry_path(directory: str | Path, key: str) -> Path:
    return Path(directory) / f"{key}.json"


def cache_store(directory: str | Path, key: str, lat: SubgroupLattice, ip: IsoPoset,
                version: int = CACHE_VERSION) -> Path:
    """Write atomically: a temporary file in the same directory, then rename."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    payload = {"lattice": lattice_to_json(lat), "iso": iso_to_json(ip)}
    doc = {"version": version, "key": key, "payload": payload, "digest": _sha(payload)}
    path = _entry_path(directory, key)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(json.dumps(doc, sort_keys=True, indent=1))
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    return path


def cache_load(directory: str | Path, key: str, group: Group,
               version: int = CACHE_VERSION) -> tuple[SubgroupLattice, IsoPoset] | None:
    """Return the cached pair, None on a miss or a stale version.

    Raises CorruptEntry when the file cannot be parsed, its digest does not
    match, or it describes a different multiplication table.
    """
    path = _entry_path(directory, key)
    if not path.exists():
        return None
    try:
        doc = json.loads(path.read_text())
        stored_version, payload, digest = doc["version"], doc["payload"], doc["digest"]
    except (ValueError, KeyError, TypeError) as exc:
        raise CorruptEntry(f"{path}: unreadable cache entry ({exc})") from None
    if stored_version != version:
        return None
    if _sha(payload) != digest:
        raise CorruptEntry(f"{path}: digest mismatch")
    try:
        lat_doc, iso_doc = payload["lattice"], payload["iso"]
        if lat_doc["order"] != group.order or lat_doc["table"] != table_digest(group):
            raise CorruptEntry(f"{path}: entry was computed for a different table")
        subs = []
        for s in lat_doc["subgroups"]:
            mask = int(s["members"], 16)
            elems = np.array([x for x in range(group.order) if mask >> x & 1])
            elems.setflags(write=False)
            subs.append(SubgroupSet(mask, elems, tuple(s["generators"])))
        lat = SubgroupLattice(group, subs)
        classes = tuple(tuple(c) for c in iso_doc["classes"])
        representative = tuple(c[0] for c in classes)
        ip = IsoPoset(
            poset=Poset(from_bit_rows(iso_doc["leq"]), iso_doc["labels"]),
            classes=classes,
            representative=representative,
            class_fingerprint=tuple(fingerprint(lat.group(r)) for r in representative),
            lattice=lat,
        )
    except CorruptEntry:
        raise
    except (KeyError, ValueError, TypeError, AssertionError) as exc:
        raise CorruptEntry(f"{path}: malformed payload ({exc})") from None
    return lat, ip
