"""On-disk cache of enumerated Weyl groups.

One JSON file per (family, rank, format version) holding the permutation
table and canonical words, plus a sha256 of that payload.  A checksum
mismatch is reported as a warning and the group is rebuilt; files written
under another format version are simply never looked at.
"""

from __future__ import annotations

import hashlib
import json
import os
import warnings
from pathlib import Path
from typing import Optional

from .errors import CorruptCache
from .root_system import RootSystem
from .weyl import DEFAULT_GROUP_CAP, WeylGroup, generate_weyl_group, weyl_group_order

FORMAT_VERSION = 1
ENV_VAR = "FLAGHOM_CACHE"


def cache_path(rs: RootSystem, directory, version: int = FORMAT_VERSION) -> Path:
    return Path(directory) / f"weyl-{rs.spec.family}{rs.rank}-v{version}.json"


def _payload(group: WeylGroup) -> list:
    return [[list(w.perm), list(w.word)] for w in group]


def _digest(payload) -> str:
    blob = json.dumps(payload, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def store_group(group: WeylGroup, directory, version: int = FORMAT_VERSION) -> Path:
    rs = group.rs
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    payload = _payload(group)
    doc = {
        "format_version": version,
        "family": rs.spec.family,
        "rank": rs.rank,
        "sha256": _digest(payload),
        "elements": payload,
    }
    path = cache_path(rs, directory, version)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(doc, separators=(",", ":")))
    os.replace(tmp, path)
    return path


def load_group(rs: RootSystem, directory, version: int = FORMAT_VERSION) -> Optional[WeylGroup]:
    """Group from the cache, None on a miss; CorruptCache on a bad file."""
    path = cache_path(rs, directory, version)
    if not path.exists():
        return None
    try:
        doc = json.loads(path.read_text())
        payload = doc["elements"]
        ok = (
            doc.get("format_version") == version
            and doc.get("family") == rs.spec.family
            and doc.get("rank") == rs.rank
        )
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CorruptCache(f"{path}: unreadable ({exc})") from exc
    if not ok:
        return None
    if _digest(payload) != doc.get("sha256"):
        raise CorruptCache(f"{path}: checksum mismatch")
    if len(payload) != weyl_group_order(rs):
        raise CorruptCache(f"{path}: {len(payload)} elements, expected {weyl_group_order(rs)}")
    try:
        return WeylGroup(rs, ((tuple(p), tuple(w)) for p, w in payload))
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise CorruptCache(f"{path}: inconsistent element table ({exc})") from exc


def cached_group(rs: RootSystem, directory=None, cap: int = DEFAULT_GROUP_CAP) -> tuple[WeylGroup, str]:
    """(group, status) where status is 'disabled', 'hit', 'miss' or 'rebuilt'."""
    if directory is None or weyl_group_order(rs) > cap:
        # an oversized group raises GroupTooLarge here before touching the disk
        return generate_weyl_group(rs, cap), "disabled"
    status = "miss"
    try:
        group = load_group(rs, directory)
    except CorruptCache as exc:
        warnings.warn(f"{exc}; rebuilding", RuntimeWarning, stacklevel=2)
        group, status = None, "rebuilt"
    if group is not None:
        return group, "hit"
    group = generate_weyl_group(rs, cap)
    store_group(group, directory)
    return group, status
