"""Small shared helpers: hashing, canonical JSON, timestamps."""

from __future__ import annotations

import hashlib
import json
import os
from datetime import datetime, timezone

# Fixed timestamp used by deterministic (offline/mock) runs so that output
# artifacts are byte-identical across reruns with the same config and seed.
EPOCH_ISO = "1970-01-01T00:00:00Z"


def sha256_hex(data: str | bytes) -> str:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return hashlib.sha256(data).hexdigest()


def canonical_json(obj) -> str:
    """Stable single-line JSON: sorted keys, no trailing whitespace drift."""
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def now_iso(deterministic: bool = False) -> str:
    """Current UTC time, or a pinned time for reproducible runs.

    SOURCE_DATE_EPOCH (the reproducible-builds convention) overrides the
    wall clock when set.
    """
    if deterministic:
        return EPOCH_ISO
    sde = os.environ.get("SOURCE_DATE_EPOCH")
    if sde is not None:
        dt = datetime.fromtimestamp(int(sde), tz=timezone.utc)
        return dt.strftime("%Y-%m-%dT%H:%M:%SZ")
    return datetime.now(tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
