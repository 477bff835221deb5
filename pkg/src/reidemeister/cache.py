"""On-disk cache for Cayley tables and character tables.

Entries are JSON files named by the sha256 of a canonical serialization of
the input.  Each entry carries a checksum of its payload; anything that fails
to parse, fails the checksum, or fails validation against the group is
reported on the log, recomputed and overwritten.  Writes go to a temporary
file in the same directory followed by ``os.replace``, so concurrent jobs
never see half-written entries.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from .characters import CharacterTableModP, character_table
from .errors import ConsistencyError
from .groups import DEFAULT_ELEMENT_CAP, FiniteGroup, from_permutation_generators

log = logging.getLogger(__name__)

ENV_VAR = "TBL_CACHE_DIR"
FORMAT_VERSION = 1


def canonical(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def content_key(doc) -> str:
    return hashlib.sha256(canonical(doc).encode()).hexdigest()


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "reidemeister"


class TableCache:
    """``TableCache(None)`` uses the environment variable or the user cache
    directory; ``enabled=False`` turns every lookup into a miss and every
    store into a no-op."""

    def __init__(self, directory=None, enabled: bool = True):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self.enabled = enabled
        self.hits = 0
        self.misses = 0

    def path(self, kind: str, key: str) -> Path:
        return self.directory / kind / f"{key}.json"

    def lookup(self, kind: str, key: str):
        """Payload stored under ``key``, or None on a miss or a bad entry."""
        if not self.enabled:
            return None
        p = self.path(kind, key)
        if not p.exists():
            self.misses += 1
            return None
        try:
            doc = json.loads(p.read_text())
            payload = doc["payload"]
            if doc.get("version") != FORMAT_VERSION or doc.get("checksum") != content_key(payload):
                raise ValueError("checksum mismatch")
        except (OSError, ValueError, KeyError, TypeError) as exc:
            log.warning("corrupt cache entry %s (%s); recomputing", p, exc)
            self.misses += 1
            return None
        self.hits += 1
        return payload

    def store(self, kind: str, key: str, payload) -> None:
        if not self.enabled:
            return
        p = self.path(kind, key)
        p.parent.mkdir(parents=True, exist_ok=True)
        doc = {"version": FORMAT_VERSION, "checksum": content_key(payload), "payload": payload}
        fd, tmp = tempfile.mkstemp(dir=p.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(canonical(doc))
            os.replace(tmp, p)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise


def cached_permutation_group(
    degree: int,
    generators,
    cache: TableCache | None = None,
    cap: int = DEFAULT_ELEMENT_CAP,
    name: str | None = None,
) -> FiniteGroup:
    """Closure of permutation generators, with the Cayley table cached."""
    gens = [list(g) for g in generators]
    if cache is None or not cache.enabled:
        return from_permutation_generators(degree, gens, cap=cap, name=name)
    key = content_key({"kind": "cayley", "degree": degree, "generators": gens})
    payload = cache.lookup("cayley", key)
    if payload is not None:
        try:
            G = FiniteGroup(
                payload["table"],
                payload["generator_indices"],
                labels=[tuple(x) for x in payload["labels"]],
                name=name,
            )
            if len(G.labels) <= cap:
                return G
        except Exception as exc:  # any failure here means a bad entry
            log.warning("cached Cayley table rejected (%s); recomputing", exc)
    G = from_permutation_generators(degree, gens, cap=cap, name=name)
    cache.store(
        "cayley",
        key,
        {
            "table": [list(r) for r in G.table],
            "generator_indices": list(G.generator_indices),
            "labels": [list(x) for x in G.labels],
        },
    )
    return G


def cached_character_table(G: FiniteGroup, cache: TableCache | None = None) -> CharacterTableModP:
    if cache is None or not cache.enabled:
        return character_table(G)
    key = G.content_hash()
    payload = cache.lookup("characters", key)
    if payload is not None:
        try:
            return CharacterTableModP.from_json(payload, G)
        except (ConsistencyError, KeyError, TypeError, ValueError) as exc:
            log.warning("cached character table rejected (%s); recomputing", exc)
    table = character_table(G)
    cache.store("characters", key, table.to_json(key))
    return table
