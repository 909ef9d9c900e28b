"""Durable record storage with uniqueness, referential integrity and cascades.

Two implementations share one contract:

* :class:`MemoryStore` keeps everything in process memory.
* :class:`FileStore` adds an append-only JSONL journal. Each committed
  operation is one journal line; reopening a store replays the journal, so a
  clean shutdown and restart reproduce the exact same state (and the exact
  same ``dump()`` bytes).

All operations take the store lock, so each create/update/delete/query is
atomic and isolated: readers never observe a partially applied cascade, and
unique-key checks happen inside the same critical section as the write.

Records are plain JSON-shaped dicts. The store assigns ``id`` and
``created_at`` on create and trusts that records already passed domain
validation; it enforces only uniqueness and referential integrity.
"""

from __future__ import annotations

import copy
import json
import os
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Callable, Iterable, NamedTuple

from .errors import DuplicateKey, ImmutableFieldChanged, IntegrityViolation, NotFound
from .model import Page, paginate

KINDS = ("user", "project", "membership", "snippet", "session")

# Fields that may never change across an update, when present on the record.
IMMUTABLE_FIELDS = ("id", "created_at", "created_by", "owner_id")

Clock = Callable[[], datetime]


def utc_now() -> datetime:
    return datetime.now(timezone.utc)


class RecordKey(NamedTuple):
    kind: str
    id: str


@dataclass
class StoreStats:
    """Live (non-deleted) record counts per kind."""

    counts: dict[str, int]


def _unique_keys(kind: str, record: dict) -> Iterable[tuple[str, object]]:
    """Yield (constraint name, key value) pairs the record occupies.

    User emails compare case-insensitively.
    """
    if kind == "user":
        yield "user.email", record["personal"]["email"].casefold()
    elif kind == "membership":
        yield "membership.project_user", (record["project_id"], record["user_id"])
    elif kind == "session":
        yield "session.token", record["token"]


def _references(kind: str, record: dict, *, on_update: bool) -> Iterable[RecordKey]:
    """Yield keys the record requires to exist.

    ``created_by`` is only checked at creation time: a user-delete cascade may
    legitimately leave it dangling on a surviving project, and the field is
    immutable anyway.
    """
    if kind == "project":
        if not on_update:
            yield RecordKey("user", record["created_by"])
        for uid in record["people_in_charge"]:
            yield RecordKey("user", uid)
    elif kind == "membership":
        yield RecordKey("project", record["project_id"])
        yield RecordKey("user", record["user_id"])
    elif kind == "snippet":
        yield RecordKey("user", record["owner_id"])
    elif kind == "session":
        yield RecordKey("user", record["user_id"])


class MemoryStore:
    """In-memory implementation of the store contract."""

    def __init__(self, clock: Clock | None = None):
        self._clock: Clock = clock or utc_now
        self._lock = threading.RLock()
        self._records: dict[str, dict[str, dict]] = {k: {} for k in KINDS}
        self._counters: dict[str, int] = {k: 0 for k in KINDS}

    # -- contract ----------------------------------------------------------

    def create(self, kind: str, record: dict) -> RecordKey:
        self._check_kind(kind)
        with self._lock:
            stored = copy.deepcopy(record)
            self._check_unique(kind, stored, exclude_id=None)
            self._check_references(kind, stored, on_update=False)
            # The counter advances only on success, and never rolls back on
            # delete: ids are never reused within a store lifetime.
            self._counters[kind] += 1
            stored["id"] = f"{kind}-{self._counters[kind]:08d}"
            stored["created_at"] = self._clock().isoformat()
            self._records[kind][stored["id"]] = stored
            self._journal({"op": "create", "kind": kind, "record": stored})
            return RecordKey(kind, stored["id"])

    def get(self, key: RecordKey) -> dict | None:
        self._check_kind(key.kind)
        with self._lock:
            record = self._records[key.kind].get(key.id)
            return copy.deepcopy(record) if record is not None else None

    def update(self, key: RecordKey, record: dict) -> None:
        self._check_kind(key.kind)
        with self._lock:
            old = self._records[key.kind].get(key.id)
            if old is None:
                raise NotFound(f"{key.kind} {key.id} does not exist")
            stored = copy.deepcopy(record)
            stored.setdefault("id", key.id)
            stored.setdefault("created_at", old["created_at"])
            for name in IMMUTABLE_FIELDS:
                if name in old and stored.get(name) != old[name]:
                    raise ImmutableFieldChanged(f"{name} may not change")
            self._check_unique(key.kind, stored, exclude_id=key.id)
            self._check_references(key.kind, stored, on_update=True)
            self._records[key.kind][key.id] = stored
            self._journal(
                {"op": "update", "kind": key.kind, "id": key.id, "record": stored}
            )

    def delete(self, key: RecordKey) -> None:
        self._check_kind(key.kind)
        with self._lock:
            if key.id not in self._records[key.kind]:
                raise NotFound(f"{key.kind} {key.id} does not exist")
            self._cascade_delete(key.kind, key.id)
            self._journal({"op": "delete", "kind": key.kind, "id": key.id})

    def query(
        self,
        kind: str,
        eq: dict[str, object] | None = None,
        contains: dict[str, str] | None = None,
        page_number: int = 1,
        page_size: int = 10,
    ) -> Page:
        """Filter by field equality / keyword containment, then paginate.

        Results are ordered by (created_at, id) ascending so pagination is
        deterministic.
        """
        with self._lock:
            matches = [
                copy.deepcopy(r)
                for r in self._ordered(kind)
                if _matches(r, eq or {}, contains or {})
            ]
        return paginate(matches, page_number, page_size)

    def scan(self, kind: str) -> list[dict]:
        """All live records of a kind, ordered by (created_at, id)."""
        with self._lock:
            return [copy.deepcopy(r) for r in self._ordered(kind)]

    def stats(self) -> StoreStats:
        with self._lock:
            return StoreStats({k: len(self._records[k]) for k in KINDS})

    def dump(self) -> str:
        """Canonical JSON document of the full store, stable key order.

        Equal states always dump to byte-identical text, which tests and the
        backup path rely on.
        """
        with self._lock:
            document = {
                "counters": dict(self._counters),
                "records": {k: dict(self._records[k]) for k in KINDS},
            }
            return (
                json.dumps(document, sort_keys=True, ensure_ascii=False, indent=2)
                + "\n"
            )

    def close(self) -> None:
        pass

    # -- internals ---------------------------------------------------------

    def _check_kind(self, kind: str) -> None:
        if kind not in KINDS:
            raise ValueError(f"unknown record kind {kind!r}")

    def _ordered(self, kind: str) -> list[dict]:
        self._check_kind(kind)
        return sorted(
            self._records[kind].values(), key=lambda r: (r["created_at"], r["id"])
        )

    def _check_unique(self, kind: str, record: dict, exclude_id: str | None) -> None:
        for constraint, value in _unique_keys(kind, record):
            for other in self._records[kind].values():
                if other["id"] == exclude_id:
                    continue
                for other_constraint, other_value in _unique_keys(kind, other):
                    if other_constraint == constraint and other_value == value:
                        raise DuplicateKey(
                            f"unique constraint {constraint} violated",
                            constraint=constraint,
                        )

    def _check_references(self, kind: str, record: dict, *, on_update: bool) -> None:
        for ref in _references(kind, record, on_update=on_update):
            if ref.id not in self._records[ref.kind]:
                raise IntegrityViolation(
                    f"{kind} references absent {ref.kind} {ref.id}"
                )

    def _cascade_delete(self, kind: str, id: str) -> None:
        """Remove a record and everything that must go with it.

        Deleting a user removes their memberships, snippets and sessions, and
        removes them from every people_in_charge list; a project whose list
        would become empty falls back to its creator if that user is still
        alive, otherwise the project itself is deleted. Deleting a project
        removes its memberships.
        """
        del self._records[kind][id]
        if kind == "user":
            self._remove_where("membership", lambda r: r["user_id"] == id)
            self._remove_where("snippet", lambda r: r["owner_id"] == id)
            self._remove_where("session", lambda r: r["user_id"] == id)
            for project in self._ordered("project"):
                if id not in project["people_in_charge"]:
                    continue
                remaining = [u for u in project["people_in_charge"] if u != id]
                if remaining:
                    project["people_in_charge"] = remaining
                    self._records["project"][project["id"]] = project
                elif project["created_by"] in self._records["user"]:
                    project["people_in_charge"] = [project["created_by"]]
                    self._records["project"][project["id"]] = project
                else:
                    self._cascade_delete("project", project["id"])
        elif kind == "project":
            self._remove_where("membership", lambda r: r["project_id"] == id)

    def _remove_where(self, kind: str, predicate) -> None:
        doomed = [r["id"] for r in self._records[kind].values() if predicate(r)]
        for record_id in doomed:
            del self._records[kind][record_id]

    def _journal(self, entry: dict) -> None:
        pass


def _field(record: dict, path: str):
    value = record
    for part in path.split("."):
        if not isinstance(value, dict) or part not in value:
            return None
        value = value[part]
    return value


def _matches(record: dict, eq: dict, contains: dict) -> bool:
    for path, expected in eq.items():
        if _field(record, path) != expected:
            return False
    for path, keyword in contains.items():
        value = _field(record, path)
        needle = keyword.casefold()
        if isinstance(value, str):
            if needle not in value.casefold():
                return False
        elif isinstance(value, list):
            if not any(
                isinstance(v, str) and needle in v.casefold() for v in value
            ):
                return False
        else:
            return False
    return True


class FileStore(MemoryStore):
    """Durable store: MemoryStore plus an append-only JSONL journal.

    One line per committed operation. Replay re-executes deletes through the
    same cascade logic, so a journal written by one process produces an
    identical store in the next. A torn final line (crash mid-write) is
    detected and truncated on open.
    """

    def __init__(self, path: str, clock: Clock | None = None, fsync: bool = True):
        super().__init__(clock=clock)
        self._path = str(path)
        self._fsync = fsync
        self._replay()
        self._file = open(self._path, "a", encoding="utf-8")

    def _replay(self) -> None:
        if not os.path.exists(self._path):
            return
        good_bytes = 0
        with open(self._path, "rb") as fh:
            for raw in fh:
                try:
                    entry = json.loads(raw.decode("utf-8"))
                except (UnicodeDecodeError, json.JSONDecodeError):
                    break
                self._apply(entry)
                good_bytes += len(raw)
        if good_bytes < os.path.getsize(self._path):
            with open(self._path, "r+b") as fh:
                fh.truncate(good_bytes)

    def _apply(self, entry: dict) -> None:
        op = entry["op"]
        if op == "create":
            record = entry["record"]
            kind = entry["kind"]
            self._records[kind][record["id"]] = record
            number = int(record["id"].rsplit("-", 1)[1])
            self._counters[kind] = max(self._counters[kind], number)
        elif op == "update":
            self._records[entry["kind"]][entry["id"]] = entry["record"]
        elif op == "delete":
            self._cascade_delete(entry["kind"], entry["id"])
        else:
            raise ValueError(f"unknown journal op {op!r}")

    def _journal(self, entry: dict) -> None:
        line = json.dumps(entry, sort_keys=True, ensure_ascii=False)
        self._file.write(line + "\n")
        self._file.flush()
        if self._fsync:
            os.fsync(self._file.fileno())

    def close(self) -> None:
        with self._lock:
            if not self._file.closed:
                self._file.flush()
                os.fsync(self._file.fileno())
                self._file.close()


def open_store(
    path: str | None, clock: Clock | None = None, fsync: bool = True
) -> MemoryStore:
    """Open a durable store at ``path``, or a fresh in-memory one for None."""
    if path is None:
        return MemoryStore(clock=clock)
    return FileStore(path, clock=clock, fsync=fsync)
