"""Filesystem persistence for sessions: one JSON document per session id."""

from __future__ import annotations

import json
import os
import re
import tempfile
from pathlib import Path

from .core import Session
from .errors import NotFoundError, StorageError
from .serialize import session_from_dict, session_to_dict

_ID_PATTERN = re.compile(r"^[A-Za-z0-9_-]+$")


class SessionStore:
    """Saves and loads sessions under a data directory.

    Saves overwrite (last write wins) and are atomic at the file level:
    the document is written to a temp file and renamed into place.
    """

    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def path_for(self, session_id: str) -> Path:
        if not _ID_PATTERN.match(session_id):
            raise NotFoundError(f"no session {session_id!r}")
        return self.root / f"{session_id}.json"

    def save(self, session: Session) -> None:
        path = self.path_for(session.id)
        payload = json.dumps(session_to_dict(session), ensure_ascii=False, indent=2)
        try:
            fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    fh.write(payload)
                os.replace(tmp, path)
            finally:
                if os.path.exists(tmp):
                    os.unlink(tmp)
        except OSError as exc:
            raise StorageError(f"cannot save session {session.id}: {exc}") from exc

    def load(self, session_id: str) -> Session:
        path = self.path_for(session_id)
        if not path.exists():
            raise NotFoundError(f"no session {session_id!r}")
        try:
            raw = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise StorageError(f"cannot read session {session_id}: {exc}") from exc
        try:
            return session_from_dict(json.loads(raw))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise StorageError(
                f"corrupt session document {path.name}: {exc}") from exc

    def exists(self, session_id: str) -> bool:
        try:
            return self.path_for(session_id).exists()
        except NotFoundError:
            return False

    def list_ids(self) -> list:
        return sorted(p.stem for p in self.root.glob("*.json"))
