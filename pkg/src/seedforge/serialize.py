"""Dictionary export/import and session JSON codecs.

Wire formats:

* CSV — UTF-8, header ``surface,label,origin,score,active,model,iteration``,
  RFC-4180 quoting, empty string for absent optionals, scores rendered with
  6 decimal places.
* JSON — ``{"entries": [{...}]}`` with the same field names; absent
  optionals serialized as null.
* Plain seeds — one surface per line, ``#`` comments and blank lines
  ignored; imported as positive active entries.

Export and import are exact inverses on any dictionary the package can
produce (entry scores already sit on the 6-decimal grid).
"""

from __future__ import annotations

import csv
import io
import json
from typing import Optional

from .core import CandidateEntry, Dictionary, EntityEntry, Label, Session
from .errors import EmptySurfaceError, ParseError

CSV_COLUMNS = ("surface", "label", "origin", "score", "active", "model", "iteration")

EXPORT_FORMATS = ("csv", "json")
IMPORT_FORMATS = ("csv", "json", "seeds")


def format_score(score: Optional[float]) -> str:
    return "" if score is None else f"{score:.6f}"


def export_dictionary(dictionary: Dictionary, fmt: str) -> bytes:
    """Serialize every entry — all labels, all active states — in insertion order."""
    if fmt == "csv":
        return _export_csv(dictionary)
    if fmt == "json":
        return _export_json(dictionary)
    raise ValueError(f"unknown export format: {fmt!r}")


def import_dictionary(data: bytes, fmt: str) -> Dictionary:
    """Parse exported CSV/JSON or a plain seed list into a Dictionary.

    Raises ParseError (with the offending line or byte offset) on malformed
    input and DuplicateEntityError on a case-folded collision within the file.
    """
    if fmt == "csv":
        return _import_csv(data)
    if fmt == "json":
        return _import_json(data)
    if fmt == "seeds":
        return _import_seeds(data)
    raise ValueError(f"unknown import format: {fmt!r}")


def _export_csv(dictionary: Dictionary) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(CSV_COLUMNS)
    for e in dictionary.entries:
        writer.writerow([
            e.surface,
            e.label.value,
            e.origin or "",
            format_score(e.score),
            "true" if e.active else "false",
            e.model or "",
            str(e.iteration),
        ])
    return buf.getvalue().encode("utf-8")


def _export_json(dictionary: Dictionary) -> bytes:
    doc = {"entries": [entry_to_dict(e) for e in dictionary.entries]}
    return (json.dumps(doc, ensure_ascii=False, indent=2) + "\n").encode("utf-8")


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise ParseError(f"not valid UTF-8: {exc.reason}", offset=exc.start) from exc


def _import_csv(data: bytes) -> Dictionary:
    reader = csv.reader(io.StringIO(_decode(data), newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty file, expected CSV header", line=1) from None
    if tuple(h.strip() for h in header) != CSV_COLUMNS:
        raise ParseError(
            f"bad header, expected {','.join(CSV_COLUMNS)}", line=1)

    entries = []
    for row in reader:
        line = reader.line_num
        if not row:
            continue
        if len(row) != len(CSV_COLUMNS):
            raise ParseError(
                f"expected {len(CSV_COLUMNS)} fields, got {len(row)}", line=line)
        surface, label_raw, origin, score_raw, active_raw, model, iter_raw = row
        entries.append(_build_entry(
            surface=surface,
            label_raw=label_raw,
            origin=origin or None,
            score_raw=score_raw or None,
            active_raw=active_raw,
            model=model or None,
            iter_raw=iter_raw,
            line=line,
        ))
    return Dictionary(tuple(entries))


def _build_entry(surface, label_raw, origin, score_raw, active_raw, model,
                 iter_raw, line) -> EntityEntry:
    try:
        label = Label(label_raw.strip())
    except ValueError:
        raise ParseError(f"bad label {label_raw!r}", line=line) from None

    score = None
    if score_raw is not None:
        try:
            score = float(score_raw)
        except ValueError:
            raise ParseError(f"bad score {score_raw!r}", line=line) from None

    active_norm = active_raw.strip().lower()
    if active_norm not in ("true", "false"):
        raise ParseError(f"bad active flag {active_raw!r}", line=line)

    try:
        iteration = int(iter_raw)
    except ValueError:
        raise ParseError(f"bad iteration {iter_raw!r}", line=line) from None

    try:
        return EntityEntry(
            surface=surface,
            label=label,
            origin=origin,
            score=score,
            active=active_norm == "true",
            model=model,
            iteration=iteration,
        )
    except (EmptySurfaceError, ValueError) as exc:
        raise ParseError(str(exc), line=line) from exc


def _import_json(data: bytes) -> Dictionary:
    text = _decode(data)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc.msg}", line=exc.lineno,
                         offset=exc.pos) from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("entries"), list):
        raise ParseError('expected an object with an "entries" list')
    entries = []
    for i, raw in enumerate(doc["entries"]):
        if not isinstance(raw, dict):
            raise ParseError(f"entry {i} is not an object")
        try:
            entries.append(entry_from_dict(raw))
        except (KeyError, TypeError, EmptySurfaceError, ValueError) as exc:
            raise ParseError(f"entry {i}: {exc}") from exc
    return Dictionary(tuple(entries))


def _import_seeds(data: bytes) -> Dictionary:
    entries = []
    for line in _decode(data).splitlines():
        surface = line.strip()
        if not surface or surface.startswith("#"):
            continue
        entries.append(EntityEntry(surface=surface, label=Label.POSITIVE))
    return Dictionary(tuple(entries))


# --- JSON codecs shared by the export format, the session store, and the
# --- HTTP service.

def entry_to_dict(entry: EntityEntry) -> dict:
    return {
        "surface": entry.surface,
        "label": entry.label.value,
        "origin": entry.origin,
        "score": entry.score,
        "active": entry.active,
        "model": entry.model,
        "iteration": entry.iteration,
    }


def entry_from_dict(raw: dict) -> EntityEntry:
    label_raw = raw["label"]
    try:
        label = Label(label_raw)
    except ValueError:
        raise ValueError(f"bad label {label_raw!r}") from None
    score = raw.get("score")
    if score is not None and not isinstance(score, (int, float)):
        raise ValueError(f"bad score {score!r}")
    active = raw.get("active", True)
    if not isinstance(active, bool):
        raise ValueError(f"bad active flag {active!r}")
    iteration = raw.get("iteration", 0)
    if not isinstance(iteration, int) or isinstance(iteration, bool):
        raise ValueError(f"bad iteration {iteration!r}")
    return EntityEntry(
        surface=str(raw["surface"]),
        label=label,
        origin=raw.get("origin"),
        score=score,
        active=active,
        model=raw.get("model"),
        iteration=iteration,
    )


def candidate_to_dict(candidate: CandidateEntry) -> dict:
    return {
        "surface": candidate.surface,
        "score": candidate.score,
        "origin": candidate.origin,
        "model": candidate.model,
    }


def candidate_from_dict(raw: dict) -> CandidateEntry:
    return CandidateEntry(
        surface=str(raw["surface"]),
        score=float(raw["score"]),
        origin=str(raw["origin"]),
        model=str(raw["model"]),
    )


def session_to_dict(session: Session) -> dict:
    return {
        "id": session.id,
        "name": session.name,
        "iteration": session.iteration,
        "created": session.created,
        "updated": session.updated,
        "entries": [entry_to_dict(e) for e in session.dictionary.entries],
        "pending": [candidate_to_dict(c) for c in session.pending],
    }


def session_from_dict(doc: dict) -> Session:
    return Session(
        id=str(doc["id"]),
        name=str(doc["name"]),
        dictionary=Dictionary(tuple(entry_from_dict(e) for e in doc["entries"])),
        pending=tuple(candidate_from_dict(c) for c in doc["pending"]),
        iteration=int(doc["iteration"]),
        created=str(doc["created"]),
        updated=str(doc["updated"]),
    )
