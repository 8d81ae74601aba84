"""Finds dictionary entities in documents and renders annotation spans.

Matching is leftmost-longest and non-overlapping: the scan moves left to
right, the longest entity matching at a position wins, and matching
resumes after the match. Case-insensitive matching runs over a per-
character case-folded copy of the document with every fold mapped back to
original character boundaries, so a match may never cover a fraction of a
document character (relevant for folds that expand, like German sharp s).

Span offsets are byte offsets into the UTF-8 encoding of the document and
always land on character boundaries.
"""

from __future__ import annotations

import html as html_mod
import json
from dataclasses import dataclass

from .errors import InvalidSpanError


@dataclass(frozen=True)
class HighlightSpan:
    """One matched occurrence: [start, end) bytes in UTF-8, plus the entity."""

    start: int
    end: int
    surface: str


def highlight(document: str, entities, *, case_insensitive: bool = True,
              word_boundary: bool = True) -> list:
    """Locate entity occurrences in the document.

    With word_boundary on (the default), both edges of a match must abut a
    non-alphanumeric character or the document edge, which stops "bath"
    from firing inside "bathroom". Earlier-listed entities win when two
    fold to the same text.
    """
    if not document or not entities:
        return []

    chars = list(document)
    folds = [c.casefold() for c in chars] if case_insensitive else chars

    # folded-offset bookkeeping: where each original char's fold begins
    fold_start = []
    total = 0
    for fold in folds:
        fold_start.append(total)
        total += len(fold)
    folded = "".join(folds)
    char_at = {start: i for i, start in enumerate(fold_start)}

    byte_at = [0]
    for ch in chars:
        byte_at.append(byte_at[-1] + len(ch.encode("utf-8")))

    by_first: dict = {}
    seen_keys = set()
    for surface in entities:
        key = surface.casefold() if case_insensitive else surface
        if not key or key in seen_keys:
            continue
        seen_keys.add(key)
        by_first.setdefault(key[0], []).append((key, surface))
    for bucket in by_first.values():
        bucket.sort(key=lambda item: -len(item[0]))

    spans = []
    j = 0
    n_chars = len(chars)
    n_folded = len(folded)
    while j < n_folded:
        start_char = char_at.get(j)
        if start_char is None:
            j += 1
            continue
        bucket = by_first.get(folded[j])
        hit_end_char = None
        hit_surface = None
        if bucket:
            for key, surface in bucket:
                end_f = j + len(key)
                if end_f > n_folded or not folded.startswith(key, j):
                    continue
                if end_f == n_folded:
                    end_char = n_chars
                else:
                    end_char = char_at.get(end_f)
                    if end_char is None:
                        continue  # would split a multi-char fold
                if word_boundary:
                    if start_char > 0 and chars[start_char - 1].isalnum():
                        continue
                    if end_char < n_chars and chars[end_char].isalnum():
                        continue
                hit_end_char = end_char
                hit_surface = surface
                break
        if hit_end_char is not None:
            spans.append(HighlightSpan(
                start=byte_at[start_char],
                end=byte_at[hit_end_char],
                surface=hit_surface))
            j = fold_start[hit_end_char] if hit_end_char < n_chars else n_folded
        else:
            j += 1
    return spans


def render_annotated(document: str, spans, fmt: str = "html") -> bytes:
    """Serialize a highlighted document.

    ``html`` wraps each span in ``<mark data-entity="...">`` with all other
    text entity-escaped; ``json`` emits the span list plus the document.
    Raises InvalidSpanError when the spans do not fit the document.
    """
    encoded = document.encode("utf-8")
    _validate_spans(encoded, spans)

    if fmt == "json":
        doc = {
            "document": document,
            "spans": [{"start": s.start, "end": s.end, "surface": s.surface}
                      for s in spans],
        }
        return json.dumps(doc, ensure_ascii=False).encode("utf-8")

    if fmt == "html":
        pieces = []
        cursor = 0
        for span in spans:
            pieces.append(html_mod.escape(encoded[cursor:span.start].decode("utf-8")))
            pieces.append('<mark data-entity="%s">%s</mark>' % (
                html_mod.escape(span.surface),
                html_mod.escape(encoded[span.start:span.end].decode("utf-8"))))
            cursor = span.end
        pieces.append(html_mod.escape(encoded[cursor:].decode("utf-8")))
        return "".join(pieces).encode("utf-8")

    raise ValueError(f"unknown render format: {fmt!r}")


def _is_char_boundary(encoded: bytes, offset: int) -> bool:
    if offset == 0 or offset == len(encoded):
        return True
    return not 0x80 <= encoded[offset] < 0xC0


def _validate_spans(encoded: bytes, spans) -> None:
    previous_end = 0
    for span in spans:
        if not (0 <= span.start < span.end <= len(encoded)):
            raise InvalidSpanError(
                f"span [{span.start}, {span.end}) outside document "
                f"of {len(encoded)} bytes")
        if span.start < previous_end:
            raise InvalidSpanError(
                f"span [{span.start}, {span.end}) overlaps or is out of order")
        if not _is_char_boundary(encoded, span.start) or \
                not _is_char_boundary(encoded, span.end):
            raise InvalidSpanError(
                f"span [{span.start}, {span.end}) splits a character")
        previous_end = span.end
