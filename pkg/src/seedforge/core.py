"""Domain model for entity dictionaries and feedback sessions.

A :class:`Dictionary` is an ordered collection of labelled entity entries
with case-folded surface uniqueness; original casing is preserved for
display. A :class:`Session` wraps a dictionary together with the pending
candidate batch and the feedback round counter.

All values here are immutable: operations return new values instead of
mutating in place. That makes batch operations naturally atomic (a failed
call leaves the caller's value untouched) and values safe to share across
threads.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from enum import Enum
from typing import Iterable, Optional, Sequence

from .errors import (
    DuplicateEntityError,
    EmptySurfaceError,
    NotFoundError,
    UnknownCandidateError,
)


class Label(Enum):
    """Entity polarity: a confirmed member or a known non-member."""

    POSITIVE = "positive"
    NEGATIVE = "negative"


class Verdict(Enum):
    """User judgment on a pending candidate."""

    ACCEPT = "accept"
    REJECT = "reject"
    SKIP = "skip"


def utc_now() -> str:
    """Current UTC time as an ISO-8601 string (session timestamps)."""
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


def _quantize(score: Optional[float]) -> Optional[float]:
    # Scores live on the 6-decimal grid so they survive the 6-decimal CSV
    # rendering bit-exactly and compare identically across platforms.
    return None if score is None else round(float(score), 6)


@dataclass(frozen=True)
class EntityEntry:
    """One dictionary row.

    ``origin`` is the seed entity (or category name) that produced the
    entry and ``model`` the expansion model id; both are absent for
    manually added entries, as is ``score``. ``iteration`` records the
    feedback round in which the entry was added.
    """

    surface: str
    label: Label
    origin: Optional[str] = None
    score: Optional[float] = None
    active: bool = True
    model: Optional[str] = None
    iteration: int = 0

    def __post_init__(self):
        surface = self.surface.strip()
        if not surface:
            raise EmptySurfaceError("entity surface is empty")
        object.__setattr__(self, "surface", surface)
        object.__setattr__(self, "origin", self.origin or None)
        object.__setattr__(self, "model", self.model or None)
        object.__setattr__(self, "score", _quantize(self.score))
        if self.score is not None and not -1.0 <= self.score <= 1.0:
            raise ValueError(f"score out of range [-1, 1]: {self.score}")
        if self.iteration < 0:
            raise ValueError("iteration must be nonnegative")


@dataclass(frozen=True)
class CandidateEntry:
    """One expansion result awaiting user feedback.

    ``origin`` is the seed entity that maximized the similarity (embedding
    models) or the category name (category models).
    """

    surface: str
    score: float
    origin: str
    model: str

    def __post_init__(self):
        surface = self.surface.strip()
        if not surface:
            raise EmptySurfaceError("candidate surface is empty")
        object.__setattr__(self, "surface", surface)
        object.__setattr__(self, "score", _quantize(self.score))
        if not -1.0 <= self.score <= 1.0:
            raise ValueError(f"score out of range [-1, 1]: {self.score}")


@dataclass(frozen=True)
class FeedbackDecision:
    """A verdict on one pending candidate."""

    candidate: CandidateEntry
    verdict: Verdict


@dataclass(frozen=True)
class ExpansionRequest:
    """Inputs for one expansion call: seed surfaces, exclusions, result size."""

    positives: tuple
    exclusions: frozenset = frozenset()
    k: int = 20

    def __post_init__(self):
        object.__setattr__(self, "positives", tuple(self.positives))
        object.__setattr__(self, "exclusions", frozenset(self.exclusions))
        if not self.positives:
            raise ValueError("positives must be nonempty")
        if self.k < 1:
            raise ValueError("k must be >= 1")


@dataclass(frozen=True)
class Dictionary:
    """Ordered entity entries with case-folded surface uniqueness."""

    entries: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        seen = set()
        for entry in self.entries:
            key = entry.surface.casefold()
            if key in seen:
                raise DuplicateEntityError(entry.surface)
            seen.add(key)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __contains__(self, surface: str) -> bool:
        return self.get(surface) is not None

    def get(self, surface: str) -> Optional[EntityEntry]:
        """Look up an entry by case-folded surface."""
        key = surface.casefold()
        for entry in self.entries:
            if entry.surface.casefold() == key:
                return entry
        return None

    def surfaces(self) -> list:
        """All surfaces, any label or active state, in insertion order."""
        return [entry.surface for entry in self.entries]

    def add(self, surface: str, label: Label = Label.POSITIVE,
            iteration: int = 0) -> "Dictionary":
        """Append a manually added entry (no origin, score, or model).

        Raises EmptySurfaceError on a blank surface and
        DuplicateEntityError on a case-folded collision.
        """
        entry = EntityEntry(surface=surface, label=label, iteration=iteration)
        if entry.surface.casefold() in self._keys():
            raise DuplicateEntityError(entry.surface)
        return Dictionary(self.entries + (entry,))

    def append_entry(self, entry: EntityEntry) -> "Dictionary":
        """Append a fully specified entry, enforcing uniqueness."""
        if entry.surface.casefold() in self._keys():
            raise DuplicateEntityError(entry.surface)
        return Dictionary(self.entries + (entry,))

    def rename(self, old_surface: str, new_surface: str) -> "Dictionary":
        """Replace a surface, preserving every other field."""
        entry = self.get(old_surface)
        if entry is None:
            raise NotFoundError(f"no entry for {old_surface!r}")
        renamed = replace(entry, surface=new_surface)
        other_keys = self._keys() - {entry.surface.casefold()}
        if renamed.surface.casefold() in other_keys:
            raise DuplicateEntityError(renamed.surface)
        return self._replace_entry(entry, renamed)

    def delete(self, surface: str) -> "Dictionary":
        """Remove an entry; the surface becomes reusable."""
        entry = self.get(surface)
        if entry is None:
            raise NotFoundError(f"no entry for {surface!r}")
        return Dictionary(tuple(e for e in self.entries if e is not entry))

    def set_active(self, surface: str, active: bool) -> "Dictionary":
        """Flip the active flag; inactive entries are ignored by expansion."""
        entry = self.get(surface)
        if entry is None:
            raise NotFoundError(f"no entry for {surface!r}")
        if entry.active == active:
            return self
        return self._replace_entry(entry, replace(entry, active=active))

    def active_positive_set(self) -> list:
        """Surfaces with label=positive and active=true, in insertion order.

        This is the seed set handed to expansion models.
        """
        return [e.surface for e in self.entries
                if e.label is Label.POSITIVE and e.active]

    def _keys(self) -> set:
        return {entry.surface.casefold() for entry in self.entries}

    def _replace_entry(self, old: EntityEntry, new: EntityEntry) -> "Dictionary":
        return Dictionary(tuple(new if e is old else e for e in self.entries))


@dataclass(frozen=True)
class Session:
    """A named dictionary plus its in-flight feedback state."""

    id: str
    name: str
    dictionary: Dictionary = Dictionary()
    pending: tuple = ()
    iteration: int = 0
    created: str = ""
    updated: str = ""

    def __post_init__(self):
        object.__setattr__(self, "pending", tuple(self.pending))
        if self.iteration < 0:
            raise ValueError("iteration must be nonnegative")
        dict_keys = {e.surface.casefold() for e in self.dictionary.entries}
        seen = set()
        for candidate in self.pending:
            key = candidate.surface.casefold()
            if key in dict_keys:
                raise DuplicateEntityError(candidate.surface)
            if key in seen:
                raise DuplicateEntityError(candidate.surface)
            seen.add(key)


def new_session(name: str) -> Session:
    """Create an empty session with a fresh opaque id."""
    now = utc_now()
    return Session(id=uuid.uuid4().hex, name=name, created=now, updated=now)


def apply_feedback(session: Session,
                   decisions: Sequence[FeedbackDecision]) -> Session:
    """Fold a batch of verdicts into the session.

    Accepted candidates become positive active entries and rejected ones
    negative active entries (kept so they are never suggested again); both
    carry the candidate's origin, score, and model, tagged with the current
    iteration. Skipped candidates are dropped from pending without a trace.
    Candidates not judged at all stay pending.

    The call is atomic: an UnknownCandidateError for any decision leaves
    the session exactly as it was. A nonempty batch bumps the iteration
    counter by one.
    """
    if not decisions:
        return session

    remaining = list(session.pending)
    judged = []
    for decision in decisions:
        if decision.candidate not in remaining:
            raise UnknownCandidateError(
                f"candidate {decision.candidate.surface!r} is not pending")
        remaining.remove(decision.candidate)
        judged.append(decision)

    dictionary = session.dictionary
    for decision in judged:
        if decision.verdict is Verdict.SKIP:
            continue
        label = Label.POSITIVE if decision.verdict is Verdict.ACCEPT else Label.NEGATIVE
        candidate = decision.candidate
        dictionary = dictionary.append_entry(EntityEntry(
            surface=candidate.surface,
            label=label,
            origin=candidate.origin,
            score=candidate.score,
            active=True,
            model=candidate.model,
            iteration=session.iteration,
        ))

    return replace(
        session,
        dictionary=dictionary,
        pending=tuple(remaining),
        iteration=session.iteration + 1,
        updated=utc_now(),
    )


def resolve_decisions(session: Session,
                      verdicts: Iterable) -> list:
    """Map (surface, verdict) pairs onto pending candidates.

    Surfaces are matched case-folded. Raises UnknownCandidateError when a
    surface has no pending candidate, so callers fail before touching state.
    """
    by_key = {c.surface.casefold(): c for c in session.pending}
    decisions = []
    for surface, verdict in verdicts:
        candidate = by_key.get(str(surface).casefold())
        if candidate is None:
            raise UnknownCandidateError(f"candidate {surface!r} is not pending")
        decisions.append(FeedbackDecision(candidate=candidate, verdict=verdict))
    return decisions
