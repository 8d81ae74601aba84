"""Exception types shared across the seedforge package."""

from typing import Optional


class SeedforgeError(Exception):
    """Base class for all seedforge domain errors."""


class EmptySurfaceError(SeedforgeError):
    """Raised when an entity surface is empty after trimming."""


class DuplicateEntityError(SeedforgeError):
    """Raised when a surface collides (case-folded) with an existing entry."""

    def __init__(self, surface: str):
        super().__init__(f"duplicate entity: {surface!r}")
        self.surface = surface


class NotFoundError(SeedforgeError):
    """Raised when a requested entity or session does not exist."""


class UnknownCandidateError(SeedforgeError):
    """Raised when feedback references a candidate that is not pending."""


class ParseError(SeedforgeError):
    """Raised on malformed import data; carries the offending location."""

    def __init__(self, message: str, line: Optional[int] = None,
                 offset: Optional[int] = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte {offset}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(f"{message}{suffix}")
        self.line = line
        self.offset = offset


class StorageError(SeedforgeError):
    """Raised when session persistence fails at the I/O level."""


class EmptyVocabularyError(SeedforgeError):
    """Raised when an embedding file yields no usable vectors."""


class NoResolvableSeedError(SeedforgeError):
    """Raised when no positive seed can be mapped to an embedding vector."""


class EmptyIndexError(SeedforgeError):
    """Raised when a knowledge-base file yields no is-a pairs."""


class InvalidSpanError(SeedforgeError):
    """Raised when highlight spans do not fit the target document."""
