"""Word-embedding store and cosine top-k expansion.

Vectors are L2-normalized once at load, so cosine similarity reduces to a
dot product and each expansion request costs one pass over the vocabulary
matrix. Candidate scores are rounded to 6 decimals before ranking; ties at
that granularity are broken lexicographically, which pins the output order
down to the byte across platforms.
"""

from __future__ import annotations

import gzip
from typing import Optional, Sequence

import numpy as np

from .core import CandidateEntry, ExpansionRequest
from .errors import EmptyVocabularyError, NoResolvableSeedError


class EmbeddingStore:
    """Immutable vocabulary of unit-normalized dense vectors."""

    def __init__(self, tokens: Sequence[str], vectors, skipped_lines: int = 0):
        matrix = np.asarray(vectors, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[0] != len(tokens):
            raise ValueError("vectors must be one row per token")
        norms = np.linalg.norm(matrix, axis=1)
        if np.any(norms == 0.0) or not np.all(np.isfinite(norms)):
            raise ValueError("zero or non-finite vector in store")
        matrix = matrix / norms[:, None]
        matrix.flags.writeable = False

        self._tokens = list(tokens)
        self._index = {token: i for i, token in enumerate(self._tokens)}
        if len(self._index) != len(self._tokens):
            raise ValueError("duplicate token in store")
        self._matrix = matrix
        self._casefolded = [t.casefold() for t in self._tokens]
        self.skipped_lines = skipped_lines

    @property
    def dimension(self) -> int:
        return self._matrix.shape[1]

    @property
    def tokens(self) -> list:
        return list(self._tokens)

    @property
    def matrix(self):
        return self._matrix

    def __len__(self) -> int:
        return len(self._tokens)

    def __contains__(self, token: str) -> bool:
        return token in self._index

    def vector(self, token: str):
        """The stored unit vector for an exact token, or None."""
        i = self._index.get(token)
        return None if i is None else self._matrix[i]


def load_embeddings(path) -> EmbeddingStore:
    """Load a GloVe-style text file: one token then d floats per line.

    The dimension is fixed by the first parseable line. Malformed lines,
    wrong-arity lines, zero-norm vectors, non-finite values, and repeated
    tokens are skipped and counted in ``store.skipped_lines``. Files ending
    in ``.gz`` are decompressed on the fly.

    Raises EmptyVocabularyError when no line yields a usable vector; I/O
    failures propagate as OSError.
    """
    opener = gzip.open if str(path).endswith(".gz") else open
    tokens: list = []
    rows: list = []
    seen = set()
    skipped = 0
    dimension = None

    with opener(path, "rb") as fh:
        for raw in fh:
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError:
                skipped += 1
                continue
            parts = line.split()
            if len(parts) < 2:
                if parts or line.strip():
                    skipped += 1
                continue
            token = parts[0]
            try:
                vec = np.asarray(parts[1:], dtype=np.float64)
            except ValueError:
                skipped += 1
                continue
            if dimension is None:
                dimension = vec.shape[0]
            if vec.shape[0] != dimension:
                skipped += 1
                continue
            if not np.all(np.isfinite(vec)):
                skipped += 1
                continue
            norm = np.linalg.norm(vec)
            if norm == 0.0:
                skipped += 1
                continue
            if token in seen:
                skipped += 1
                continue
            seen.add(token)
            tokens.append(token)
            rows.append(vec)

    if not tokens:
        raise EmptyVocabularyError(f"no usable vectors in {path}")
    return EmbeddingStore(tokens, np.vstack(rows), skipped_lines=skipped)


def lookup_vector(store: EmbeddingStore, surface: str) -> Optional[np.ndarray]:
    """Resolve a surface to a unit vector.

    Resolution order: exact token; lowercased with internal whitespace
    collapsed to underscores; mean of the in-vocabulary lowercased tokens,
    renormalized. Returns None when nothing resolves.
    """
    vec = store.vector(surface)
    if vec is not None:
        return vec
    collapsed = "_".join(surface.lower().split())
    vec = store.vector(collapsed)
    if vec is not None:
        return vec
    parts = [store.vector(tok) for tok in surface.lower().split()]
    parts = [p for p in parts if p is not None]
    if not parts:
        return None
    mean = np.mean(parts, axis=0)
    norm = np.linalg.norm(mean)
    if norm == 0.0:
        return None
    return mean / norm


def expand(store: EmbeddingStore, request: ExpansionRequest,
           model: str = "embedding") -> list:
    """Rank the vocabulary by cosine similarity to the seed set.

    Every token not case-folding into positives or exclusions is scored
    with the max cosine over the resolved seeds; the candidate's origin is
    the lexicographically smallest seed achieving that max. Results are the
    top k by score descending, surface ascending on ties.

    Raises NoResolvableSeedError when no positive resolves to a vector.
    """
    seeds = sorted(set(request.positives))
    resolved = [(s, lookup_vector(store, s)) for s in seeds]
    resolved = [(s, v) for s, v in resolved if v is not None]
    if not resolved:
        raise NoResolvableSeedError(
            f"none of {len(seeds)} seed(s) resolve to a vector")

    excluded = {s.casefold() for s in request.positives}
    excluded.update(s.casefold() for s in request.exclusions)

    seed_matrix = np.stack([v for _, v in resolved], axis=1)  # (d, m)
    similarities = store.matrix @ seed_matrix                 # (n, m)
    raw_best = similarities.max(axis=1)

    eligible = [i for i, folded in enumerate(store._casefolded)
                if folded not in excluded]
    # Rounding to the 6-decimal grid happens before ranking so that
    # platform-level ulp noise cannot reorder the list.
    scored = [(round(float(raw_best[i]), 6), store._tokens[i], i)
              for i in eligible]
    scored.sort(key=lambda item: (-item[0], item[1]))

    out = []
    for score, token, i in scored[:request.k]:
        origin = None
        for j, (seed, _) in enumerate(resolved):
            if round(float(similarities[i, j]), 6) == score:
                origin = seed
                break
        out.append(CandidateEntry(surface=token, score=score,
                                  origin=origin, model=model))
    return out
