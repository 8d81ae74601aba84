"""Category-based expansion over a knowledge base of is-a pairs.

Seeds are matched case-folded against KB entities. A category qualifies
when the fraction of in-KB seeds belonging to it (its *support*) reaches
``min_support``; members of qualifying categories become candidates scored
by that support, so category candidates live on the same [0, 1] scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple

from .core import CandidateEntry, ExpansionRequest
from .errors import EmptyIndexError, ParseError

DEFAULT_MIN_SUPPORT = 0.5


@dataclass(frozen=True)
class CategorySuggestion:
    """A category shared by part of the seed set."""

    category: str
    support: float
    matched_seeds: tuple


class CategoryIndex:
    """Bidirectional entity/category map built from is-a pairs."""

    def __init__(self, pairs: Iterable[Tuple[str, str]]):
        self._entity_to_categories: dict = {}
        self._category_to_entities: dict = {}
        self._folded_entities: dict = {}
        count = 0
        for entity, category in pairs:
            entity = entity.strip()
            category = category.strip()
            if not entity or not category:
                raise ValueError("empty entity or category name")
            cats = self._entity_to_categories.setdefault(entity, set())
            if category in cats:
                continue
            cats.add(category)
            self._category_to_entities.setdefault(category, set()).add(entity)
            self._folded_entities.setdefault(entity.casefold(), set()).add(entity)
            count += 1
        self._pair_count = count

    @property
    def pair_count(self) -> int:
        return self._pair_count

    @property
    def entity_count(self) -> int:
        return len(self._entity_to_categories)

    @property
    def category_count(self) -> int:
        return len(self._category_to_entities)

    def categories_of(self, entity: str) -> set:
        """Categories of an exact entity name."""
        return set(self._entity_to_categories.get(entity, ()))

    def categories_of_folded(self, surface: str) -> set:
        """Categories of every KB entity matching the surface case-folded."""
        out: set = set()
        for entity in self._folded_entities.get(surface.casefold(), ()):
            out.update(self._entity_to_categories[entity])
        return out

    def members_of(self, category: str) -> set:
        return set(self._category_to_entities.get(category, ()))

    def __contains__(self, surface: str) -> bool:
        return surface.casefold() in self._folded_entities


def load_kb(path) -> CategoryIndex:
    """Load is-a pairs from a two-column TSV (``entity<TAB>category``).

    ``#`` comment lines and blank lines are ignored; duplicate pairs
    collapse. Raises ParseError (with the line number) on malformed rows
    and EmptyIndexError when the file yields no pairs.
    """
    pairs = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            fields = [f.strip() for f in line.rstrip("\n").rstrip("\r").split("\t")]
            if len(fields) != 2:
                raise ParseError(
                    f"expected 2 tab-separated columns, got {len(fields)}",
                    line=lineno)
            entity, category = fields
            if not entity or not category:
                raise ParseError("empty entity or category name", line=lineno)
            pairs.append((entity, category))
    if not pairs:
        raise EmptyIndexError(f"no is-a pairs in {path}")
    return CategoryIndex(pairs)


def suggest_categories(index: CategoryIndex, positives: Iterable[str],
                       min_support: float = DEFAULT_MIN_SUPPORT) -> list:
    """Categories of in-KB seeds with support >= min_support.

    Support is measured against seeds *found in the KB*, so out-of-KB seeds
    do not dilute the evidence. Returns suggestions ranked by support
    descending then category ascending; empty when no seed is in the KB.
    """
    if not 0.0 < min_support <= 1.0:
        raise ValueError("min_support must be in (0, 1]")

    seeds = []
    seen = set()
    for seed in positives:
        key = seed.casefold()
        if key not in seen:
            seen.add(key)
            seeds.append(seed)

    found = [s for s in seeds if s in index]
    if not found:
        return []

    matched: dict = {}
    for seed in found:
        for category in index.categories_of_folded(seed):
            matched.setdefault(category, []).append(seed)

    suggestions = []
    for category, matched_seeds in matched.items():
        support = len(matched_seeds) / len(found)
        if support >= min_support:
            suggestions.append(CategorySuggestion(
                category=category,
                support=support,
                matched_seeds=tuple(matched_seeds)))
    suggestions.sort(key=lambda s: (-s.support, s.category))
    return suggestions


def expand_by_category(index: CategoryIndex, request: ExpansionRequest,
                       min_support: float = DEFAULT_MIN_SUPPORT,
                       model: str = "category") -> list:
    """Emit members of qualifying categories as candidates.

    Categories are visited in suggestion rank order with members ascending
    inside each; a surface already emitted for a higher-support category is
    not emitted again. Candidates case-folding into positives or exclusions
    are dropped, and the list is truncated to k.
    """
    suggestions = suggest_categories(index, request.positives, min_support)
    excluded = {s.casefold() for s in request.positives}
    excluded.update(s.casefold() for s in request.exclusions)

    out = []
    emitted = set()
    for suggestion in suggestions:
        for member in sorted(index.members_of(suggestion.category)):
            key = member.casefold()
            if key in excluded or key in emitted:
                continue
            emitted.add(key)
            out.append(CandidateEntry(
                surface=member,
                score=suggestion.support,
                origin=suggestion.category,
                model=model))
            if len(out) == request.k:
                return out
    return out
