#!/usr/bin/env python3
"""Category-based expansion: when most seeds share an ontological category,
suggest the rest of that category in one shot.

Uses the bundled 200-pair is-a knowledge base (fixtures/categories.tsv).
"""

from pathlib import Path

from seedforge import ExpansionRequest, expand_by_category, load_kb, suggest_categories

FIXTURE = Path(__file__).resolve().parent.parent / "fixtures/categories.tsv"

index = load_kb(FIXTURE)
print(f"knowledge base: {index.pair_count} pairs, {index.entity_count} "
      f"entities, {index.category_count} categories")

seeds = ["python", "java", "rust"]
print(f"\nseeds: {seeds}")

# All three seeds are programming languages, so that category gets
# support 1.0 — "most of the seeds share it" at full strength.
for s in suggest_categories(index, seeds, min_support=0.5):
    print(f"  category {s.category!r}: support {s.support:.2f} "
          f"(matched {list(s.matched_seeds)})")

# Expanding emits the category members we do not have yet, scored by the
# category's support so they are comparable with embedding scores.
request = ExpansionRequest(positives=seeds, exclusions=set(), k=10)
print("\ncandidates:")
for c in expand_by_category(index, request, min_support=0.5):
    print(f"  {c.surface:<12} score={c.score:.2f}  origin={c.origin}")

# A mixed seed set dilutes support; raise or lower min_support to taste.
mixed = ["python", "ruby", "linux"]
print(f"\nmixed seeds {mixed} at min_support=0.5:")
for s in suggest_categories(index, mixed, min_support=0.5):
    print(f"  {s.category}: {s.support:.2f}")
