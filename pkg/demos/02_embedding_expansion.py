#!/usr/bin/env python3
"""Expand a seed set with cosine top-k over the bundled embedding fixture.

Run from the repository root (loads fixtures/embeddings-50d.txt.gz,
50k tokens, d=50 — takes a second or two).
"""

from pathlib import Path

from seedforge import ExpansionRequest, expand, load_embeddings, lookup_vector

FIXTURE = Path(__file__).resolve().parent.parent / "fixtures/embeddings-50d.txt.gz"

print(f"loading {FIXTURE.name} ...")
store = load_embeddings(FIXTURE)
print(f"vocabulary: {len(store)} tokens, dimension {store.dimension}")

# Every vector is unit-normalized at load, so cosine is just a dot product.
request = ExpansionRequest(
    positives=["python", "java", "rust"],
    exclusions=set(),       # positives are always excluded automatically
    k=15,
)
candidates = expand(store, request, model="emb:embeddings-50d")

print("\nrank  surface          score     origin")
for rank, c in enumerate(candidates, start=1):
    print(f"{rank:>4}  {c.surface:<16} {c.score:.6f}  {c.origin}")

# The origin column is the seed that maximized the similarity. When an
# accepted candidate starts pulling in junk a few rounds later, the origin
# chain is how you trace where the drift started.
by_origin = {}
for c in candidates:
    by_origin.setdefault(c.origin, []).append(c.surface)
print("\ncandidates per origin seed:")
for seed, found in sorted(by_origin.items()):
    print(f"  {seed}: {', '.join(found)}")

# Multiword surfaces fall back to the mean of their in-vocabulary tokens.
vec = lookup_vector(store, "granite countertop")
print(f"\n'granite countertop' resolves: {vec is not None}")
