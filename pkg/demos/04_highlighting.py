#!/usr/bin/env python3
"""See how the current dictionary performs on a test document.

Matching is leftmost-longest and non-overlapping, with word boundaries on
by default so "bath" does not fire inside "bathroom".
"""

from seedforge import Dictionary, highlight, render_annotated

d = Dictionary()
for surface in ("kitchen", "granite countertop", "countertop", "balcony",
                "bath"):
    d = d.add(surface)
d = d.set_active("balcony", False)   # inactivated: will not be highlighted

document = (
    "South-facing apartment with a renovated kitchen, granite countertop, "
    "and a small balcony. The bathroom has a deep bath; the countertop in "
    "the hall is oak."
)

entities = d.active_positive_set()
spans = highlight(document, entities)

print("document:")
print(f"  {document}\n")
print("spans (byte offsets into UTF-8):")
encoded = document.encode("utf-8")
for s in spans:
    print(f"  [{s.start:>3}, {s.end:>3})  {encoded[s.start:s.end].decode()!r}"
          f"  -> {s.surface}")

# Note what did NOT match: "balcony" (inactive), "bathroom" (word
# boundary), and the shorter "countertop" lost to "granite countertop"
# where they overlap.

print("\nHTML rendering:")
print(render_annotated(document, spans, "html").decode("utf-8"))
