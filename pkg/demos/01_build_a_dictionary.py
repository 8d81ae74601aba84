#!/usr/bin/env python3
"""Build an entity dictionary by hand: add, rename, inactivate, export.

The dictionary is a value type — every operation returns a new dictionary,
so a failed call can never leave you with half-applied state.
"""

from seedforge import Dictionary, Label, export_dictionary, import_dictionary

# Start from a plain seed list, the way a session usually begins.
seeds = b"""\
# housing equipment seeds
kitchen
bath
balcony
"""
d = import_dictionary(seeds, "seeds")
print("imported:", d.surfaces())

# Direct edits: add a negative example, rename, inactivate.
d = d.add("mortgage", Label.NEGATIVE)
d = d.rename("bath", "bathtub")
d = d.set_active("balcony", False)

print("\nactive positive set (what expansion models will see):")
print(" ", d.active_positive_set())

# Inactive and negative entries still export — the whole table does.
print("\nCSV export:")
print(export_dictionary(d, "csv").decode("utf-8"))

# The export formats round-trip exactly.
assert import_dictionary(export_dictionary(d, "json"), "json") == d
print("json round-trip: OK")

# Case-folded uniqueness guards every mutation.
try:
    d.add("Bathtub")
except Exception as exc:
    print(f"\nduplicate rejected: {exc}")
