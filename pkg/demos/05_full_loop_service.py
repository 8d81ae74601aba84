#!/usr/bin/env python3
"""The whole loop over HTTP: import seeds, expand, give feedback, repeat,
then export — the same API the browser dashboard consumes.

Starts an in-process server on the bundled fixtures (no separate terminal
needed), so expect a couple of seconds of load time.
"""

import tempfile
import threading
import time
from pathlib import Path

import httpx
import uvicorn

from seedforge import (
    CategoryModel,
    EmbeddingModel,
    ModelRegistry,
    SessionStore,
    create_app,
    load_embeddings,
    load_kb,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
PORT = 8912

registry = ModelRegistry()
registry.register(EmbeddingModel(
    "emb:embeddings-50d", load_embeddings(FIXTURES / "embeddings-50d.txt.gz")))
registry.register(CategoryModel(
    "cat:categories", load_kb(FIXTURES / "categories.tsv")))
app = create_app(registry, SessionStore(tempfile.mkdtemp(prefix="seedforge-")))

server = uvicorn.Server(uvicorn.Config(app, port=PORT, log_level="error"))
threading.Thread(target=server.run, daemon=True).start()
while not server.started:
    time.sleep(0.05)
base = f"http://127.0.0.1:{PORT}"

print("models:", httpx.get(f"{base}/models").json())

# Step 1 — create a session and import the initial seed set.
sid = httpx.post(f"{base}/sessions", json={"name": "job skills"}).json()["id"]
seeds = (FIXTURES / "seeds-languages.txt").read_text()
doc = httpx.post(f"{base}/sessions/{sid}/import",
                 json={"content": seeds, "format": "seeds"}).json()
print(f"session {sid[:8]} seeded with:",
      [e["surface"] for e in doc["entries"]])

for round_number in (1, 2):
    # Step 2 — send the active positives to both expansion models.
    doc = httpx.post(f"{base}/sessions/{sid}/expand", json={
        "models": ["emb:embeddings-50d", "cat:categories"], "k": 8,
    }).json()
    print(f"\nround {round_number}: {len(doc['pending'])} candidates")
    for c in doc["pending"]:
        print(f"  {c['surface']:<14} {c['score']:.4f}  origin={c['origin']:<22}"
              f" model={c['model']}")

    # Step 3 — accept the top half, reject one, skip the rest.
    pending = doc["pending"]
    decisions = []
    for i, c in enumerate(pending):
        verdict = "accept" if i < len(pending) // 2 else (
            "reject" if i == len(pending) - 1 else "skip")
        decisions.append({"surface": c["surface"], "verdict": verdict})
    doc = httpx.post(f"{base}/sessions/{sid}/feedback",
                     json={"decisions": decisions}).json()
    print(f"  -> dictionary now {len(doc['entries'])} entries,"
          f" iteration {doc['iteration']}")

# Step 4 — check the dictionary against a test document.
text = "Hiring: python or kotlin developers; scala a plus, cobol optional."
spans = httpx.post(f"{base}/sessions/{sid}/highlight",
                   json={"document": text}).json()["spans"]
print(f"\nhighlights in {text!r}:")
print("  ", [s["surface"] for s in spans])

# Step 5 — publish: download the entire table, inactives included.
csv_export = httpx.get(f"{base}/sessions/{sid}/export?format=csv").text
print("\nfinal export:")
print(csv_export)

server.should_exit = True
