import socket
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES = REPO_ROOT / "fixtures"

# Small deterministic resources for service/CLI tests: three clusters so
# expansions return something.
TOY_VOCAB_SIZE = 90
TOY_DIM = 8


def _toy_embedding_lines():
    rng = np.random.default_rng(4242)
    centers = rng.normal(size=(3, TOY_DIM))
    words = ["bath", "kitchen", "balcony", "sauna", "countertop", "garage",
             "python", "java", "rust", "ruby", "linux", "debian",
             "sushi", "ramen", "pasta", "curry"]
    words += [f"w{i:03d}" for i in range(TOY_VOCAB_SIZE - len(words))]
    lines = []
    for i, word in enumerate(words):
        vec = centers[i % 3] + 0.5 * rng.normal(size=TOY_DIM)
        lines.append(word + " " + " ".join(f"{x:.4f}" for x in vec))
    return lines


TOY_KB_ROWS = [
    "# toy knowledge base",
    "python\tprogramming_language",
    "java\tprogramming_language",
    "rust\tprogramming_language",
    "ruby\tprogramming_language",
    "go\tprogramming_language",
    "kotlin\tprogramming_language",
    "python\tscripting_language",
    "ruby\tscripting_language",
    "linux\toperating_system",
    "debian\toperating_system",
    "fedora\toperating_system",
    "bath\thousing_equipment",
    "kitchen\thousing_equipment",
    "balcony\thousing_equipment",
    "sauna\thousing_equipment",
    "jacuzzi\thousing_equipment",
    "fireplace\thousing_equipment",
]


@pytest.fixture(scope="session")
def toy_embeddings_path(tmp_path_factory) -> Path:
    path = tmp_path_factory.mktemp("resources") / "toy-vectors.txt"
    path.write_text("\n".join(_toy_embedding_lines()) + "\n", encoding="utf-8")
    return path


@pytest.fixture(scope="session")
def toy_kb_path(tmp_path_factory) -> Path:
    path = tmp_path_factory.mktemp("resources") / "toy-kb.tsv"
    path.write_text("\n".join(TOY_KB_ROWS) + "\n", encoding="utf-8")
    return path


def free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


@pytest.fixture(scope="session")
def live_server(toy_embeddings_path, toy_kb_path, tmp_path_factory):
    """The real thing: `seedforge serve` in a subprocess, torn down after."""
    import httpx

    port = free_port()
    data_dir = tmp_path_factory.mktemp("sessions")
    proc = subprocess.Popen(
        [sys.executable, "-m", "seedforge", "serve",
         "--embeddings", str(toy_embeddings_path),
         "--kb", str(toy_kb_path),
         "--port", str(port), "--data-dir", str(data_dir)],
        stdout=subprocess.PIPE, stderr=subprocess.PIPE)
    base = f"http://127.0.0.1:{port}"
    try:
        deadline = time.time() + 30
        while True:
            try:
                if httpx.get(base + "/models", timeout=1).status_code == 200:
                    break
            except httpx.TransportError:
                pass
            if proc.poll() is not None or time.time() > deadline:
                out, err = proc.communicate(timeout=5)
                raise RuntimeError(
                    f"server failed to start: {err.decode()!r}")
            time.sleep(0.1)
        yield base
    finally:
        proc.terminate()
        proc.wait(timeout=10)
