#!/usr/bin/env python3
"""Regenerate the committed fixture files under fixtures/.

Deterministic: same seed, same bytes (gzip written with mtime=0). The
embedding fixture is synthetic but structured — entities sharing a
knowledge-base category sit near a shared direction, so nearest-neighbor
demos return thematically coherent candidates.

Usage: python scripts/make_fixtures.py [--out fixtures/]
"""

import argparse
import gzip
import io
from pathlib import Path

import numpy as np

VOCAB_SIZE = 50_000
DIM = 50
SEED = 90125

KB = {
    "programming_language": [
        "python", "java", "rust", "go", "ruby", "kotlin", "swift", "scala",
        "haskell", "perl", "php", "javascript", "typescript", "lua",
        "fortran", "cobol", "erlang", "elixir", "julia", "dart"],
    "scripting_language": ["python", "ruby", "perl", "php", "javascript", "lua"],
    "jvm_language": ["java", "kotlin", "scala", "clojure", "groovy"],
    "database": [
        "postgresql", "mysql", "sqlite", "mongodb", "redis", "cassandra",
        "couchdb", "mariadb", "dynamodb", "elasticsearch", "neo4j",
        "clickhouse", "duckdb", "firebird"],
    "operating_system": [
        "linux", "windows", "macos", "freebsd", "openbsd", "netbsd",
        "solaris", "android", "ios", "debian", "ubuntu", "fedora", "centos"],
    "web_framework": [
        "django", "flask", "rails", "laravel", "spring", "express",
        "fastapi", "svelte", "react", "angular", "vue"],
    "cloud_platform": ["aws", "azure", "gcp", "heroku", "digitalocean",
                       "cloudflare"],
    "version_control": ["git", "mercurial", "subversion", "bazaar", "fossil"],
    "search_engine": ["elasticsearch", "solr", "lucene", "meilisearch"],
    "housing_equipment": [
        "kitchen", "bath", "bathtub", "balcony", "countertop", "dishwasher",
        "fireplace", "garage", "hallway", "closet", "pantry", "skylight",
        "staircase", "veranda", "jacuzzi", "intercom", "washstand",
        "cupboard", "porch", "attic"],
    "kitchen_fixture": ["countertop", "dishwasher", "sink", "stove", "oven",
                        "cupboard"],
    "bathroom_fixture": ["bathtub", "washstand", "shower", "toilet", "bidet",
                         "sauna"],
    "city": ["paris", "london", "tokyo", "osaka", "berlin", "madrid", "rome",
             "vienna", "prague", "lisbon", "dublin", "amsterdam"],
    "country": ["japan", "france", "germany", "spain", "italy", "austria",
                "portugal", "ireland", "netherlands", "belgium", "denmark",
                "norway"],
    "cuisine": ["sushi", "ramen", "tempura", "pasta", "paella", "risotto",
                "fondue", "goulash", "tapas", "curry"],
    "ingredient": ["basil", "saffron", "miso", "tofu", "parmesan", "chorizo",
                   "paprika", "wasabi", "ginger", "cilantro"],
    "ml_framework": ["pytorch", "tensorflow", "keras", "jax", "sklearn",
                     "xgboost", "lightgbm", "mxnet"],
    "message_queue": ["kafka", "rabbitmq", "nats", "pulsar", "zeromq",
                      "activemq"],
    "editor": ["vim", "emacs", "neovim", "nano", "gedit", "kate"],
    "container_tool": ["docker", "podman", "kubernetes", "nomad",
                       "containerd", "buildah"],
    "data_format": ["json", "yaml", "xml", "csv", "parquet", "avro",
                    "protobuf", "toml"],
    "build_tool": ["make", "cmake", "gradle", "maven", "bazel", "ninja"],
}

EXTRA_WORDS = [
    # everyday filler so highlight demos read naturally
    "house", "apartment", "room", "floor", "window", "door", "wall", "roof",
    "garden", "terrace", "rent", "lease", "agent", "listing", "station",
    "school", "park", "shop", "market", "street", "corner", "view", "light",
    "south", "north", "east", "west", "modern", "spacious", "renovated",
    "quiet", "sunny", "large", "small", "new", "old", "near", "close",
    "walk", "minutes", "city", "town", "area", "district", "language",
    "code", "program", "library", "framework", "server", "client", "data",
    "model", "system", "network", "storage", "query", "table", "index",
]

SYLLABLES = [c + v for c in "bcdfghjklmnprstvz" for v in "aeiou"]


def pseudo_words(rng, count, taken):
    words = []
    seen = set(taken)
    while len(words) < count:
        n = int(rng.integers(2, 5))
        word = "".join(SYLLABLES[int(i)]
                       for i in rng.integers(0, len(SYLLABLES), size=n))
        if word in seen:
            continue
        seen.add(word)
        words.append(word)
    return words


def build_vocab(rng):
    """Vocabulary and vector assignments, in a deterministic shuffle."""
    categories = sorted(KB)
    centers = {cat: rng.normal(size=DIM) for cat in categories}
    topic_pool = rng.normal(size=(60, DIM))

    entity_cats = {}
    for cat in categories:
        for entity in KB[cat]:
            entity_cats.setdefault(entity, []).append(cat)

    tokens = []
    vectors = []

    for entity in sorted(entity_cats):
        center = np.mean([centers[c] for c in entity_cats[entity]], axis=0)
        vectors.append(center + 0.45 * rng.normal(size=DIM))
        tokens.append(entity)

    for word in EXTRA_WORDS:
        if word in entity_cats:
            continue
        topic = topic_pool[int(rng.integers(0, len(topic_pool)))]
        vectors.append(topic + 0.6 * rng.normal(size=DIM))
        tokens.append(word)

    fillers = pseudo_words(rng, VOCAB_SIZE - len(tokens), tokens)
    for word in fillers:
        if rng.random() < 0.8:
            topic = topic_pool[int(rng.integers(0, len(topic_pool)))]
            vectors.append(topic + 0.7 * rng.normal(size=DIM))
        else:
            vectors.append(rng.normal(size=DIM) * 1.2)
        tokens.append(word)

    order = rng.permutation(len(tokens))
    tokens = [tokens[i] for i in order]
    vectors = [vectors[i] for i in order]
    return tokens, vectors


def write_embeddings(path, tokens, vectors):
    buf = io.BytesIO()
    with gzip.GzipFile(fileobj=buf, mode="wb", mtime=0) as gz:
        for token, vec in zip(tokens, vectors):
            line = token + " " + " ".join(f"{x:.3f}" for x in vec) + "\n"
            gz.write(line.encode("utf-8"))
    path.write_bytes(buf.getvalue())


def write_kb(path):
    lines = ["# entity<TAB>category is-a pairs, desk-scale stand-in for a"
             " full knowledge base"]
    count = 0
    for cat in sorted(KB):
        for entity in KB[cat]:
            lines.append(f"{entity}\t{cat}")
            count += 1
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return count


def write_seed_files(out):
    (out / "seeds-languages.txt").write_text(
        "# programming-language seed set\npython\njava\nrust\n",
        encoding="utf-8")
    (out / "seeds-housing.txt").write_text(
        "# housing-equipment seed set\nkitchen\nbath\nbalcony\n",
        encoding="utf-8")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="fixtures", type=Path)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    rng = np.random.default_rng(SEED)
    tokens, vectors = build_vocab(rng)
    assert len(tokens) == VOCAB_SIZE
    write_embeddings(args.out / "embeddings-50d.txt.gz", tokens, vectors)
    pairs = write_kb(args.out / "categories.tsv")
    assert pairs == 200, pairs
    write_seed_files(args.out)
    print(f"wrote {VOCAB_SIZE} x d={DIM} embeddings and {pairs} is-a pairs"
          f" to {args.out}/")


if __name__ == "__main__":
    main()
