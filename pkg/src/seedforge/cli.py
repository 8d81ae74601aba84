"""Operator entry point: serve the API, run one-shot expansions, validate resources.

Exit codes: 0 success, 1 domain error (e.g. no resolvable seed, resource
fails validation), 2 usage or resource error (bad flags, unreadable files,
port in use). Every flag has a ``SEEDFORGE_``-prefixed environment
override, and all output is machine-parseable.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import socket
import sys
from pathlib import Path

from .categories import load_kb
from .core import ExpansionRequest
from .embeddings import expand as embedding_expand
from .embeddings import load_embeddings
from .errors import (
    EmptyIndexError,
    EmptyVocabularyError,
    NoResolvableSeedError,
    ParseError,
)
from .serialize import format_score, import_dictionary
from .service import CategoryModel, EmbeddingModel, ModelRegistry, create_app
from .store import SessionStore

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


def _env(name: str, default=None):
    return os.environ.get(f"SEEDFORGE_{name}", default)


def _env_paths(name: str) -> list:
    raw = _env(name)
    return [p for p in raw.split(os.pathsep) if p] if raw else []


def model_id_for(path, prefix: str) -> str:
    """``emb:<filestem>`` / ``cat:<filestem>``, with .gz peeled first."""
    name = Path(path).name
    if name.endswith(".gz"):
        name = name[:-3]
    stem = name.rsplit(".", 1)[0] if "." in name else name
    return f"{prefix}:{stem}"


def positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer") from None
    if number < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return number


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seedforge",
        description="Interactive entity-population workbench.")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser(
        "serve", help="start the HTTP service with the given resources")
    serve.add_argument("--embeddings", action="append", default=None,
                       metavar="PATH", help="embedding file (repeatable)")
    serve.add_argument("--kb", action="append", default=None, metavar="PATH",
                       help="is-a pair TSV file (repeatable)")
    serve.add_argument("--port", type=int,
                       default=int(_env("PORT", "8756")))
    serve.add_argument("--host", default=_env("HOST", "127.0.0.1"))
    serve.add_argument("--data-dir", default=_env("DATA_DIR", "seedforge-data"))
    serve.set_defaults(func=cmd_serve)

    expand = sub.add_parser(
        "expand", help="one-shot expansion of a seed file against an"
                       " embedding model")
    env_embeddings = _env("EMBEDDINGS")
    expand.add_argument("--embeddings", metavar="PATH",
                        default=env_embeddings,
                        required=env_embeddings is None)
    expand.add_argument("--seeds", required=True, metavar="FILE")
    expand.add_argument("--k", type=positive_int, required=True)
    expand.add_argument("--format", choices=("csv", "json"), default="csv")
    expand.set_defaults(func=cmd_expand)

    validate = sub.add_parser(
        "validate", help="check that a resource file loads, report its shape")
    validate.add_argument("--embeddings", metavar="PATH")
    validate.add_argument("--kb", metavar="PATH")
    validate.set_defaults(func=cmd_validate)

    return parser


def cmd_serve(args) -> int:
    embeddings = args.embeddings if args.embeddings is not None \
        else _env_paths("EMBEDDINGS")
    kbs = args.kb if args.kb is not None else _env_paths("KB")
    if not embeddings and not kbs:
        print("error: serve needs at least one --embeddings or --kb resource",
              file=sys.stderr)
        print("usage: seedforge serve --embeddings PATH [--kb PATH]"
              " [--port N] [--data-dir DIR]", file=sys.stderr)
        return EXIT_USAGE

    registry = ModelRegistry()
    try:
        for path in embeddings:
            store = load_embeddings(path)
            registry.register(EmbeddingModel(model_id_for(path, "emb"), store))
            print(f"loaded {path}: {len(store)} vectors, d={store.dimension}")
        for path in kbs:
            index = load_kb(path)
            registry.register(CategoryModel(model_id_for(path, "cat"), index))
            print(f"loaded {path}: {index.pair_count} is-a pairs")
    except (OSError, EOFError, ParseError, EmptyVocabularyError,
            EmptyIndexError, ValueError) as exc:
        print(f"error: cannot load resources: {exc}", file=sys.stderr)
        return EXIT_USAGE

    app = create_app(registry, SessionStore(args.data_dir))

    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((args.host, args.port))
    except OSError as exc:
        print(f"error: cannot bind {args.host}:{args.port}: {exc}",
              file=sys.stderr)
        sock.close()
        return EXIT_USAGE

    import uvicorn

    print(f"serving {len(registry)} model(s) on http://{args.host}:{args.port}")
    config = uvicorn.Config(app, log_level="warning")
    server = uvicorn.Server(config)
    server.run(sockets=[sock])
    return EXIT_OK


def cmd_expand(args) -> int:
    try:
        store = load_embeddings(args.embeddings)
        seed_bytes = Path(args.seeds).read_bytes()
    except (OSError, EOFError, EmptyVocabularyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        seeds = [e.surface for e in import_dictionary(seed_bytes, "seeds")]
    except ParseError as exc:
        print(f"error: bad seed file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not seeds:
        print("error: seed file contains no seeds", file=sys.stderr)
        return EXIT_USAGE

    request = ExpansionRequest(positives=seeds, exclusions=set(seeds), k=args.k)
    model = model_id_for(args.embeddings, "emb")
    try:
        candidates = embedding_expand(store, request, model=model)
    except NoResolvableSeedError as exc:
        print(f"error: NoResolvableSeed: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    if args.format == "json":
        doc = {"candidates": [
            {"surface": c.surface, "score": c.score, "origin": c.origin,
             "model": c.model} for c in candidates]}
        print(json.dumps(doc, ensure_ascii=False, indent=2))
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(["surface", "score", "origin", "model"])
        for c in candidates:
            writer.writerow([c.surface, format_score(c.score), c.origin,
                             c.model])
    return EXIT_OK


def cmd_validate(args) -> int:
    if bool(args.embeddings) == bool(args.kb):
        print("error: validate needs exactly one of --embeddings or --kb",
              file=sys.stderr)
        return EXIT_USAGE

    path = args.embeddings or args.kb
    try:
        if args.embeddings:
            store = load_embeddings(path)
            print(f"vocab_size: {len(store)}")
            print(f"dimension: {store.dimension}")
            print(f"skipped_lines: {store.skipped_lines}")
        else:
            index = load_kb(path)
            print(f"pairs: {index.pair_count}")
            print(f"entities: {index.entity_count}")
            print(f"categories: {index.category_count}")
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, EmptyVocabularyError, EmptyIndexError, EOFError,
            OSError, ValueError) as exc:
        # file opened but its content does not validate
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
