"""HTTP facade: expansion models, sessions, feedback, highlighting, export.

Expansion backends are registered under unique ids and selected per
request, so several models (embedding and category based) can serve one
session and their candidate lists are merged by surface. Sessions are
persisted as JSON documents through a SessionStore; each session's
mutations are serialized behind a per-session lock while model resources
stay immutable shared state.

Error bodies are always ``{"error": code, "detail": text}``.
"""

from __future__ import annotations

import dataclasses
import threading
from typing import Optional

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel

from . import __version__
from .categories import DEFAULT_MIN_SUPPORT, CategoryIndex, expand_by_category
from .core import (
    Dictionary,
    ExpansionRequest,
    Label,
    Session,
    Verdict,
    apply_feedback,
    new_session,
    resolve_decisions,
    utc_now,
)
from .embeddings import EmbeddingStore
from .embeddings import expand as embedding_expand
from .errors import (
    DuplicateEntityError,
    EmptySurfaceError,
    NoResolvableSeedError,
    NotFoundError,
    ParseError,
    UnknownCandidateError,
)
from .highlight import highlight
from .serialize import (
    candidate_to_dict,
    export_dictionary,
    import_dictionary,
    session_to_dict,
)
from .store import SessionStore

MAX_K = 1000


class EmbeddingModel:
    """Expansion backend over a loaded EmbeddingStore."""

    kind = "embedding"

    def __init__(self, model_id: str, store: EmbeddingStore):
        self.id = model_id
        self.store = store

    def expand(self, request: ExpansionRequest) -> list:
        return embedding_expand(self.store, request, model=self.id)


class CategoryModel:
    """Expansion backend over a loaded CategoryIndex."""

    kind = "category"

    def __init__(self, model_id: str, index: CategoryIndex,
                 min_support: float = DEFAULT_MIN_SUPPORT):
        self.id = model_id
        self.index = index
        self.min_support = min_support

    def expand(self, request: ExpansionRequest) -> list:
        return expand_by_category(self.index, request, self.min_support,
                                  model=self.id)


@dataclasses.dataclass
class RegisteredModel:
    id: str
    kind: str
    backend: Optional[object]
    load_error: Optional[str] = None


class ModelRegistry:
    """Expansion backends by id; insertion order is the /models order."""

    def __init__(self):
        self._models: dict = {}

    def register(self, backend) -> None:
        """Register a ready backend (anything with .id, .kind, .expand)."""
        if backend.id in self._models:
            raise ValueError(f"duplicate model id: {backend.id}")
        self._models[backend.id] = RegisteredModel(
            id=backend.id, kind=backend.kind, backend=backend)

    def register_failed(self, model_id: str, kind: str, error: str) -> None:
        """Record a backend whose resource failed to load (served as 503)."""
        if model_id in self._models:
            raise ValueError(f"duplicate model id: {model_id}")
        self._models[model_id] = RegisteredModel(
            id=model_id, kind=kind, backend=None, load_error=error)

    def get(self, model_id: str) -> Optional[RegisteredModel]:
        return self._models.get(model_id)

    def descriptors(self) -> list:
        return [{"id": m.id, "kind": m.kind} for m in self._models.values()]

    def __len__(self) -> int:
        return len(self._models)


def merge_candidates(batches) -> list:
    """Merge per-model candidate lists into one ranked list.

    batches: iterable of (kind, candidates). Case-folded duplicate surfaces
    keep the higher score; on a score tie the embedding model wins, then
    the ascending model id. The result is ranked by score descending,
    surface ascending.
    """
    best: dict = {}
    for kind, candidates in batches:
        for candidate in candidates:
            key = candidate.surface.casefold()
            current = best.get(key)
            if current is None or _beats((candidate, kind), current):
                best[key] = (candidate, kind)
    merged = [candidate for candidate, _ in best.values()]
    merged.sort(key=lambda c: (-c.score, c.surface))
    return merged


def _beats(challenger, incumbent) -> bool:
    cand, kind = challenger
    cur_cand, cur_kind = incumbent
    if cand.score != cur_cand.score:
        return cand.score > cur_cand.score
    if kind != cur_kind:
        return kind == "embedding"
    return cand.model < cur_cand.model


# --- request bodies ----------------------------------------------------------

class ExpandBody(BaseModel):
    entities: list
    models: list
    k: int


class CreateSessionBody(BaseModel):
    name: str


class AddEntityBody(BaseModel):
    surface: str
    label: str = "positive"


class PatchEntityBody(BaseModel):
    new_surface: Optional[str] = None
    active: Optional[bool] = None


class SessionExpandBody(BaseModel):
    models: list
    k: int


class DecisionBody(BaseModel):
    surface: str
    verdict: str


class FeedbackBody(BaseModel):
    decisions: list[DecisionBody]


class HighlightBody(BaseModel):
    document: str
    options: Optional[dict] = None


class ImportBody(BaseModel):
    content: str
    format: str


def _error(status: int, code: str, detail: str) -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"error": code, "detail": detail})


class _ApiError(Exception):
    def __init__(self, status: int, code: str, detail: str):
        self.status = status
        self.code = code
        self.detail = detail


def create_app(registry: ModelRegistry, store: SessionStore) -> FastAPI:
    """Build the application around a model registry and a session store."""
    app = FastAPI(title="seedforge", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    locks: dict = {}
    locks_guard = threading.Lock()

    def lock_for(session_id: str) -> threading.Lock:
        with locks_guard:
            return locks.setdefault(session_id, threading.Lock())

    @app.exception_handler(RequestValidationError)
    def on_validation_error(request, exc):
        first = exc.errors()[0] if exc.errors() else {}
        loc = ".".join(str(p) for p in first.get("loc", ()) if p != "body")
        return _error(400, "validation_error",
                      f"invalid request body field: {loc or 'body'}")

    @app.exception_handler(_ApiError)
    def on_api_error(request, exc):
        return _error(exc.status, exc.code, exc.detail)

    def run_models(model_ids, request: ExpansionRequest) -> list:
        batches = []
        failures = []
        for model_id in model_ids:
            registered = registry.get(model_id)
            if registered.backend is None:
                raise _ApiError(
                    503, "model_unavailable",
                    f"model '{model_id}' failed to load: {registered.load_error}")
            try:
                batches.append((registered.kind,
                                registered.backend.expand(request)))
            except NoResolvableSeedError as exc:
                failures.append((model_id, str(exc)))
        if not batches and failures:
            raise _ApiError(400, "no_resolvable_seed",
                            "; ".join(f"{mid}: {msg}" for mid, msg in failures))
        return merge_candidates(batches)[:request.k]

    def validate_expand_inputs(entities, model_ids, k):
        if not entities or any(not str(e).strip() for e in entities):
            raise _ApiError(400, "validation_error",
                            "field 'entities' must be a nonempty list of"
                            " nonempty strings")
        if not isinstance(k, int) or not 1 <= k <= MAX_K:
            raise _ApiError(400, "validation_error",
                            f"field 'k' must be an integer in [1, {MAX_K}]")
        if not model_ids:
            raise _ApiError(400, "validation_error",
                            "field 'models' must name at least one model")
        for model_id in model_ids:
            if registry.get(model_id) is None:
                raise _ApiError(400, "validation_error",
                                f"field 'models' names unknown model"
                                f" '{model_id}'")

    def load_session(session_id: str) -> Session:
        try:
            return store.load(session_id)
        except NotFoundError as exc:
            raise _ApiError(404, "not_found", str(exc)) from exc

    def mutate_session(session_id: str, fn):
        """Load-mutate-save under the session's lock; returns the new doc."""
        with lock_for(session_id):
            session = load_session(session_id)
            try:
                updated = fn(session)
            except DuplicateEntityError as exc:
                raise _ApiError(409, "duplicate_entity", str(exc)) from exc
            except NotFoundError as exc:
                raise _ApiError(404, "not_found", str(exc)) from exc
            except UnknownCandidateError as exc:
                raise _ApiError(400, "unknown_candidate", str(exc)) from exc
            except (EmptySurfaceError, ValueError) as exc:
                raise _ApiError(400, "validation_error", str(exc)) from exc
            except ParseError as exc:
                raise _ApiError(400, "parse_error", str(exc)) from exc
            store.save(updated)
            return session_to_dict(updated)

    def touch(session: Session, dictionary: Dictionary) -> Session:
        return dataclasses.replace(session, dictionary=dictionary,
                                   updated=utc_now())

    # --- models and stateless expansion ---

    @app.get("/models")
    def list_models():
        return registry.descriptors()

    @app.post("/expand")
    def expand_endpoint(body: ExpandBody):
        entities = [str(e) for e in body.entities]
        model_ids = [str(m) for m in body.models]
        validate_expand_inputs(entities, model_ids, body.k)
        request = ExpansionRequest(positives=entities,
                                   exclusions=set(entities), k=body.k)
        candidates = run_models(model_ids, request)
        return {"candidates": [candidate_to_dict(c) for c in candidates]}

    # --- session lifecycle ---

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        name = body.name.strip()
        if not name:
            raise _ApiError(400, "validation_error",
                            "field 'name' must be nonempty")
        session = new_session(name)
        store.save(session)
        return session_to_dict(session)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return session_to_dict(load_session(session_id))

    @app.post("/sessions/{session_id}/entities")
    def add_entity(session_id: str, body: AddEntityBody):
        try:
            label = Label(body.label)
        except ValueError:
            raise _ApiError(400, "validation_error",
                            f"field 'label' must be one of"
                            f" {[l.value for l in Label]}") from None

        def apply(session: Session) -> Session:
            dictionary = session.dictionary.add(
                body.surface, label, iteration=session.iteration)
            return touch(session, dictionary)

        return mutate_session(session_id, apply)

    @app.patch("/sessions/{session_id}/entities/{surface:path}")
    def patch_entity(session_id: str, surface: str, body: PatchEntityBody):
        if body.new_surface is None and body.active is None:
            raise _ApiError(400, "validation_error",
                            "provide 'new_surface' and/or 'active'")

        def apply(session: Session) -> Session:
            dictionary = session.dictionary
            current = surface
            if body.new_surface is not None:
                dictionary = dictionary.rename(current, body.new_surface)
                current = body.new_surface
            if body.active is not None:
                dictionary = dictionary.set_active(current, body.active)
            return touch(session, dictionary)

        return mutate_session(session_id, apply)

    @app.delete("/sessions/{session_id}/entities/{surface:path}")
    def delete_entity(session_id: str, surface: str):
        def apply(session: Session) -> Session:
            return touch(session, session.dictionary.delete(surface))

        return mutate_session(session_id, apply)

    # --- the loop: expand, feedback, highlight, import/export ---

    @app.post("/sessions/{session_id}/expand")
    def session_expand(session_id: str, body: SessionExpandBody):
        model_ids = [str(m) for m in body.models]

        def apply(session: Session) -> Session:
            positives = session.dictionary.active_positive_set()
            if not positives:
                raise _ApiError(400, "empty_positive_set",
                                "session has no active positive entities")
            validate_expand_inputs(positives, model_ids, body.k)
            exclusions = set(session.dictionary.surfaces())
            exclusions.update(c.surface for c in session.pending)
            request = ExpansionRequest(positives=positives,
                                       exclusions=exclusions, k=body.k)
            candidates = run_models(model_ids, request)
            return dataclasses.replace(session, pending=tuple(candidates),
                                       updated=utc_now())

        return mutate_session(session_id, apply)

    @app.post("/sessions/{session_id}/feedback")
    def session_feedback(session_id: str, body: FeedbackBody):
        def apply(session: Session) -> Session:
            pairs = []
            for decision in body.decisions:
                try:
                    verdict = Verdict(decision.verdict)
                except ValueError:
                    raise _ApiError(
                        400, "validation_error",
                        f"field 'verdict' must be one of"
                        f" {[v.value for v in Verdict]}") from None
                pairs.append((decision.surface, verdict))
            decisions = resolve_decisions(session, pairs)
            return apply_feedback(session, decisions)

        return mutate_session(session_id, apply)

    @app.get("/sessions/{session_id}/export")
    def session_export(session_id: str, format: str = "csv"):
        if format not in ("csv", "json"):
            raise _ApiError(400, "validation_error",
                            "query parameter 'format' must be csv or json")
        session = load_session(session_id)
        payload = export_dictionary(session.dictionary, format)
        media = "text/csv" if format == "csv" else "application/json"
        return Response(
            content=payload,
            media_type=f"{media}; charset=utf-8",
            headers={"Content-Disposition":
                     f'attachment; filename="seedforge-{session.id}.{format}"'})

    @app.post("/sessions/{session_id}/highlight")
    def session_highlight(session_id: str, body: HighlightBody):
        options = body.options or {}
        unknown = set(options) - {"case_insensitive", "word_boundary"}
        if unknown:
            raise _ApiError(400, "validation_error",
                            f"unknown highlight option: {sorted(unknown)[0]}")
        session = load_session(session_id)
        spans = highlight(
            body.document,
            session.dictionary.active_positive_set(),
            case_insensitive=bool(options.get("case_insensitive", True)),
            word_boundary=bool(options.get("word_boundary", True)))
        return {
            "document": body.document,
            "spans": [{"start": s.start, "end": s.end, "surface": s.surface}
                      for s in spans],
        }

    @app.post("/sessions/{session_id}/import")
    def session_import(session_id: str, body: ImportBody):
        if body.format not in ("csv", "json", "seeds"):
            raise _ApiError(400, "validation_error",
                            "field 'format' must be csv, json, or seeds")

        def apply(session: Session) -> Session:
            dictionary = import_dictionary(body.content.encode("utf-8"),
                                           body.format)
            # a fresh dictionary restarts the loop
            return dataclasses.replace(session, dictionary=dictionary,
                                       pending=(), iteration=0,
                                       updated=utc_now())

        return mutate_session(session_id, apply)

    return app
