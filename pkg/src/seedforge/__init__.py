"""seedforge: an interactive entity-population workbench.

Grow a domain-specific entity dictionary from a small seed set: expansion
models propose ranked candidates (embedding cosine top-k and knowledge-base
category membership), a human accepts or rejects them, occurrences are
highlighted in test documents, and the finished dictionary exports to CSV
or JSON. Ships as a library plus an HTTP service and a CLI.
"""

__version__ = "0.1.0"

from .categories import (
    CategoryIndex,
    CategorySuggestion,
    expand_by_category,
    load_kb,
    suggest_categories,
)
from .core import (
    CandidateEntry,
    Dictionary,
    EntityEntry,
    ExpansionRequest,
    FeedbackDecision,
    Label,
    Session,
    Verdict,
    apply_feedback,
    new_session,
)
from .embeddings import EmbeddingStore, expand, load_embeddings, lookup_vector
from .highlight import HighlightSpan, highlight, render_annotated
from .serialize import export_dictionary, import_dictionary
from .service import (
    CategoryModel,
    EmbeddingModel,
    ModelRegistry,
    create_app,
    merge_candidates,
)
from .store import SessionStore

__all__ = [
    "CandidateEntry",
    "CategoryIndex",
    "CategoryModel",
    "CategorySuggestion",
    "Dictionary",
    "EmbeddingModel",
    "EmbeddingStore",
    "EntityEntry",
    "ExpansionRequest",
    "FeedbackDecision",
    "HighlightSpan",
    "Label",
    "ModelRegistry",
    "Session",
    "SessionStore",
    "Verdict",
    "apply_feedback",
    "create_app",
    "expand",
    "expand_by_category",
    "export_dictionary",
    "highlight",
    "import_dictionary",
    "load_embeddings",
    "load_kb",
    "lookup_vector",
    "merge_candidates",
    "new_session",
    "render_annotated",
    "suggest_categories",
    "__version__",
]
