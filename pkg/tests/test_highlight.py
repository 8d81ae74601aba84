import html
import json
import re

import numpy as np
import pytest

from seedforge.errors import InvalidSpanError
from seedforge.highlight import HighlightSpan, highlight, render_annotated

from oracles import highlight_oracle


def span_tuples(document, entities, **options):
    return [(s.start, s.end, s.surface)
            for s in highlight(document, entities, **options)]


def test_longest_match_wins():
    doc = "a granite countertop"
    spans = highlight(doc, ["countertop", "granite countertop"])
    assert len(spans) == 1
    s = spans[0]
    assert doc.encode()[s.start:s.end].decode() == "granite countertop"
    assert s.surface == "granite countertop"


def test_empty_entity_list():
    assert highlight("whatever text", []) == []


def test_empty_document():
    assert highlight("", ["bath"]) == []


def test_case_insensitive_matching_default():
    spans = highlight("The Bath is ready", ["bath"])
    assert len(spans) == 1
    assert spans[0].surface == "bath"


def test_case_sensitive_mode():
    assert highlight("The Bath is ready", ["bath"], case_insensitive=False) == []


def test_word_boundary_blocks_substring():
    assert highlight("the bathroom", ["bath"]) == []


def test_word_boundary_off_allows_substring():
    spans = highlight("the bathroom", ["bath"], word_boundary=False)
    assert len(spans) == 1


def test_boundary_at_document_edges():
    spans = highlight("bath", ["bath"])
    assert [(s.start, s.end) for s in spans] == [(0, 4)]


def test_punctuation_counts_as_boundary():
    spans = highlight("bath, kitchen!", ["bath", "kitchen"])
    assert len(spans) == 2


def test_matching_resumes_after_match():
    spans = highlight("bath bath bath", ["bath"])
    assert [(s.start, s.end) for s in spans] == [(0, 4), (5, 9), (10, 14)]


def test_offsets_are_utf8_bytes():
    doc = "naïve spa café"   # multibyte chars shift byte offsets
    spans = highlight(doc, ["spa"])
    assert len(spans) == 1
    s = spans[0]
    assert doc.encode("utf-8")[s.start:s.end].decode("utf-8") == "spa"


def test_sharp_s_fold_cannot_split_character():
    # "ß" folds to "ss"; an entity "s" must not match half of it
    assert highlight("ß", ["s"], word_boundary=False) == []
    # but an entity that covers the whole fold matches
    spans = highlight("ß", ["ss"], word_boundary=False)
    assert [(s.start, s.end) for s in spans] == [(0, 2)]


def test_first_listed_entity_wins_fold_ties():
    spans = highlight("the bath", ["Bath", "bath"])
    assert spans[0].surface == "Bath"


def test_spans_sorted_and_non_overlapping_on_fuzz():
    rng = np.random.default_rng(5)
    vocab = ["bath", "bathtub", "granite countertop", "countertop", "spa",
             "naïve", "ß-word", "C++", "kitchen"]
    alphabet = list("abc ß.+naïveC") + ["bath", "tub", "countertop", " "]
    for _ in range(50):
        doc = "".join(rng.choice(alphabet)
                      for _ in range(int(rng.integers(0, 120))))
        spans = highlight(doc, vocab)
        previous_end = 0
        for s in spans:
            assert previous_end <= s.start < s.end
            previous_end = s.end


def test_matches_naive_oracle_on_random_documents():
    rng = np.random.default_rng(11)
    entities = ["bath", "Bathtub", "granite countertop", "spa", "ß", "straße",
                "C++", "kitchen", "systemkitchen"]
    parts = ["bath", "Bath", "BATHtub", "granite countertop", " ", ", ",
             "straße", "STRASSE", "ß", "c++", "kitchen", "xyz", "ïß", "."]
    for trial in range(60):
        doc = "".join(rng.choice(parts)
                      for _ in range(int(rng.integers(0, 60))))
        for ci in (True, False):
            for wb in (True, False):
                got = span_tuples(doc, entities,
                                  case_insensitive=ci, word_boundary=wb)
                want = highlight_oracle(doc, entities,
                                        case_insensitive=ci, word_boundary=wb)
                assert got == want, f"trial {trial} ci={ci} wb={wb} doc={doc!r}"


# --- rendering ---------------------------------------------------------------

def test_render_no_spans_is_escaped_document():
    out = render_annotated("a < b & c", [], "html")
    assert out == html.escape("a < b & c").encode("utf-8")


def test_render_single_span_has_one_mark():
    doc = "a granite countertop"
    spans = highlight(doc, ["granite countertop"])
    out = render_annotated(doc, spans, "html").decode("utf-8")
    assert out.count("<mark") == 1
    assert 'data-entity="granite countertop"' in out


def test_render_json_shape():
    doc = "the bath"
    spans = highlight(doc, ["bath"])
    out = json.loads(render_annotated(doc, spans, "json"))
    assert out["document"] == doc
    assert out["spans"] == [{"start": 4, "end": 8, "surface": "bath"}]


def strip_markup(rendered: str) -> str:
    return html.unescape(re.sub(r"</?mark[^>]*>", "", rendered))


def test_render_then_strip_restores_document():
    doc = 'bath & <tub> "granite countertop" naïve ß'
    spans = highlight(doc, ["bath", "granite countertop", "ß"])
    rendered = render_annotated(doc, spans, "html").decode("utf-8")
    assert strip_markup(rendered).encode("utf-8") == doc.encode("utf-8")


def test_render_rejects_out_of_range_span():
    with pytest.raises(InvalidSpanError):
        render_annotated("abc", [HighlightSpan(0, 9, "abc")], "html")


def test_render_rejects_overlapping_spans():
    with pytest.raises(InvalidSpanError):
        render_annotated("abcdef", [HighlightSpan(0, 4, "abcd"),
                                    HighlightSpan(2, 6, "cdef")], "html")


def test_render_rejects_mid_character_offset():
    with pytest.raises(InvalidSpanError):
        render_annotated("ß", [HighlightSpan(0, 1, "ß")], "html")
