import math

import pytest

from varmine.errors import CorpusError
from varmine.fingerprint import CodeSnippet
from varmine.index import (
    SnippetIndex,
    bm25_scores,
    build_index,
    document_tokens,
    load_index,
    save_index,
)
from varmine.lexicon import Post


def make_index(token_docs, avg=None):
    """Hand-built index over {doc_id: [tokens]} for scoring math tests."""
    postings = {}
    lengths = {}
    for doc_id, tokens in token_docs.items():
        lengths[doc_id] = len(tokens)
        for token in tokens:
            postings.setdefault(token, {})
            postings[token][doc_id] = postings[token].get(doc_id, 0) + 1
    total = len(token_docs)
    return SnippetIndex(
        snippets=(),
        fingerprints={},
        postings=postings,
        doc_lengths=lengths,
        total_docs=total,
        avg_doc_length=avg if avg is not None else
        sum(lengths.values()) / total if total else 0.0,
    )


class TestDocumentTokens:
    def test_code_plus_prose_stemmed(self):
        snippet = CodeSnippet(id="s", code="int reverse_word(char x)", post_id="p")
        tokens = document_tokens(snippet, "Reversing quickly")
        assert tokens == ["int", "revers", "word", "char", "x",
                          "revers", "quickli"]

    def test_snake_case_splits(self):
        snippet = CodeSnippet(id="s", code="is_prime_fast(n)", post_id="p")
        assert document_tokens(snippet, "")[:3] == ["is", "prime", "fast"]

    def test_camel_case_stays_joined(self):
        snippet = CodeSnippet(id="s", code="StringBuilder sb;", post_id="p")
        assert "stringbuild" in document_tokens(snippet, "") or \
            "stringbuilder" in document_tokens(snippet, "")


class TestBuildIndex:
    def test_fixture_census(self, index):
        assert index.total_docs == 13
        assert len(index.snippets) == 13
        assert index.snippets == tuple(sorted(index.snippets, key=lambda s: s.id))

    def test_document_frequencies(self, index):
        factorial_docs = set(index.postings["factori"])
        assert factorial_docs == {
            "so-101#1", "so-101#2", "so-102#1", "so-103#1", "so-104#1",
        }
        assert set(index.postings["revers"]) == {
            "so-105#1", "so-106#1", "so-107#1",
        }
        assert set(index.postings["prime"]) == {
            "so-108#1", "so-109#1", "so-109#2",
        }

    def test_every_snippet_has_fingerprint(self, index):
        assert set(index.fingerprints) == {s.id for s in index.snippets}

    def test_duplicate_snippet_id_rejected(self):
        snippet = CodeSnippet(id="dup", code="x + y;", post_id="p1")
        twin = CodeSnippet(id="dup", code="x - y;", post_id="p2")
        posts = [
            Post(id="p1", prose="one", snippets=(snippet,)),
            Post(id="p2", prose="two", snippets=(twin,)),
        ]
        with pytest.raises(CorpusError):
            build_index(posts)

    def test_empty_corpus(self):
        index = build_index([])
        assert index.total_docs == 0
        assert bm25_scores(index, ["anything"]) == {}

    def test_snippet_accessor(self, index):
        assert index.snippet("so-103#1").post_id == "so-103"
        with pytest.raises(KeyError):
            index.snippet("nope")


class TestBM25:
    def test_hand_computed_score(self):
        index = make_index({
            "d1": ["alpha", "alpha", "beta"],
            "d2": ["alpha", "gamma"],
            "d3": ["delta"],
        })
        scores = bm25_scores(index, ["alpha"], k1=1.2, b=0.75)
        idf = math.log(1 + (3 - 2 + 0.5) / (2 + 0.5))
        d1 = idf * 2 * 2.2 / (2 + 1.2 * (0.25 + 0.75 * 3 / 2))
        d2 = idf * 1 * 2.2 / (1 + 1.2 * (0.25 + 0.75 * 2 / 2))
        assert scores["d1"] == pytest.approx(d1)
        assert scores["d2"] == pytest.approx(d2)
        assert "d3" not in scores

    def test_more_occurrences_score_higher_at_equal_length(self):
        index = make_index({
            "two": ["hit", "hit", "pad"],
            "one": ["hit", "pad", "pad"],
        })
        scores = bm25_scores(index, ["hit"])
        assert scores["two"] > scores["one"]

    def test_rare_terms_weigh_more(self):
        index = make_index({
            "d1": ["common", "rare"],
            "d2": ["common"],
            "d3": ["common"],
        })
        scores = bm25_scores(index, ["common", "rare"])
        common_only = bm25_scores(index, ["common"])
        rare_only = bm25_scores(index, ["rare"])
        assert rare_only["d1"] > common_only["d1"]
        assert scores["d1"] == pytest.approx(common_only["d1"] + rare_only["d1"])

    def test_k1_zero_saturates_tf(self):
        index = make_index({
            "two": ["hit", "hit"],
            "one": ["hit", "pad"],
        })
        scores = bm25_scores(index, ["hit"], k1=0.0)
        assert scores["two"] == pytest.approx(scores["one"])

    def test_b_zero_ignores_length(self):
        index = make_index({
            "long": ["hit"] + ["pad"] * 20,
            "short": ["hit"],
        })
        scores = bm25_scores(index, ["hit"], b=0.0)
        assert scores["long"] == pytest.approx(scores["short"])
        with_norm = bm25_scores(index, ["hit"], b=0.75)
        assert with_norm["short"] > with_norm["long"]

    def test_idf_nonnegative_even_for_ubiquitous_terms(self):
        index = make_index({
            "d1": ["every"],
            "d2": ["every"],
        })
        scores = bm25_scores(index, ["every"])
        assert all(s > 0 for s in scores.values())

    def test_unknown_term_matches_nothing(self):
        index = make_index({"d1": ["alpha"]})
        assert bm25_scores(index, ["zeta"]) == {}

    def test_repeated_query_term_counts_twice(self):
        index = make_index({"d1": ["alpha"], "d2": ["beta"]})
        once = bm25_scores(index, ["alpha"])
        twice = bm25_scores(index, ["alpha", "alpha"])
        assert twice["d1"] == pytest.approx(2 * once["d1"])


class TestPersistence:
    def test_round_trip(self, tmp_path, index):
        directory = tmp_path / "idx"
        save_index(index, str(directory))
        loaded = load_index(str(directory))
        assert loaded.total_docs == index.total_docs
        assert loaded.postings == index.postings
        assert loaded.doc_lengths == index.doc_lengths
        assert loaded.avg_doc_length == pytest.approx(index.avg_doc_length)
        assert [s.id for s in loaded.snippets] == [s.id for s in index.snippets]
        assert {
            sid: fp.terms for sid, fp in loaded.fingerprints.items()
        } == {
            sid: fp.terms for sid, fp in index.fingerprints.items()
        }

    def test_save_is_deterministic(self, tmp_path, index):
        a, b = tmp_path / "a", tmp_path / "b"
        save_index(index, str(a))
        save_index(index, str(b))
        assert (a / "index.json").read_bytes() == (b / "index.json").read_bytes()

    def test_resave_after_load_is_identical(self, tmp_path, index):
        first = tmp_path / "first"
        second = tmp_path / "second"
        save_index(index, str(first))
        save_index(load_index(str(first)), str(second))
        assert (first / "index.json").read_bytes() == \
            (second / "index.json").read_bytes()

    def test_missing_directory(self, tmp_path):
        with pytest.raises(CorpusError):
            load_index(str(tmp_path / "absent"))

    def test_bad_version(self, tmp_path):
        directory = tmp_path / "idx"
        directory.mkdir()
        (directory / "index.json").write_text('{"version": 99}')
        with pytest.raises(CorpusError):
            load_index(str(directory))
