"""Inverted index and BM25 scoring for base retrieval.

Each snippet is one retrievable document whose text is the snippet code
concatenated with its post's prose. Tokens are lowercased alphanumeric runs
run through the stemmer, the same treatment prose gets in scoring, so a
query like "factorial" reaches both the identifier and the discussion.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass

from .errors import CorpusError
from .fingerprint import (
    CodeSnippet,
    Language,
    StructuralFingerprint,
    compute_fingerprint,
)
from .lexicon import Post, prose_tokens
from .stemming import stem
from .storage import atomic_write_text, canonical_dumps

INDEX_FORMAT_VERSION = 1
INDEX_FILENAME = "index.json"

DEFAULT_K1 = 1.2
DEFAULT_B = 0.75


@dataclass(frozen=True)
class SnippetIndex:
    snippets: tuple[CodeSnippet, ...]  # ordered by snippet id
    fingerprints: dict[str, StructuralFingerprint]
    postings: dict[str, dict[str, int]]  # term -> snippet id -> tf
    doc_lengths: dict[str, int]
    total_docs: int
    avg_doc_length: float

    def snippet(self, snippet_id: str) -> CodeSnippet:
        for snippet in self.snippets:
            if snippet.id == snippet_id:
                return snippet
        raise KeyError(snippet_id)


def document_tokens(snippet: CodeSnippet, prose: str) -> list[str]:
    """Stemmed tokens of code plus surrounding prose."""
    return [stem(t) for t in prose_tokens(snippet.code) + prose_tokens(prose)]


def build_index(corpus: list[Post]) -> SnippetIndex:
    """Index every snippet in the corpus; empty corpus gives an empty index."""
    snippets: list[CodeSnippet] = []
    fingerprints: dict[str, StructuralFingerprint] = {}
    postings: dict[str, dict[str, int]] = {}
    doc_lengths: dict[str, int] = {}
    for post in corpus:
        for snippet in post.snippets:
            if snippet.id in doc_lengths:
                raise CorpusError(f"duplicate snippet id {snippet.id!r}")
            snippets.append(snippet)
            fingerprints[snippet.id] = compute_fingerprint(snippet)
            tokens = document_tokens(snippet, post.prose)
            doc_lengths[snippet.id] = len(tokens)
            for token in tokens:
                postings.setdefault(token, {})
                postings[token][snippet.id] = postings[token].get(snippet.id, 0) + 1
    snippets.sort(key=lambda s: s.id)
    total = len(snippets)
    avg = sum(doc_lengths.values()) / total if total else 0.0
    return SnippetIndex(
        snippets=tuple(snippets),
        fingerprints=fingerprints,
        postings=postings,
        doc_lengths=doc_lengths,
        total_docs=total,
        avg_doc_length=avg,
    )


def bm25_scores(
    index: SnippetIndex,
    query_terms: list[str],
    k1: float = DEFAULT_K1,
    b: float = DEFAULT_B,
) -> dict[str, float]:
    """BM25 score per snippet id, restricted to docs matching some term.

    Uses the non-negative idf variant ln(1 + (N - df + 0.5) / (df + 0.5)),
    so rare terms weigh more and no term can push a score below zero.
    """
    scores: dict[str, float] = {}
    n = index.total_docs
    if n == 0:
        return scores
    for term in query_terms:
        docs = index.postings.get(term)
        if not docs:
            continue
        df = len(docs)
        idf = math.log(1 + (n - df + 0.5) / (df + 0.5))
        for doc_id, tf in docs.items():
            length_norm = 1 - b + b * index.doc_lengths[doc_id] / index.avg_doc_length
            gain = idf * tf * (k1 + 1) / (tf + k1 * length_norm)
            scores[doc_id] = scores.get(doc_id, 0.0) + gain
    return scores


def save_index(index: SnippetIndex, directory: str) -> None:
    """Write the index as one canonical JSON file inside `directory`."""
    os.makedirs(directory, exist_ok=True)
    payload = {
        "version": INDEX_FORMAT_VERSION,
        "snippets": [
            {
                "id": s.id,
                "code": s.code,
                "language": s.language.value,
                "post_id": s.post_id,
            }
            for s in index.snippets
        ],
        "fingerprints": {
            sid: sorted(fp.terms) for sid, fp in index.fingerprints.items()
        },
        "postings": index.postings,
        "doc_lengths": index.doc_lengths,
        "total_docs": index.total_docs,
        "avg_doc_length": index.avg_doc_length,
    }
    atomic_write_text(
        os.path.join(directory, INDEX_FILENAME), canonical_dumps(payload) + "\n"
    )


def load_index(directory: str) -> SnippetIndex:
    path = os.path.join(directory, INDEX_FILENAME)
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise CorpusError(f"cannot read index {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CorpusError(f"{path}: invalid JSON: {exc}") from exc
    if payload.get("version") != INDEX_FORMAT_VERSION:
        raise CorpusError(
            f"{path}: unsupported index version {payload.get('version')!r}"
        )
    snippets = tuple(
        CodeSnippet(
            id=record["id"],
            code=record["code"],
            language=Language(record["language"]),
            post_id=record["post_id"],
        )
        for record in payload["snippets"]
    )
    fingerprints = {
        sid: StructuralFingerprint(frozenset(terms), sid)
        for sid, terms in payload["fingerprints"].items()
    }
    return SnippetIndex(
        snippets=snippets,
        fingerprints=fingerprints,
        postings={
            term: dict(docs) for term, docs in payload["postings"].items()
        },
        doc_lengths=dict(payload["doc_lengths"]),
        total_docs=payload["total_docs"],
        avg_doc_length=payload["avg_doc_length"],
    )
