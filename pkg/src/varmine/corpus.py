"""Corpus ingestion and the normalized on-disk corpus store.

Input is a JSONL file of discussion posts: each record carries post_id,
body, and optionally title and tags. Ingestion pulls ``` fenced code blocks
out of the body into snippets (ids `<post_id>#<ordinal>`, 1-based), leaves
the surrounding prose, and detects language from the post's tags. The
normalized store is JSONL too, with a version header record, written
canonically so identical inputs give byte-identical stores.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import CorpusError
from .fingerprint import CodeSnippet, Language
from .lexicon import Post
from .storage import read_jsonl, write_jsonl

CORPUS_FORMAT_VERSION = 1

_FENCE_RE = re.compile(r"```[^\n]*\n(.*?)(?:```|\Z)", re.DOTALL)


@dataclass(frozen=True)
class SnippetRecord:
    snippet_id: str
    language: Language
    code: str


@dataclass(frozen=True)
class CorpusDocument:
    post_id: str
    title: str
    body_prose: str
    tags: tuple[str, ...] = ()
    snippets: tuple[SnippetRecord, ...] = ()

    @property
    def prose(self) -> str:
        """Title plus body prose: the text scored for desired properties."""
        if self.title:
            return f"{self.title}\n{self.body_prose}"
        return self.body_prose


def detect_language(tags) -> Language:
    """First tag that names a known language wins; otherwise unknown."""
    for tag in tags:
        language = Language.coerce(tag)
        if language is not Language.UNKNOWN:
            return language
    return Language.UNKNOWN


def split_body(body: str) -> tuple[str, list[str]]:
    """Separate fenced code blocks from prose.

    Returns (prose, code_blocks). An unterminated fence runs to the end of
    the body; empty code blocks are dropped.
    """
    blocks = [m.group(1).strip("\n") for m in _FENCE_RE.finditer(body)]
    prose = _FENCE_RE.sub(" ", body)
    return prose, [b for b in blocks if b.strip()]


def ingest_posts(path: str) -> list[CorpusDocument]:
    """Parse a raw JSONL post file into normalized corpus documents."""
    documents: list[CorpusDocument] = []
    seen_ids: set[str] = set()
    for lineno, record in read_jsonl(path):
        if not isinstance(record, dict):
            raise CorpusError(f"{path}: line {lineno}: post must be an object")
        post_id = record.get("post_id")
        body = record.get("body")
        if not post_id or not isinstance(post_id, str):
            raise CorpusError(f"{path}: line {lineno}: missing post_id")
        if body is None or not isinstance(body, str):
            raise CorpusError(f"{path}: line {lineno}: missing body")
        if post_id in seen_ids:
            raise CorpusError(
                f"{path}: line {lineno}: duplicate post_id {post_id!r}"
            )
        seen_ids.add(post_id)
        tags = tuple(record.get("tags", []))
        language = detect_language(tags)
        prose, blocks = split_body(body)
        snippets = tuple(
            SnippetRecord(
                snippet_id=f"{post_id}#{ordinal}",
                language=language,
                code=code,
            )
            for ordinal, code in enumerate(blocks, start=1)
        )
        documents.append(
            CorpusDocument(
                post_id=post_id,
                title=record.get("title", ""),
                body_prose=prose,
                tags=tags,
                snippets=snippets,
            )
        )
    if not documents:
        raise CorpusError(f"{path}: no posts found")
    return documents


def save_corpus(documents: list[CorpusDocument], path: str) -> None:
    header = {"version": CORPUS_FORMAT_VERSION, "kind": "corpus"}
    records = [
        {
            "post_id": doc.post_id,
            "title": doc.title,
            "body_prose": doc.body_prose,
            "tags": list(doc.tags),
            "snippets": [
                {
                    "snippet_id": s.snippet_id,
                    "language": s.language.value,
                    "code": s.code,
                }
                for s in doc.snippets
            ],
        }
        for doc in documents
    ]
    write_jsonl(path, header, records)


def load_corpus(path: str) -> list[CorpusDocument]:
    rows = read_jsonl(path)
    try:
        _, header = next(rows)
    except StopIteration:
        raise CorpusError(f"{path}: empty corpus store") from None
    if header.get("kind") != "corpus" or header.get("version") != CORPUS_FORMAT_VERSION:
        raise CorpusError(f"{path}: not a corpus store (bad header)")
    documents = []
    for lineno, record in rows:
        try:
            documents.append(
                CorpusDocument(
                    post_id=record["post_id"],
                    title=record["title"],
                    body_prose=record["body_prose"],
                    tags=tuple(record["tags"]),
                    snippets=tuple(
                        SnippetRecord(
                            snippet_id=s["snippet_id"],
                            language=Language(s["language"]),
                            code=s["code"],
                        )
                        for s in record["snippets"]
                    ),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CorpusError(
                f"{path}: line {lineno}: bad corpus record: {exc}"
            ) from exc
    return documents


def to_posts(documents: list[CorpusDocument]) -> list[Post]:
    """Convert store documents into scoring/indexing domain objects."""
    posts = []
    for doc in documents:
        snippets = tuple(
            CodeSnippet(
                id=s.snippet_id,
                code=s.code,
                language=s.language,
                post_id=doc.post_id,
            )
            for s in doc.snippets
        )
        posts.append(Post(id=doc.post_id, prose=doc.prose, snippets=snippets))
    return posts
