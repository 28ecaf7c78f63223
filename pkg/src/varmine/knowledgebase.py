"""Knowledge triple store: build, compress, persist, query.

Each triple pairs a snippet fingerprint with a property and the running
(score_sum, occurrence_count) aggregate. Building emits one triple per
snippet per property with count 1; compression merges same-property triples
whose fingerprints clear a similarity threshold, summing both fields, so
the mean score of a popular snippet shape converges as evidence accrues.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

from .errors import ConfigurationError, CorpusError
from .fingerprint import StructuralFingerprint, compute_fingerprint, is_duplicate
from .lexicon import Post, PropertyLexicon, ScoreVector, score_vector
from .storage import read_jsonl, write_jsonl

log = logging.getLogger(__name__)

KB_FORMAT_VERSION = 1


@dataclass(frozen=True)
class KnowledgeTriple:
    fingerprint: StructuralFingerprint
    property: str
    score_sum: int
    occurrence_count: int
    representative_snippet_id: str

    def __post_init__(self) -> None:
        if self.occurrence_count < 1:
            raise ValueError("occurrence_count must be at least 1")

    @property
    def mean_score(self) -> float:
        return self.score_sum / self.occurrence_count


@dataclass(frozen=True)
class KnowledgeBase:
    triples: tuple[KnowledgeTriple, ...]
    dedup_threshold: float = 1.0
    lexicon_digest: str = ""

    def __len__(self) -> int:
        return len(self.triples)


def build(corpus: list[Post], lexicon: PropertyLexicon) -> KnowledgeBase:
    """One uncompressed triple per (snippet, property) across the corpus."""
    if not corpus:
        raise ValueError("cannot build a knowledgebase from an empty corpus")
    triples: list[KnowledgeTriple] = []
    for post in corpus:
        scores = score_vector(post, lexicon)
        for snippet in post.snippets:
            try:
                fingerprint = compute_fingerprint(snippet)
            except ValueError as exc:
                log.warning("skipping snippet %s: %s", snippet.id, exc)
                continue
            for entry in lexicon:
                triples.append(
                    KnowledgeTriple(
                        fingerprint=fingerprint,
                        property=entry.name,
                        score_sum=scores[entry.name],
                        occurrence_count=1,
                        representative_snippet_id=snippet.id,
                    )
                )
    return KnowledgeBase(
        triples=tuple(triples),
        dedup_threshold=1.0,
        lexicon_digest=lexicon.digest(),
    )


def compress(kb: KnowledgeBase, threshold: float = 1.0) -> KnowledgeBase:
    """Merge same-property triples whose fingerprints reach `threshold`.

    Merging is greedy and earliest-first: each triple joins the first
    surviving group it matches. At threshold 1.0 groups are exact
    set-equality classes and each group's representative id is the smallest
    member id, so the result is independent of ingestion order; below 1.0,
    similarity is not transitive and the grouping depends on input order
    (documented limitation). Empty fingerprints never merge at any
    threshold: the similarity of two empty sets is 0.
    """
    if not 0 < threshold <= 1:
        raise ConfigurationError(
            f"dedup threshold must be in (0, 1], got {threshold}"
        )
    if threshold == 1.0:
        # exact classes: group by (property, term set); an empty
        # fingerprint gets a positional key so it stays its own group
        groups: dict[object, KnowledgeTriple] = {}
        order: list[object] = []
        for idx, triple in enumerate(kb.triples):
            key: object = (
                (triple.property, triple.fingerprint.terms)
                if triple.fingerprint.terms
                else idx
            )
            if key in groups:
                kept = groups[key]
                groups[key] = replace(
                    kept,
                    score_sum=kept.score_sum + triple.score_sum,
                    occurrence_count=kept.occurrence_count + triple.occurrence_count,
                    representative_snippet_id=min(
                        kept.representative_snippet_id,
                        triple.representative_snippet_id,
                    ),
                )
            else:
                groups[key] = triple
                order.append(key)
        merged = [groups[key] for key in order]
    else:
        merged = []
        for triple in kb.triples:
            for i, kept in enumerate(merged):
                if kept.property == triple.property and is_duplicate(
                    kept.fingerprint, triple.fingerprint, threshold
                ):
                    merged[i] = replace(
                        kept,
                        score_sum=kept.score_sum + triple.score_sum,
                        occurrence_count=kept.occurrence_count
                        + triple.occurrence_count,
                    )
                    break
            else:
                merged.append(triple)
    return KnowledgeBase(
        triples=tuple(merged),
        dedup_threshold=threshold,
        lexicon_digest=kb.lexicon_digest,
    )


def lookup(
    kb: KnowledgeBase,
    fingerprint: StructuralFingerprint,
    threshold: float = 0.8,
) -> ScoreVector | None:
    """Mean scores of the best-matching triple per property, or None.

    For each property the triple with the highest similarity at or above
    `threshold` wins (ties go to the earliest stored triple). Properties
    with no match are absent; None means nothing matched at all.
    """
    if not 0 < threshold <= 1:
        raise ConfigurationError(
            f"lookup threshold must be in (0, 1], got {threshold}"
        )
    from .fingerprint import similarity  # local alias for the hot loop

    best: dict[str, tuple[float, KnowledgeTriple]] = {}
    for triple in kb.triples:
        score = similarity(fingerprint, triple.fingerprint)
        if score < threshold:
            continue
        current = best.get(triple.property)
        if current is None or score > current[0]:
            best[triple.property] = (score, triple)
    if not best:
        return None
    return {
        prop: pair[1].mean_score for prop, pair in sorted(best.items())
    }


def save_kb(kb: KnowledgeBase, path: str) -> None:
    """Write the knowledgebase as JSONL: header line, then one triple per line."""
    header = {
        "version": KB_FORMAT_VERSION,
        "lexicon_digest": kb.lexicon_digest,
        "dedup_threshold": kb.dedup_threshold,
    }
    records = [
        {
            "fingerprint": sorted(t.fingerprint.terms),
            "property": t.property,
            "score_sum": t.score_sum,
            "count": t.occurrence_count,
            "rep_id": t.representative_snippet_id,
        }
        for t in kb.triples
    ]
    write_jsonl(path, header, records)


def load_kb(path: str) -> KnowledgeBase:
    """Read a knowledgebase written by save_kb, validating the header."""
    rows = read_jsonl(path)
    try:
        _, header = next(rows)
    except StopIteration:
        raise CorpusError(f"{path}: empty knowledgebase file") from None
    if header.get("version") != KB_FORMAT_VERSION:
        raise CorpusError(
            f"{path}: unsupported knowledgebase version {header.get('version')!r}"
        )
    triples = []
    for lineno, record in rows:
        try:
            triples.append(
                KnowledgeTriple(
                    fingerprint=StructuralFingerprint(
                        frozenset(record["fingerprint"]),
                        record["rep_id"],
                    ),
                    property=record["property"],
                    score_sum=record["score_sum"],
                    occurrence_count=record["count"],
                    representative_snippet_id=record["rep_id"],
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CorpusError(f"{path}: line {lineno}: bad triple: {exc}") from exc
    return KnowledgeBase(
        triples=tuple(triples),
        dedup_threshold=header.get("dedup_threshold", 1.0),
        lexicon_digest=header.get("lexicon_digest", ""),
    )
