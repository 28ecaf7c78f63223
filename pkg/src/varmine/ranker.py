"""Search pipeline: BM25 base ranking, property boosting, heterogeneity.

base_rank retrieves snippets lexically. boost_rank reorders them by the
summed knowledgebase mean score over the query's desired properties, with
the base score as tiebreak, so a structurally recognized fast variant rises
above lexically stronger but slower ones. The heterogeneity filter then
walks the list in rank order and drops any result too similar in structure
to one already kept, diversifying what the user actually sees.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .config import Config
from .errors import ConfigurationError, QueryError
from .fingerprint import CodeSnippet, StructuralFingerprint, similarity
from .index import SnippetIndex, bm25_scores
from .knowledgebase import KnowledgeBase, lookup
from .lexicon import prose_tokens
from .stemming import stem


@dataclass(frozen=True)
class Query:
    phrase: str
    desired_properties: tuple[str, ...] = ()
    top_k: int = 10
    heterogeneity_enabled: bool = True
    het_threshold: float = 0.8

    def __post_init__(self) -> None:
        if not self.phrase.strip():
            raise QueryError("query phrase must be nonempty")
        if self.top_k < 1:
            raise QueryError(f"top_k must be positive, got {self.top_k}")
        if not 0 < self.het_threshold <= 1:
            raise QueryError(
                f"heterogeneity threshold must be in (0, 1], got "
                f"{self.het_threshold}"
            )

    def terms(self) -> list[str]:
        return [stem(t) for t in prose_tokens(self.phrase)]


@dataclass(frozen=True)
class SearchResult:
    snippet: CodeSnippet
    fingerprint: StructuralFingerprint
    base_score: float
    property_score: float | None = None
    final_rank: int = 0


def _assign_ranks(results: list[SearchResult]) -> list[SearchResult]:
    return [replace(r, final_rank=i) for i, r in enumerate(results, start=1)]


def base_rank(
    query: Query,
    index: SnippetIndex,
    k1: float = 1.2,
    b: float = 0.75,
) -> list[SearchResult]:
    """All snippets matching at least one query term, best BM25 first."""
    terms = query.terms()
    if not terms:
        raise QueryError(f"query {query.phrase!r} contains no usable terms")
    scores = bm25_scores(index, terms, k1=k1, b=b)
    snippets_by_id = {s.id: s for s in index.snippets}
    ordered = sorted(scores.items(), key=lambda item: (-item[1], item[0]))
    results = [
        SearchResult(
            snippet=snippets_by_id[doc_id],
            fingerprint=index.fingerprints[doc_id],
            base_score=score,
        )
        for doc_id, score in ordered
    ]
    return _assign_ranks(results)


def boost_rank(
    results: list[SearchResult],
    query: Query,
    kb: KnowledgeBase,
    lookup_threshold: float = 0.8,
) -> list[SearchResult]:
    """Reorder by summed property mean scores; membership never changes.

    Each result's property_score sums the knowledgebase lookup mean over
    the desired properties; a property the lookup misses contributes 0, and
    the score stays absent only when every property misses. Ordering treats
    an absent score as 0, so negative evidence sinks below no evidence.
    """
    if not query.desired_properties:
        return _assign_ranks(list(results))
    known = {t.property for t in kb.triples}
    for prop in query.desired_properties:
        if prop not in known:
            raise QueryError(f"property {prop!r} is not in the knowledgebase")
    boosted = []
    for result in results:
        vector = lookup(kb, result.fingerprint, lookup_threshold)
        if vector is None or not any(p in vector for p in query.desired_properties):
            boosted.append(replace(result, property_score=None))
        else:
            total = sum(vector.get(p, 0.0) for p in query.desired_properties)
            boosted.append(replace(result, property_score=total))
    boosted.sort(
        key=lambda r: (
            -(r.property_score if r.property_score is not None else 0.0),
            -r.base_score,
            r.snippet.id,
        )
    )
    return _assign_ranks(boosted)


def heterogeneity_filter(
    results: list[SearchResult],
    threshold: float = 0.8,
) -> list[SearchResult]:
    """Keep a result only if structurally dissimilar to everything kept.

    Rank-order scan: the first result always survives; later ones survive
    iff their fingerprint similarity with every kept result stays below the
    threshold.
    """
    if not 0 < threshold <= 1:
        raise ConfigurationError(
            f"heterogeneity threshold must be in (0, 1], got {threshold}"
        )
    kept: list[SearchResult] = []
    for result in results:
        if all(
            similarity(result.fingerprint, other.fingerprint) < threshold
            for other in kept
        ):
            kept.append(result)
    return _assign_ranks(kept)


def search(
    query: Query,
    index: SnippetIndex,
    kb: KnowledgeBase,
    config: Config | None = None,
) -> list[SearchResult]:
    """base_rank -> pool cut -> boost -> optional heterogeneity -> top_k."""
    cfg = config or Config()
    if cfg.candidate_pool < query.top_k:
        raise ConfigurationError(
            f"candidate pool {cfg.candidate_pool} is smaller than top_k "
            f"{query.top_k}"
        )
    results = base_rank(query, index, k1=cfg.bm25_k1, b=cfg.bm25_b)
    results = results[: cfg.candidate_pool]
    results = boost_rank(results, query, kb, cfg.lookup_threshold)
    if cfg.blend_lambda is not None and query.desired_properties:
        results = _blend(results, cfg.blend_lambda)
    if query.heterogeneity_enabled:
        results = heterogeneity_filter(results, query.het_threshold)
    return _assign_ranks(results[: query.top_k])


def _blend(results: list[SearchResult], lam: float) -> list[SearchResult]:
    """Experimental ordering by lam*norm(base) + (1-lam)*norm(property).

    Both components are min-max normalized over the candidate pool; a
    degenerate range normalizes to 0 for every result.
    """
    if not 0 <= lam <= 1:
        raise ConfigurationError(f"blend lambda must be in [0, 1], got {lam}")
    if not results:
        return results

    def norm(values: list[float]) -> list[float]:
        low, high = min(values), max(values)
        if high == low:
            return [0.0] * len(values)
        return [(v - low) / (high - low) for v in values]

    base = norm([r.base_score for r in results])
    prop = norm([
        r.property_score if r.property_score is not None else 0.0
        for r in results
    ])
    keyed = sorted(
        zip(results, base, prop),
        key=lambda t: (-(lam * t[1] + (1 - lam) * t[2]), t[0].snippet.id),
    )
    return _assign_ranks([t[0] for t in keyed])
