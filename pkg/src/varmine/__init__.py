"""Code-snippet search with property-aware re-ranking.

The package mines discussion posts for code snippets, scores each snippet
on desired properties (speed, memory, readability...) from the surrounding
prose, fingerprints snippet structure for duplicate detection, and uses the
resulting knowledgebase to re-rank lexical search results so that, say, the
fast implementation of a function outranks the slow textbook one.
"""

__version__ = "0.1.0"

from .algebra import (
    ContextDescriptor,
    PairClassification,
    PairKind,
    Side,
    check_strict_partial_order,
    classify_pair,
    filter_by_context,
    is_clone,
    stronger_than,
    weighted_preference,
)
from .config import Config, load_config
from .corpus import (
    CorpusDocument,
    SnippetRecord,
    detect_language,
    ingest_posts,
    load_corpus,
    save_corpus,
    split_body,
    to_posts,
)
from .errors import (
    ConfigurationError,
    CorpusError,
    EvaluationError,
    QueryError,
    UndefinedAPError,
    VarmineError,
)
from .evaluation import (
    EvalReport,
    RelevanceJudgments,
    average_precision,
    compare_runs,
    load_qrels,
    load_run,
    mean_average_precision,
    save_run,
)
from .fingerprint import (
    CodeSnippet,
    Language,
    StructuralFingerprint,
    Token,
    compute_fingerprint,
    is_duplicate,
    similarity,
    tokenize,
)
from .index import SnippetIndex, bm25_scores, build_index, load_index, save_index
from .knowledgebase import (
    KnowledgeBase,
    KnowledgeTriple,
    load_kb,
    lookup,
    save_kb,
)
from .knowledgebase import build as build_knowledgebase
from .knowledgebase import compress as compress_knowledgebase
from .lexicon import (
    Post,
    PropertyCategory,
    PropertyEntry,
    PropertyLexicon,
    ScoreVector,
    load_lexicon,
    property_score,
    prose_tokens,
    score_vector,
    term_frequency,
)
from .ranker import (
    Query,
    SearchResult,
    base_rank,
    boost_rank,
    heterogeneity_filter,
    search,
)
from .report import format_report, render_figure, report_json
from .stemming import stem

__all__ = [
    "__version__",
    "Config",
    "ConfigurationError",
    "ContextDescriptor",
    "CorpusDocument",
    "CorpusError",
    "CodeSnippet",
    "EvalReport",
    "EvaluationError",
    "KnowledgeBase",
    "KnowledgeTriple",
    "Language",
    "PairClassification",
    "PairKind",
    "Post",
    "PropertyCategory",
    "PropertyEntry",
    "PropertyLexicon",
    "Query",
    "QueryError",
    "RelevanceJudgments",
    "ScoreVector",
    "SearchResult",
    "Side",
    "SnippetIndex",
    "SnippetRecord",
    "StructuralFingerprint",
    "Token",
    "UndefinedAPError",
    "VarmineError",
    "average_precision",
    "base_rank",
    "bm25_scores",
    "boost_rank",
    "build_index",
    "build_knowledgebase",
    "check_strict_partial_order",
    "classify_pair",
    "compare_runs",
    "compress_knowledgebase",
    "compute_fingerprint",
    "detect_language",
    "filter_by_context",
    "format_report",
    "heterogeneity_filter",
    "ingest_posts",
    "is_clone",
    "is_duplicate",
    "load_config",
    "load_corpus",
    "load_index",
    "load_kb",
    "load_lexicon",
    "load_qrels",
    "load_run",
    "lookup",
    "mean_average_precision",
    "property_score",
    "prose_tokens",
    "render_figure",
    "report_json",
    "save_corpus",
    "save_index",
    "save_kb",
    "save_run",
    "score_vector",
    "search",
    "similarity",
    "split_body",
    "stem",
    "stronger_than",
    "term_frequency",
    "to_posts",
    "tokenize",
    "weighted_preference",
]
