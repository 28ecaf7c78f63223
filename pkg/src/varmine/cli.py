"""Command-line interface.

Subcommands cover the whole pipeline: `ingest` normalizes raw posts into a
corpus store, `index` builds the retrieval index, `build-kb` scores and
stores knowledge triples, `compress` merges duplicate triples, and
`fingerprint`, `search`, `classify`, `eval` expose the query-side
operations. Results go to stdout; diagnostics go to stderr; exit code is 0
on success, 1 on any domain error, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .algebra import PairKind, classify_pair, weighted_preference
from .config import Config, load_config
from .corpus import ingest_posts, load_corpus, save_corpus, to_posts
from .errors import ConfigurationError, QueryError, VarmineError
from .evaluation import compare_runs, load_qrels, load_run
from .fingerprint import CodeSnippet, Language, compute_fingerprint
from .index import build_index, load_index, save_index
from .knowledgebase import build as build_kb
from .knowledgebase import compress, load_kb, save_kb
from .lexicon import load_lexicon
from .ranker import Query, search
from .report import format_report, render_figure, report_json
from .storage import canonical_dumps


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="varmine",
        description="Search and re-rank code snippets by desired properties "
        "mined from discussion posts.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    parser.add_argument(
        "--config",
        metavar="FILE",
        help="JSON config file (default: $VARMINE_CONFIG or built-in defaults)",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser(
        "ingest", help="normalize a raw JSONL post file into a corpus store"
    )
    p.add_argument("input", help="raw posts JSONL file")
    p.add_argument("-o", "--output", required=True, help="corpus store path")
    p.add_argument("--json", action="store_true", help="JSON summary output")
    p.set_defaults(handler=_cmd_ingest)

    p = sub.add_parser("index", help="build the retrieval index from a corpus store")
    p.add_argument("corpus", help="corpus store (from ingest)")
    p.add_argument("-o", "--output", required=True, help="index directory")
    p.add_argument("--json", action="store_true", help="JSON summary output")
    p.set_defaults(handler=_cmd_index)

    p = sub.add_parser(
        "build-kb", help="score snippets against a lexicon into a knowledgebase"
    )
    p.add_argument("corpus", help="corpus store (from ingest)")
    p.add_argument("--lexicon", required=True, help="property lexicon JSON file")
    p.add_argument("-o", "--output", required=True, help="knowledgebase path")
    p.add_argument(
        "--no-compress",
        action="store_true",
        help="keep one triple per snippet instead of merging duplicates",
    )
    p.add_argument(
        "--dedup-threshold",
        type=float,
        help="similarity needed to merge triples (default from config)",
    )
    p.add_argument("--json", action="store_true", help="JSON summary output")
    p.set_defaults(handler=_cmd_build_kb)

    p = sub.add_parser("compress", help="merge duplicate triples in a knowledgebase")
    p.add_argument("kb", help="knowledgebase file")
    p.add_argument("-o", "--output", required=True, help="compressed output path")
    p.add_argument(
        "--threshold",
        type=float,
        help="similarity needed to merge (default from config)",
    )
    p.add_argument("--json", action="store_true", help="JSON summary output")
    p.set_defaults(handler=_cmd_compress)

    p = sub.add_parser(
        "fingerprint", help="print the structural term set of a code file"
    )
    p.add_argument("file", help="code file, or - for stdin")
    p.add_argument(
        "--language",
        default="unknown",
        help="language hint: java, c, cpp, javascript (default: unknown)",
    )
    p.add_argument("--json", action="store_true", help="JSON output")
    p.set_defaults(handler=_cmd_fingerprint)

    p = sub.add_parser("search", help="query the corpus with property boosting")
    p.add_argument("phrase", help="query phrase")
    p.add_argument("--kb", required=True, help="knowledgebase file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--index", help="index directory (from the index command)")
    group.add_argument(
        "--corpus", help="corpus store to index on the fly instead of --index"
    )
    p.add_argument(
        "--property",
        action="append",
        default=[],
        metavar="NAME",
        help="desired property to boost by (repeatable)",
    )
    p.add_argument("--top-k", type=int, default=10, help="results to return")
    p.add_argument(
        "--no-hetero",
        action="store_true",
        help="disable the structural heterogeneity filter",
    )
    p.add_argument(
        "--het-threshold",
        type=float,
        help="similarity above which later results are dropped "
        "(default from config)",
    )
    p.add_argument("--json", action="store_true", help="JSON output")
    p.set_defaults(handler=_cmd_search)

    p = sub.add_parser(
        "classify", help="classify a pair of property score vectors"
    )
    p.add_argument("first", help="score vector, e.g. speed=3,memory=1")
    p.add_argument("second", help="score vector, e.g. speed=1,memory=2")
    p.add_argument(
        "--props",
        required=True,
        help="comma-separated property names to compare on",
    )
    p.add_argument(
        "--weights",
        help="optional weights (name=value,...) to resolve complex variants",
    )
    p.add_argument("--json", action="store_true", help="JSON output")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser(
        "eval", help="compare two ranked runs against relevance judgments"
    )
    p.add_argument("--before", required=True, help="baseline run file")
    p.add_argument("--after", required=True, help="re-ranked run file")
    p.add_argument("--qrels", required=True, help="relevance judgments file")
    p.add_argument("--cutoff", type=int, default=10, help="AP cutoff (default 10)")
    p.add_argument(
        "--figure",
        metavar="FILE",
        help="also render the comparison chart to this image file",
    )
    p.add_argument("--json", action="store_true", help="JSON report output")
    p.set_defaults(handler=_cmd_eval)

    return parser


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if not getattr(args, "handler", None):
        parser.print_usage(sys.stderr)
        return 2
    try:
        config = load_config(args.config)
        return args.handler(args, config)
    except VarmineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())


def _cmd_ingest(args, config: Config) -> int:
    documents = ingest_posts(args.input)
    save_corpus(documents, args.output)
    snippet_count = sum(len(d.snippets) for d in documents)
    if args.json:
        print(canonical_dumps({
            "posts": len(documents),
            "snippets": snippet_count,
            "output": args.output,
        }))
    else:
        print(
            f"ingested {len(documents)} posts, {snippet_count} snippets "
            f"-> {args.output}"
        )
    return 0


def _cmd_index(args, config: Config) -> int:
    documents = load_corpus(args.corpus)
    index = build_index(to_posts(documents))
    save_index(index, args.output)
    if args.json:
        print(canonical_dumps({
            "documents": index.total_docs,
            "terms": len(index.postings),
            "output": args.output,
        }))
    else:
        print(
            f"indexed {index.total_docs} snippets, "
            f"{len(index.postings)} terms -> {args.output}"
        )
    return 0


def _cmd_build_kb(args, config: Config) -> int:
    documents = load_corpus(args.corpus)
    lexicon = load_lexicon(args.lexicon)
    kb = build_kb(to_posts(documents), lexicon)
    built = len(kb)
    threshold = (
        args.dedup_threshold
        if args.dedup_threshold is not None
        else config.dedup_threshold
    )
    if not args.no_compress:
        kb = compress(kb, threshold)
    save_kb(kb, args.output)
    if args.json:
        print(canonical_dumps({
            "triples_built": built,
            "triples_stored": len(kb),
            "compressed": not args.no_compress,
            "output": args.output,
        }))
    else:
        detail = (
            f"compressed to {len(kb)}" if not args.no_compress else "uncompressed"
        )
        print(f"built {built} triples ({detail}) -> {args.output}")
    return 0


def _cmd_compress(args, config: Config) -> int:
    kb = load_kb(args.kb)
    threshold = (
        args.threshold if args.threshold is not None else config.dedup_threshold
    )
    compressed = compress(kb, threshold)
    save_kb(compressed, args.output)
    if args.json:
        print(canonical_dumps({
            "triples_before": len(kb),
            "triples_after": len(compressed),
            "threshold": threshold,
            "output": args.output,
        }))
    else:
        print(
            f"compressed {len(kb)} -> {len(compressed)} triples "
            f"at threshold {threshold} -> {args.output}"
        )
    return 0


def _cmd_fingerprint(args, config: Config) -> int:
    if args.file == "-":
        code = sys.stdin.read()
    else:
        with open(args.file, encoding="utf-8") as fh:
            code = fh.read()
    snippet = CodeSnippet(
        id=args.file, code=code, language=Language.coerce(args.language)
    )
    fingerprint = compute_fingerprint(snippet)
    if args.json:
        print(canonical_dumps({"terms": fingerprint.sorted_terms()}))
    else:
        for term in fingerprint.sorted_terms():
            print(term)
    return 0


def _cmd_search(args, config: Config) -> int:
    if args.index:
        index = load_index(args.index)
    else:
        index = build_index(to_posts(load_corpus(args.corpus)))
    kb = load_kb(args.kb)
    query = Query(
        phrase=args.phrase,
        desired_properties=tuple(args.property),
        top_k=args.top_k,
        heterogeneity_enabled=not args.no_hetero,
        het_threshold=(
            args.het_threshold
            if args.het_threshold is not None
            else config.het_threshold
        ),
    )
    results = search(query, index, kb, config)
    if args.json:
        print(canonical_dumps([
            {
                "rank": r.final_rank,
                "snippet_id": r.snippet.id,
                "base_score": r.base_score,
                "property_score": r.property_score,
                "fingerprint": sorted(r.fingerprint.terms),
            }
            for r in results
        ]))
    else:
        if not results:
            print("no results", file=sys.stderr)
            return 0
        for r in results:
            prop = "-" if r.property_score is None else f"{r.property_score:.3f}"
            print(
                f"{r.final_rank}\t{r.snippet.id}\t"
                f"base={r.base_score:.3f}\tproperty={prop}\t"
                f"{' '.join(sorted(r.fingerprint.terms))}"
            )
    return 0


def _parse_vector(text: str, label: str) -> dict[str, int]:
    vector: dict[str, int] = {}
    for part in text.split(","):
        name, sep, value = part.partition("=")
        name = name.strip()
        if not sep or not name:
            raise QueryError(
                f"{label}: expected name=integer pairs, got {part!r}"
            )
        try:
            vector[name] = int(value)
        except ValueError:
            raise QueryError(
                f"{label}: score for {name!r} must be an integer, "
                f"got {value!r}"
            ) from None
    return vector


def _parse_weights(text: str) -> dict[str, float]:
    weights: dict[str, float] = {}
    for part in text.split(","):
        name, sep, value = part.partition("=")
        name = name.strip()
        if not sep or not name:
            raise ConfigurationError(
                f"weights: expected name=value pairs, got {part!r}"
            )
        try:
            weights[name] = float(value)
        except ValueError:
            raise ConfigurationError(
                f"weights: value for {name!r} must be a number, got {value!r}"
            ) from None
    return weights


def _cmd_classify(args, config: Config) -> int:
    first = _parse_vector(args.first, "first vector")
    second = _parse_vector(args.second, "second vector")
    props = [p.strip() for p in args.props.split(",") if p.strip()]
    result = classify_pair(first, second, props)
    preferred = None
    if args.weights:
        side = weighted_preference(first, second, _parse_weights(args.weights))
        preferred = side.value if side is not None else "tie"
    if args.json:
        payload = {
            "kind": result.kind.value,
            "stronger": result.stronger.value if result.stronger else None,
        }
        if preferred is not None:
            payload["preferred"] = preferred
        print(canonical_dumps(payload))
    else:
        if result.kind is PairKind.SIMPLE_VARIANT:
            print(f"{result.kind.value} stronger={result.stronger.value}")
        else:
            print(result.kind.value)
        if preferred is not None:
            print(f"preferred={preferred}")
    return 0


def _cmd_eval(args, config: Config) -> int:
    before = load_run(args.before)
    after = load_run(args.after)
    judgments = load_qrels(args.qrels)
    report = compare_runs(before, after, judgments, cutoff=args.cutoff)
    if args.json:
        print(report_json(report))
    else:
        print(format_report(report))
    if args.figure:
        render_figure(report, args.figure)
        print(f"figure written to {args.figure}", file=sys.stderr)
    return 0
