"""Average precision, MAP, and before/after run comparison.

AP for one query sums precision@k over the relevant ranks within the
cutoff, divided by min(total relevant, cutoff); the cutoff defaults to 10
to match a top-10 evaluation protocol. A query with no relevant documents
has no defined AP and is excluded from MAP with a warning.

Run files are tab-separated `query_id  rank  snippet_id` lines; judgment
files are `query_id  snippet_id  0|1`. Anything unjudged counts as
non-relevant.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import EvaluationError, UndefinedAPError

log = logging.getLogger(__name__)

DEFAULT_CUTOFF = 10


@dataclass(frozen=True)
class RelevanceJudgments:
    judgments: dict[str, dict[str, int]]  # query id -> snippet id -> 0/1

    def queries(self) -> list[str]:
        return sorted(self.judgments)

    def relevant_ids(self, query_id: str) -> set[str]:
        per_query = self.judgments.get(query_id, {})
        return {sid for sid, rel in per_query.items() if rel == 1}

    def total_relevant(self, query_id: str) -> int:
        return len(self.relevant_ids(query_id))


@dataclass(frozen=True)
class EvalReport:
    rows: tuple[tuple[str, float, float], ...]  # (query, AP before, AP after)
    map_before: float
    map_after: float
    cutoff: int
    skipped: tuple[str, ...] = ()  # queries with no relevant documents

    @property
    def delta(self) -> float:
        return self.map_after - self.map_before


def average_precision(
    ranked_ids: list[str],
    relevant_ids: set[str],
    cutoff: int = DEFAULT_CUTOFF,
    total_relevant: int | None = None,
) -> float:
    """AP at `cutoff` against binary judgments.

    `total_relevant` defaults to len(relevant_ids); pass it explicitly when
    relevant documents exist beyond the judged set intersection.
    """
    if cutoff < 1:
        raise EvaluationError(f"cutoff must be positive, got {cutoff}")
    if total_relevant is None:
        total_relevant = len(relevant_ids)
    if total_relevant == 0:
        raise UndefinedAPError(
            "average precision undefined: query has no relevant documents"
        )
    hits = 0
    precision_sum = 0.0
    for k, doc_id in enumerate(ranked_ids[:cutoff], start=1):
        if doc_id in relevant_ids:
            hits += 1
            precision_sum += hits / k
    return precision_sum / min(total_relevant, cutoff)


def mean_average_precision(per_query_ap: list[float]) -> float:
    if not per_query_ap:
        raise EvaluationError("MAP needs at least one per-query AP value")
    return sum(per_query_ap) / len(per_query_ap)


def load_qrels(path: str) -> RelevanceJudgments:
    """Parse `query_id<TAB>snippet_id<TAB>0|1` lines."""
    judgments: dict[str, dict[str, int]] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise EvaluationError(f"cannot read judgments {path}: {exc}") from exc
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise EvaluationError(
                f"{path}: line {lineno}: expected 3 tab-separated fields, "
                f"got {len(parts)}"
            )
        query_id, snippet_id, rel_text = parts
        if rel_text not in ("0", "1"):
            raise EvaluationError(
                f"{path}: line {lineno}: relevance must be 0 or 1, "
                f"got {rel_text!r}"
            )
        per_query = judgments.setdefault(query_id, {})
        if snippet_id in per_query:
            raise EvaluationError(
                f"{path}: line {lineno}: duplicate judgment for "
                f"({query_id}, {snippet_id})"
            )
        per_query[snippet_id] = int(rel_text)
    if not judgments:
        raise EvaluationError(f"{path}: no judgments found")
    return RelevanceJudgments(judgments)


def load_run(path: str) -> dict[str, list[str]]:
    """Parse `query_id<TAB>rank<TAB>snippet_id` lines into ordered lists."""
    raw: dict[str, list[tuple[int, str]]] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise EvaluationError(f"cannot read run {path}: {exc}") from exc
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise EvaluationError(
                f"{path}: line {lineno}: expected 3 tab-separated fields, "
                f"got {len(parts)}"
            )
        query_id, rank_text, snippet_id = parts
        try:
            rank = int(rank_text)
        except ValueError:
            raise EvaluationError(
                f"{path}: line {lineno}: rank must be an integer, "
                f"got {rank_text!r}"
            ) from None
        if rank < 1:
            raise EvaluationError(
                f"{path}: line {lineno}: rank must be positive, got {rank}"
            )
        raw.setdefault(query_id, []).append((rank, snippet_id))
    if not raw:
        raise EvaluationError(f"{path}: no run entries found")
    run: dict[str, list[str]] = {}
    for query_id, entries in raw.items():
        ranks = [rank for rank, _ in entries]
        if len(ranks) != len(set(ranks)):
            raise EvaluationError(
                f"{path}: query {query_id}: duplicate ranks"
            )
        ids = [sid for _, sid in entries]
        if len(ids) != len(set(ids)):
            raise EvaluationError(
                f"{path}: query {query_id}: snippet ranked twice"
            )
        run[query_id] = [sid for _, sid in sorted(entries)]
    return run


def compare_runs(
    before: dict[str, list[str]],
    after: dict[str, list[str]],
    judgments: RelevanceJudgments,
    cutoff: int = DEFAULT_CUTOFF,
) -> EvalReport:
    """Per-query AP columns and both MAPs for two runs over one query set."""
    if set(before) != set(after):
        only_before = sorted(set(before) - set(after))
        only_after = sorted(set(after) - set(before))
        raise EvaluationError(
            f"run query sets differ: only in before={only_before}, "
            f"only in after={only_after}"
        )
    unjudged = sorted(set(before) - set(judgments.judgments))
    if unjudged:
        raise EvaluationError(
            f"run contains queries with no judgments at all: {unjudged}"
        )
    rows = []
    skipped = []
    for query_id in sorted(before):
        relevant = judgments.relevant_ids(query_id)
        total = judgments.total_relevant(query_id)
        if total == 0:
            skipped.append(query_id)
            log.warning(
                "query %s has no relevant documents; excluded from MAP",
                query_id,
            )
            continue
        ap_before = average_precision(before[query_id], relevant, cutoff, total)
        ap_after = average_precision(after[query_id], relevant, cutoff, total)
        rows.append((query_id, ap_before, ap_after))
    if not rows:
        raise EvaluationError("no queries with relevant documents to score")
    return EvalReport(
        rows=tuple(rows),
        map_before=mean_average_precision([r[1] for r in rows]),
        map_after=mean_average_precision([r[2] for r in rows]),
        cutoff=cutoff,
        skipped=tuple(skipped),
    )


def save_run(run: dict[str, list[str]], path: str) -> None:
    """Write a run in the tab-separated file format, queries sorted."""
    from .storage import atomic_write_text

    lines = []
    for query_id in sorted(run):
        for rank, snippet_id in enumerate(run[query_id], start=1):
            lines.append(f"{query_id}\t{rank}\t{snippet_id}")
    atomic_write_text(path, "\n".join(lines) + "\n")
