"""Rendering for evaluation reports: text table, JSON, and figure.

The text table is the primary delimited output; the JSON form is canonical
(stable byte-for-byte across runs); the optional figure renders the same
per-query comparison as a grouped bar chart through matplotlib's Agg
backend, so it works headless.
"""

from __future__ import annotations

from .evaluation import EvalReport
from .storage import canonical_dumps


def format_report(report: EvalReport) -> str:
    """Aligned text table: one row per query, MAP summary row at the end."""
    header = ("query", "ap_before", "ap_after", "delta")
    rows = [
        (query, f"{before:.4f}", f"{after:.4f}", f"{after - before:+.4f}")
        for query, before, after in report.rows
    ]
    summary = (
        "MAP",
        f"{report.map_before:.4f}",
        f"{report.map_after:.4f}",
        f"{report.delta:+.4f}",
    )
    widths = [
        max(len(header[i]), max((len(r[i]) for r in rows), default=0), len(summary[i]))
        for i in range(4)
    ]

    def fmt(row: tuple[str, str, str, str]) -> str:
        return "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()

    lines = [fmt(header), fmt(tuple("-" * w for w in widths))]
    lines.extend(fmt(row) for row in rows)
    lines.append(fmt(tuple("-" * w for w in widths)))
    lines.append(fmt(summary))
    if report.skipped:
        lines.append(
            f"skipped (no relevant documents): {', '.join(report.skipped)}"
        )
    return "\n".join(lines)


def report_json(report: EvalReport) -> str:
    payload = {
        "cutoff": report.cutoff,
        "queries": [
            {"query": q, "ap_before": before, "ap_after": after}
            for q, before, after in report.rows
        ],
        "map_before": report.map_before,
        "map_after": report.map_after,
        "skipped": list(report.skipped),
    }
    return canonical_dumps(payload)


def render_figure(report: EvalReport, path: str) -> None:
    """Grouped per-query AP bars with MAP reference lines, saved to `path`."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    queries = [row[0] for row in report.rows]
    before = [row[1] for row in report.rows]
    after = [row[2] for row in report.rows]
    positions = range(len(queries))
    width = 0.38

    fig, ax = plt.subplots(figsize=(max(6.0, 1.1 * len(queries)), 4.0))
    ax.bar(
        [p - width / 2 for p in positions], before, width,
        label=f"before (MAP {report.map_before:.2f})", color="#9aa5b1",
    )
    ax.bar(
        [p + width / 2 for p in positions], after, width,
        label=f"after (MAP {report.map_after:.2f})", color="#3e7cb1",
    )
    ax.axhline(report.map_before, color="#9aa5b1", linestyle="--", linewidth=1)
    ax.axhline(report.map_after, color="#3e7cb1", linestyle="--", linewidth=1)
    ax.set_xticks(list(positions))
    ax.set_xticklabels(queries, rotation=30, ha="right")
    ax.set_ylabel(f"average precision @ {report.cutoff}")
    ax.set_ylim(0, 1.05)
    ax.legend(loc="upper left")
    ax.set_title("Ranking quality before and after property boosting")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
