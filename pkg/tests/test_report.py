import json

from varmine.evaluation import EvalReport
from varmine.report import format_report, render_figure, report_json


def make_report(skipped=()):
    return EvalReport(
        rows=(("alpha", 0.1, 0.7), ("beta queries", 0.3, 0.6)),
        map_before=0.2,
        map_after=0.65,
        cutoff=10,
        skipped=tuple(skipped),
    )


class TestFormatReport:
    def test_table_layout(self):
        text = format_report(make_report())
        lines = text.splitlines()
        assert lines[0].split() == ["query", "ap_before", "ap_after", "delta"]
        assert set(lines[1]) <= {"-", " "}
        assert "alpha" in text
        assert "beta queries" in text
        assert "+0.6000" in text  # alpha delta
        assert lines[-1].startswith("MAP")
        assert "0.2000" in lines[-1] and "0.6500" in lines[-1]

    def test_negative_delta_signed(self):
        report = EvalReport(
            rows=(("q", 0.5, 0.2),), map_before=0.5, map_after=0.2, cutoff=10,
        )
        assert "-0.3000" in format_report(report)

    def test_skipped_note(self):
        text = format_report(make_report(skipped=("ghost",)))
        assert "ghost" in text
        assert "no relevant" in text

    def test_no_skipped_note_by_default(self):
        assert "no relevant" not in format_report(make_report())


class TestReportJson:
    def test_fields(self):
        payload = json.loads(report_json(make_report()))
        assert payload["map_before"] == 0.2
        assert payload["map_after"] == 0.65
        assert payload["cutoff"] == 10
        assert payload["queries"][0] == {
            "query": "alpha", "ap_before": 0.1, "ap_after": 0.7,
        }

    def test_canonical_and_deterministic(self):
        a = report_json(make_report())
        b = report_json(make_report())
        assert a == b
        assert ": " not in a  # compact separators

    def test_skipped_listed(self):
        payload = json.loads(report_json(make_report(skipped=("ghost",))))
        assert payload["skipped"] == ["ghost"]


class TestRenderFigure:
    def test_writes_png(self, tmp_path):
        out = tmp_path / "fig.png"
        render_figure(make_report(), str(out))
        data = out.read_bytes()
        assert data[:8] == b"\x89PNG\r\n\x1a\n"
        assert len(data) > 1000

    def test_respects_extension(self, tmp_path):
        out = tmp_path / "fig.svg"
        render_figure(make_report(), str(out))
        assert b"<svg" in out.read_bytes()[:300]
