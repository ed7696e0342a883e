import json

from detsum.field import field_for_q
from detsum.report import Report, quantize


def _sample_report():
    r = Report.start("sharpness", field_for_q(5), {"i": 2}, seed=7)
    r.record("size", 20, 20, True)
    r.record("some float", 0.1 + 0.2, 0.3, True)
    r.record("soft ratio", 1.5, 1.0, False, hard=False)
    r.add_ratio_row(size=10, value=1 / 3)
    r.info["note"] = "x"
    r.runtime_ms = 12.345
    return r


def test_quantize_is_idempotent_and_roundtrips():
    x = {"a": [0.123456789012345678, 1, True], "b": 2.0}
    q1 = quantize(x)
    assert quantize(q1) == q1
    assert json.loads(json.dumps(q1)) == q1


def test_overall_pass_ignores_soft_records():
    r = _sample_report()
    assert r.overall_pass
    r.record("hard failure", 1, 2, False)
    assert not r.overall_pass


def test_json_roundtrip_and_stability():
    r = _sample_report()
    text = r.to_json()
    assert text == _sample_report().to_json()  # deterministic bytes
    assert "runtime_ms" not in text
    assert "runtime_ms" in r.to_json(include_runtime=True)
    back = Report.from_json(text)
    assert back.to_json() == text
    assert back.ctx["q"] == 5 and back.seed == 7


def test_csv_has_one_row_per_record():
    r = _sample_report()
    lines = r.to_csv().strip().splitlines()
    assert lines[0].startswith("experiment,q,kind")
    assert len(lines) == 1 + 3 + 2  # header + assertions + one line per ratio key


def test_text_lists_failures_first():
    r = _sample_report()
    r.record("broken", 0, 1, False)
    out = r.to_text()
    assert out.index("broken") < out.index("size")
    assert "FAIL" in out
