import json

import pytest

from detsum.cli import main
from detsum.report import Report


def test_pass_run_exits_zero(tmp_path, capsys):
    out = tmp_path / "r.json"
    rc = main(["sharpness", "--q", "5", "--format", "json", "--out", str(out)])
    assert rc == 0
    rep = Report.from_json(out.read_text())
    assert rep.experiment == "sharpness" and rep.overall_pass


def test_q_accepts_prime_power_notation(capsys):
    assert main(["sharpness", "--q", "3^2", "--format", "text"]) == 0
    assert "3^2" in capsys.readouterr().out


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as e:
        main(["nonsense"])
    assert e.value.code == 2
    assert main(["sharpness", "--q", "2"]) == 2  # even characteristic
    assert main(["identities", "--q", "3^12"]) == 2  # over table budget


def test_sharpness_square_i_is_a_usage_error():
    assert main(["sharpness", "--q", "5", "--i", "1"]) == 2


def test_csv_output(capsys):
    assert main(["sharpness", "--q", "5", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("experiment,q,kind")
    assert all(line.count(",") == lines[0].count(",") for line in lines)


def test_seed_changes_sampled_reports(tmp_path):
    outs = []
    for seed in ("1", "2"):
        p = tmp_path / f"{seed}.json"
        main(["mainthm-bound", "--q", "3", "--trials", "3",
              "--seed", seed, "--format", "json", "--out", str(p)])
        outs.append(json.loads(p.read_text()))
    assert outs[0]["seed"] != outs[1]["seed"]
    assert outs[0]["overall_pass"] and outs[1]["overall_pass"]
