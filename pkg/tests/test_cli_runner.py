from __future__ import annotations

import csv
import json

import pytest
from click.testing import CliRunner

from artifact.cli_runner import (
    SMOKE,
    ConfigError,
    RunConfig,
    expand_grid,
    main,
    parse_config,
    run,
    run_task,
)
from artifact.langlands_map import theorem_exclusion


def quiet(_msg):
    pass


def test_cmbi1_grid_has_nine_tasks():
    cfg = parse_config("p = 7\nsuite = cmbi1\nm_max = 3\nj_max = 3\n")
    assert len(expand_grid(cfg)) == 9


def test_empty_suite_expands_to_nothing():
    assert expand_grid(RunConfig(suite=[])) == []


def test_grid_is_deterministic_and_duplicate_free():
    cfg = parse_config("p = 7\np = 7\nsuite = invmt1, invmt1\n")
    a, b = expand_grid(cfg), expand_grid(cfg)
    assert [t.key for t in a] == [t.key for t in b]
    assert len({t.key for t in a}) == len(a)


@pytest.mark.parametrize("text,where", [
    ("p = 7\nbogus = 1\n", "line 2"),
    ("p = 7\nsuite cmbi1\n", "line 2"),
    ("p = x\n", "line 1"),
    ("suite = nonsense\n", "nonsense"),
    ("jobs =\n", "line 1"),
])
def test_config_errors_name_the_line(text, where):
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert where in str(exc.value)


def test_config_lists_and_slopes():
    cfg = parse_config("p = 7, 11\np = 13\nslope = 5/2\nslope = 3:1:1,2\nt = 4\nb = 2..4\nc = ALL\n")
    assert cfg.primes == [7, 11, 13] and cfg.t == [4] and cfg.b == "2..4"
    assert [s.nu for s in cfg.slopes] == [2.5, 3] and cfg.slopes[1].unit == (1, 2)


def test_final_prop_grid_marks_exclusions_skipped(tmp_path):
    cfg = parse_config(f"p = 7\nsuite = predict\nreport = {tmp_path / 'r.jsonl'}\n")
    tasks = expand_grid(cfg)
    code, recs = run(cfg, quiet)
    assert code == 0
    pairs = {(r["param"]["b"], r["param"]["c"]): r for r in recs}
    for (b, c), rec in pairs.items():
        if rec["status"] != "SKIPPED":
            assert theorem_exclusion(b, c, 7) is None
        elif theorem_exclusion(b, c, 7) is not None:
            assert "excluded" in rec["witness"]["violated"]
    assert len(tasks) == len(recs) == 6 * 6


def test_record_schema_and_replay(tmp_path):
    cfg = parse_config(f"p = 7\nb = 5\nc = 1\nsuite = gen1\nreport = {tmp_path / 'r.jsonl'}\n")
    tasks = expand_grid(cfg)
    code, recs = run(cfg, quiet)
    assert code == 0 and recs
    assert set(recs[0]) == {"check", "ref", "param", "indices", "status", "witness", "wall_time"}
    again = run_task(tasks[0], cfg)
    assert {k: v for k, v in again.items() if k != "wall_time"} == \
        {k: v for k, v in recs[0].items() if k != "wall_time"}
    lines = (tmp_path / "r.jsonl").read_text().splitlines()
    assert [json.loads(x)["status"] for x in lines] == [r["status"] for r in recs]


def test_smoke_suite_exits_zero(tmp_path):
    res = CliRunner().invoke(main, ["--report", str(tmp_path / "s.jsonl"), "--jobs", "2"])
    assert res.exit_code == 0, res.output
    for cid in SMOKE:
        assert cid in res.output


@pytest.mark.parametrize("suite", ["fault_cmbi4", "fault_invmt2", "fault_gen1"])
def test_fault_fixtures_exit_one(tmp_path, suite):
    args = ["--suite", suite, "--p", "7", "--report", str(tmp_path / "f.jsonl")]
    if suite == "fault_gen1":
        cfg = tmp_path / "c.cfg"
        cfg.write_text("b = 5\nc = 1\nslope = 2\n")
        args += ["--config", str(cfg)]
    res = CliRunner().invoke(main, args)
    assert res.exit_code == 1, res.output
    rec = json.loads((tmp_path / "f.jsonl").read_text().splitlines()[0])
    assert rec["status"] == "FAIL" and rec["witness"]


def test_starved_precision_exits_two(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("p = 7\nb = 5\nc = 1\nsuite = gen1\n")
    res = CliRunner().invoke(main, ["--config", str(cfg), "--precision", "0", "--max-doublings", "0",
                                    "--report", str(tmp_path / "r.jsonl")])
    assert res.exit_code == 2, res.output


def test_csv_mirror_and_env_report_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("ARTIFACT_REPORT_DIR", str(tmp_path / "out"))
    res = CliRunner().invoke(main, ["--suite", "cmbi4", "--csv", str(tmp_path / "m.csv")])
    assert res.exit_code == 0, res.output
    recs = (tmp_path / "out" / "verify_report.jsonl").read_text().splitlines()
    rows = list(csv.reader(open(tmp_path / "m.csv")))
    assert rows[0][0] == "check" and len(rows) == len(recs) + 1


def test_unwritable_report_exits_nonzero(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    res = CliRunner().invoke(main, ["--suite", "cmbi4", "--report", str(blocker / "x" / "r.jsonl")])
    assert res.exit_code == 3


def test_bad_config_is_a_usage_error(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("p = 7\nnope = 2\n")
    res = CliRunner().invoke(main, ["--config", str(cfg)])
    assert res.exit_code == 2 and "line 2" in res.output
