"""Configuration, grid expansion, parallel execution and reports for `verify`.

A configuration file holds `key = value` lines; a repeated key forms a
list and a value may also be a comma-separated list.  Recognised keys:

    p              primes (default 7)
    b, c           ALL, an integer, or an inclusive range lo..hi
    d              values of d (default 1)
    t              "minimal" (default) or integers
    slope          "minimal" (nu = c + 1/2) or nu[:E[:u0,u1,...]], e.g. 5/2:2
    suite          check ids, or ALL / smoke
    m_max, j_max   index bounds for the binomial recurrence grid (default 12)
    b_max, k_max   bounds for the alternating-sum grid (default 20, 12)
    n_max          bound for the superfactorial determinant grid (default 6)
    precision      initial precision in pi-units (default E (t + 8))
    max_doublings  precision doublings after INCONCLUSIVE (default 4)
    jobs           worker processes (default 1)
    report, csv    output paths

Every (check, point, indices) task yields exactly one JSONL record.
Combinations that violate a hypothesis, and parameter points that break the
standing conventions, become SKIPPED records with the violated clause.
"""

from __future__ import annotations

import csv
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

import click

from . import binomial_lab as bl
from . import langlands_map as lm
from . import proof_harness as ph
from .padic_core import ParamPoint, _epsilon

REPORT_DIR_ENV = "ARTIFACT_REPORT_DIR"
DEFAULT_REPORT = "verify_report.jsonl"
STATUSES = (bl.PASS, bl.FAIL, bl.INCONCLUSIVE, bl.SKIPPED)


class ConfigError(ValueError):
    """Malformed configuration; the message names the line and key."""


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SlopeSpec:
    """nu = None selects the minimal slope c + 1/2 at each (b, c)."""

    nu: Fraction | None = None
    E: int | None = None
    unit: tuple[int, ...] = (1,)

    def at(self, c: int) -> tuple[Fraction, int, tuple[int, ...]]:
        if self.nu is None:
            return Fraction(2 * c + 1, 2), 2, self.unit
        return self.nu, self.E or self.nu.denominator, self.unit


@dataclass
class RunConfig:
    primes: list[int] = field(default_factory=lambda: [7])
    b: str = "ALL"
    c: str = "ALL"
    d: list[int] = field(default_factory=lambda: [1])
    t: list[int] | None = None  # None: minimal legal t per check
    slopes: list[SlopeSpec] = field(default_factory=lambda: [SlopeSpec()])
    suite: list[str] = field(default_factory=list)
    m_max: int = 12
    j_max: int = 12
    b_max: int = 20
    k_max: int = 12
    n_max: int = 6
    precision: int | None = None
    max_doublings: int = ph.DEFAULT_DOUBLINGS
    jobs: int = 1
    report: str | None = None
    csv: str | None = None


_LIST_KEYS = {"p", "d", "t", "slope", "suite"}
_INT_KEYS = {"m_max", "j_max", "b_max", "k_max", "n_max", "precision", "max_doublings", "jobs"}
_STR_KEYS = {"b", "c", "report", "csv"}


def _parse_slope(text: str) -> SlopeSpec:
    if text.lower() == "minimal":
        return SlopeSpec()
    parts = text.split(":")
    nu = Fraction(parts[0])
    E = int(parts[1]) if len(parts) > 1 and parts[1] else None
    unit = tuple(int(u) for u in parts[2].split(",")) if len(parts) > 2 else (1,)
    return SlopeSpec(nu, E, unit)


def parse_config(text: str) -> RunConfig:
    """Parse `key = value` lines; repeated keys and comma lists accumulate."""
    raw: dict[str, list[str]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (x.strip() for x in line.split("=", 1))
        if key not in _LIST_KEYS | _INT_KEYS | _STR_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if not value:
            raise ConfigError(f"line {lineno}: key {key!r} has no value")
        # slope values use commas inside the unit polynomial
        items = [value] if key in ("slope", "b", "c") else [v.strip() for v in value.split(",") if v.strip()]
        raw.setdefault(key, []).extend((lineno, v) for v in items)
    cfg = RunConfig()
    for key, entries in raw.items():
        try:
            if key == "p":
                cfg.primes = [int(v) for _, v in entries]
            elif key == "d":
                cfg.d = [int(v) for _, v in entries]
            elif key == "t":
                vals = [v for _, v in entries]
                cfg.t = None if vals == ["minimal"] else [int(v) for v in vals]
            elif key == "slope":
                cfg.slopes = [_parse_slope(v) for _, v in entries]
            elif key == "suite":
                cfg.suite = [v for _, v in entries]
            elif key in _INT_KEYS:
                setattr(cfg, key, int(entries[-1][1]))
            else:
                value = entries[-1][1]
                if key in ("b", "c"):
                    _parse_range(value, 0, 0)
                setattr(cfg, key, value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"line {entries[-1][0]}: bad value for {key!r}: {exc}") from None
    cfg.suite = expand_suite(cfg.suite)
    return cfg


def _parse_range(text: str, lo: int, hi: int) -> list[int]:
    text = text.strip()
    if text.upper() == "ALL":
        return list(range(lo, hi + 1))
    if ".." in text:
        a, b = text.split("..", 1)
        return list(range(int(a), int(b) + 1))
    return [int(x) for x in text.split(",")]


# ---------------------------------------------------------------------------
# Check registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    """kind: "pure" (no parameter point), "prime" (needs p only) or "param"."""

    kind: str
    ref: str
    tasks: Callable[..., Iterator[dict]]
    run: Callable[..., tuple[bl.Verdict, dict]]
    t_rule: str = "none"


def _v(verdict: bl.Verdict) -> tuple[bl.Verdict, dict]:
    return verdict, {}


def _w(w: ph.PropWitness) -> tuple[bl.Verdict, dict]:
    extra = {k: v for k, v in w.to_dict().items() if k not in ("verdict",)}
    return w.verdict, extra


def _ws(param: ParamPoint, m: int, ws: list[ph.PropWitness]) -> tuple[bl.Verdict, dict]:
    v = ph.mono_verdict(param, m, ws)
    return v, {"monomials": [dict(w.indices, status=w.status) for w in ws]}


def _cmbi4_tasks(cfg: RunConfig, p=None, param=None):
    for b in range(0, cfg.b_max + 1):
        for c in range(0, b + 1):
            for m in range(0, b - c + 1):
                for k in range(1, cfg.k_max + 1):
                    yield {"b": b, "c": c, "m": m, "k": k}


def _cmbi1_tasks(cfg: RunConfig, p=None, param=None):
    for m in range(1, cfg.m_max + 1):
        for j in range(1, cfg.j_max + 1):
            yield {"m": m, "j": j}


def _grinberg_tasks(cfg: RunConfig, p=None, param=None):
    n = cfg.n_max
    for a in range(n + 1):
        for b in range(n + 1):
            for c in range(n + 1):
                yield {"a": a, "b": b, "c": c}


def invmt1_grid(p: int) -> Iterator[dict]:
    """1 <= c <= p-2 and c <= m < 3p, which contains every m used above c."""
    for c in range(1, p - 1):
        for m in range(c, 3 * p):
            yield {"c": c, "m": m}


def invmt2_grid(p: int) -> Iterator[dict]:
    """2 <= b <= p, 0 <= c <= p-2, 0 <= m <= b-c with b - m <= p-2."""
    for b in range(2, p + 1):
        for c in range(0, p - 1):
            for m in range(0, b - c + 1):
                if b - m <= p - 2:
                    yield {"b": b, "c": c, "m": m}


def _srjm_tasks(cfg, p, param):
    for l in range(0, p):
        for m in range(0, p):
            if param.s - l < 0 or param.s - m < 0:
                continue
            for i in range(0, param.s - l + 1):
                yield {"i": i, "l": l, "m": m}


def _mjl_tasks(cfg, p, param):
    c = param.c
    for m in range(0, max(c, 1)):
        for j in range(0, max(c, 1)):
            for l in range(0, max(c, 1)):
                yield {"m": m, "j": j, "l": l}


def _lmk68_tasks(cfg, p, param):
    for part in (1, 2):
        for m in range(0, p):
            for l in range(m, p + 1):
                for j in range(0, max(param.c, 1)):
                    yield {"m": m, "j": j, "l": l, "part": part}


def _rk315_tasks(cfg, p, param):
    for m in range(0, p):
        for l in range(0, m + 1):
            for which in ("main", "A", "B"):
                yield {"l": l, "m": m, "which": which}


def _gen1_tasks(cfg, p, param):
    for m in range(0, max(param.c, 1)):
        for l in range(0, max(param.c, 1)):
            yield {"m": m, "l": l}


def _gen2_tasks(cfg, p, param):
    ms = list(ph.m_greater_range(param)) or [param.c + 1 - param.eps]
    for m in ms:
        for l in range(0, m + 1):
            yield {"m": m, "l": l}


def _m_tasks(cfg, p, param):
    for m in range(1, max(param.c, 2)):
        yield {"m": m}


def _point_task(cfg, p, param):
    yield {}


def _kw(cfg: RunConfig) -> dict:
    return {"precision": cfg.precision, "max_doublings": cfg.max_doublings}


CHECKS: dict[str, Check] = {
    "cmbi4": Check("pure", bl.REF_CMBI4, _cmbi4_tasks, lambda cfg, p, P, ix: _v(bl.check_cmbi4(**ix))),
    "cmbi1": Check("pure", bl.REF_CMBI1, _cmbi1_tasks, lambda cfg, p, P, ix: _v(bl.check_cmbi1(**ix))),
    "grinberg": Check("pure", bl.REF_GRINBERG, _grinberg_tasks,
                      lambda cfg, p, P, ix: _v(bl.check_grinberg(**ix))),
    "invmt1": Check("prime", bl.REF_INVMT1, lambda cfg, p, P: invmt1_grid(p),
                    lambda cfg, p, P, ix: _v(bl.check_invmt1(ix["c"], ix["m"], p))),
    "invmt2": Check("prime", bl.REF_INVMT2, lambda cfg, p, P: invmt2_grid(p),
                    lambda cfg, p, P, ix: _v(bl.check_invmt2(ix["b"], ix["c"], ix["m"], p))),
    "srjm": Check("param", bl.REF_SRJM, _srjm_tasks,
                  lambda cfg, p, P, ix: _v(bl.check_srjm(P, **ix)), "lemma1"),
    "coeff51": Check("param", bl.REF_COEFF51, _mjl_tasks,
                     lambda cfg, p, P, ix: _v(bl.check_coeff51(P, **ix)), "lemma2"),
    "lmk68": Check("param", bl.REF_LMK68, _lmk68_tasks,
                   lambda cfg, p, P, ix: _v(bl.check_lmk68(P, **ix)), "lemma2"),
    "rk315": Check("param", bl.REF_RK315, _rk315_tasks,
                   lambda cfg, p, P, ix: _v(bl.rk315_valuation(P, **ix)), "lemma2"),
    "gen1": Check("param", ph.REF_GEN1, _gen1_tasks,
                  lambda cfg, p, P, ix: _w(ph.gen1_build_and_check(P, ix["m"], ix["l"], **_kw(cfg))), "gen1"),
    "gen1_half": Check("param", ph.REF_GEN1_HALF, _gen1_tasks,
                       lambda cfg, p, P, ix: _w(ph.gen1_build_and_check(P, ix["m"], ix["l"], True, **_kw(cfg))),
                       "mono"),
    "gen2": Check("param", ph.REF_GEN2, _gen2_tasks,
                  lambda cfg, p, P, ix: _w(ph.gen2_build_and_check(P, ix["m"], ix["l"], **_kw(cfg))), "gen2"),
    "mono1": Check("param", ph.REF_MONO1, _m_tasks,
                   lambda cfg, p, P, ix: _ws(P, ix["m"], ph.mono1_check(P, ix["m"], **_kw(cfg))), "mono"),
    "mono12": Check("param", ph.REF_MONO12, _m_tasks,
                    lambda cfg, p, P, ix: _ws(P, ix["m"], ph.mono12_check(P, ix["m"], **_kw(cfg))), "mono"),
    "other_generator": Check("param", ph.REF_OTHER, _m_tasks,
                             lambda cfg, p, P, ix: _v(ph.other_generator_check(P, ix["m"], certify=True, **_kw(cfg))),
                             "mono"),
    "m_less": Check("param", ph.REF_M_LESS, _point_task,
                    lambda cfg, p, P, ix: _v(ph.m_less_slope_check(P, **_kw(cfg))), "full"),
    "m_greater": Check("param", ph.REF_M_GREATER, _point_task,
                       lambda cfg, p, P, ix: _v(ph.m_greater_check(P, **_kw(cfg))), "gen2"),
    "combining": Check("param", ph.REF_COMBINE, _point_task,
                       lambda cfg, p, P, ix: _v(ph.combining_check(P, certify=True, **_kw(cfg))), "full"),
    "final_prop": Check("param", ph.REF_FINAL, _point_task,
                        lambda cfg, p, P, ix: _v(ph.final_prop_check(P, certify=True, **_kw(cfg))), "full"),
    "berger": Check("param", lm.REF_BERGER, _point_task,
                    lambda cfg, p, P, ix: _v(lm.berger_radius(P)), "full"),
    "predict": Check("param", lm.REF_PREDICT, _point_task,
                     lambda cfg, p, P, ix: _v(lm.check_prediction(P)), "full"),
    # deliberately corrupted fixtures: these must FAIL
    "fault_cmbi4": Check("pure", bl.REF_CMBI4, lambda cfg, p, P: iter([{"b": 6, "c": 1, "m": 1, "k": 3}]),
                         lambda cfg, p, P, ix: _v(bl.check_cmbi4(**ix, fault=1))),
    "fault_invmt2": Check("prime", bl.REF_INVMT2, lambda cfg, p, P: iter([{"b": 5, "c": 1, "m": 2}]),
                          lambda cfg, p, P, ix: _v(bl.check_invmt2(ix["b"], ix["c"], ix["m"], p, fault=(0, 0, 1)))),
    "fault_gen1": Check("param", ph.REF_GEN1, lambda cfg, p, P: iter([{"m": 0, "l": 0}]),
                        lambda cfg, p, P, ix: _w(ph.gen1_build_and_check(P, 0, 0, fault="f2", **_kw(cfg))), "gen1"),
}

SMOKE = ["cmbi4", "cmbi1", "grinberg", "invmt1", "invmt2", "lmk68", "rk315"]
PROPOSITIONS = ["gen1", "gen2", "mono1", "mono12", "other_generator", "m_less", "m_greater",
                "combining", "final_prop", "berger", "predict"]


def expand_suite(names: list[str]) -> list[str]:
    out: list[str] = []
    for n in names:
        if n.lower() == "smoke":
            group = SMOKE
        elif n.upper() == "ALL":
            group = [k for k in CHECKS if not k.startswith("fault_")]
        elif n in CHECKS:
            group = [n]
        else:
            raise ConfigError(f"unknown check id {n!r}; known: {', '.join(CHECKS)}")
        out.extend(g for g in group if g not in out)
    return out


# ---------------------------------------------------------------------------
# Grid expansion
# ---------------------------------------------------------------------------

def minimal_t(rule: str, p: int, b: int, c: int, nu: Fraction) -> int:
    """Smallest t meeting the t-hypotheses of the check (1 when none apply)."""
    eps = _epsilon(b, c, p) or 0

    def above(x) -> int:  # smallest integer t > x
        return math.floor(x) + 1

    gen2_t = math.ceil(2 * nu) if b >= 2 * c - 1 else above(2 * nu + eps - 1)
    if rule == "lemma1":
        return 1
    if rule == "lemma2":
        return 2
    if rule == "gen1":
        return above(nu + c) if (b, c) == (p, 1) else above(nu + c - 1)
    if rule == "mono":
        return above(nu + c)
    if rule == "gen2":
        return max(gen2_t, 1)
    if rule == "full":
        return max(gen2_t, above(nu + c), math.ceil(2 * nu) + eps, 1)
    return 1


@dataclass(frozen=True)
class Task:
    key: tuple
    check: str
    p: int | None
    point: dict | None  # ParamPoint.make keywords, or None
    indices: dict
    rejected: str | None = None  # standing-convention violation


def expand_grid(cfg: RunConfig) -> list[Task]:
    """Deterministic, duplicate-free task list for the configured suite."""
    tasks: list[Task] = []
    seen: set = set()

    def add(task: Task) -> None:
        if task.key not in seen:
            seen.add(task.key)
            tasks.append(task)

    for cid in cfg.suite:
        chk = CHECKS[cid]
        if chk.kind == "pure":
            for ix in chk.tasks(cfg, None, None):
                add(Task((cid, _freeze(ix)), cid, None, None, ix))
            continue
        for p in cfg.primes:
            if chk.kind == "prime":
                for ix in chk.tasks(cfg, p, None):
                    add(Task((cid, p, _freeze(ix)), cid, p, None, ix))
                continue
            for b in _parse_range(cfg.b, 2, p):
                for c in _parse_range(cfg.c, 0, p - 2):
                    for slope in cfg.slopes:
                        nu, E, unit = slope.at(c)
                        for d in cfg.d:
                            ts = cfg.t
                            if ts is None:
                                ts = [minimal_t(chk.t_rule, p, b, c, nu)] if _epsilon(b, c, p) is not None or not (
                                    2 <= b <= p and 0 <= c <= p - 2) else [1]
                            for t in ts:
                                kw = {"p": p, "b": b, "c": c, "d": d, "t": t, "nu": str(nu), "E": E,
                                      "unit": list(unit)}
                                try:
                                    param = ParamPoint.make(p, b, c, d=d, t=t, nu=nu, E=E, unit=unit)
                                except ValueError as exc:
                                    add(Task((cid, _freeze(kw)), cid, p, kw, {}, str(exc)))
                                    continue
                                for ix in chk.tasks(cfg, p, param):
                                    add(Task((cid, _freeze(kw), _freeze(ix)), cid, p, kw, ix))
    return tasks


def _freeze(d: dict) -> tuple:
    return tuple(sorted((k, tuple(v) if isinstance(v, list) else v) for k, v in d.items()))


# ---------------------------------------------------------------------------
# Execution and reports
# ---------------------------------------------------------------------------

def _make_param(point: dict) -> ParamPoint:
    return ParamPoint.make(point["p"], point["b"], point["c"], d=point["d"], t=point["t"],
                           nu=Fraction(point["nu"]), E=point["E"], unit=tuple(point["unit"]))


def run_task(task: Task, cfg: RunConfig) -> dict:
    """Execute one task and return its report record."""
    chk = CHECKS[task.check]
    t0 = time.perf_counter()
    if task.rejected is not None:
        verdict, extra = bl.skipped(chk.ref, task.point or {}, task.rejected), {}
    else:
        param = _make_param(task.point) if task.point is not None else None
        verdict, extra = chk.run(cfg, task.p, param, task.indices)
    rec = {
        "check": task.check,
        "ref": verdict.ref,
        "param": task.point if task.point is not None else ({"p": task.p} if task.p else None),
        "indices": task.indices,
        "status": verdict.status,
        "witness": bl._jsonable(dict(verdict.witness, **({"detail": extra} if extra else {}))),
        "wall_time": round(time.perf_counter() - t0, 6),
    }
    return rec


def _run_chunk(args: tuple[list[Task], RunConfig]) -> list[dict]:
    tasks, cfg = args
    return [run_task(t, cfg) for t in tasks]


def execute(tasks: list[Task], cfg: RunConfig) -> Iterator[dict]:
    """Records in task order; parallel over a process pool when jobs > 1."""
    if cfg.jobs <= 1 or len(tasks) < 2:
        for t in tasks:
            yield run_task(t, cfg)
        return
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        futures = [pool.submit(run_task, t, cfg) for t in tasks]
        for fut in futures:
            yield fut.result()


def exit_code(counts: dict[str, int]) -> int:
    if counts.get(bl.FAIL):
        return 1
    if counts.get(bl.INCONCLUSIVE):
        return 2
    return 0


def summary_table(records: list[dict]) -> str:
    rows: dict[str, dict[str, int]] = {}
    for rec in records:
        row = rows.setdefault(rec["check"], {s: 0 for s in STATUSES})
        row[rec["status"]] += 1
    header = ["check"] + list(STATUSES) + ["total"]
    body = [[cid] + [str(r[s]) for s in STATUSES] + [str(sum(r.values()))] for cid, r in rows.items()]
    widths = [max(len(x) for x in col) for col in zip(header, *body)] if body else [len(h) for h in header]
    fmt = "  ".join("{:<%d}" % widths[0:1][0] if i == 0 else "{:>%d}" % w for i, w in enumerate(widths))
    lines = [fmt.format(*header), "  ".join("-" * w for w in widths)]
    lines += [fmt.format(*row) for row in body]
    return "\n".join(lines)


def default_report_path() -> str:
    return os.path.join(os.environ.get(REPORT_DIR_ENV, "."), DEFAULT_REPORT)


def run(cfg: RunConfig, echo: Callable[[str], None] = print) -> tuple[int, list[dict]]:
    """Run the configured suite, write the reports and return (exit code, records)."""
    tasks = expand_grid(cfg)
    path = cfg.report or default_report_path()
    if os.path.dirname(path):
        os.makedirs(os.path.dirname(path), exist_ok=True)
    records: list[dict] = []
    with open(path, "w", encoding="utf-8") as out:
        try:
            for rec in execute(tasks, cfg):
                records.append(rec)
                out.write(json.dumps(rec, sort_keys=True) + "\n")
        finally:
            out.flush()
    if cfg.csv:
        with open(cfg.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["check", "ref", "param", "indices", "status", "wall_time"])
            for rec in records:
                w.writerow([rec["check"], rec["ref"], json.dumps(rec["param"], sort_keys=True),
                            json.dumps(rec["indices"], sort_keys=True), rec["status"], rec["wall_time"]])
    counts = {s: sum(1 for r in records if r["status"] == s) for s in STATUSES}
    echo(summary_table(records))
    echo(f"{len(records)} records written to {path}")
    return exit_code(counts), records


@click.command(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="key = value configuration file")
@click.option("--suite", default=None, help="comma-separated check ids (ALL, smoke)")
@click.option("--p", "primes", multiple=True, type=int, help="prime(s), overriding the config")
@click.option("--jobs", type=int, default=None, help="worker processes")
@click.option("--report", default=None, help="JSONL report path")
@click.option("--csv", "csv_path", default=None, help="optional CSV mirror of the report")
@click.option("--precision", type=int, default=None, help="initial precision N in pi-units")
@click.option("--max-doublings", type=int, default=None, help="precision doublings after INCONCLUSIVE")
def main(config_path, suite, primes, jobs, report, csv_path, precision, max_doublings) -> None:
    """Run verification checks over a parameter grid."""
    try:
        if config_path:
            with open(config_path, encoding="utf-8") as fh:
                cfg = parse_config(fh.read())
        else:
            cfg = RunConfig(suite=list(SMOKE))
        if suite:
            cfg.suite = expand_suite([s.strip() for s in suite.split(",") if s.strip()])
        elif not cfg.suite:
            cfg.suite = list(SMOKE)
    except ConfigError as exc:
        raise click.UsageError(str(exc)) from None
    if primes:
        cfg.primes = list(primes)
    if jobs is not None:
        cfg.jobs = jobs
    if report is not None:
        cfg.report = report
    if csv_path is not None:
        cfg.csv = csv_path
    if precision is not None:
        cfg.precision = precision
    if max_doublings is not None:
        cfg.max_doublings = max_doublings
    try:
        code, _ = run(cfg, click.echo)
    except OSError as exc:
        click.echo(f"I/O error: {exc}", err=True)
        sys.exit(3)
    sys.exit(code)


if __name__ == "__main__":  # pragma: no cover
    main()
