"""Files written and read by the harness.

* trace CSV, ``iteration,best_il,evaluations``; row 0 is the initial
  population, floats are written with ``repr`` so they parse back exactly;
* summary, an aligned text table plus a CSV with columns
  ``scenario,dimension,algorithm,min_il,median_il,rank_pass_rate``;
* run records as JSON (everything in :class:`RunRecord` except the trace);
* flat ``key = value`` config files.
"""
import csv
import json
import os
from pathlib import Path

from ..mimo import RankDiagnostics, parse_scenario, save_channels
from .experiment import SummaryTable, summarize

TRACE_HEADER = ("iteration", "best_il", "evaluations")
SUMMARY_HEADER = ("scenario", "dimension", "algorithm", "min_il", "median_il",
                  "rank_pass_rate")


def emit_trace(record, path):
    path = Path(path)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRACE_HEADER)
        for t, (cost, evals) in enumerate(zip(record.best_il, record.evaluations)):
            w.writerow((t, repr(float(cost)), int(evals)))
    return path


def read_trace(path):
    """Return ``(iterations, best_il, evaluations)`` lists."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != TRACE_HEADER:
        raise ValueError(f"{path}: not a trace file")
    body = rows[1:]
    return ([int(r[0]) for r in body], [float(r[1]) for r in body],
            [int(r[2]) for r in body])


def format_summary(table):
    head = ("scenario", "dimension", "algorithm", "min IL", "median IL", "rank pass")
    lines = [(r.scenario.label, str(r.dimension), r.algorithm.upper(),
              f"{r.min_il:.4e}", f"{r.median_il:.4e}", f"{r.rank_pass_rate:.2f}")
             for r in table.rows]
    widths = [max(len(x) for x in col) for col in zip(head, *lines)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    out = [fmt.format(*head), "  ".join("-" * w for w in widths)]
    out += [fmt.format(*ln) for ln in lines]
    return "\n".join(out) + "\n"


def emit_summary(table, path):
    """Write ``<path>.txt`` and ``<path>.csv``; returns both paths.

    A ``path`` ending in ``.txt`` or ``.csv`` is treated as the base name.
    """
    if not table.rows:
        raise ValueError("empty summary table")
    table.sort()
    base = Path(path)
    if base.suffix in (".txt", ".csv"):
        base = base.with_suffix("")
    txt, csv_path = base.with_suffix(".txt"), base.with_suffix(".csv")
    txt.write_text(format_summary(table))
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SUMMARY_HEADER)
        for r in table.rows:
            w.writerow((r.scenario.tag, r.dimension, r.algorithm, repr(r.min_il),
                        repr(r.median_il), f"{r.rank_pass_rate:.2f}"))
    return txt, csv_path


def read_summary(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [dict(r, dimension=int(r["dimension"]), min_il=float(r["min_il"]),
                 median_il=float(r["median_il"]),
                 rank_pass_rate=float(r["rank_pass_rate"])) for r in rows]


def record_to_dict(cfg, record):
    return {
        "scenario": cfg.scenario.tag,
        "algorithm": cfg.algorithm,
        "objective_mode": cfg.objective_mode,
        "run_index": record.run_index,
        "seed": record.seed,
        "channel_seed": record.channel_seed,
        "final_il": record.final_il,
        "normalized_il": record.normalized_il,
        "rank": {"per_user_rank": record.rank.per_user_rank,
                 "per_user_smallest_singular": record.rank.per_user_smallest_singular,
                 "satisfied": record.rank.satisfied},
        "evaluation_count": record.evaluation_count,
        "iterations": len(record.best_il) - 1,
        "wall_time": record.wall_time,
        "final_x": [float(v) for v in record.final_x],
    }


def run_dir(cfg):
    return Path(cfg.outdir) / f"{cfg.scenario.tag}_{cfg.algorithm}"


def write_experiment(cfg, records, table):
    """Lay out one experiment under ``<outdir>/<scenario>_<alg>/``."""
    d = run_dir(cfg)
    d.mkdir(parents=True, exist_ok=True)
    for rec in records:
        stem = d / f"run_{rec.run_index:03d}"
        emit_trace(rec, stem.with_suffix(".csv"))
        with open(stem.with_suffix(".json"), "w") as fh:
            json.dump(record_to_dict(cfg, rec), fh, indent=1)
        if rec.channels is not None and rec.channels.spec.symmetric:
            save_channels(rec.channels, d / f"run_{rec.run_index:03d}_channels.txt")
    emit_summary(table, d / "summary")
    return d


def load_records(paths):
    """Run-record dicts from JSON files or directories (searched recursively)."""
    out = []
    for p in paths:
        p = Path(p)
        if not p.exists():
            raise FileNotFoundError(f"no such file or directory: {p}")
        files = sorted(p.rglob("run_*.json")) if p.is_dir() else [p]
        for f in files:
            with open(f) as fh:
                out.append(json.load(fh))
    return out


def table_from_records(records):
    groups = {}
    for r in records:
        groups.setdefault((r["scenario"], r["algorithm"]), []).append(r)
    table = SummaryTable()
    for (tag, alg), recs in groups.items():
        recs.sort(key=lambda r: r["run_index"])
        table.rows.append(summarize(parse_scenario(tag), alg,
                                    [r["final_il"] for r in recs],
                                    [r["rank"]["satisfied"] for r in recs]))
    return table.sort()


def rank_from_dict(d):
    return RankDiagnostics(d["per_user_rank"], d["per_user_smallest_singular"],
                           d["satisfied"])


def read_config(path):
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            if not key:
                raise ValueError(f"{path}:{lineno}: empty key")
            out[key] = value
    return out


def write_config(values, path):
    with open(path, "w") as fh:
        for k, v in values.items():
            fh.write(f"{k} = {v}\n")


def ensure_writable(path):
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    if not os.access(path, os.W_OK):
        raise PermissionError(f"output directory {path} is not writable")
    return path


__all__ = ["emit_trace", "read_trace", "emit_summary", "read_summary", "format_summary",
           "write_experiment", "load_records", "table_from_records", "read_config",
           "write_config", "record_to_dict", "rank_from_dict"]
