"""CSV and JSON emission of aggregated results."""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .config import ExperimentConfig
from .experiment import AggregateReport, SchemeSummary

FILES = ("ho_counts.csv", "mean_tilt.csv", "rsrp_cdf.csv", "rsrp_cdf_baseline.csv", "gue_rate.csv", "run_meta.json")


def fmt(x) -> str:
    if x is None:
        return ""
    x = float(x)
    if math.isnan(x):
        return "nan"
    return f"{x:.6f}"


def reduction_pct(baseline: float, value: float) -> float:
    """Percentage reduction relative to the baseline (positive means fewer)."""
    if baseline == 0:
        return math.nan
    return 100.0 * (baseline - value) / baseline


def _write_csv(path: Path, header, rows) -> None:
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        raise OSError(f"failed to write {path}: {exc}") from exc


def _cdf_rows(summary: SchemeSummary, prefix):
    samples = summary.rsrp_samples
    n = len(samples)
    for i, value in enumerate(samples, start=1):
        yield [*prefix, fmt(value), fmt(i / n)]


def emit_reports(report: AggregateReport, config: ExperimentConfig, output_dir) -> list[Path]:
    out = Path(output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc}") from exc
    base = report.baseline
    weights = [fmt(s.w_rate) for s in report.schemes], [fmt(s.w_rsrp) for s in report.schemes]
    keys = list(zip(*weights))

    _write_csv(out / "ho_counts.csv",
               ["w_rate", "w_rsrp", "mean_ho", "baseline_mean_ho", "reduction_vs_baseline_pct"],
               [[*k, fmt(s.mean_ho), fmt(base.mean_ho), fmt(reduction_pct(base.mean_ho, s.mean_ho))]
                for k, s in zip(keys, report.schemes)])
    _write_csv(out / "mean_tilt.csv", ["w_rate", "w_rsrp", "mean_beta_deg"],
               [[*k, fmt(s.mean_beta)] for k, s in zip(keys, report.schemes)])
    _write_csv(out / "gue_rate.csv", ["w_rate", "w_rsrp", "mean_sum_rate", "baseline_mean_sum_rate"],
               [[*k, fmt(s.mean_rate), fmt(base.mean_rate)] for k, s in zip(keys, report.schemes)])
    _write_csv(out / "rsrp_cdf.csv", ["w_rate", "w_rsrp", "rsrp_dbm", "cdf"],
               [row for k, s in zip(keys, report.schemes) for row in _cdf_rows(s, k)])
    _write_csv(out / "rsrp_cdf_baseline.csv", ["baseline_beta", "rsrp_dbm", "cdf"],
               list(_cdf_rows(base, [fmt(config.baseline_beta)])))

    meta = {
        "config": config.to_dict(),
        "seed": config.seed,
        "n_realizations": report.n_realizations,
        "summary": {
            s.label: {
                "mean_ho": round(s.mean_ho, 6),
                "mean_beta_deg": round(s.mean_beta, 6),
                "mean_sum_rate": round(s.mean_rate, 6),
                "rsrp_p5_dbm": round(s.rsrp_p5, 6),
            }
            for s in [*report.schemes, base]
        },
    }
    try:
        (out / "run_meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"failed to write {out / 'run_meta.json'}: {exc}") from exc
    return [out / name for name in FILES]
