"""Readers for the persisted per-case CSV tables, and the derived
metrics table that the plotting tools consume.

Each case directory holds power.csv, flows.csv, inventories.csv,
deployments.csv, reactor_events.csv, overdraws.csv, and meta.yaml as
written by the kernel; ``build_case_metrics`` reduces them to one
metrics.csv time series per case.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import yaml

from fuelcycle.events import EventLog
from fuelcycle.metrics import (
    cumulative,
    fleet_shortage_offline_power,
    shortage_offline_power_series,
    wasted_batches_series,
)

METRICS_COLUMNS = [
    "t",
    "month",
    "installed_mwe",
    "generated_mwe",
    "target_mwe",
    "normalized_power",
    "shortage_offline_mwe",
    "cum_shortage_offline_gwe_mo",
    "wasted_batches",
    "cum_wasted_batch_months",
    "fissile_kg",
    "pu239_kg",
    "fissile_withdrawn_kg",
]


def _read_csv(path: Path) -> list[dict[str, str]]:
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def read_meta(case_dir: str | Path) -> dict:
    with open(Path(case_dir) / "meta.yaml") as f:
        return yaml.safe_load(f)


def read_power(case_dir: str | Path) -> list[dict[str, float]]:
    rows = _read_csv(Path(case_dir) / "power.csv")
    return [
        {
            "t": int(float(r["t"])),
            "month": int(float(r["month"])),
            "installed_mwe": float(r["installed_mwe"]),
            "generated_mwe": float(r["generated_mwe"]),
        }
        for r in rows
    ]


def read_events(case_dir: str | Path) -> EventLog:
    rows = _read_csv(Path(case_dir) / "reactor_events.csv")
    return EventLog.from_rows(
        [(int(float(r["t"])), r["reactor"], r["event"], float(r["value"])) for r in rows]
    )


def read_inventory_series(
    case_dir: str | Path, facility: str, horizon: int
) -> tuple[list[float], list[float]]:
    """Per-step (kg, pu239_kg) series for one facility."""
    kg = [0.0] * horizon
    pu = [0.0] * horizon
    for r in _read_csv(Path(case_dir) / "inventories.csv"):
        if r["facility"] == facility:
            t = int(float(r["t"]))
            kg[t] = float(r["kg"])
            pu[t] = float(r["pu239_kg"])
    return kg, pu


def read_flow_series(
    case_dir: str | Path, src: str, dst: str, horizon: int
) -> list[float]:
    """Per-step kg transferred from src to dst."""
    out = [0.0] * horizon
    for r in _read_csv(Path(case_dir) / "flows.csv"):
        if r["src"] == src and r["dst"] == dst:
            out[int(float(r["t"]))] += float(r["kg"])
    return out


@dataclass
class CaseMetrics:
    """In-memory form of one case's metrics.csv."""

    case: str
    dt: int
    paradigm: str
    rows: list[dict[str, float]]

    def column(self, name: str) -> list[float]:
        return [row[name] for row in self.rows]


def build_case_metrics(case_dir: str | Path) -> CaseMetrics:
    """Reduce one case directory's tables to the derived metrics series."""
    case_dir = Path(case_dir)
    meta = read_meta(case_dir)
    dt = int(meta["dt_months"])
    paradigm = meta["paradigm"]
    horizon = int(meta["horizon_steps"])
    base = float(meta["base_capacity_mwe"])
    growth = float(meta["annual_growth"])

    power = read_power(case_dir)
    if len(power) != horizon:
        raise ValueError(f"{case_dir}: power.csv has {len(power)} rows, expected {horizon}")

    if paradigm == "fleet":
        offline = [
            fleet_shortage_offline_power(p["installed_mwe"], p["generated_mwe"])
            for p in power
        ]
        wasted: list[float] = [0.0] * horizon
    else:
        log = read_events(case_dir)
        offline = shortage_offline_power_series(log, horizon)
        wasted = [float(w) for w in wasted_batches_series(log, horizon)]

    cum_offline = cumulative(offline, scale=dt / 1000.0)  # MWe-step -> GWe-month
    cum_wasted = cumulative(wasted, scale=float(dt))  # batch-step -> batch-month
    fissile_kg, pu239_kg = read_inventory_series(case_dir, "fissile_store", horizon)
    withdrawn = read_flow_series(case_dir, "fissile_store", "fuel_fab", horizon)

    rows = []
    for p in power:
        t = p["t"]
        target = base * (1.0 + growth) ** (p["month"] / 12.0)
        rows.append(
            {
                "t": float(t),
                "month": float(p["month"]),
                "installed_mwe": p["installed_mwe"],
                "generated_mwe": p["generated_mwe"],
                "target_mwe": target,
                "normalized_power": p["generated_mwe"] / target,
                "shortage_offline_mwe": offline[t],
                "cum_shortage_offline_gwe_mo": cum_offline[t],
                "wasted_batches": wasted[t],
                "cum_wasted_batch_months": cum_wasted[t],
                "fissile_kg": fissile_kg[t],
                "pu239_kg": pu239_kg[t],
                "fissile_withdrawn_kg": withdrawn[t],
            }
        )
    return CaseMetrics(case=meta["case"], dt=dt, paradigm=paradigm, rows=rows)


def write_case_metrics(case_dir: str | Path, metrics: CaseMetrics | None = None) -> Path:
    case_dir = Path(case_dir)
    if metrics is None:
        metrics = build_case_metrics(case_dir)
    out = case_dir / "metrics.csv"
    with open(out, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(METRICS_COLUMNS)
        for row in metrics.rows:
            w.writerow(
                [
                    str(int(row["t"])),
                    str(int(row["month"])),
                ]
                + [f"{row[c]:.6f}" for c in METRICS_COLUMNS[2:]]
            )
    return out


def read_case_metrics(case_dir: str | Path) -> CaseMetrics:
    """Load a previously written metrics.csv (plus meta.yaml for labels)."""
    case_dir = Path(case_dir)
    meta = read_meta(case_dir)
    rows = [
        {k: float(v) for k, v in r.items()}
        for r in _read_csv(case_dir / "metrics.csv")
    ]
    return CaseMetrics(
        case=meta["case"], dt=int(meta["dt_months"]), paradigm=meta["paradigm"], rows=rows
    )
