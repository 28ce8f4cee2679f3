"""Shortage metrics computed post-hoc from the event log and step tables.

Two quantities drive the four-case comparison:

* shortage-attributed offline power: capacity of reactors that are offline
  beyond their normal refueling outage window; and
* wasted batches: fresh fuel lots delivered to reactors that still could not
  operate, counted once per step of delayed cycle start (batch-months when
  accumulated).

Fleet runs need neither: perfect fuel sharing makes wasted batches
identically zero, and the shortage is exactly installed minus generated
power.
"""

from __future__ import annotations

from fuelcycle.events import EventLog


def _shortage_offline(log: EventLog, t: int, reactor: str) -> bool:
    """Offline past the normal outage window at step t (closed boundary:
    the first step past the scheduled outage already counts)."""
    if not log.in_service(t, reactor):
        return False
    if log.operating(t, reactor):
        return False
    window_end = log.latest_outage_start(t, reactor) + log.outage_steps(reactor)
    return t >= window_end


def shortage_offline_power(log: EventLog, t: int) -> float:
    """Total capacity (MWe) offline because of insufficient fuel at step t."""
    return sum(
        log.power(r) for r in log.reactors() if _shortage_offline(log, t, r)
    )


def wasted_batches(log: EventLog, t: int) -> int:
    """Fresh fuel lots sitting in reactors that still cannot operate at t.

    For each shortage-offline reactor, every lot received since the start of
    its current (delayed) refueling counts; re-counting the same lot on each
    delayed step is what turns the running sum into batch-months.
    """
    total = 0
    for r in log.reactors():
        if not _shortage_offline(log, t, r):
            continue
        start = log.latest_outage_start(t, r)
        total += log.batches_received_between(r, start, t)
    return total


def _offline_windows(log: EventLog, reactor: str, horizon: int):
    """Yield (start, end) half-open offline intervals within the service life.

    Each interval starts at an outage start (or at commissioning, for a
    reactor still waiting on its first core) and ends at the next cycle
    start, retirement, or the horizon.
    """
    rec = log._records[reactor]
    end_of_service = rec.retire_step if rec.retire_step is not None else horizon
    end_of_service = min(end_of_service, horizon)
    flips = rec.status
    for i, (t0, on) in enumerate(flips):
        if on or t0 >= end_of_service:
            continue
        t1 = flips[i + 1][0] if i + 1 < len(flips) else horizon
        t1 = min(t1, end_of_service)
        if t1 > t0:
            yield t0, t1


def shortage_offline_power_series(log: EventLog, horizon: int) -> list[float]:
    """Per-step shortage-attributed offline capacity (MWe)."""
    out = [0.0] * horizon
    for r in log.reactors():
        power = log.power(r)
        delay = log.outage_steps(r)
        for t0, t1 in _offline_windows(log, r, horizon):
            for t in range(t0 + delay, t1):
                out[t] += power
    return out


def wasted_batches_series(log: EventLog, horizon: int) -> list[int]:
    """Per-step wasted batch counts (running sum gives batch-months)."""
    out = [0] * horizon
    for r in log.reactors():
        delay = log.outage_steps(r)
        rec = log._records[r]
        for t0, t1 in _offline_windows(log, r, horizon):
            held = 0
            for t in range(t0, t1):
                held += rec.batches.get(t, 0)
                if t >= t0 + delay:
                    out[t] += held
    return out


def fleet_shortage_offline_power(installed_mwe: float, generated_mwe: float) -> float:
    """Fleet paradigm: the shortage is exactly the capacity gap."""
    return max(installed_mwe - generated_mwe, 0.0)


def fuel_sharing_energy_bound(cumulative_wasted_batch_months: float, power_mwe: float) -> float:
    """Overestimate of energy lost to poor fuel sharing, in GWe-months:
    assume every wasted lot could have run a reactor of the given capacity."""
    return cumulative_wasted_batch_months * power_mwe / 1000.0


def normalized_power(series: list[float], curve: list[float]) -> list[float]:
    """Pointwise ratio of generated power to the growth-curve target."""
    if len(series) != len(curve):
        raise ValueError("series and curve must share a time grid")
    return [s / c for s, c in zip(series, curve)]


def cumulative(series: list[float], scale: float = 1.0) -> list[float]:
    out: list[float] = []
    total = 0.0
    for v in series:
        total += v * scale
        out.append(total)
    return out
