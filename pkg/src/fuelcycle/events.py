"""Per-reactor event log.

The log is the single source of truth for shortage accounting: reactor state
machines append events while they run, and the shortage metrics are computed
post-hoc from the log (never inside facility logic). The same event stream
round-trips through the reactor_events CSV table.

Operating status is derived, not stored per step: a reactor is producing
power at step t exactly when the latest status event at or before t is a
cycle start (outage starts, retirement, and commissioning all mark it
offline until the next cycle start).
"""

from __future__ import annotations

from bisect import bisect_right, insort
from dataclasses import dataclass, field

COMMISSION = "commission"
OUTAGE_LEN = "outage_len"
CYCLE_START = "cycle_start"
OUTAGE_START = "outage_start"
SHORTAGE_WAIT = "shortage_wait"
BATCH_RECEIVED = "batch_received"
DISCHARGE = "discharge"
RETIRE = "retire"

EVENT_KINDS = (
    COMMISSION,
    OUTAGE_LEN,
    CYCLE_START,
    OUTAGE_START,
    SHORTAGE_WAIT,
    BATCH_RECEIVED,
    DISCHARGE,
    RETIRE,
)


@dataclass
class _ReactorRecord:
    commission: int
    power_mwe: float
    outage_steps: int = 0
    retire_step: int | None = None
    #: sorted outage start steps
    outage_starts: list[int] = field(default_factory=list)
    #: sorted (step, on) status flips; on=True at cycle starts
    status: list[tuple[int, bool]] = field(default_factory=list)
    #: step -> lots received that step
    batches: dict[int, int] = field(default_factory=dict)
    shortage_waits: list[int] = field(default_factory=list)
    discharges: list[tuple[int, float]] = field(default_factory=list)


class EventLog:
    """Timestamped per-reactor records feeding the shortage metrics."""

    def __init__(self) -> None:
        self._records: dict[str, _ReactorRecord] = {}
        self.rows: list[tuple[int, str, str, float]] = []

    # -- recording ---------------------------------------------------------

    def record(self, t: int, reactor: str, event: str, value: float = 0.0) -> None:
        if event not in EVENT_KINDS:
            raise ValueError(f"unknown event kind {event!r}")
        self.rows.append((t, reactor, event, value))
        if event == COMMISSION:
            self._records[reactor] = _ReactorRecord(
                commission=t, power_mwe=value, status=[(t, False)]
            )
            return
        rec = self._records[reactor]
        if event == OUTAGE_LEN:
            rec.outage_steps = int(value)
        elif event == CYCLE_START:
            insort(rec.status, (t, True))
        elif event == OUTAGE_START:
            insort(rec.outage_starts, t)
            insort(rec.status, (t, False))
        elif event == SHORTAGE_WAIT:
            rec.shortage_waits.append(t)
        elif event == BATCH_RECEIVED:
            rec.batches[t] = rec.batches.get(t, 0) + int(value)
        elif event == DISCHARGE:
            rec.discharges.append((t, value))
        elif event == RETIRE:
            rec.retire_step = t
            insort(rec.status, (t, False))

    # -- queries -----------------------------------------------------------

    def reactors(self) -> list[str]:
        return list(self._records)

    def commission_step(self, reactor: str) -> int:
        return self._records[reactor].commission

    def power(self, reactor: str) -> float:
        return self._records[reactor].power_mwe

    def outage_steps(self, reactor: str) -> int:
        return self._records[reactor].outage_steps

    def retire_step(self, reactor: str) -> int | None:
        return self._records[reactor].retire_step

    def in_service(self, t: int, reactor: str) -> bool:
        rec = self._records[reactor]
        retired = rec.retire_step is not None and t >= rec.retire_step
        return rec.commission <= t and not retired

    def operating(self, t: int, reactor: str) -> bool:
        rec = self._records[reactor]
        i = bisect_right(rec.status, (t, True))
        if i == 0:
            return False
        return rec.status[i - 1][1]

    def latest_outage_start(self, t: int, reactor: str) -> int:
        """Most recent refueling-outage start at or before t.

        A reactor still waiting for its first core has never had an outage;
        its commission step plays that role so startup lots count toward the
        shortage accounting.
        """
        rec = self._records[reactor]
        i = bisect_right(rec.outage_starts, t)
        if i == 0:
            return rec.commission
        return rec.outage_starts[i - 1]

    def batches_received_between(self, reactor: str, t0: int, t1: int) -> int:
        rec = self._records[reactor]
        return sum(n for step, n in rec.batches.items() if t0 <= step <= t1)

    # -- CSV round-trip ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: list[tuple[int, str, str, float]]) -> "EventLog":
        log = cls()
        for t, reactor, event, value in rows:
            log.record(t, reactor, event, value)
        return log
