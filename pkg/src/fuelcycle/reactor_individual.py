"""Discrete single-reactor facility: batch management, refueling cycles,
outages, shortage-delayed starts, and retirement.

A reactor never operates with a partial core. When fuel is short it simply
stays offline past its normal outage window, re-requesting its missing lots
every step, and starts its next cycle on the step a delivery completes the
core. The cycle clock restarts at that actual start, which is what
progressively synchronizes previously staggered reactors during a shortage.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from fuelcycle import events
from fuelcycle.core import Material, Recipe, SimClock, split
from fuelcycle.events import EventLog
from fuelcycle.exchange import Request, fuel_sharing_preference


@dataclass(frozen=True)
class ReactorSpec:
    """Static parameters of one reactor type (durations in steps)."""

    name: str
    fuel_in: str
    fuel_out: str
    batch_kg: float
    batches_per_core: int
    cycle_steps: int
    outage_steps: int
    power_mwe: float
    effective_power_mwe: float
    lifetime_steps: int
    fresh_recipe: Recipe
    spent_recipe: Recipe

    @property
    def core_kg(self) -> float:
        return self.batch_kg * self.batches_per_core


class Phase(Enum):
    AWAITING_FUEL = "awaiting-fuel"
    OPERATING = "operating"
    OUTAGE = "outage"
    RETIRED = "retired"


class Reactor:
    """State machine for one discrete reactor."""

    def __init__(
        self,
        rid: str,
        spec: ReactorSpec,
        commission_step: int,
        log: EventLog,
        retire_step: int | None = None,
        start_full: bool = False,
    ) -> None:
        self.rid = rid
        self.spec = spec
        self.commission_step = commission_step
        self.retire_step = (
            retire_step if retire_step is not None else commission_step + spec.lifetime_steps
        )
        self.log = log
        self.phase = Phase.AWAITING_FUEL
        self.core: list[Material] = []
        self.cycle_pos = 0
        self.outage_started = commission_step
        self.operating_this_step = False
        log.record(commission_step, rid, events.COMMISSION, spec.power_mwe)
        log.record(commission_step, rid, events.OUTAGE_LEN, spec.outage_steps)
        if start_full:
            self.core = [
                Material.from_recipe(spec.batch_kg, spec.fresh_recipe)
                for _ in range(spec.batches_per_core)
            ]

    # -- exchange side -------------------------------------------------------

    def lots_needed(self) -> int:
        if self.phase is Phase.RETIRED:
            raise ValueError(f"{self.rid} is retired")
        return self.spec.batches_per_core - len(self.core)

    def pending_request(self, sharing_pref: bool = False) -> Request | None:
        """Just-in-time fresh fuel request: missing lots, re-issued each step."""
        if self.phase in (Phase.RETIRED, Phase.OPERATING):
            return None
        lots = self.lots_needed()
        if lots == 0:
            return None
        pref = fuel_sharing_preference(1.0, lots) if sharing_pref else 1.0
        return Request(
            requester=self.rid,
            commodity=self.spec.fuel_in,
            quantity=lots * self.spec.batch_kg,
            lot_size=self.spec.batch_kg,
            divisible=False,
            preference=pref,
        )

    def receive(self, t: int, payload: Material) -> None:
        """Accept delivered fresh fuel; payload must be whole lots."""
        lots = round(payload.mass / self.spec.batch_kg)
        if abs(payload.mass - lots * self.spec.batch_kg) > 1e-6:
            raise ValueError(
                f"{self.rid}: delivery of {payload.mass} kg is not whole lots"
            )
        rest = payload
        for _ in range(lots):
            batch, rest = split(rest, self.spec.batch_kg)
            self.core.append(batch)
        if len(self.core) > self.spec.batches_per_core:
            raise ValueError(f"{self.rid}: core overfilled")
        if lots:
            self.log.record(t, self.rid, events.BATCH_RECEIVED, lots)

    # -- state machine ---------------------------------------------------------

    def tick(self, clock: SimClock) -> list[Material]:
        """Advance one step; returns spent fuel leaving the reactor."""
        t = clock.t
        self.operating_this_step = False
        if self.phase is Phase.RETIRED:
            return []
        if t >= self.retire_step:
            return self._retire(t)

        if self.phase is Phase.AWAITING_FUEL:
            if len(self.core) == self.spec.batches_per_core:
                self._start_cycle(t)
            else:
                if t >= self.commission_step + self.spec.outage_steps:
                    self.log.record(t, self.rid, events.SHORTAGE_WAIT)
                return []

        if self.phase is Phase.OUTAGE:
            past_outage = t - self.outage_started >= self.spec.outage_steps
            if past_outage and len(self.core) == self.spec.batches_per_core:
                self._start_cycle(t)
            else:
                if past_outage:
                    self.log.record(t, self.rid, events.SHORTAGE_WAIT)
                return []

        # operating step
        self.operating_this_step = True
        self.cycle_pos += 1
        if self.cycle_pos >= self.spec.cycle_steps:
            return [self._discharge_batch(t)]
        return []

    def generated_power(self) -> float:
        return self.spec.power_mwe if self.operating_this_step else 0.0

    def _start_cycle(self, t: int) -> None:
        self.phase = Phase.OPERATING
        self.cycle_pos = 0
        self.log.record(t, self.rid, events.CYCLE_START)

    def _discharge_batch(self, t: int) -> Material:
        oldest = self.core.pop(0)
        spent = Material.from_recipe(oldest.mass, self.spec.spent_recipe)
        self.log.record(t, self.rid, events.DISCHARGE, spent.mass)
        self.phase = Phase.OUTAGE
        self.outage_started = t + 1
        self.log.record(t + 1, self.rid, events.OUTAGE_START)
        return spent

    def _retire(self, t: int) -> list[Material]:
        discharged = [
            Material.from_recipe(b.mass, self.spec.spent_recipe) for b in self.core
        ]
        for d in discharged:
            self.log.record(t, self.rid, events.DISCHARGE, d.mass)
        self.core = []
        self.phase = Phase.RETIRED
        self.log.record(t, self.rid, events.RETIRE)
        return discharged
