"""Aggregate continuous-flow reactor fleet.

One facility stands in for N_r reactor units with perfect fuel sharing and
perfect cycle staggering: operation, discharge, and power scale with the
aggregate core fill fraction instead of whole reactors dropping offline.
Capacity is still deployed and retired in single-unit increments so the
deployment institution can treat the fleet like many individual reactors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from fuelcycle.core import MassAccumulator, Material
from fuelcycle.reactor_individual import ReactorSpec


@dataclass
class OverdrawEvent:
    """A retirement discharged more core mass than the fleet held."""

    step: int
    units: int
    discharged_kg: float
    deficit_kg: float


@dataclass
class FleetState:
    """Aggregate core inventory and unit count for one reactor type."""

    spec: ReactorSpec
    n_units: int = 0
    #: compensated running core inventory (kg); raw += would drift past the
    #: global 1e-6 kg balance tolerance at fleet scale
    core_inv: MassAccumulator = field(default_factory=MassAccumulator)
    #: retirement overdraw events (mass created by the full-core retirement rule)
    overdraws: list[OverdrawEvent] = field(default_factory=list)

    @property
    def core_inv_kg(self) -> float:
        return self.core_inv.value

    @property
    def core_cap_kg(self) -> float:
        return self.n_units * self.spec.core_kg

    @property
    def fill_fraction(self) -> float:
        cap = self.core_cap_kg
        return self.core_inv_kg / cap if cap > 0 else 0.0

    def n_operating(self) -> float:
        """Fractional number of units that can run at the current fill."""
        return self.n_units * self.fill_fraction

    def generated_power(self) -> float:
        return self.spec.power_mwe * self.n_operating()

    def fuel_deficit(self) -> float:
        """Just-in-time refueling demand: top up every core, no buffer."""
        return max(self.core_cap_kg - self.core_inv_kg, 0.0)

    def refuel(self, offered: Material) -> float:
        """Accept fresh fuel up to total core capacity; returns kg accepted."""
        accepted = min(offered.mass, self.fuel_deficit())
        self.core_inv.add(accepted)
        return accepted

    def discharge(self) -> Material:
        """Continuous per-step discharge, scaled by the operating fraction.

        Rate is one batch per cycle per operating unit, spread over every
        step of the cycle; discharge starts on the first step of operation.
        """
        per_step = self.spec.batch_kg / (self.spec.cycle_steps + self.spec.outage_steps)
        d = per_step * self.n_operating()
        d = min(d, self.core_inv_kg)
        self.core_inv.add(-d)
        if d <= 0:
            return Material.empty()
        return Material.from_recipe(d, self.spec.spent_recipe)

    def build(self, units: int) -> None:
        if units < 0:
            raise ValueError("cannot build negative units")
        self.n_units += units  # new cores start empty; refueling fills them

    def retire(self, step: int, units: int) -> Material:
        """Retire units, discharging one FULL core each.

        The full-core rule applies even when the fleet average fill is below
        one; the core inventory is clamped at zero and the deficit logged as
        a retirement overdraw to keep the mass ledger reconcilable.
        """
        if units < 0:
            raise ValueError("cannot retire negative units")
        if units > self.n_units:
            raise ValueError(f"retire {units} of {self.n_units} units")
        if units == 0:
            return Material.empty()
        discharged = units * self.spec.core_kg
        removed = min(discharged, self.core_inv_kg)
        deficit = discharged - removed
        self.core_inv.add(-removed)
        self.n_units -= units
        if deficit > 1e-9:
            self.overdraws.append(OverdrawEvent(step, units, discharged, deficit))
        return Material.from_recipe(discharged, self.spec.spent_recipe)
