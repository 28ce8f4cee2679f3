"""Non-reactor facilities: infinite sources, cooling storage,
throughput-capped separations, and blending fuel fabrication.

Suppliers bid only what they held at the start of a step (the kernel takes
snapshots before production runs), so material always takes at least one
step to traverse each facility boundary.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from fuelcycle.core import (
    FISSILE_ISOTOPES,
    ISOTOPES,
    MassAccumulator,
    Material,
    Recipe,
    isotope_mass,
    mix,
    split,
)

MTHM_KG = 1000.0


class Source:
    """Infinite-supply recipe emitter (enrichment stands behind it)."""

    def __init__(self, name: str, commodity: str, recipe: Recipe) -> None:
        self.name = name
        self.commodity = commodity
        self.recipe = recipe
        self._emitted = MassAccumulator()

    @property
    def total_emitted_kg(self) -> float:
        return self._emitted.value

    def extract(self, kg: float) -> Material:
        self._emitted.add(kg)
        return Material.from_recipe(kg, self.recipe)


class CoolingStorage:
    """FIFO spent fuel store; lots become biddable after a residence time.

    Lots move from a cooling queue to a ready queue as they age out;
    withdrawal is FIFO over the ready queue only. Running totals avoid
    rescanning thousands of lots every step.
    """

    def __init__(self, name: str, commodity: str, min_residence_steps: int) -> None:
        self.name = name
        self.commodity = commodity
        self.min_residence_steps = min_residence_steps
        self._cooling: deque[tuple[int, Material]] = deque()
        self._ready: deque[Material] = deque()
        self._ready_kg = MassAccumulator()
        self._cooling_kg = MassAccumulator()
        self._pu239 = MassAccumulator()

    @property
    def ready_kg(self) -> float:
        return self._ready_kg.value

    @property
    def cooling_kg(self) -> float:
        return self._cooling_kg.value

    def receive(self, t: int, material: Material) -> None:
        if material.mass > 0:
            self._cooling.append((t, material))
            self._cooling_kg.add(material.mass)
            self._pu239.add(isotope_mass(material, "Pu239"))

    def total_kg(self) -> float:
        return self.ready_kg + self.cooling_kg

    def pu239_kg(self) -> float:
        return self._pu239.value

    def age(self, t: int) -> float:
        """Move aged lots to the ready queue; returns biddable kg."""
        while self._cooling and t - self._cooling[0][0] >= self.min_residence_steps:
            _, lot = self._cooling.popleft()
            self._ready.append(lot)
            self._ready_kg.add(lot.mass)
            self._cooling_kg.add(-lot.mass)
        return self.ready_kg

    def extract(self, kg: float) -> Material:
        """Withdraw aged material in FIFO order."""
        out = Material.empty()
        remaining = kg
        while remaining > 1e-12 and self._ready:
            lot = self._ready[0]
            take = min(remaining, lot.mass)
            taken, rest = split(lot, take)
            out = mix(out, taken)
            remaining -= take
            if rest.mass > 1e-12:
                self._ready[0] = rest
            else:
                self._ready.popleft()
        if remaining > 1e-6:
            raise ValueError(f"{self.name}: short {remaining} kg of aged inventory")
        self._ready_kg.add(-out.mass)
        self._pu239.add(-isotope_mass(out, "Pu239"))
        return out


@dataclass
class SeparationsSpec:
    """Throughput schedule and isotope stream routing for one separations line.

    ``capacity_mthm_yr`` maps a start month to an annual cap; the cap in
    force at month m is the entry with the largest start month <= m.
    None means uncapped.
    """

    input_commodity: str
    capacity_mthm_yr: dict[int, float | None]
    start_month: int = 0
    fissile_isotopes: frozenset[str] = FISSILE_ISOTOPES
    waste_isotopes: frozenset[str] = frozenset({"FP", "other"})

    def cap_kg_per_step(self, month: int, dt: int) -> float | None:
        active = [m for m in self.capacity_mthm_yr if m <= month]
        if not active or month < self.start_month:
            return 0.0
        annual = self.capacity_mthm_yr[max(active)]
        if annual is None:
            return None
        return annual * MTHM_KG * dt / 12.0


class Separations:
    """Splits buffered spent fuel into fissile, uranium, and waste streams."""

    def __init__(self, name: str, spec: SeparationsSpec) -> None:
        self.name = name
        self.spec = spec
        self.buffer = Material.empty()

    def receive(self, material: Material) -> None:
        self.buffer = mix(self.buffer, material)

    def request_quantity(self, month: int, dt: int, available_kg: float) -> float:
        """How much spent fuel to pull this step, given supplier availability."""
        cap = self.spec.cap_kg_per_step(month, dt)
        want = available_kg if cap is None else max(cap - self.buffer.mass, 0.0)
        return min(want, available_kg)

    def process(self, month: int, dt: int) -> dict[str, Material]:
        """Run up to one step of throughput; per-isotope mass is conserved."""
        cap = self.spec.cap_kg_per_step(month, dt)
        feed_kg = self.buffer.mass if cap is None else min(self.buffer.mass, cap)
        if feed_kg <= 0:
            return {"fissile": Material.empty(), "uranium": Material.empty(), "waste": Material.empty()}
        feed, self.buffer = split(self.buffer, feed_kg)
        streams: dict[str, dict[str, float]] = {"fissile": {}, "uranium": {}, "waste": {}}
        for iso in ISOTOPES:
            m = isotope_mass(feed, iso)
            if m <= 0:
                continue
            if iso in self.spec.fissile_isotopes:
                streams["fissile"][iso] = m
            elif iso in self.spec.waste_isotopes:
                streams["waste"][iso] = m
            else:
                streams["uranium"][iso] = m
        out = {}
        for stream, masses in streams.items():
            total = sum(masses.values())
            if total > 0:
                out[stream] = Material(total, {i: m / total for i, m in masses.items()})
            else:
                out[stream] = Material.empty()
        return out


class InventoryStore:
    """Plain accumulating store (separated fissile / uranium / waste)."""

    def __init__(self, name: str) -> None:
        self.name = name
        self.material = Material.empty()
        self._pending = Material.empty()
        self._total = MassAccumulator()
        self._pending_total = MassAccumulator()

    def receive_lagged(self, material: Material) -> None:
        """Material produced this step; merged in at end of step."""
        self._pending = mix(self._pending, material)
        self._pending_total.add(material.mass)

    def end_step(self) -> None:
        if self._pending.mass > 0:
            self.material = mix(self.material, self._pending)
            self._total.add(self._pending_total.value)
            self._pending = Material.empty()
            self._pending_total = MassAccumulator()

    @property
    def total_kg(self) -> float:
        return self._total.value + self._pending_total.value

    def snapshot(self) -> float:
        return self._total.value

    def extract(self, kg: float) -> Material:
        taken, rest = split(self.material, kg)
        self.material = rest
        self._total.add(-taken.mass)
        return taken


class Fabrication:
    """Blends separated fissile material with depleted uranium into fresh
    fast reactor fuel matching a target fissile mass fraction.

    DU supply and fabrication throughput are unconstrained; the separated
    fissile inventory is the only binding input.
    """

    def __init__(
        self,
        name: str,
        target_recipe: Recipe,
        fissile_store: InventoryStore,
        du_source: Source,
    ) -> None:
        self.name = name
        self.target_recipe = target_recipe
        self.fissile_store = fissile_store
        self.du_source = du_source
        self.fissile_fraction = sum(
            f for iso, f in target_recipe.composition.items() if iso in FISSILE_ISOTOPES
        )
        if self.fissile_fraction <= 0:
            raise ValueError("target recipe has no fissile content")
        self.du_drawn_this_step = 0.0
        self.fissile_drawn_this_step = 0.0
        self.pu239_drawn_this_step = 0.0

    def max_output_kg(self, fissile_available_kg: float) -> float:
        return fissile_available_kg / self.fissile_fraction

    def fabricate(self, demand_kg: float) -> Material:
        """Emit up to demand_kg of fuel at the target fissile fraction."""
        if demand_kg < 0:
            raise ValueError("negative fabrication demand")
        out_kg = min(demand_kg, self.max_output_kg(self.fissile_store.material.mass))
        if out_kg <= 0:
            return Material.empty()
        fissile_kg = out_kg * self.fissile_fraction
        fissile = self.fissile_store.extract(fissile_kg)
        du = self.du_source.extract(out_kg - fissile_kg)
        self.fissile_drawn_this_step += fissile.mass
        self.du_drawn_this_step += du.mass
        self.pu239_drawn_this_step += isotope_mass(fissile, "Pu239")
        return mix(fissile, du)
