"""Simulation kernel: fixed per-step phase order and persisted step tables.

Phase order within every step:

1. deployment (retire scheduled units, then place build orders)
2. facility production (storage aging, separations, stream routing) using
   start-of-step inventories
3. exchange (collect requests, collect bids, resolve, deliver)
4. reactor ticks (state machines; discharges routed straight to storage)
5. snapshot and table append, with a global mass balance check

Material produced in phase 2 of step t is first biddable in phase 3 of step
t+1: suppliers bid snapshots taken before production runs, so facilities
never offer material they receive within the same step. Everything is
deterministic; identical scenarios yield byte-identical tables.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import yaml

from fuelcycle.core import Material, SimClock, isotope_mass
from fuelcycle.deployment import DeploymentPlan
from fuelcycle.events import EventLog
from fuelcycle.exchange import Bid, ExchangeBook, Request, resolve
from fuelcycle.facilities import (
    CoolingStorage,
    Fabrication,
    InventoryStore,
    Separations,
    SeparationsSpec,
    Source,
)
from fuelcycle.reactor_fleet import FleetState
from fuelcycle.reactor_individual import Phase, Reactor
from fuelcycle.scenario import Scenario

BALANCE_TOL_KG = 1e-6


class SimulationError(RuntimeError):
    pass


class Simulation:
    """One scenario run; owns all facility state and the output tables."""

    def __init__(
        self,
        scenario: Scenario,
        fuel_sharing_pref: bool | None = None,
        quiet: bool = True,
    ) -> None:
        self.sc = scenario
        self.dt = scenario.dt
        self.horizon = scenario.horizon_steps
        self.sharing = (
            scenario.fuel_sharing_pref if fuel_sharing_pref is None else fuel_sharing_pref
        )
        self.quiet = quiet
        self.individual = scenario.paradigm == "individual"

        self.plan = DeploymentPlan(
            build_period_months=scenario.deployment.build_period_months,
            base_capacity_mwe=scenario.deployment.base_capacity_mwe,
            annual_growth=scenario.deployment.annual_growth,
            switch_month=scenario.deployment.sfr_available_month,
            lwr_unit_mwe=scenario.lwr.effective_power_mwe,
            sfr_unit_mwe=scenario.sfr.effective_power_mwe,
            initial_units=scenario.initial_park.units,
            initial_retire_start_month=scenario.initial_park.retire_start_month,
            initial_retire_end_month=scenario.initial_park.retire_end_month,
        )

        self.specs = {
            "lwr": scenario.reactor_spec("lwr"),
            "sfr": scenario.reactor_spec("sfr"),
            "lwr0": scenario.initial_spec(),
        }

        fac = scenario.facilities
        cooling_steps = fac.cooling_months // self.dt
        recipes = scenario.recipes
        self.lwr_fuel_source = Source("lwr_fuel_source", "fresh-LWR-fuel", recipes[scenario.lwr.fresh_recipe])
        self.du_source = Source("du_source", "DU", recipes["du"])
        self.storages = {
            "spent-LWR-fuel": CoolingStorage("lwr_spent_storage", "spent-LWR-fuel", cooling_steps),
            "spent-SFR-fuel": CoolingStorage("sfr_spent_storage", "spent-SFR-fuel", cooling_steps),
        }
        self.sep_lwr = Separations(
            "lwr_separations",
            SeparationsSpec("spent-LWR-fuel", fac.lwr_separations.capacity_mthm_yr,
                            fac.lwr_separations.start_month),
        )
        self.sep_sfr = Separations(
            "sfr_separations",
            SeparationsSpec("spent-SFR-fuel", fac.sfr_separations.capacity_mthm_yr,
                            fac.sfr_separations.start_month),
        )
        self.fissile_store = InventoryStore("fissile_store")
        self.uranium_store = InventoryStore("uranium_store")
        self.waste_store = InventoryStore("waste_store")
        self.fab = Fabrication(
            "fuel_fab", recipes[scenario.sfr.fresh_recipe], self.fissile_store, self.du_source
        )

        # deployment / capacity registry (paradigm-independent arithmetic)
        self.installed_mwe = 0.0
        self.retire_mwe: dict[int, float] = {}

        # reactor containers
        self.log = EventLog()
        self.reactors: list[Reactor] = []
        self._by_rid: dict[str, Reactor] = {}
        self._rid_seq = 0
        self.fleets: dict[str, FleetState] = {}
        self.fleet_retire_queue: dict[int, dict[str, int]] = {}

        # mass ledger
        self.initial_core_kg = 0.0
        self.max_abs_residual_kg = 0.0

        # output tables
        self.power_rows: list[tuple] = []
        self.flow_rows: list[tuple] = []
        self.inventory_rows: list[tuple] = []
        self.deploy_rows: list[tuple] = []

        self._init_initial_park()

    # -- setup ---------------------------------------------------------------

    def _next_rid(self) -> str:
        # Opaque ids. The exchange breaks preference ties by id string order;
        # a multiplicative-hash prefix keeps that order deterministic but
        # uncorrelated with commission order, like the arbitrary agent
        # ordering of a network-flow allocation backend. The sequence number
        # suffix guarantees uniqueness.
        self._rid_seq += 1
        h = (self._rid_seq * 2654435761) % 10**6
        return f"r{h:06d}-{self._rid_seq}"

    def _init_initial_park(self) -> None:
        park = self.sc.initial_park
        spec = self.specs["lwr0"]
        retire_steps = [
            self.plan.initial_retire_month(k, self.dt) // self.dt
            for k in range(1, park.units + 1)
        ]
        self.installed_mwe = park.units * spec.effective_power_mwe
        for step in retire_steps:
            self.retire_mwe[step] = self.retire_mwe.get(step, 0.0) + spec.effective_power_mwe
        self.initial_core_kg = park.units * spec.core_kg

        if self.individual:
            for step in retire_steps:
                rid = self._next_rid()
                r = Reactor(rid, spec, 0, self.log, retire_step=step, start_full=True)
                self.reactors.append(r)
                self._by_rid[rid] = r
        else:
            # initial units share the LWR fleet; fleet params equal theirs
            fleet = FleetState(self.specs["lwr"])
            fleet.build(park.units)
            fleet.core_inv.add(fleet.core_cap_kg)
            self.fleets["lwr"] = fleet
            self.fleets["sfr"] = FleetState(self.specs["sfr"])
            for step in retire_steps:
                q = self.fleet_retire_queue.setdefault(step, {})
                q["lwr"] = q.get("lwr", 0) + 1

    # -- phases ----------------------------------------------------------------

    def _phase_deployment(self, t: int, month: int) -> None:
        self.installed_mwe -= self.retire_mwe.pop(t, 0.0)
        if not self.individual:
            for tech, units in self.fleet_retire_queue.pop(t, {}).items():
                fleet = self.fleets[tech]
                spent = fleet.retire(t, units)
                storage = self.storages[fleet.spec.fuel_out]
                storage.receive(t, spent)
                self._log_flow(t, f"{tech}_fleet", storage.name, fleet.spec.fuel_out, spent)
        if not self.plan.is_build_boundary(month):
            return
        tech, units = self.plan.build_order(month, self.installed_mwe)
        if units == 0:
            return
        spec = self.specs[tech]
        self.installed_mwe += units * spec.effective_power_mwe
        retire_step = t + spec.lifetime_steps
        if retire_step < self.horizon:
            self.retire_mwe[retire_step] = (
                self.retire_mwe.get(retire_step, 0.0) + units * spec.effective_power_mwe
            )
        self.deploy_rows.append((t, month, tech, units))
        if self.individual:
            for _ in range(units):
                rid = self._next_rid()
                r = Reactor(rid, spec, t, self.log)
                self.reactors.append(r)
                self._by_rid[rid] = r
        else:
            self.fleets[tech].build(units)
            if retire_step < self.horizon:
                q = self.fleet_retire_queue.setdefault(retire_step, {})
                q[tech] = q.get(tech, 0) + units

    def _phase_production(self, t: int, month: int) -> dict[str, float]:
        """Age storages, run separations; returns start-of-step bid snapshots."""
        snapshots = {
            "spent-LWR-fuel": self.storages["spent-LWR-fuel"].age(t),
            "spent-SFR-fuel": self.storages["spent-SFR-fuel"].age(t),
            "fissile": self.fissile_store.snapshot(),
        }
        for sep in (self.sep_lwr, self.sep_sfr):
            streams = sep.process(month, self.dt)
            if streams["fissile"].mass > 0:
                self.fissile_store.receive_lagged(streams["fissile"])
                self._log_flow(t, sep.name, "fissile_store", "separated-fissile", streams["fissile"])
            if streams["uranium"].mass > 0:
                self.uranium_store.receive_lagged(streams["uranium"])
            if streams["waste"].mass > 0:
                self.waste_store.receive_lagged(streams["waste"])
        return snapshots

    def _phase_exchange(self, t: int, month: int, snapshots: dict[str, float]) -> None:
        book = ExchangeBook()
        # separations pull cooled spent fuel
        for sep in (self.sep_lwr, self.sep_sfr):
            commodity = sep.spec.input_commodity
            q = sep.request_quantity(month, self.dt, snapshots[commodity])
            if q > 1e-9:
                book.submit(Request(sep.name, commodity, q, lot_size=1.0))
        # reactor fresh fuel demand
        if self.individual:
            for r in self.reactors:
                req = r.pending_request(self.sharing)
                if req is not None:
                    book.submit(req)
        else:
            for tech, fleet in self.fleets.items():
                deficit = fleet.fuel_deficit()
                if deficit > 1e-9:
                    book.submit(Request(f"{tech}_fleet", fleet.spec.fuel_in, deficit, lot_size=1.0))

        fab_capacity = self.fab.max_output_kg(snapshots["fissile"])
        suppliers = {
            "fresh-LWR-fuel": (self.lwr_fuel_source.name, None),
            "fresh-SFR-fuel": (self.fab.name, fab_capacity),
            "spent-LWR-fuel": (self.storages["spent-LWR-fuel"].name, snapshots["spent-LWR-fuel"]),
            "spent-SFR-fuel": (self.storages["spent-SFR-fuel"].name, snapshots["spent-SFR-fuel"]),
        }
        caps: dict[str, float] = {}
        for req in book.requests:
            supplier, available = suppliers.get(req.commodity, (None, None))
            if supplier is None:
                continue
            if available is None:
                book.offer(Bid(supplier, req.seq, req.quantity))
            else:
                caps[supplier] = available
                book.offer(Bid(supplier, req.seq, available))

        for alloc in resolve(book.requests, book.bids, caps):
            payload = self._extract(alloc.supplier, alloc.mass)
            self._deliver(t, alloc.requester, payload)
            self._log_flow(t, alloc.supplier, alloc.requester, alloc.commodity, payload)
        # one aggregate feed-stream flow row per step keeps the table compact
        if self.fab.fissile_drawn_this_step > 0:
            self.flow_rows.append((
                t, month, "fissile_store", self.fab.name, "separated-fissile",
                self.fab.fissile_drawn_this_step, self.fab.pu239_drawn_this_step,
            ))
            self.flow_rows.append((
                t, month, self.du_source.name, self.fab.name, "DU",
                self.fab.du_drawn_this_step, 0.0,
            ))
        self.fab.fissile_drawn_this_step = 0.0
        self.fab.du_drawn_this_step = 0.0
        self.fab.pu239_drawn_this_step = 0.0

    def _extract(self, supplier: str, mass: float) -> Material:
        if supplier == self.lwr_fuel_source.name:
            return self.lwr_fuel_source.extract(mass)
        if supplier == self.fab.name:
            return self.fab.fabricate(mass)
        for storage in self.storages.values():
            if supplier == storage.name:
                return storage.extract(mass)
        raise SimulationError(f"unknown supplier {supplier!r}")

    def _deliver(self, t: int, requester: str, payload: Material) -> None:
        if requester in self._by_rid:
            self._by_rid[requester].receive(t, payload)
        elif requester == self.sep_lwr.name:
            self.sep_lwr.receive(payload)
        elif requester == self.sep_sfr.name:
            self.sep_sfr.receive(payload)
        elif requester.endswith("_fleet"):
            fleet = self.fleets[requester.removesuffix("_fleet")]
            accepted = fleet.refuel(payload)
            if abs(accepted - payload.mass) > 1e-6:
                raise SimulationError(f"fleet rejected {payload.mass - accepted} kg")
        else:
            raise SimulationError(f"unknown requester {requester!r}")

    def _phase_reactors(self, t: int) -> float:
        clock = SimClock(t, self.dt, self.horizon)
        generated = 0.0
        if self.individual:
            any_retired = False
            for r in self.reactors:
                for spent in r.tick(clock):
                    storage = self.storages[r.spec.fuel_out]
                    storage.receive(t, spent)
                    self._log_flow(t, r.rid, storage.name, r.spec.fuel_out, spent)
                generated += r.generated_power()
                any_retired = any_retired or r.phase is Phase.RETIRED
            if any_retired:
                self.reactors = [r for r in self.reactors if r.phase is not Phase.RETIRED]
        else:
            for tech, fleet in self.fleets.items():
                generated += fleet.generated_power()
                spent = fleet.discharge()
                if spent.mass > 0:
                    storage = self.storages[fleet.spec.fuel_out]
                    storage.receive(t, spent)
                    self._log_flow(t, f"{tech}_fleet", storage.name, fleet.spec.fuel_out, spent)
        return generated

    def _phase_snapshot(self, t: int, month: int, generated: float) -> None:
        for store in (self.fissile_store, self.uranium_store, self.waste_store):
            store.end_step()
        self.power_rows.append((t, month, self.installed_mwe, generated))

        inv = self.inventory_rows.append
        for storage in self.storages.values():
            inv((t, month, storage.name, storage.commodity, storage.total_kg(), storage.pu239_kg()))
        for sep in (self.sep_lwr, self.sep_sfr):
            inv((t, month, sep.name, sep.spec.input_commodity, sep.buffer.mass,
                 isotope_mass(sep.buffer, "Pu239")))
        inv((t, month, "fissile_store", "separated-fissile", self.fissile_store.total_kg,
             isotope_mass(self.fissile_store.material, "Pu239")
             + isotope_mass(self.fissile_store._pending, "Pu239")))
        inv((t, month, "uranium_store", "separated-uranium", self.uranium_store.total_kg, 0.0))
        inv((t, month, "waste_store", "waste", self.waste_store.total_kg, 0.0))
        core_kg = self._core_inventory_kg()
        inv((t, month, "reactors", "core-fuel", core_kg, 0.0))

        self._check_balance(t, core_kg)

    def _core_inventory_kg(self) -> float:
        if self.individual:
            return math.fsum(b.mass for r in self.reactors for b in r.core)
        return math.fsum(f.core_inv.value for f in self.fleets.values())

    def _check_balance(self, t: int, core_kg: float) -> None:
        injected = (
            self.initial_core_kg
            + self.lwr_fuel_source.total_emitted_kg
            + self.du_source.total_emitted_kg
            + self._overdraw_total()
        )
        held = math.fsum((
            core_kg,
            self.storages["spent-LWR-fuel"].total_kg(),
            self.storages["spent-SFR-fuel"].total_kg(),
            self.sep_lwr.buffer.mass,
            self.sep_sfr.buffer.mass,
            self.fissile_store.total_kg,
            self.uranium_store.total_kg,
            self.waste_store.total_kg,
        ))
        residual = injected - held
        self.max_abs_residual_kg = max(self.max_abs_residual_kg, abs(residual))
        if abs(residual) > BALANCE_TOL_KG:
            raise SimulationError(
                f"step {t}: mass balance residual {residual:+.3e} kg "
                f"(injected {injected:.3f}, held {held:.3f})"
            )

    def _overdraw_total(self) -> float:
        return math.fsum(
            ev.deficit_kg for f in self.fleets.values() for ev in f.overdraws
        )

    def _log_flow(self, t: int, src: str, dst: str, commodity: str, mat: Material) -> None:
        self.flow_rows.append(
            (t, t * self.dt, src, dst, commodity, mat.mass, isotope_mass(mat, "Pu239"))
        )

    # -- main loop -------------------------------------------------------------

    def run(self, out_dir: str | Path) -> Path:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for t in range(self.horizon):
            month = t * self.dt
            self._phase_deployment(t, month)
            snapshots = self._phase_production(t, month)
            self._phase_exchange(t, month, snapshots)
            generated = self._phase_reactors(t)
            self._phase_snapshot(t, month, generated)
            if not self.quiet and month % 120 == 0:
                print(f"[{self.sc.case}] year {month // 12}", flush=True)
        self._write_tables(out)
        return out

    # -- persistence -------------------------------------------------------------

    def _write_tables(self, out: Path) -> None:
        def fmt(x) -> str:
            return f"{x:.6f}" if isinstance(x, float) else str(x)

        def write(name: str, header: list[str], rows: list[tuple]) -> None:
            with open(out / name, "w", newline="") as f:
                w = csv.writer(f)
                w.writerow(header)
                for row in rows:
                    w.writerow([fmt(x) for x in row])

        write("power.csv", ["t", "month", "installed_mwe", "generated_mwe"], self.power_rows)
        write("flows.csv", ["t", "month", "src", "dst", "commodity", "kg", "pu239_kg"],
              self.flow_rows)
        write("inventories.csv", ["t", "month", "facility", "commodity", "kg", "pu239_kg"],
              self.inventory_rows)
        write("deployments.csv", ["t", "month", "tech", "units"], self.deploy_rows)
        events = sorted(self.log.rows, key=lambda r: r[0])
        write("reactor_events.csv", ["t", "reactor", "event", "value"], events)
        overdraw_rows = [
            (ev.step, ev.step * self.dt, ev.units, ev.discharged_kg, ev.deficit_kg)
            for f in self.fleets.values()
            for ev in f.overdraws
        ]
        write("overdraws.csv", ["t", "month", "units", "discharged_kg", "deficit_kg"],
              sorted(overdraw_rows))
        meta = {
            "case": self.sc.case,
            "dt_months": self.dt,
            "paradigm": self.sc.paradigm,
            "horizon_steps": self.horizon,
            "fuel_sharing_pref": bool(self.sharing),
            "seed": self.sc.seed,
            "lwr_power_mwe": self.sc.lwr.power_mwe,
            "sfr_power_mwe": self.sc.sfr.power_mwe,
            "base_capacity_mwe": self.plan.base_capacity_mwe,
            "annual_growth": self.plan.annual_growth,
            "max_abs_balance_residual_kg": float(self.max_abs_residual_kg),
            "total_overdraw_kg": float(self._overdraw_total()),
        }
        with open(out / "meta.yaml", "w") as f:
            yaml.safe_dump(meta, f, sort_keys=True)


def run_scenario(
    scenario: Scenario,
    out_dir: str | Path,
    fuel_sharing_pref: bool | None = None,
    quiet: bool = True,
) -> Path:
    return Simulation(scenario, fuel_sharing_pref=fuel_sharing_pref, quiet=quiet).run(out_dir)
