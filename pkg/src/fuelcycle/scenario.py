"""Scenario configuration: schema, validation, and the bundled case suite.

A scenario is one YAML document. The four bundled eg23 files differ only in
case id, time step duration, reactor paradigm, and the per-case reactor
parameters (cycle / outage split and nameplate power); everything else is
shared so that cross-case differences are attributable to the modeling
choices alone.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from fuelcycle.core import Recipe
from fuelcycle.reactor_individual import ReactorSpec

CASES = ("MI", "MF", "QI", "QF")
CASE_SETTINGS = {
    "MI": (1, "individual"),
    "MF": (1, "fleet"),
    "QI": (3, "individual"),
    "QF": (3, "fleet"),
}


class ScenarioError(ValueError):
    """Configuration rejected before step 0, with a path-qualified message."""


def _get(node: dict, path: str, key: str):
    if key not in node:
        raise ScenarioError(f"{path}: missing required key {key!r}")
    return node[key]


@dataclass(frozen=True)
class ReactorTypeConfig:
    cycle_months: int
    outage_months: int
    batch_kg: float
    batches_per_core: int
    power_mwe: float
    effective_power_mwe: float
    lifetime_months: int
    fresh_recipe: str
    spent_recipe: str


@dataclass(frozen=True)
class InitialParkConfig:
    units: int
    cycle_months: int
    outage_months: int
    power_mwe: float
    retire_start_month: int
    retire_end_month: int


@dataclass(frozen=True)
class DeploymentConfig:
    build_period_months: int
    base_capacity_mwe: float
    annual_growth: float
    sfr_available_month: int


@dataclass(frozen=True)
class SeparationsConfig:
    start_month: int
    #: month -> annual cap in MTHM/yr; None value means uncapped
    capacity_mthm_yr: dict[int, float | None]


@dataclass(frozen=True)
class FacilityConfig:
    cooling_months: int
    lwr_separations: SeparationsConfig
    sfr_separations: SeparationsConfig


@dataclass(frozen=True)
class Scenario:
    case: str
    dt: int
    horizon_steps: int
    paradigm: str
    seed: int
    recipes: dict[str, Recipe]
    lwr: ReactorTypeConfig
    sfr: ReactorTypeConfig
    initial_park: InitialParkConfig
    deployment: DeploymentConfig
    facilities: FacilityConfig
    fuel_sharing_pref: bool = False

    def reactor_spec(self, tech: str) -> ReactorSpec:
        cfg = self.lwr if tech == "lwr" else self.sfr
        label = tech.upper()
        return ReactorSpec(
            name=tech,
            fuel_in=f"fresh-{label}-fuel",
            fuel_out=f"spent-{label}-fuel",
            batch_kg=cfg.batch_kg,
            batches_per_core=cfg.batches_per_core,
            cycle_steps=cfg.cycle_months // self.dt,
            outage_steps=cfg.outage_months // self.dt,
            power_mwe=cfg.power_mwe,
            effective_power_mwe=cfg.effective_power_mwe,
            lifetime_steps=cfg.lifetime_months // self.dt,
            fresh_recipe=self.recipes[cfg.fresh_recipe],
            spent_recipe=self.recipes[cfg.spent_recipe],
        )

    def initial_spec(self) -> ReactorSpec:
        """Initial-park LWRs: zero outage, capacity-factor-folded power."""
        cfg = self.initial_park
        lwr = self.lwr
        return ReactorSpec(
            name="lwr0",
            fuel_in="fresh-LWR-fuel",
            fuel_out="spent-LWR-fuel",
            batch_kg=lwr.batch_kg,
            batches_per_core=lwr.batches_per_core,
            cycle_steps=cfg.cycle_months // self.dt,
            outage_steps=cfg.outage_months // self.dt,
            power_mwe=cfg.power_mwe,
            effective_power_mwe=cfg.power_mwe,
            lifetime_steps=cfg.retire_end_month // self.dt,
            fresh_recipe=self.recipes[lwr.fresh_recipe],
            spent_recipe=self.recipes[lwr.spent_recipe],
        )


def _parse_recipes(node: dict, path: str) -> dict[str, Recipe]:
    recipes = {}
    for name, comp in node.items():
        try:
            recipes[name] = Recipe(name, {iso: float(f) for iso, f in comp.items()})
        except ValueError as e:
            raise ScenarioError(f"{path}.{name}: {e}") from e
    return recipes


def _parse_reactor(node: dict, path: str, recipes: dict[str, Recipe]) -> ReactorTypeConfig:
    cfg = ReactorTypeConfig(
        cycle_months=int(_get(node, path, "cycle_months")),
        outage_months=int(_get(node, path, "outage_months")),
        batch_kg=float(_get(node, path, "batch_kg")),
        batches_per_core=int(_get(node, path, "batches_per_core")),
        power_mwe=float(_get(node, path, "power_mwe")),
        effective_power_mwe=float(_get(node, path, "effective_power_mwe")),
        lifetime_months=int(_get(node, path, "lifetime_years")) * 12,
        fresh_recipe=_get(node, path, "fresh_recipe"),
        spent_recipe=_get(node, path, "spent_recipe"),
    )
    for recipe_key in (cfg.fresh_recipe, cfg.spent_recipe):
        if recipe_key not in recipes:
            raise ScenarioError(f"{path}: unknown recipe {recipe_key!r}")
    return cfg


def _parse_separations(node: dict, path: str) -> SeparationsConfig:
    start_month = int(_get(node, path, "start_year")) * 12
    raw = _get(node, path, "capacity_mthm_per_yr")
    if raw is None:
        caps: dict[int, float | None] = {start_month: None}
    else:
        caps = {int(year) * 12: (None if v is None else float(v)) for year, v in raw.items()}
    return SeparationsConfig(start_month=start_month, capacity_mthm_yr=caps)


def _check_divisible(label: str, months: int, dt: int) -> None:
    if months % dt != 0:
        raise ScenarioError(f"{label}: {months} months is not divisible by dt={dt}")


def parse_scenario(data: dict, origin: str = "<scenario>") -> Scenario:
    dt = int(_get(data, origin, "dt_months"))
    if dt not in (1, 3):
        raise ScenarioError(f"{origin}.dt_months: must be 1 or 3, got {dt}")
    case = str(_get(data, origin, "case"))
    paradigm = str(_get(data, origin, "paradigm"))
    if paradigm not in ("individual", "fleet"):
        raise ScenarioError(f"{origin}.paradigm: must be individual or fleet")
    if case in CASE_SETTINGS and CASE_SETTINGS[case] != (dt, paradigm):
        raise ScenarioError(
            f"{origin}: case {case} requires dt/paradigm {CASE_SETTINGS[case]}, "
            f"got ({dt}, {paradigm!r})"
        )

    horizon_months = int(_get(data, origin, "horizon_years")) * 12
    _check_divisible(f"{origin}.horizon", horizon_months, dt)

    recipes = _parse_recipes(_get(data, origin, "recipes"), f"{origin}.recipes")
    reactors = _get(data, origin, "reactors")
    lwr = _parse_reactor(_get(reactors, f"{origin}.reactors", "lwr"), f"{origin}.reactors.lwr", recipes)
    sfr = _parse_reactor(_get(reactors, f"{origin}.reactors", "sfr"), f"{origin}.reactors.sfr", recipes)

    park = _get(data, origin, "initial_park")
    ppath = f"{origin}.initial_park"
    initial = InitialParkConfig(
        units=int(_get(park, ppath, "units")),
        cycle_months=int(_get(park, ppath, "cycle_months")),
        outage_months=int(_get(park, ppath, "outage_months")),
        power_mwe=float(_get(park, ppath, "power_mwe")),
        retire_start_month=int(_get(park, ppath, "retire_start_year")) * 12,
        retire_end_month=int(_get(park, ppath, "retire_end_year")) * 12,
    )

    dep = _get(data, origin, "deployment")
    dpath = f"{origin}.deployment"
    deployment = DeploymentConfig(
        build_period_months=int(_get(dep, dpath, "build_period_months")),
        base_capacity_mwe=float(_get(dep, dpath, "base_capacity_mwe")),
        annual_growth=float(_get(dep, dpath, "annual_growth")),
        sfr_available_month=int(_get(dep, dpath, "sfr_available_year")) * 12,
    )

    fac = _get(data, origin, "facilities")
    fpath = f"{origin}.facilities"
    facilities = FacilityConfig(
        cooling_months=int(_get(fac, fpath, "cooling_months")),
        lwr_separations=_parse_separations(
            _get(fac, fpath, "lwr_separations"), f"{fpath}.lwr_separations"
        ),
        sfr_separations=_parse_separations(
            _get(fac, fpath, "sfr_separations"), f"{fpath}.sfr_separations"
        ),
    )

    for label, months in (
        (f"{origin}.reactors.lwr.cycle", lwr.cycle_months),
        (f"{origin}.reactors.lwr.outage", lwr.outage_months),
        (f"{origin}.reactors.lwr.lifetime", lwr.lifetime_months),
        (f"{origin}.reactors.sfr.cycle", sfr.cycle_months),
        (f"{origin}.reactors.sfr.outage", sfr.outage_months),
        (f"{origin}.reactors.sfr.lifetime", sfr.lifetime_months),
        (f"{ppath}.cycle", initial.cycle_months),
        (f"{ppath}.outage", initial.outage_months),
        (f"{dpath}.build_period", deployment.build_period_months),
        (f"{fpath}.cooling", facilities.cooling_months),
    ):
        _check_divisible(label, months, dt)

    return Scenario(
        case=case,
        dt=dt,
        horizon_steps=horizon_months // dt,
        paradigm=paradigm,
        seed=int(data.get("seed", 0)),
        recipes=recipes,
        lwr=lwr,
        sfr=sfr,
        initial_park=initial,
        deployment=deployment,
        facilities=facilities,
        fuel_sharing_pref=bool(data.get("fuel_sharing_pref", False)),
    )


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    with open(path) as f:
        data = yaml.safe_load(f)
    if not isinstance(data, dict):
        raise ScenarioError(f"{path}: not a mapping document")
    return parse_scenario(data, origin=str(path))


def bundled_scenario_path(case: str) -> Path:
    if case not in CASES:
        raise ScenarioError(f"unknown bundled case {case!r}; expected one of {CASES}")
    res = importlib.resources.files("fuelcycle") / "scenarios" / f"eg23_{case.lower()}.yaml"
    return Path(str(res))


def load_bundled(case: str) -> Scenario:
    return load_scenario(bundled_scenario_path(case))
