"""Acceptance gate: every primary deliverable criterion, one test each,
at its stated tolerance. Printed as one PASS/FAIL line per criterion in
the terminal summary.

The bundled 200-year four-case suite (plus a fuel-sharing rerun of the
monthly-individual case) is executed once per session by the `suite`
fixture; criteria 1-4 and 7b use dedicated steady-state or randomized
harnesses instead of the full scenario runs.
"""

import filecmp
import itertools
import math
import random
import time
from dataclasses import dataclass
from pathlib import Path

import pytest

from conftest import record_acceptance
from fuelcycle.core import Material, SimClock
from fuelcycle.events import EventLog
from fuelcycle.exchange import Bid, Request, fuel_sharing_preference, resolve
from fuelcycle.kernel import run_scenario
from fuelcycle.metrics import (
    shortage_offline_power_series,
    wasted_batches_series,
)
from fuelcycle.reactor_fleet import FleetState
from fuelcycle.reactor_individual import Reactor
from fuelcycle.scenario import CASES, load_bundled
from fuelcycle.tables import build_case_metrics, read_meta

from _oracles import (
    brute_force_offline_power,
    brute_force_wasted_batches,
    random_event_rows,
)


def check(criterion: int, label: str, passed: bool, detail: str = "") -> None:
    verdict = "PASS" if passed else "FAIL"
    suffix = f" ({detail})" if detail else ""
    record_acceptance(f"ACCEPTANCE {criterion}: {verdict} — {label}{suffix}")
    assert passed, f"criterion {criterion}: {label}{suffix}"


@dataclass
class SuiteRun:
    dirs: dict
    metrics: dict
    seconds: dict


@pytest.fixture(scope="session")
def suite(tmp_path_factory) -> SuiteRun:
    root = tmp_path_factory.mktemp("suite")
    dirs, metrics, seconds = {}, {}, {}
    for case in CASES:
        sc = load_bundled(case)
        t0 = time.perf_counter()
        dirs[case] = run_scenario(sc, root / case)
        seconds[case] = time.perf_counter() - t0
        metrics[case] = build_case_metrics(dirs[case])
    sc = load_bundled("MI")
    dirs["MI+share"] = run_scenario(sc, root / "MI_share", fuel_sharing_pref=True)
    metrics["MI+share"] = build_case_metrics(dirs["MI+share"])
    return SuiteRun(dirs=dirs, metrics=metrics, seconds=seconds)


# -- steady-state harnesses (criteria 1 and 2) --------------------------------


def _individual_steady_state(spec, dt: int, cycles: int = 20):
    log = EventLog()
    r = Reactor("r1", spec, 0, log, start_full=True)
    steps = cycles * (spec.cycle_steps + spec.outage_steps)
    discharged = energy = 0.0
    for t in range(steps):
        req = r.pending_request()
        if req is not None:
            r.receive(t, Material.from_recipe(req.quantity, spec.fresh_recipe))
        for out in r.tick(SimClock(t, dt, steps)):
            discharged += out.mass
        energy += r.generated_power() * dt
    return discharged, energy, steps * dt


def _fleet_steady_state(spec, dt: int, months: int = 360, units: int = 10):
    f = FleetState(spec)
    f.build(units)
    f.core_inv.add(f.core_cap_kg)
    discharged = energy = 0.0
    for _ in range(months // dt):
        deficit = f.fuel_deficit()
        if deficit > 0:
            f.refuel(Material.from_recipe(deficit, spec.fresh_recipe))
        energy += f.generated_power() * dt
        discharged += f.discharge().mass
    return discharged, energy, months * units


ALL_COMBOS = [
    ("MI", "individual", 1), ("QI", "individual", 3),
    ("MF", "fleet", 1), ("QF", "fleet", 3),
]
TABLE_RATES = {"lwr": 1642.5, "sfr": 535.0}
TABLE_BURNUP = {"lwr": 0.547945, "sfr": 0.672897}
EFFECTIVE = {"lwr": 900.0, "sfr": 360.0}


def _steady_state_results():
    out = {}
    for case, paradigm, dt in ALL_COMBOS:
        sc = load_bundled(case)
        for tech in ("lwr", "sfr"):
            spec = sc.reactor_spec(tech)
            if paradigm == "individual":
                d, e, unit_months = _individual_steady_state(spec, dt)
            else:
                d, e, unit_months = _fleet_steady_state(spec, dt)
            out[(case, tech)] = (d / unit_months, e / d, e / unit_months)
    return out


@pytest.fixture(scope="session")
def steady_state():
    return _steady_state_results()


class TestCriterion1DischargeRates:
    def test_long_run_discharge_rates_all_four_combos(self, steady_state):
        worst = 0.0
        ok = True
        for (case, tech), (rate, _, _) in steady_state.items():
            rel = abs(rate - TABLE_RATES[tech]) / TABLE_RATES[tech]
            worst = max(worst, rel)
            ok = ok and rel <= 1e-6
        check(1, "discharge rates 1642.5/535 kg-month in all four combos",
              ok, f"worst rel err {worst:.2e}, tol 1e-6")


class TestCriterion2Burnup:
    def test_burnup_and_effective_power(self, steady_state):
        ok = True
        worst = 0.0
        for (case, tech), (_, burnup, avg_power) in steady_state.items():
            rel = abs(burnup - TABLE_BURNUP[tech]) / TABLE_BURNUP[tech]
            worst = max(worst, rel)
            ok = ok and rel <= 1e-3
            ok = ok and math.isclose(avg_power, EFFECTIVE[tech], rel_tol=1e-9)
        check(2, "burnup 0.547945/0.672897 MWe-mo per kg and effective power 900/360",
              ok, f"worst rel err {worst:.2e}, tol 1e-3")


class TestCriterion3QuantizedShutdown:
    """3-batch core half a batch short, resolved after 1 month, 3-month
    window: energies {QF: 2.5, MF: 2.8333.., QI: 0, MI: 2.0} x P_r."""

    def _individual_energy(self, dt: int) -> float:
        from test_reactor_individual import FRESH, SPENT
        from fuelcycle.reactor_individual import ReactorSpec
        spec = ReactorSpec(
            name="x", fuel_in="f", fuel_out="s", batch_kg=100.0,
            batches_per_core=3, cycle_steps=30 // dt, outage_steps=0,
            power_mwe=1.0, effective_power_mwe=1.0, lifetime_steps=10_000,
            fresh_recipe=FRESH, spent_recipe=SPENT,
        )
        r = Reactor("r1", spec, 0, EventLog())
        r.receive(0, Material.from_recipe(2 * spec.batch_kg, FRESH))
        energy = 0.0
        for t in range(3 // dt):
            if t * dt >= 1:  # resolution lands on a step boundary or later
                need = r.lots_needed()
                if need:
                    r.receive(t, Material.from_recipe(need * spec.batch_kg, FRESH))
            r.tick(SimClock(t, dt, 10))
            energy += r.generated_power() * dt
        return energy

    def _fleet_energy(self, dt: int) -> float:
        from test_reactor_fleet import FRESH, SPENT, ReactorSpec
        spec = ReactorSpec(
            name="x", fuel_in="f", fuel_out="s", batch_kg=100.0,
            batches_per_core=3, cycle_steps=30 // dt, outage_steps=0,
            power_mwe=1.0, effective_power_mwe=1.0, lifetime_steps=10_000,
            fresh_recipe=FRESH, spent_recipe=SPENT,
        )
        f = FleetState(spec)
        f.build(1)
        f.core_inv.add(2.5 * spec.batch_kg)
        energy = 0.0
        for t in range(3 // dt):
            if t * dt >= 1:
                f.refuel(Material.from_recipe(f.fuel_deficit(), FRESH))
            energy += f.generated_power() * dt
            back = f.discharge()  # isolate the window from burnup flow
            f.core_inv.add(back.mass)
        return energy

    def test_micro_scenario_energies_exact(self):
        got = {
            "MI": self._individual_energy(1),
            "QI": self._individual_energy(3),
            "MF": self._fleet_energy(1),
            "QF": self._fleet_energy(3),
        }
        want = {"MI": 2.0, "QI": 0.0, "MF": 2.5 / 3 + 2.0, "QF": 2.5}
        ok = all(math.isclose(got[c], want[c], rel_tol=0, abs_tol=1e-12) for c in want)
        check(3, "quantized-shutdown energies {QF 2.5, MF 2.8333, QI 0, MI 2.0}*Pr",
              ok, ", ".join(f"{c}={got[c]:.4f}" for c in ("QF", "MF", "QI", "MI")))


class TestCriterion4MetricOracle:
    def test_1000_random_logs_match_brute_force_replay(self):
        rng = random.Random(20260823)
        mismatches = 0
        n_logs = 1000
        for _ in range(n_logs):
            horizon = rng.randint(10, 100)
            rows = random_event_rows(rng, max_reactors=10, horizon=horizon)
            log = EventLog.from_rows(rows)
            if shortage_offline_power_series(log, horizon) != brute_force_offline_power(
                rows, horizon
            ):
                mismatches += 1
                continue
            if wasted_batches_series(log, horizon) != brute_force_wasted_batches(
                rows, horizon
            ):
                mismatches += 1
        check(4, "metric series equal brute-force replay on 1000 random logs",
              mismatches == 0, f"{mismatches}/{n_logs} mismatching logs")


class TestCriterion5MassBalance:
    def test_per_step_balance_within_1e_6_kg(self, suite):
        worst = 0.0
        overdraw_note = []
        ok = True
        for case, d in suite.dirs.items():
            meta = read_meta(d)
            worst = max(worst, float(meta["max_abs_balance_residual_kg"]))
            ok = ok and float(meta["max_abs_balance_residual_kg"]) <= 1e-6
            # overdraw events must individually reconcile: each discharges
            # exactly the full-core mass, deficit strictly positive and
            # no larger than the discharge itself
            with open(Path(d) / "overdraws.csv") as f:
                lines = f.read().splitlines()[1:]
            for line in lines:
                _, _, units, discharged, deficit = line.split(",")
                ok = ok and 0.0 < float(deficit) <= float(discharged) + 1e-9
            if lines:
                overdraw_note.append(f"{case}:{len(lines)} overdraws")
        detail = f"max residual {worst:.2e} kg"
        if overdraw_note:
            detail += "; " + ", ".join(overdraw_note)
        check(5, "global per-step heavy-metal balance closes to 1e-6 kg", ok, detail)


class TestCriterion6EffectOrderings:
    def test_a_cumulative_offline_power_ordering(self, suite):
        cum = {
            c: suite.metrics[c].rows[-1]["cum_shortage_offline_gwe_mo"] for c in CASES
        }
        ok = cum["QI"] > cum["MI"] and cum["QF"] > cum["MF"] \
            and cum["QI"] > cum["QF"] and cum["MI"] > cum["MF"]
        check(6, "(a) cumulative offline power QI>MI, QF>MF, QI>QF, MI>MF", ok,
              ", ".join(f"{c}={cum[c]:.0f}" for c in ("QI", "MI", "QF", "MF")))

    @staticmethod
    def _saturated_withdrawals(metrics):
        """Steps in shortage where essentially the whole previous fissile
        inventory is withdrawn (the store is drained every step)."""
        out = []
        prev = None
        for r in metrics.rows:
            if (
                prev is not None
                and prev > 1.0
                and r["shortage_offline_mwe"] > 0
                and r["fissile_withdrawn_kg"] >= 0.999 * prev
            ):
                out.append(r["fissile_withdrawn_kg"])
            prev = r["fissile_kg"]
        return out

    def test_b_quarterly_fleet_withdrawals_3x_monthly(self, suite):
        wqf = self._saturated_withdrawals(suite.metrics["QF"])
        wmf = self._saturated_withdrawals(suite.metrics["MF"])
        ratio = (sum(wqf) / len(wqf)) / (sum(wmf) / len(wmf))
        ok = bool(wqf and wmf) and abs(ratio - 3.0) / 3.0 <= 0.05
        check(6, "(b) saturated-shortage QF withdrawals ~3x MF within 5%", ok,
              f"ratio {ratio:.3f} over {len(wqf)}/{len(wmf)} saturated steps")

    def test_c_quarterly_fleet_inventory_floor_exceeds_monthly(self, suite):
        def floor(case):
            return min(
                r["fissile_kg"]
                for r in suite.metrics[case].rows
                if r["shortage_offline_mwe"] > 0
            )
        qf, mf = floor("QF"), floor("MF")
        check(6, "(c) QF minimum standing fissile inventory strictly exceeds MF",
              qf > mf, f"QF {qf:.0f} kg vs MF {mf:.0f} kg")

    def test_d_wasted_batches_fleet_zero_individual_positive(self, suite):
        wast = {c: suite.metrics[c].rows[-1]["cum_wasted_batch_months"] for c in CASES}
        ok = wast["MF"] == 0.0 and wast["QF"] == 0.0 \
            and wast["MI"] > 0.0 and wast["QI"] > 0.0
        check(6, "(d) wasted batch-months: fleet == 0, individual > 0", ok,
              ", ".join(f"{c}={wast[c]:.0f}" for c in CASES))


class TestCriterion7FuelSharing:
    def test_a_sharing_preference_strictly_reduces_waste(self, suite):
        base = suite.metrics["MI"].rows[-1]["cum_wasted_batch_months"]
        shared = suite.metrics["MI+share"].rows[-1]["cum_wasted_batch_months"]
        check(7, "(a) fuel sharing preference strictly reduces MI wasted batch-months",
              shared < base, f"{base:.0f} -> {shared:.0f}")

    def test_b_allocator_matches_exhaustive_fueled_count_oracle(self):
        lot = 10.0

        def greedy_fueled(needs, supply):
            reqs, bids = [], []
            for i, n in enumerate(needs):
                reqs.append(Request(f"q{i}", "fuel", n * lot, lot_size=lot,
                                    divisible=False,
                                    preference=fuel_sharing_preference(1.0, n)))
                reqs[-1].seq = i
            for req in reqs:
                bids.append(Bid("s", req.seq, supply * lot))
            allocs = resolve(reqs, bids, {"s": supply * lot})
            got = {}
            for a in allocs:
                got[a.requester] = got.get(a.requester, 0.0) + a.mass
            return sum(
                1 for i, n in enumerate(needs) if got.get(f"q{i}", 0.0) >= n * lot - 1e-9
            )

        def best_fueled(needs, supply):
            for r in range(len(needs), 0, -1):
                for combo in itertools.combinations(needs, r):
                    if sum(combo) <= supply:
                        return r
            return 0

        bad = 0
        total = 0
        for n_req in range(1, 6):
            for needs in itertools.product((1, 2, 3, 4), repeat=n_req):
                for supply in range(1, 7):
                    total += 1
                    if greedy_fueled(list(needs), supply) != best_fueled(list(needs), supply):
                        bad += 1
        check(7, "(b) allocator matches exhaustive fueled-count oracle (<=5 requesters)",
              bad == 0, f"{bad}/{total} mismatching instances")


class TestCriterion8Performance:
    def test_fleet_at_least_3x_faster_than_individual(self, suite):
        s = suite.seconds
        monthly = s["MI"] / s["MF"]
        quarterly = s["QI"] / s["QF"]
        ok = monthly >= 3.0 and quarterly >= 3.0 and all(v < 300.0 for v in s.values())
        check(8, "200-year fleet runs >=3x faster than individual, all under 5 min",
              ok, f"MI/MF {monthly:.1f}x, QI/QF {quarterly:.1f}x, "
                  + ", ".join(f"{c}={s[c]:.1f}s" for c in CASES))


class TestCriterion9Determinism:
    def test_repeat_runs_byte_identical(self, suite, tmp_path):
        tables = ("power.csv", "flows.csv", "inventories.csv", "deployments.csv",
                  "reactor_events.csv", "overdraws.csv")
        ok = True
        for case in CASES:
            rerun = run_scenario(load_bundled(case), tmp_path / case)
            for name in tables:
                ok = ok and filecmp.cmp(
                    Path(suite.dirs[case]) / name, rerun / name, shallow=False
                )
        check(9, "repeated runs of every bundled case are byte-identical", ok)
