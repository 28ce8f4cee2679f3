"""Deployment institution: builds and retires reactors to track the growth
curve, switching build technology from LWR to SFR partway through.

The schedule is a pure function of the plan (installed capacity counts all
un-retired units, fueled or not), so every paradigm / time step case sees
the identical build-order sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class DeploymentPlan:
    build_period_months: int
    base_capacity_mwe: float
    annual_growth: float
    #: month from which only the second technology is built
    switch_month: int
    lwr_unit_mwe: float
    sfr_unit_mwe: float
    #: initial-park size and its retirement window (months)
    initial_units: int
    initial_retire_start_month: int
    initial_retire_end_month: int

    def target_capacity(self, month: int) -> float:
        """Exponential growth curve, anchored at the initial effective capacity."""
        return self.base_capacity_mwe * (1.0 + self.annual_growth) ** (month / 12.0)

    def is_build_boundary(self, month: int) -> bool:
        return month % self.build_period_months == 0

    def build_tech(self, month: int) -> str:
        return "lwr" if month < self.switch_month else "sfr"

    def build_order(self, month: int, installed_effective_mwe: float) -> tuple[str, int]:
        """Units of the currently available type needed to close the deficit."""
        deficit = self.target_capacity(month) - installed_effective_mwe
        tech = self.build_tech(month)
        unit = self.lwr_unit_mwe if tech == "lwr" else self.sfr_unit_mwe
        units = max(0, math.ceil(deficit / unit - 1e-9))
        return tech, units

    def initial_retire_month(self, k: int, dt: int) -> int:
        """Retirement month of initial unit k (1-based), staggered uniformly
        over the retirement window and snapped to the step grid."""
        if not 1 <= k <= self.initial_units:
            raise ValueError(f"unit index {k} out of range")
        window = self.initial_retire_end_month - self.initial_retire_start_month
        offset = (k - 1) * window / self.initial_units
        return self.initial_retire_start_month + round(offset / dt) * dt

    def initial_retirements_by_step(self, dt: int) -> dict[int, int]:
        """step -> number of initial units retiring on that step."""
        out: dict[int, int] = {}
        for k in range(1, self.initial_units + 1):
            step = self.initial_retire_month(k, dt) // dt
            out[step] = out.get(step, 0) + 1
        return out
