"""Time base, isotopic materials, and mass-balance primitives.

Everything that flows through the simulation is a :class:`Material`: a heavy
metal mass plus a mass-fraction composition over a fixed isotope set.
Compositions only ever change by recipe substitution at facility boundaries;
there is no decay or depletion.
"""

from __future__ import annotations

from dataclasses import dataclass, field

ISOTOPES = ("U235", "U238", "Pu239", "Am241", "FP", "other")

#: Isotopes counted as fissile by the separations stream split.
FISSILE_ISOTOPES = frozenset({"Pu239", "Am241"})

FRACTION_TOL = 1e-9


class InsufficientMassError(ValueError):
    """Raised when more mass is taken from a Material than it holds."""


class MassAccumulator:
    """Neumaier-compensated running sum.

    Large inventories (1e8..1e9 kg) tracked with plain ``+=`` drift by far
    more than the 1e-6 kg the global balance check allows; compensated
    summation keeps the error at one rounding of the final value regardless
    of how many additions happened.
    """

    __slots__ = ("_sum", "_comp")

    def __init__(self, initial: float = 0.0) -> None:
        self._sum = initial
        self._comp = 0.0

    def add(self, x: float) -> None:
        t = self._sum + x
        if abs(self._sum) >= abs(x):
            self._comp += (self._sum - t) + x
        else:
            self._comp += (x - t) + self._sum
        self._sum = t

    @property
    def value(self) -> float:
        return self._sum + self._comp


def _validate_composition(composition: dict[str, float], context: str) -> None:
    for iso, frac in composition.items():
        if iso not in ISOTOPES:
            raise ValueError(f"{context}: unknown isotope {iso!r}")
        if frac < 0:
            raise ValueError(f"{context}: negative fraction for {iso}")
    total = sum(composition.values())
    if abs(total - 1.0) > FRACTION_TOL:
        raise ValueError(f"{context}: fractions sum to {total!r}, expected 1")


@dataclass(frozen=True)
class SimClock:
    """Discrete time base: step index, step duration in months, horizon."""

    t: int
    dt: int
    horizon: int

    def __post_init__(self) -> None:
        if self.dt not in (1, 3):
            raise ValueError(f"dt must be 1 or 3 months, got {self.dt}")
        if self.t < 0:
            raise ValueError("step index must be >= 0")

    @property
    def month(self) -> int:
        return self.t * self.dt

    def advanced(self, steps: int = 1) -> "SimClock":
        return SimClock(self.t + steps, self.dt, self.horizon)


@dataclass(frozen=True)
class Recipe:
    """Named fixed composition (mass fractions over the isotope set)."""

    name: str
    composition: dict[str, float]

    def __post_init__(self) -> None:
        _validate_composition(self.composition, f"recipe {self.name!r}")


@dataclass(frozen=True)
class Material:
    """A mass of heavy-metal-bearing material with an isotopic composition.

    Immutable; mix/split return new values and conserve per-isotope mass.
    A zero-mass Material carries an empty composition.
    """

    mass: float
    composition: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.mass < 0:
            raise ValueError(f"negative mass: {self.mass}")
        if self.mass > 0:
            _validate_composition(self.composition, "material")

    @classmethod
    def empty(cls) -> "Material":
        return cls(0.0, {})

    @classmethod
    def from_recipe(cls, mass: float, recipe: Recipe) -> "Material":
        if mass == 0:
            return cls.empty()
        return cls(mass, dict(recipe.composition))

    def fraction(self, iso: str) -> float:
        return self.composition.get(iso, 0.0)


def mix(a: Material, b: Material) -> Material:
    """Combine two materials; per-isotope absolute masses add."""
    if a.mass == 0:
        return b
    if b.mass == 0:
        return a
    total = a.mass + b.mass
    comp: dict[str, float] = {}
    for iso in ISOTOPES:
        m = a.mass * a.fraction(iso) + b.mass * b.fraction(iso)
        if m > 0:
            comp[iso] = m / total
    return Material(total, comp)


def split(m: Material, take_kg: float) -> tuple[Material, Material]:
    """Take ``take_kg`` from ``m``; both parts keep m's composition."""
    if take_kg < 0:
        raise ValueError(f"negative take: {take_kg}")
    if take_kg > m.mass * (1 + FRACTION_TOL):
        raise InsufficientMassError(f"take {take_kg} kg from {m.mass} kg")
    take_kg = min(take_kg, m.mass)
    remainder = m.mass - take_kg
    taken = Material(take_kg, dict(m.composition)) if take_kg > 0 else Material.empty()
    rest = Material(remainder, dict(m.composition)) if remainder > 0 else Material.empty()
    return taken, rest


def isotope_mass(m: Material, iso: str) -> float:
    """Absolute mass (kg) of one isotope in a material; 0 when absent."""
    return m.mass * m.fraction(iso)
