"""Discrete-time fuel cycle transition simulator.

Models a reactor park either as individual discrete facilities or as a
continuous-flow fleet, under monthly or quarterly time steps, and measures
how those modeling choices change fuel-shortage outcomes.
"""

from fuelcycle.core import ISOTOPES, Material, Recipe, SimClock, isotope_mass, mix, split

__all__ = [
    "ISOTOPES",
    "Material",
    "Recipe",
    "SimClock",
    "isotope_mass",
    "mix",
    "split",
]
