"""Divisors, degrees and gonality bounds of modular units on X_1(N), in exact arithmetic."""
from modunits.arith import Rational, bernoulli2, exact_order_count, frac, nearest_int
from modunits.cusps import CuspOrbit, all_orbits, orbit
from modunits.gonality import B0_B1, gonality_bound
from modunits.kernels import BACKEND
from modunits.minformula import Divisor, PiecewiseLin, UnitExpr, divisor, q_order, vk, vk_alt

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Rational",
    "bernoulli2",
    "frac",
    "exact_order_count",
    "nearest_int",
    "CuspOrbit",
    "orbit",
    "all_orbits",
    "PiecewiseLin",
    "UnitExpr",
    "Divisor",
    "vk",
    "vk_alt",
    "q_order",
    "divisor",
    "B0_B1",
    "gonality_bound",
]
