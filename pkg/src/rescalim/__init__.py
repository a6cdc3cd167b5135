"""Exact analysis of multi-scale rescaling limits of degenerating families
of rational maps.

The library models coefficient sequences by a rank-k symbolic valued field
over a declared basis of asymptotic scales, and on top of it computes:
limits and hole divisors of a family at every scale, critical and periodic
divisors with multipliers, the action on Berkovich-type points at a scale
(images, local degrees, tangent maps, bad directions), adapted rescalings,
fundamental and baby rescalings, chains, cycles, and the rooted tree of
adapted cycles with its shift automorphism and size audits.
"""

from .scales import ScaleBasis, ScaleClass, Magnitude, TRIVIAL, ZERO, compare_scales, theta_class
from .symfield import QI, HahnPoly, SymbolicNumber, NormValue

__all__ = [
    "ScaleBasis",
    "ScaleClass",
    "Magnitude",
    "TRIVIAL",
    "ZERO",
    "compare_scales",
    "theta_class",
    "QI",
    "HahnPoly",
    "SymbolicNumber",
    "NormValue",
]

__version__ = "0.1.0"
