"""Generalized divisors, dualizing sheaves and linear systems on singular
rational curves over QQ, with exact arithmetic throughout."""

from gendiv.qlinalg import KERNEL
from gendiv.curvespec import Curve, CurveError, curve_from_clusters, curve_from_semigroup, cusp, node, tacnode
from gendiv.fracmod import FracModule, ModuleError
from gendiv.sheafcoh import Sheaf, h0, h1
from gendiv.dualizing import dualizing_sheaf, is_gorenstein
from gendiv.divisors import DivisorError, GDivisor, NoCanonicalDivisor, OmegaDivisor

__version__ = "0.1.0"

__all__ = [
    "KERNEL",
    "Curve",
    "CurveError",
    "curve_from_clusters",
    "curve_from_semigroup",
    "cusp",
    "node",
    "tacnode",
    "FracModule",
    "ModuleError",
    "Sheaf",
    "h0",
    "h1",
    "dualizing_sheaf",
    "is_gorenstein",
    "DivisorError",
    "GDivisor",
    "NoCanonicalDivisor",
    "OmegaDivisor",
]
