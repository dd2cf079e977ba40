"""Bezier/Bernstein curves next to the spin, oscillator and precession models
they correspond to, with numerical checks of each correspondence."""

from .bernstein import (
    BezierCurve,
    bernstein_all,
    bernstein_basis,
    blossom,
    degree_elevate,
    derivative,
    evaluate,
    subdivide,
)
from .errors import NumericalError
from .kernels import BACKEND
from .projective import RiemannPoint, SphereAngles
from .spin import (
    SpinState,
    StarConfiguration,
    coherent_state,
    eigenstate,
    majorana_stars,
    measure_distribution,
    spin_operators,
    state_from_stars,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BezierCurve",
    "NumericalError",
    "RiemannPoint",
    "SphereAngles",
    "SpinState",
    "StarConfiguration",
    "bernstein_all",
    "bernstein_basis",
    "blossom",
    "coherent_state",
    "degree_elevate",
    "derivative",
    "eigenstate",
    "evaluate",
    "majorana_stars",
    "measure_distribution",
    "spin_operators",
    "state_from_stars",
    "subdivide",
]
