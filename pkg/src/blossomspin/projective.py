"""Riemann sphere plumbing: homogeneous points, stereographic angles, the
Veronese (normal curve) map, the circle action and the pulled-back area.

Angle convention: a point ``[z:w]`` with ``r = z/w`` sits at
``r = tan(theta/2) exp(i phi)``. The pole ``r = 0`` (``theta = 0``) is labelled
"south" and ``r = infinity`` (``theta = pi``) "north".
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .bernstein import bernstein_all
from .errors import NumericalError

TWO_PI = 2.0 * math.pi


def canonical_vector(vec) -> np.ndarray:
    """Unit-norm representative whose first nonzero entry is real positive."""
    v = np.asarray(vec, dtype=complex)
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise ValueError("the zero vector has no projective class")
    v = v / norm
    # "first nonzero" up to rounding: the first entry above a relative floor
    idx = int(np.argmax(np.abs(v) > 1e-14 * np.max(np.abs(v))))
    phase = v[idx] / abs(v[idx])
    return v / phase


def projective_distance(a, b) -> float:
    """Fubini-Study angle between the classes of two nonzero vectors."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    ov = np.vdot(a, b)
    if ov != 0:
        b = b * (abs(ov) / ov)
    # chord between phase-aligned unit vectors; acos(|<a,b>|) loses half the digits near 0
    chord = float(np.linalg.norm(a - b))
    return 2.0 * math.asin(min(1.0, chord / 2.0))


@dataclass(frozen=True)
class RiemannPoint:
    """Point ``[z:w]`` of the complex projective line."""

    z: complex
    w: complex

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "w", complex(self.w))
        if self.z == 0 and self.w == 0:
            raise ValueError("[0:0] is not a projective point")

    @classmethod
    def from_complex(cls, r: complex) -> RiemannPoint:
        return cls(r, 1.0)

    @classmethod
    def infinity(cls) -> RiemannPoint:
        return cls(1.0, 0.0)

    @property
    def is_infinity(self) -> bool:
        return self.w == 0

    def dehomogenize(self) -> complex:
        """``z/w``; ``complex('inf')`` at the pole ``w = 0``."""
        if self.w == 0:
            return complex(math.inf, 0.0)
        return self.z / self.w

    def canonical(self) -> RiemannPoint:
        z, w = canonical_vector([self.z, self.w])
        return RiemannPoint(z, w)

    def equivalent(self, other: RiemannPoint, tol: float = 1e-12) -> bool:
        return projective_distance([self.z, self.w], [other.z, other.w]) <= tol

    def bloch_vector(self) -> np.ndarray:
        """Unit vector ``(sin t cos p, sin t sin p, cos t)`` for the angles of this point."""
        return stereographic_to_angles(self).unit_vector()


@dataclass(frozen=True)
class SphereAngles:
    """Colatitude ``theta`` in [0, pi] and longitude ``phi`` in [0, 2 pi)."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta = float(self.theta)
        if not -1e-12 <= theta <= math.pi + 1e-12:
            raise ValueError(f"theta must lie in [0, pi], got {theta}")
        object.__setattr__(self, "theta", min(max(theta, 0.0), math.pi))
        object.__setattr__(self, "phi", float(self.phi) % TWO_PI)

    @property
    def at_pole(self) -> bool:
        return self.theta in (0.0, math.pi)

    def pole_label(self) -> str | None:
        if self.theta == 0.0:
            return "south"
        if self.theta == math.pi:
            return "north"
        return None

    def unit_vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])

    def angular_distance(self, other: SphereAngles) -> float:
        """Great-circle distance on the unit sphere (chord-based, accurate near 0)."""
        chord = float(np.linalg.norm(self.unit_vector() - other.unit_vector()))
        return 2.0 * math.asin(min(1.0, chord / 2.0))


def stereographic_to_angles(p: RiemannPoint) -> SphereAngles:
    theta = 2.0 * math.atan2(abs(p.z), abs(p.w))
    if p.z == 0 or p.w == 0:
        return SphereAngles(theta, 0.0)
    phi = cmath.phase(p.z) - cmath.phase(p.w)
    return SphereAngles(theta, phi)


def angles_to_stereographic(a: SphereAngles) -> RiemannPoint:
    if a.theta == math.pi:
        return RiemannPoint.infinity()
    half = 0.5 * a.theta
    return RiemannPoint(math.sin(half) * cmath.exp(1j * a.phi), math.cos(half))


def veronese(d: int, p: RiemannPoint) -> np.ndarray:
    """Canonical coordinates of ``[u^d : C(d,1) u^(d-1) v : ... : v^d]`` with ``[u:v] = [z:w]``."""
    if d < 1:
        raise ValueError(f"degree must be positive, got {d}")
    u, v = canonical_vector([p.z, p.w])
    coords = np.array([math.comb(d, k) * u ** (d - k) * v**k for k in range(d + 1)], dtype=complex)
    return canonical_vector(coords)


def circle_action(p: RiemannPoint, phase: float) -> RiemannPoint:
    """Multiply the dehomogenized coordinate by ``exp(i phase)``."""
    return RiemannPoint(p.z * cmath.exp(1j * phase), p.w)


def algebraic_moment(d: int, t: float) -> float:
    """Mean index ``sum_i i * beta_i^d(t)``; lands in [0, d]."""
    if d < 1:
        raise ValueError(f"degree must be positive, got {d}")
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    return float(np.arange(d + 1) @ bernstein_all(d, t))


@dataclass(frozen=True)
class AreaResult:
    area: float
    n_theta: int
    n_phi: int
    refinement_gap: float

    @property
    def metric_radius(self) -> float:
        """Radius of a round sphere with this surface area."""
        return math.sqrt(self.area / (4.0 * math.pi))

    @property
    def symplectic_radius(self) -> float:
        """Radius ``R`` of the momentum sphere whose symplectic area ``4 pi R`` equals this area."""
        return self.area / (4.0 * math.pi)


def _midpoint(d, n_theta, n_phi, weights):
    # density is scaled so that d = 1 integrates to 2 pi
    return kernels.fs_area_midpoint(d, n_theta, n_phi, weights)


def fubini_study_area(
    d: int,
    samples: int = 10_000,
    tol: float = 1e-6,
    weights=None,
    max_refinements: int = 8,
) -> AreaResult:
    """Area of the sphere embedded by ``veronese(d, .)``, normalized so ``d = 1`` gives ``2 pi``.

    Midpoint rule on an ``n x n`` (theta, phi) grid with ``n*n >= samples``,
    Richardson-extrapolated against the half-resolution grid, doubling until
    successive extrapolants agree to ``tol`` (absolute). ``weights`` replaces
    the binomial coordinate weights ``C(d, k)``.
    """
    if d < 1:
        raise ValueError(f"degree must be positive, got {d}")
    if samples < 10_000:
        raise ValueError("need at least 10^4 grid cells")
    if weights is None:
        weights = np.array([math.comb(d, k) for k in range(d + 1)], dtype=np.float64)
    else:
        weights = np.ascontiguousarray(weights, dtype=np.float64)
    n = math.isqrt(samples - 1) + 1
    n += n % 2
    coarse = _midpoint(d, n // 2, n // 2, weights)
    fine = _midpoint(d, n, n, weights)
    previous = fine + (fine - coarse) / 3.0
    for _ in range(max_refinements):
        n *= 2
        coarse, fine = fine, _midpoint(d, n, n, weights)
        current = fine + (fine - coarse) / 3.0
        gap = abs(current - previous)
        if gap <= tol:
            return AreaResult(current, n, n, gap)
        previous = current
    raise NumericalError(f"area quadrature did not settle for d={d}", residual=gap)


def fubini_study_pullback_area(d: int, samples: int = 10_000) -> float:
    return fubini_study_area(d, samples).area
