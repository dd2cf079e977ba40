"""Bernstein basis and Bezier curves: evaluation, blossoms, elevation, subdivision.

Curves are immutable; all operations return new curves. Control points are
stored as a read-only ``(degree + 1, n)`` float64 array.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels


def bernstein_basis(d: int, i: int, t: float) -> float:
    """Value of the degree-``d`` Bernstein polynomial ``C(d,i) (1-t)^(d-i) t^i``.

    Uses the triangular recurrence for ``|t| <= 1`` and log-space binomials
    outside that range, where the recurrence would grow without bound.
    """
    if d < 0:
        raise ValueError(f"degree must be non-negative, got {d}")
    if not 0 <= i <= d:
        raise ValueError(f"index {i} outside [0, {d}]")
    t = float(t)
    if abs(t) <= 1.0:
        return float(kernels.bernstein_row(d, t)[i])
    return _bernstein_logspace(d, i, t)


def _bernstein_logspace(d, i, t):
    s = 1.0 - t
    if s == 0.0:
        return 1.0 if i == d else 0.0
    log_mag = (
        math.lgamma(d + 1)
        - math.lgamma(i + 1)
        - math.lgamma(d - i + 1)
        + (d - i) * math.log(abs(s))
        + i * math.log(abs(t))
    )
    sign = (-1.0 if s < 0 and (d - i) % 2 else 1.0) * (-1.0 if t < 0 and i % 2 else 1.0)
    return sign * math.exp(log_mag)


def bernstein_all(d: int, t: float) -> np.ndarray:
    """All ``d + 1`` basis values at ``t`` as an array."""
    if d < 0:
        raise ValueError(f"degree must be non-negative, got {d}")
    t = float(t)
    if abs(t) <= 1.0:
        return kernels.bernstein_row(d, t)
    return np.array([_bernstein_logspace(d, i, t) for i in range(d + 1)])


@dataclass(frozen=True, eq=False)
class BezierCurve:
    """Degree-``d`` polynomial curve given by ``d + 1`` control points in R^n."""

    control_points: np.ndarray

    def __init__(self, control_points):
        pts = np.array(control_points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
            raise ValueError("control points must be a non-empty list of equal-length vectors")
        pts = np.ascontiguousarray(pts)
        pts.flags.writeable = False
        object.__setattr__(self, "control_points", pts)

    @property
    def degree(self) -> int:
        return self.control_points.shape[0] - 1

    @property
    def dimension(self) -> int:
        return self.control_points.shape[1]

    def __eq__(self, other):
        if not isinstance(other, BezierCurve):
            return NotImplemented
        return self.control_points.shape == other.control_points.shape and bool(
            np.array_equal(self.control_points, other.control_points)
        )

    def __hash__(self):
        return hash((self.control_points.shape, self.control_points.tobytes()))

    def __repr__(self):
        return f"BezierCurve(degree={self.degree}, points={self.control_points.tolist()})"

    # file format: {"degree": int, "points": [[x, y, ...], ...]}
    @classmethod
    def from_dict(cls, data) -> BezierCurve:
        try:
            degree = data["degree"]
            points = data["points"]
        except (KeyError, TypeError) as exc:
            raise ValueError("curve object needs 'degree' and 'points'") from exc
        if not isinstance(degree, int) or isinstance(degree, bool) or degree < 0:
            raise ValueError(f"'degree' must be a non-negative integer, got {degree!r}")
        if not isinstance(points, list) or len(points) != degree + 1:
            raise ValueError(f"degree {degree} needs {degree + 1} points")
        widths = {len(p) if isinstance(p, list) else -1 for p in points}
        if len(widths) != 1 or widths.pop() < 1:
            raise ValueError("all points must be non-empty lists of equal length")
        return cls(points)

    @classmethod
    def from_json(cls, text: str) -> BezierCurve:
        return cls.from_dict(json.loads(text))

    def to_dict(self):
        return {"degree": self.degree, "points": self.control_points.tolist()}


def evaluate(curve: BezierCurve, t: float) -> np.ndarray:
    """Point of ``curve`` at parameter ``t`` via the de Casteljau pyramid."""
    return kernels.de_casteljau(curve.control_points, np.full(curve.degree, float(t)))


def evaluate_direct(curve: BezierCurve, t: float) -> np.ndarray:
    """Sum of control points weighted by the basis; reference for ``evaluate``."""
    return bernstein_all(curve.degree, t) @ curve.control_points


def blossom(curve: BezierCurve, args: Sequence[float]) -> np.ndarray:
    """Polar form of ``curve`` at ``args``; level ``j`` of the pyramid uses ``args[j]``."""
    params = np.asarray(args, dtype=np.float64).reshape(-1)
    if params.shape[0] != curve.degree:
        raise ValueError(f"blossom of a degree-{curve.degree} curve takes {curve.degree} arguments, got {params.shape[0]}")
    return kernels.de_casteljau(curve.control_points, params)


def degree_elevate(curve: BezierCurve) -> BezierCurve:
    """Same curve written with one more control point."""
    P = curve.control_points
    d = curve.degree
    Q = np.empty((d + 2, P.shape[1]))
    Q[0] = P[0]
    Q[d + 1] = P[d]
    for i in range(1, d + 1):
        a = i / (d + 1)
        Q[i] = a * P[i - 1] + (1.0 - a) * P[i]
    return BezierCurve(Q)


def subdivide(curve: BezierCurve, t: float) -> tuple[BezierCurve, BezierCurve]:
    """Split at ``t`` in (0, 1); each piece is reparameterized over [0, 1]."""
    t = float(t)
    if not 0.0 < t < 1.0:
        raise ValueError(f"subdivision parameter must lie in (0, 1), got {t}")
    left, right = kernels.subdivide(curve.control_points, t)
    return BezierCurve(left), BezierCurve(right)


def derivative(curve: BezierCurve) -> BezierCurve:
    """Hodograph: the degree ``d - 1`` curve of ``d (P[i+1] - P[i])``."""
    d = curve.degree
    if d == 0:
        raise ValueError("a degree-0 curve has no hodograph")
    return BezierCurve(d * np.diff(curve.control_points, axis=0))


def control_polygon_distance(curve: BezierCurve, samples: int = 2001) -> float:
    """Largest distance from a control point to the curve, by dense sampling."""
    ts = np.linspace(0.0, 1.0, samples)
    pts = np.array([evaluate(curve, t) for t in ts])
    best = 0.0
    for P in curve.control_points:
        best = max(best, float(np.min(np.linalg.norm(pts - P, axis=1))))
    return best


def control_point_label(d: int, i: int) -> str:
    """Blossom arguments that pick out control point ``i``, e.g. ``"0^2 1^1"``."""
    if not 0 <= i <= d:
        raise ValueError(f"index {i} outside [0, {d}]")
    parts = [f"0^{d - i}"] if d - i else []
    parts += [f"1^{i}"] if i else []
    return " ".join(parts) or "()"
