"""Poisson basis functions and curves with finitely many stored control points."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .bernstein import bernstein_all, bernstein_basis

TRUNCATION_WARN = 1e-6


def poisson_basis(i: int, t: float) -> float:
    """``exp(-t) t^i / i!``, evaluated in log space."""
    if i < 0:
        raise ValueError(f"index must be non-negative, got {i}")
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    if t == 0:
        return 1.0 if i == 0 else 0.0
    return math.exp(-t + i * math.log(t) - math.lgamma(i + 1))


def poisson_row(M: int, t: float) -> np.ndarray:
    """``b_0(t) .. b_M(t)``."""
    return np.array([poisson_basis(i, t) for i in range(M + 1)])


def default_truncation(t: float) -> int:
    """Index ``ceil(t + 10 sqrt(t + 1))`` past which the Poisson tail is negligible."""
    return math.ceil(t + 10.0 * math.sqrt(t + 1.0))


def poisson_tail_bound(t: float, N: int) -> float:
    """Chernoff bound on ``P(X > N)`` for ``X ~ Poisson(t)``; 1 when ``N + 1 <= t``."""
    k = N + 1
    if t == 0:
        return 0.0
    if k <= t:
        return 1.0
    return math.exp(-t + k * (1.0 + math.log(t) - math.log(k)))


@dataclass(frozen=True, eq=False)
class PoissonCurve:
    control_points: np.ndarray

    def __init__(self, control_points):
        pts = np.array(control_points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
            raise ValueError("control points must be a non-empty list of equal-length vectors")
        pts.flags.writeable = False
        object.__setattr__(self, "control_points", pts)

    @property
    def last_index(self) -> int:
        return self.control_points.shape[0] - 1

    # file format: {"points": [[...], ...]}, list index = basis index
    @classmethod
    def from_dict(cls, data) -> PoissonCurve:
        try:
            points = data["points"]
        except (KeyError, TypeError) as exc:
            raise ValueError("Poisson curve object needs 'points'") from exc
        if not isinstance(points, list) or not points:
            raise ValueError("'points' must be a non-empty list")
        widths = {len(p) if isinstance(p, list) else -1 for p in points}
        if len(widths) != 1 or widths.pop() < 1:
            raise ValueError("all points must be non-empty lists of equal length")
        return cls(points)

    @classmethod
    def from_json(cls, text: str) -> PoissonCurve:
        return cls.from_dict(json.loads(text))

    def to_dict(self):
        return {"points": self.control_points.tolist()}


@dataclass(frozen=True)
class PoissonEvaluation:
    point: np.ndarray
    neglected_weight: float
    warning: str | None = None


def evaluate_poisson(curve: PoissonCurve, t: float) -> PoissonEvaluation:
    """Finite sum over the stored points plus the weight of the missing tail."""
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    w = poisson_row(curve.last_index, t)
    neglected = max(0.0, 1.0 - float(w.sum()))
    warning = None
    if neglected > TRUNCATION_WARN:
        warning = f"truncated: basis weight {neglected:.3e} beyond index {curve.last_index}"
    return PoissonEvaluation(w @ curve.control_points, neglected, warning)


def polar_label(i: int) -> str:
    """Label ``1^i 0^inf`` of control point ``i`` (written ``0^∞`` for ``i = 0``)."""
    if i < 0:
        raise ValueError(f"index must be non-negative, got {i}")
    return "0^∞" if i == 0 else f"1^{i} 0^∞"


def _check_limit_args(lam, d):
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    if lam < 0:
        raise ValueError(f"lambda must be non-negative, got {lam}")
    if lam / d > 1:
        raise ValueError(f"lambda/d = {lam / d} exceeds 1")


def bezier_limit_check(lam: float, k: int, d: int) -> tuple[float, float]:
    """``(beta_k^d(lam/d), b_k(lam))``: rescaled Bernstein value and its Poisson limit."""
    _check_limit_args(lam, d)
    if not 0 <= k <= d:
        raise ValueError(f"index {k} outside [0, {d}]")
    return bernstein_basis(d, k, lam / d), poisson_basis(k, lam)


def limit_sup_error(lam: float, d: int) -> float:
    """``max_k |beta_k^d(lam/d) - b_k(lam)|`` over ``k = 0..d``."""
    _check_limit_args(lam, d)
    return float(np.max(np.abs(bernstein_all(d, lam / d) - poisson_row(d, lam))))
