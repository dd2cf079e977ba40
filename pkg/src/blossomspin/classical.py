"""Classical flows: 2D Hamiltonian systems and angular-momentum precession.

Planar flow follows ``(dq/dt, dp/dt) = [[0, -1], [1, 0]] grad H``, that is
``(-dH/dp, dH/dq)``. Precession follows ``dL/dt = T x L``, a rigid rotation
of ``L`` about ``T`` at angular rate ``|T|``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernels
from .errors import NumericalError
from .spin import coherent_state, expectation, measure_distribution, spin_operators
from .projective import SphereAngles

Gradient = Callable[[float, float], tuple[float, float]]


@dataclass(frozen=True)
class PhaseState2D:
    q: float
    p: float


def _field(grad: Gradient, q, p):
    dHdq, dHdp = grad(q, p)
    return -dHdp, dHdq


def _rk4_step(grad, q, p, h):
    k1 = _field(grad, q, p)
    k2 = _field(grad, q + 0.5 * h * k1[0], p + 0.5 * h * k1[1])
    k3 = _field(grad, q + 0.5 * h * k2[0], p + 0.5 * h * k2[1])
    k4 = _field(grad, q + h * k3[0], p + h * k3[1])
    q = q + h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
    p = p + h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
    return q, p


def hamiltonian_flow_2d(grad: Gradient, s: PhaseState2D, dt: float, steps: int, every: int = 1) -> np.ndarray:
    """RK4 trajectory; rows ``(q, p)`` at steps ``0, every, 2*every, ...``.

    ``grad(q, p)`` returns ``(dH/dq, dH/dp)``.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    q, p = float(s.q), float(s.p)
    out = np.empty((steps // every + 1, 2))
    out[0] = q, p
    row = 1
    for step in range(1, steps + 1):
        try:
            q, p = _rk4_step(grad, q, p, dt)
        except OverflowError as exc:  # float ** overflows by raising, not with inf
            raise NumericalError(f"overflow at step {step}") from exc
        if not (math.isfinite(q) and math.isfinite(p)):
            raise NumericalError(f"non-finite state at step {step}")
        if step % every == 0:
            out[row] = q, p
            row += 1
    return out


def harmonic_gradient(q, p):
    """Gradient of ``H = (p^2 + q^2)/2``."""
    return q, p


def harmonic_energy(q, p):
    return 0.5 * (np.asarray(p) ** 2 + np.asarray(q) ** 2)


def orbit_period(grad: Gradient, s: PhaseState2D, dt: float, max_steps: int = 10**7) -> float:
    """Time until the trajectory returns to the half-line through ``s``.

    The crossing is found by integrating whole steps, then solving for the
    fractional last step with a secant iteration on RK4 substeps.
    """
    q0, p0 = float(s.q), float(s.p)
    angle0 = math.atan2(p0, q0)

    def side(q, p):
        # signed distance across the ray direction
        return -math.sin(angle0) * q + math.cos(angle0) * p

    q, p = q0, p0
    t = 0.0
    turned = 0.0
    prev_angle = angle0
    for _ in range(max_steps):
        nq, np_ = _rk4_step(grad, q, p, dt)
        a = math.atan2(np_, nq)
        delta = (a - prev_angle + math.pi) % (2 * math.pi) - math.pi
        turned += delta
        prev_angle = a
        if abs(turned) >= 2 * math.pi:
            lo, hi = 0.0, dt
            f_lo, f_hi = side(q, p), side(nq, np_)
            for _ in range(60):
                h = hi - f_hi * (hi - lo) / (f_hi - f_lo) if f_hi != f_lo else 0.5 * (lo + hi)
                qh, ph = _rk4_step(grad, q, p, h)
                fh = side(qh, ph)
                if abs(fh) < 1e-15 or abs(hi - lo) < 1e-16:
                    return t + h
                lo, f_lo, hi, f_hi = hi, f_hi, h, fh
            return t + h
        q, p = nq, np_
        t += dt
    raise NumericalError("orbit did not close within max_steps")


@dataclass(frozen=True)
class GyroState:
    """Angular momentum ``L`` (magnitude ``d/2``) and torque vector ``T``."""

    L: np.ndarray
    T: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "L", np.asarray(self.L, dtype=np.float64).reshape(3))
        object.__setattr__(self, "T", np.asarray(self.T, dtype=np.float64).reshape(3))

    @classmethod
    def with_spin(cls, d: int, direction, T) -> GyroState:
        """``L`` of length ``d/2`` along ``direction``."""
        u = np.asarray(direction, dtype=np.float64)
        return cls(0.5 * d * u / np.linalg.norm(u), T)

    @property
    def energy(self) -> float:
        return float(self.L @ self.T)


def precess(s: GyroState, dt: float, steps: int, every: int = 1, method: str = "rotation") -> np.ndarray:
    """Trajectory of ``L`` under ``dL/dt = T x L``; rows at steps ``0, every, ...``.

    ``method="rotation"`` applies the exact rotation by ``|T| dt`` per step
    (the step-``n`` state is ``L0`` rotated by ``n |T| dt``, so no rounding
    accumulates). ``method="rk4"`` is the generic fourth-order integrator.
    Zero torque yields a constant trajectory.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if steps < 0 or every < 1:
        raise ValueError("steps must be >= 0 and every >= 1")
    L0 = np.ascontiguousarray(s.L)
    T = np.ascontiguousarray(s.T)
    if method == "rotation":
        return kernels.precess_rotation(L0, T, float(dt), int(steps), int(every))
    if method == "rk4":
        return kernels.precess_rk4(L0, T, float(dt), int(steps), int(every))
    raise ValueError(f"unknown method {method!r}")


def latitude(traj: np.ndarray, T) -> np.ndarray:
    """Angle between each row of ``traj`` and ``T``."""
    T = np.asarray(T, dtype=np.float64)
    cosang = traj @ T / (np.linalg.norm(traj, axis=1) * np.linalg.norm(T))
    perp = np.linalg.norm(np.cross(traj, T), axis=1) / (np.linalg.norm(traj, axis=1) * np.linalg.norm(T))
    return np.arctan2(perp, cosang)


def trajectory_csv(traj: np.ndarray, T) -> str:
    """CSV with header ``step,Lx,Ly,Lz,H``."""
    T = np.asarray(T, dtype=np.float64)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["step", "Lx", "Ly", "Lz", "H"])
    for i, L in enumerate(traj):
        w.writerow([i, *(format(float(x), ".17g") for x in L), format(float(L @ T), ".17g")])
    return buf.getvalue()


def phase_csv(traj: np.ndarray, energy=harmonic_energy) -> str:
    """CSV with header ``step,q,p,H``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["step", "q", "p", "H"])
    for i, (q, p) in enumerate(traj):
        w.writerow([i, format(float(q), ".17g"), format(float(p), ".17g"), format(float(energy(q, p)), ".17g")])
    return buf.getvalue()


@dataclass(frozen=True)
class MomentMapReport:
    d: int
    theta: np.ndarray
    quantum_jz: np.ndarray
    classical_lz: np.ndarray
    mean_index: np.ndarray
    max_abs_diff: float
    fitted_constant: float

    def rows(self):
        for row in zip(self.theta, self.quantum_jz, self.classical_lz, self.mean_index):
            yield tuple(float(x) for x in row)


def moment_map_report(d: int, samples: int = 1000) -> MomentMapReport:
    """Coherent-state ``<Jz>`` against the classical height ``(d/2) cos theta``.

    Also lists the mean basis index, which should be ``d cos^2(theta/2)``
    (the same quantity shifted onto [0, d]) and the least-squares slope of ``<Jz>`` against
    ``cos theta``.
    """
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    Jz = spin_operators(d).Jz
    theta = np.linspace(0.0, math.pi, samples)
    states = [coherent_state(d, SphereAngles(th)) for th in theta]
    quantum = np.array([expectation(s, Jz) for s in states])
    classical = 0.5 * d * np.cos(theta)
    k = np.arange(d + 1)
    mean_index = np.array([k @ measure_distribution(s) for s in states])
    x = np.cos(theta)
    slope = float(x @ quantum / (x @ x))
    return MomentMapReport(
        d=d,
        theta=theta,
        quantum_jz=quantum,
        classical_lz=classical,
        mean_index=mean_index,
        max_abs_diff=float(np.max(np.abs(quantum - classical))),
        fitted_constant=slope,
    )
