"""Data behind each plot kind, plus its CSV and SVG renderings."""

from __future__ import annotations

import csv
import io
import math

import numpy as np

from ..bernstein import BezierCurve, bernstein_all, control_point_label, evaluate
from ..classical import GyroState, precess, trajectory_csv
from ..projective import SphereAngles
from ..spin import SpinState, coherent_state, eigenstate, majorana_stars, measure_distribution
from .fmt import machine
from .svg import Figure

KINDS = ("basis", "curve", "stars", "distribution", "precession")


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([machine(x) if isinstance(x, float) else x for x in row])
    return buf.getvalue()


def basis_data(d: int, samples: int = 101):
    t = np.linspace(0.0, 1.0, samples)
    return t, np.array([bernstein_all(d, x) for x in t])


def plot_basis(d: int, csv_out: bool, samples: int = 101) -> str:
    t, B = basis_data(d, samples)
    if csv_out:
        return _csv(["t", *(f"b{i}" for i in range(d + 1))], ([float(x), *map(float, row)] for x, row in zip(t, B)))
    fig = Figure(f"Bernstein basis, degree {d}", (0, 1), (0, 1))
    for i in range(d + 1):
        fig.line(t, B[:, i], f"b{i}", i)
    return fig.render()


def plot_curve(curve: BezierCurve, csv_out: bool, samples: int = 101) -> str:
    d = curve.degree
    t = np.linspace(0.0, 1.0, samples)
    pts = np.array([evaluate(curve, x) for x in t])
    ctrl = curve.control_points
    if curve.dimension == 1:
        # scalar curve: graph over t, control points at the Greville abscissae i/d
        pts = np.column_stack([t, pts[:, 0]])
        ctrl = np.column_stack([np.arange(d + 1) / max(d, 1), ctrl[:, 0]])
    labels = [control_point_label(d, i) for i in range(d + 1)]
    if csv_out:
        rows = [("curve", j, float(p[0]), float(p[1]), "") for j, p in enumerate(pts)]
        rows += [("control", i, float(p[0]), float(p[1]), labels[i]) for i, p in enumerate(ctrl)]
        return _csv(["series", "index", "x", "y", "label"], rows)
    allpts = np.vstack([pts[:, :2], ctrl[:, :2]])
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    pad = 0.05 * np.maximum(hi - lo, 1e-9)
    fig = Figure(f"Degree-{d} curve and control polygon", (lo[0] - pad[0], hi[0] + pad[0]), (lo[1] - pad[1], hi[1] + pad[1]))
    fig.line(ctrl[:, 0], ctrl[:, 1], "control polygon", 7, dashed=True)
    fig.line(pts[:, 0], pts[:, 1], "curve", 0)
    fig.marks(ctrl[:, 0], ctrl[:, 1], labels)
    return fig.render()


def plot_stars(state: SpinState, csv_out: bool) -> str:
    stars = majorana_stars(state)
    angles = stars.sorted_angles()
    if csv_out:
        rows = [(i, a.theta, a.phi, "true" if a.theta == math.pi else "false") for i, a in enumerate(angles)]
        return _csv(["index", "theta", "phi", "infinity"], rows)
    fig = Figure(f"Majorana stars, d = {state.d}", (0, 2 * math.pi), (0, math.pi))
    # several stars at one place are stacked slightly so each stays visible
    seen: dict[tuple[float, float], int] = {}
    xs, ys, labels = [], [], []
    for a in angles:
        key = (round(a.phi, 6), round(a.theta, 6))
        n = seen.get(key, 0)
        seen[key] = n + 1
        xs.append(a.phi + 0.08 * n)
        ys.append(a.theta)
        labels.append(a.pole_label() or "")
    fig.marks(xs, ys, labels, cls="star")
    return fig.render()


def distribution_data(d: int, angles: SphereAngles):
    probs = measure_distribution(coherent_state(d, angles))
    ref = bernstein_all(d, math.cos(angles.theta / 2) ** 2)
    return probs, ref


def plot_distribution(d: int, angles: SphereAngles, csv_out: bool) -> str:
    probs, ref = distribution_data(d, angles)
    if csv_out:
        return _csv(["k", "probability", "bernstein"], ((k, float(p), float(b)) for k, (p, b) in enumerate(zip(probs, ref))))
    fig = Figure(f"Coherent state distribution, d = {d}, theta = {angles.theta:.6g}", (-0.5, d + 0.5), (0, max(1e-12, probs.max()) * 1.1))
    fig.bars(np.arange(d + 1), probs, "probability")
    return fig.render()


def plot_precession(d: int, tilt: float, dt: float, steps: int, csv_out: bool) -> str:
    """``L`` of length ``d/2`` tilted by ``tilt`` from a unit torque along z."""
    T = np.array([0.0, 0.0, 1.0])
    s = GyroState.with_spin(d, [math.sin(tilt), 0.0, math.cos(tilt)], T)
    traj = precess(s, dt, steps)
    if csv_out:
        return trajectory_csv(traj, T)
    r = d / 2
    fig = Figure(f"Precession, |L| = {r:.6g}, latitude height {r * math.cos(tilt):.6g}", (-r, r), (-r, r))
    fig.line(traj[:, 0], traj[:, 1], "Lx,Ly", 0)
    return fig.render()
