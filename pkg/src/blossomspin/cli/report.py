"""The verification report: one entry per correspondence check.

Every check is a function ``(d, rng) -> (max_error, detail)``. Randomness comes
from a Philox generator seeded by ``SeedSequence(seed, spawn_key=(crc32(name),))``,
so each check's sample is fixed by ``(seed, check name)`` alone and does not
depend on which other checks ran or in what order.
"""

from __future__ import annotations

import itertools
import json
import math
import os
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .. import kernels
from ..bernstein import BezierCurve, bernstein_all, blossom, degree_elevate, evaluate, evaluate_direct, subdivide
from ..classical import GyroState, moment_map_report, precess
from ..oscillator import TwoModeState, oscillator_coherent, restrict_to_sector, schwinger_spin
from ..poisson_curve import limit_sup_error, poisson_row
from ..projective import SphereAngles, fubini_study_area
from ..spin import (
    SpinState,
    coherent_state,
    commutator,
    commutator_convention,
    eigenstate,
    fidelity,
    majorana_stars,
    measure_distribution,
    spin_operators,
    state_from_stars,
)

TOLERANCE_ENV = "BLOSSOMSPIN_TOLERANCES"
MAX_DEGREE = 16


class ToleranceError(ValueError):
    pass


@dataclass(frozen=True)
class ReportEntry:
    check_name: str
    paper_anchor: str
    max_error: float | None
    tolerance: float
    passed: bool
    detail: str = ""
    error: str | None = None

    def to_dict(self):
        out = {
            "check_name": self.check_name,
            "paper_anchor": self.paper_anchor,
            "max_error": self.max_error,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "detail": self.detail,
        }
        if self.error is not None:
            out["error"] = self.error
        return out


# checks ----------------------------------------------------------------------


def _random_curve(rng, d, dim=3):
    return BezierCurve(rng.normal(size=(d + 1, dim)))


def check_area_scaling(d, rng):
    one = fubini_study_area(1)
    res = fubini_study_area(d)
    ratio = res.area / one.area
    detail = f"metric radius {res.metric_radius:.6g}, symplectic radius {res.symplectic_radius:.6g}"
    return abs(ratio - d) / d, detail


def check_bernstein_partition(d, rng):
    # off [0, 1] the terms alternate in sign and cancel; see the test suite for that range
    t = rng.uniform(0.0, 1.0, size=100)
    return max(abs(bernstein_all(d, x).sum() - 1.0) for x in t), "100 t in [0, 1]"


def check_blossom_axioms(d, rng):
    curve = _random_curve(rng, d)
    worst = 0.0
    args = rng.uniform(0.0, 1.0, size=d)
    ref = blossom(curve, args)
    if d <= 5:
        orders = itertools.permutations(range(d))
    else:
        orders = (rng.permutation(d) for _ in range(60))
    for perm in orders:
        worst = max(worst, np.max(np.abs(blossom(curve, args[list(perm)]) - ref)))
    for _ in range(100):
        slot = int(rng.integers(d))
        a, b = rng.uniform(-1, 2, size=2)
        lam = rng.uniform(-1, 2)
        xa, xb, xm = args.copy(), args.copy(), args.copy()
        xa[slot], xb[slot], xm[slot] = a, b, lam * a + (1 - lam) * b
        mix = lam * blossom(curve, xa) + (1 - lam) * blossom(curve, xb)
        worst = max(worst, np.max(np.abs(blossom(curve, xm) - mix)))
    for t in rng.uniform(0, 1, size=20):
        worst = max(worst, np.max(np.abs(blossom(curve, [t] * d) - evaluate(curve, t))))
    for i in range(d + 1):
        worst = max(worst, np.max(np.abs(blossom(curve, [0.0] * (d - i) + [1.0] * i) - curve.control_points[i])))
    return float(worst), "symmetry, multiaffinity, diagonal, control points"


def check_casteljau_direct(d, rng):
    curve = _random_curve(rng, d)
    worst = 0.0
    for t in rng.uniform(0, 1, size=100):
        worst = max(worst, np.max(np.abs(evaluate(curve, t) - evaluate_direct(curve, t))))
    up = degree_elevate(curve)
    left, right = subdivide(curve, 0.37)
    for s in rng.uniform(0, 1, size=100):
        worst = max(worst, np.max(np.abs(evaluate(up, s) - evaluate(curve, s))))
        worst = max(worst, np.max(np.abs(evaluate(left, s) - evaluate(curve, 0.37 * s))))
        worst = max(worst, np.max(np.abs(evaluate(right, s) - evaluate(curve, 0.37 + 0.63 * s))))
    return float(worst), "direct sum, elevation, subdivision"


def check_coherent_binomial(d, rng):
    worst = 0.0
    for theta in rng.uniform(0, math.pi, size=50):
        s = coherent_state(d, SphereAngles(theta, rng.uniform(0, 2 * math.pi)))
        ref = bernstein_all(d, math.cos(theta / 2) ** 2)
        worst = max(worst, np.max(np.abs(measure_distribution(s) - ref)))
    return float(worst), "50 random directions"


def check_coherent_stars(d, rng):
    worst = 0.0
    for _ in range(20):
        a = SphereAngles(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
        stars = majorana_stars(coherent_state(d, a))
        worst = max(worst, max(p.angular_distance(a) for p in stars.angles()))
    return worst, "20 random directions"


def check_eigenstate_stars(d, rng):
    worst = 0.0
    for k in range(d + 1):
        thetas = sorted(a.theta for a in majorana_stars(eigenstate(d, k)).angles())
        expected = [0.0] * k + [math.pi] * (d - k)
        worst = max(worst, max(abs(x - y) for x, y in zip(thetas, expected)))
    return worst, "k stars at the south pole, d-k at the north pole"


def check_ladder_commutators(d, rng):
    ops = schwinger_spin(d)
    err = np.max(np.abs(commutator(ops.Jplus, ops.Jminus) - 2 * ops.Jz))
    conv = commutator_convention(ops)
    return float(max(err, conv["standard"])), f"[Jz, J±] = ±J± holds ({conv['holds']}); swapped-sign residual {conv['swapped']:.6g}"


def check_limit_law_monotone(d, rng):
    worst = 0.0
    for lam in (0.5, 1.0, 2.0):
        errs = [limit_sup_error(lam, n) for n in (8, 16, 32, 64, 128, 256, 512)]
        worst = max(worst, max(max(0.0, b - a) for a, b in zip(errs, errs[1:])))
    return worst, "largest increase of the sup error as d doubles"


def check_limit_law_rate(d, rng):
    worst = 0.0
    ratios = []
    for lam in (0.5, 1.0, 2.0):
        errs = [limit_sup_error(lam, n) for n in (64, 128, 256, 512)]
        for a, b in zip(errs, errs[1:]):
            ratios.append(b / a)
            worst = max(worst, abs(b / a - 0.5))
    return worst, f"ratios in [{min(ratios):.6g}, {max(ratios):.6g}]"


def check_majorana_roundtrip(d, rng):
    worst = 0.0
    for _ in range(200):
        s = SpinState(rng.normal(size=d + 1) + 1j * rng.normal(size=d + 1))
        worst = max(worst, 1.0 - fidelity(s, state_from_stars(majorana_stars(s))))
    return worst, "200 random states"


def check_moment_map(d, rng):
    rep = moment_map_report(d, 1000)
    return rep.max_abs_diff, f"fitted constant {rep.fitted_constant:.6g}"


def check_oscillator_poisson(d, rng):
    worst = 0.0
    for z in (0.5, 1.0, 2.0, 4.0):
        st = oscillator_coherent(z)
        p = np.abs(st.amplitudes) ** 2
        ref = poisson_row(st.cutoff, z * z)
        tail = max(0.0, 1.0 - float(ref.sum()))  # Poisson mass past the cutoff
        worst = max(worst, 0.5 * (np.sum(np.abs(p - ref)) + tail))
    return float(worst), "total variation, z in {0.5, 1, 2, 4}"


def check_precession(d, rng):
    T = rng.normal(size=3)
    T /= np.linalg.norm(T)
    s = GyroState.with_spin(d, rng.normal(size=3), T)
    norm0, h0 = np.linalg.norm(s.L), s.energy
    worst = 0.0
    for method, steps in (("rotation", 100_000), ("rk4", 10_000)):
        traj = precess(s, 1e-3, steps, method=method)
        worst = max(worst, np.max(np.abs(np.linalg.norm(traj, axis=1) - norm0)), np.max(np.abs(traj @ T - h0)))
    return float(worst), "|L| and L.T drift, exact rotation and RK4"


def check_schwinger_equality(d, rng):
    a, b = schwinger_spin(d), spin_operators(d)
    worst = max(np.max(np.abs(getattr(a, n) - getattr(b, n))) for n in ("Jx", "Jy", "Jz", "Jplus", "Jminus"))
    return float(worst), "entrywise"


def check_two_mode_binomial(d, rng):
    worst = 0.0
    for _ in range(10):
        z1, z2 = rng.uniform(0.3, 2.0, size=2)
        N = max(d, 40)
        pair = TwoModeState.product(oscillator_coherent(z1, N), oscillator_coherent(z2, N))
        dist = measure_distribution(restrict_to_sector(pair, d))
        t = z1 * z1 / (z1 * z1 + z2 * z2)
        theta = 2 * math.acos(math.sqrt(t))
        worst = max(worst, np.max(np.abs(dist - measure_distribution(coherent_state(d, SphereAngles(theta))))))
    return float(worst), "Poisson pair conditioned on d quanta"


# name -> (function, anchor). Anchors name the row of the CAGD/physics table.
CHECKS = {
    "area_scaling": (check_area_scaling, "Degree-d <-> Spin-d/2"),
    "bernstein_partition": (check_bernstein_partition, "Blending functions <-> Quantum coherent states"),
    "blossom_axioms": (check_blossom_axioms, "Polar forms <-> Quantum spin addition"),
    "casteljau_direct": (check_casteljau_direct, "Bezier curves <-> Spin systems"),
    "coherent_binomial": (check_coherent_binomial, "Blending functions <-> Quantum coherent states"),
    "coherent_stars": (check_coherent_stars, "Polar forms <-> Quantum spin addition"),
    "eigenstate_stars": (check_eigenstate_stars, "Control points <-> Quantum eigenstates"),
    "ladder_commutators": (check_ladder_commutators, "Urn analogy <-> Oscillator analogy"),
    "limit_law_monotone": (check_limit_law_monotone, "Poisson curves <-> Harmonic oscillators"),
    "limit_law_rate": (check_limit_law_rate, "Poisson curves <-> Harmonic oscillators"),
    "majorana_roundtrip": (check_majorana_roundtrip, "Polar forms <-> Quantum spin addition"),
    "moment_map": (check_moment_map, "Domain/Newton polytope <-> Moment map"),
    "oscillator_poisson": (check_oscillator_poisson, "Poisson curves <-> Harmonic oscillators"),
    "precession_conservation": (check_precession, "Domain/Newton polytope <-> Moment map"),
    "schwinger_equality": (check_schwinger_equality, "Urn analogy <-> Oscillator analogy"),
    "two_mode_binomial": (check_two_mode_binomial, "Urn analogy <-> Oscillator analogy"),
}


# tolerances ------------------------------------------------------------------


def default_tolerances() -> dict[str, float]:
    text = resources.files("blossomspin").joinpath("data/tolerances.json").read_text()
    return parse_tolerances(text)


def parse_tolerances(text: str) -> dict[str, float]:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ToleranceError(f"tolerance file is not JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ToleranceError("tolerance file must be a JSON object")
    out = {}
    for name, value in raw.items():
        if name not in CHECKS:
            raise ToleranceError(f"unknown check {name!r} in tolerance file")
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value) or value < 0:
            raise ToleranceError(f"tolerance for {name!r} must be a finite non-negative number")
        out[name] = float(value)
    return out


def resolve_tolerances(path: str | None = None) -> dict[str, float]:
    """Defaults, overlaid by ``path`` (or the file named by the environment variable)."""
    tol = default_tolerances()
    path = path or os.environ.get(TOLERANCE_ENV) or None
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ToleranceError(f"cannot read tolerance file {path}: {exc}") from exc
        tol.update(parse_tolerances(text))
    return tol


# running ---------------------------------------------------------------------


def check_rng(seed: int, name: str) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(zlib.crc32(name.encode()),))
    return np.random.Generator(np.random.Philox(ss))


def _run_one(name, d, seed, tolerance):
    fn, anchor = CHECKS[name]
    try:
        err, detail = fn(d, check_rng(seed, name))
        err = float(err)
    except Exception as exc:  # reported as an errored check, exit code 3
        return ReportEntry(name, anchor, None, tolerance, False, "", f"{type(exc).__name__}: {exc}")
    passed = bool(math.isfinite(err) and err <= tolerance)
    return ReportEntry(name, anchor, err, tolerance, passed, detail)


def run_report(d: int, seed: int, tolerances: dict[str, float] | None = None, workers: int = 4) -> list[ReportEntry]:
    """All checks, sorted by check name regardless of completion order."""
    if not 1 <= d <= MAX_DEGREE:
        raise ValueError(f"degree must lie in [1, {MAX_DEGREE}], got {d}")
    tolerances = default_tolerances() if tolerances is None else tolerances
    names = sorted(CHECKS)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        entries = list(pool.map(lambda n: _run_one(n, d, seed, tolerances[n]), names))
    return sorted(entries, key=lambda e: e.check_name)


def report_document(d: int, seed: int, entries: list[ReportEntry]) -> dict:
    return {
        "degree": d,
        "seed": seed,
        "generator": "numpy Philox, SeedSequence(seed, spawn_key=(crc32(check_name),))",
        "backend": kernels.BACKEND,
        "all_passed": all(e.passed for e in entries),
        "entries": [e.to_dict() for e in entries],
    }
