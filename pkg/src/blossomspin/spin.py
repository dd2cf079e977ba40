"""Spin-d/2 states, angular momentum matrices and Majorana stars.

Basis index ``k`` in ``0..d`` counts "up" constituents; the ``J_z`` eigenvalue
of basis vector ``k`` is ``m = -d/2 + k``.

Majorana polynomial: amplitude ``c_k`` multiplies the monomial with ``k``
factors of ``z`` (the "up" variable),

    P(z, w) = sum_k (-1)^(d-k) sqrt(C(d,k)) c_k z^k w^(d-k),

so stars at ``[z_j : w_j]`` correspond to ``prod_j (w_j z - z_j w)``. With this
layout the spin coherent state at angles ``(theta, phi)`` has all ``d`` stars
at ``r = tan(theta/2) exp(i phi)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import NumericalError
from .projective import (
    RiemannPoint,
    SphereAngles,
    canonical_vector,
    circle_action,
    stereographic_to_angles,
)

ZERO_COEFF_RTOL = 1e-12
RESIDUAL_RTOL = 1e-8


@dataclass(frozen=True, eq=False)
class SpinState:
    """Pure state of a spin-d/2 system, defined up to a nonzero complex scalar."""

    amplitudes: np.ndarray

    def __init__(self, amplitudes):
        amps = np.array(amplitudes, dtype=complex).reshape(-1)
        if amps.size == 0 or not np.any(amps):
            raise ValueError("a spin state needs at least one nonzero amplitude")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def d(self) -> int:
        return self.amplitudes.size - 1

    def canonical(self) -> np.ndarray:
        return canonical_vector(self.amplitudes)

    def __eq__(self, other):
        if not isinstance(other, SpinState):
            return NotImplemented
        return self.d == other.d and bool(np.allclose(self.canonical(), other.canonical(), rtol=0, atol=1e-12))

    __hash__ = None

    def __repr__(self):
        return f"SpinState(d={self.d}, amplitudes={self.amplitudes.tolist()})"

    # file format: {"d": int, "amplitudes": [[re, im], ...]}
    @classmethod
    def from_dict(cls, data) -> SpinState:
        try:
            d = data["d"]
            raw = data["amplitudes"]
        except (KeyError, TypeError) as exc:
            raise ValueError("state object needs 'd' and 'amplitudes'") from exc
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise ValueError(f"'d' must be a non-negative integer, got {d!r}")
        if not isinstance(raw, list) or len(raw) != d + 1:
            raise ValueError(f"d={d} needs {d + 1} amplitudes")
        amps = []
        for pair in raw:
            if not isinstance(pair, list) or len(pair) != 2:
                raise ValueError("each amplitude must be a [re, im] pair")
            amps.append(complex(float(pair[0]), float(pair[1])))
        return cls(amps)

    @classmethod
    def from_json(cls, text: str) -> SpinState:
        return cls.from_dict(json.loads(text))

    def to_dict(self):
        return {"d": self.d, "amplitudes": [[c.real, c.imag] for c in self.amplitudes.tolist()]}


@dataclass(frozen=True, eq=False)
class StarConfiguration:
    """Unordered multiset of ``d`` points on the Riemann sphere."""

    stars: tuple[RiemannPoint, ...]

    def __init__(self, stars: Iterable[RiemannPoint]):
        stars = tuple(stars)
        if not stars:
            raise ValueError("need at least one star")
        object.__setattr__(self, "stars", stars)

    @property
    def d(self) -> int:
        return len(self.stars)

    def angles(self) -> list[SphereAngles]:
        return [stereographic_to_angles(s) for s in self.stars]

    def sorted_angles(self) -> list[SphereAngles]:
        return sorted(self.angles(), key=lambda a: (round(a.theta, 8), round(a.phi, 8) if not a.at_pole else 0.0))

    def matching_distance(self, other: StarConfiguration) -> float:
        """Largest angular distance under the optimal pairing of the two multisets."""
        if self.d != other.d:
            raise ValueError("star configurations of different size")
        a = [x.unit_vector() for x in self.angles()]
        b = [x.unit_vector() for x in other.angles()]
        cost = np.array([[np.linalg.norm(p - q) for q in b] for p in a])
        rows, cols = linear_sum_assignment(cost)
        chord = float(cost[rows, cols].max())
        return 2.0 * math.asin(min(1.0, chord / 2.0))

    def __eq__(self, other):
        if not isinstance(other, StarConfiguration):
            return NotImplemented
        return self.d == other.d and self.matching_distance(other) <= 1e-8

    __hash__ = None

    def to_list(self):
        """Star output format: ``{"theta", "phi"}`` objects, or ``{"infinity": true}``."""
        out = []
        for a, s in zip(self.angles(), self.stars):
            if s.is_infinity:
                out.append({"infinity": True})
            else:
                out.append({"theta": a.theta, "phi": a.phi})
        return out


@dataclass(frozen=True)
class SpinOperators:
    d: int
    Jx: np.ndarray
    Jy: np.ndarray
    Jz: np.ndarray
    Jplus: np.ndarray
    Jminus: np.ndarray


def magnetic_number(d: int, k: int):
    """``m = -d/2 + k`` for basis index ``k``."""
    return -d / 2 + k


def to_descending_m(vec_or_matrix) -> np.ndarray:
    """Reorder basis from ascending ``m`` (this module) to descending ``m`` (up state first).

    Works on vectors and on square matrices; it is its own inverse.
    """
    a = np.asarray(vec_or_matrix)
    if a.ndim == 1:
        return a[::-1].copy()
    return a[::-1, ::-1].copy()


def eigenstate(d: int, k: int) -> SpinState:
    if d < 0:
        raise ValueError(f"d must be non-negative, got {d}")
    if not 0 <= k <= d:
        raise ValueError(f"index {k} outside [0, {d}]")
    amps = np.zeros(d + 1, dtype=complex)
    amps[k] = 1.0
    return SpinState(amps)


def spin_operators(d: int) -> SpinOperators:
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    k = np.arange(d)
    Jplus = np.zeros((d + 1, d + 1), dtype=complex)
    Jplus[k + 1, k] = np.sqrt((k + 1) * (d - k))
    Jminus = Jplus.conj().T
    Jz = np.diag(np.arange(d + 1) - d / 2).astype(complex)
    Jx = (Jplus + Jminus) / 2
    Jy = (Jplus - Jminus) / 2j
    return SpinOperators(d, Jx, Jy, Jz, Jplus, Jminus)


def commutator(a, b) -> np.ndarray:
    return a @ b - b @ a


def commutator_convention(ops: SpinOperators, tol: float = 1e-12) -> dict:
    """Which sign the ladder commutators actually obey.

    Returns the max entry of ``[Jz, J+] - J+`` ("standard", ``[Jz, J±] = ±J±``)
    and of ``[J+, Jz] - J+`` ("swapped", ``[J±, Jz] = ±J±``), plus the name of the
    convention that holds within ``tol`` (``None`` if neither does).
    """
    standard = max(
        np.max(np.abs(commutator(ops.Jz, ops.Jplus) - ops.Jplus)),
        np.max(np.abs(commutator(ops.Jz, ops.Jminus) + ops.Jminus)),
    )
    swapped = max(
        np.max(np.abs(commutator(ops.Jplus, ops.Jz) - ops.Jplus)),
        np.max(np.abs(commutator(ops.Jminus, ops.Jz) + ops.Jminus)),
    )
    holds = "standard" if standard <= tol else ("swapped" if swapped <= tol else None)
    return {"standard": float(standard), "swapped": float(swapped), "holds": holds}


def rotate_stars(c: StarConfiguration, phase: float) -> StarConfiguration:
    """Apply the circle action ``r -> exp(i phase) r`` to every star."""
    return StarConfiguration([circle_action(p, phase) for p in c.stars])


def majorana_coefficients(s: SpinState) -> np.ndarray:
    """Coefficients ``a_k`` of ``z^k w^(d-k)`` in the Majorana polynomial."""
    d = s.d
    k = np.arange(d + 1)
    signs = np.where((d - k) % 2 == 0, 1.0, -1.0)
    binom = np.sqrt([math.comb(d, int(j)) for j in k])
    return signs * binom * s.amplitudes


def amplitudes_from_coefficients(coeffs) -> np.ndarray:
    coeffs = np.asarray(coeffs, dtype=complex)
    d = coeffs.size - 1
    k = np.arange(d + 1)
    signs = np.where((d - k) % 2 == 0, 1.0, -1.0)
    binom = np.sqrt([math.comb(d, int(j)) for j in k])
    return signs * coeffs / binom


def _homogeneous_value(coeffs, z, w):
    d = coeffs.size - 1
    return sum(coeffs[k] * z**k * w ** (d - k) for k in range(d + 1))


def _companion_roots(desc):
    """Roots of a polynomial with coefficients in descending powers (leading nonzero)."""
    n = desc.size - 1
    if n == 0:
        return np.zeros(0, dtype=complex)
    C = np.zeros((n, n), dtype=complex)
    C[0, :] = -desc[1:] / desc[0]
    C[np.arange(1, n), np.arange(n - 1)] = 1.0
    return np.linalg.eigvals(C)


def _newton_polish(desc, root, iters=3):
    deriv = np.polyder(desc)
    for _ in range(iters):
        f = np.polyval(desc, root)
        g = np.polyval(deriv, root)
        if g == 0:
            break
        step = f / g
        new = root - step
        if abs(np.polyval(desc, new)) >= abs(f):
            break
        root = new
    return root


def _raw_stars(coeffs):
    """Projective roots of ``sum_k a_k z^k w^(d-k)`` before multiplicity clean-up."""
    d = coeffs.size - 1
    scale = np.max(np.abs(coeffs))
    nonzero = np.abs(coeffs) > ZERO_COEFF_RTOL * scale
    top = int(np.max(np.nonzero(nonzero)[0]))  # highest z-power present
    low = int(np.min(np.nonzero(nonzero)[0]))  # lowest z-power present
    stars = [RiemannPoint.infinity()] * (d - top) + [RiemannPoint(0.0, 1.0)] * low
    core = coeffs[low : top + 1]
    if core.size > 1:
        # roots of sum core_j r^j; solve in r or in 1/r, whichever keeps roots small
        inner = _companion_roots(core[::-1])
        outer = _companion_roots(core)  # coefficients for s = 1/r
        for r in inner:
            if abs(r) <= 1.0:
                stars.append(RiemannPoint(_newton_polish(core[::-1], r), 1.0))
        for s in outer:
            if abs(s) < 1.0:
                stars.append(RiemannPoint(1.0, _newton_polish(core, s)))
        if len(stars) != d:
            # the two charts disagreed about roots near |r| = 1; fall back to one chart
            stars = stars[: (d - top) + low]
            stars.extend(RiemannPoint(r, 1.0) for r in inner)
    return stars


def _star_vector(p: RiemannPoint) -> np.ndarray:
    return np.asarray(canonical_vector([p.z, p.w]))


def _expand_stars(stars) -> np.ndarray:
    """Coefficients of ``prod (w_j z - z_j w)`` in the ``z^k w^(d-k)`` layout."""
    poly = np.array([1.0 + 0j])  # index = power of z
    for p in stars:
        zj, wj = _star_vector(p)
        factor = np.array([-zj, wj])  # -z_j w + w_j z
        poly = np.convolve(poly, factor)
    return poly


def _fidelity_vec(a, b):
    return abs(np.vdot(a, b)) ** 2 / (np.vdot(a, a).real * np.vdot(b, b).real)


def _refine_multiple_root(coeffs, centre: RiemannPoint, m: int) -> RiemannPoint:
    """Newton on the (m-1)-th derivative, where an m-fold root is simple."""
    r = centre.dehomogenize()
    if np.isfinite(r) and abs(r) <= 1.0:
        desc, flip = coeffs[::-1], False
    else:
        desc, flip = coeffs, True
        r = centre.w / centre.z
    target = np.polyder(desc, m - 1) if m > 1 else desc
    slope = np.polyder(target)
    for _ in range(8):
        g = np.polyval(slope, r)
        if g == 0:
            break
        step = np.polyval(target, r) / g
        r = r - step
        if abs(step) <= 1e-16 * max(1.0, abs(r)):
            break
    return RiemannPoint(1.0, r) if flip else RiemannPoint(r, 1.0)


def _merge_clusters(coeffs, stars, radius):
    """Replace groups of stars closer than ``radius`` (chordal) by one refined multiple root."""
    vecs = [stereographic_to_angles(s).unit_vector() for s in stars]
    n = len(stars)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if np.linalg.norm(vecs[i] - vecs[j]) < radius:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    if all(len(g) == 1 for g in groups.values()):
        return None
    merged = []
    for members in groups.values():
        if len(members) == 1:
            merged.append(stars[members[0]])
            continue
        mean = np.mean([vecs[i] for i in members], axis=0)
        x, y, zc = mean / np.linalg.norm(mean)
        theta = math.atan2(math.hypot(x, y), zc)
        centre = RiemannPoint(math.sin(theta / 2) * complex(x, y) / max(math.hypot(x, y), 1e-300), math.cos(theta / 2))
        if math.hypot(x, y) == 0:
            centre = RiemannPoint(0.0, 1.0) if zc > 0 else RiemannPoint.infinity()
        merged.extend([_refine_multiple_root(coeffs, centre, len(members))] * len(members))
    return merged


def majorana_stars(s: SpinState) -> StarConfiguration:
    """The ``d`` Majorana stars of ``s``.

    Leading/trailing vanishing coefficients (relative threshold 1e-12) give
    exact stars at the poles; the rest come from companion-matrix eigenvalues
    in whichever chart (``r`` or ``1/r``) keeps them inside the unit disc.
    A cluster of near-coincident roots (a split multiple root) is replaced by
    one point refined on the matching derivative, kept when it reproduces the
    state about as faithfully as the raw roots.
    """
    if s.d < 1:
        raise ValueError("a spin-0 state has no stars")
    coeffs = majorana_coefficients(s)
    stars = _raw_stars(coeffs)
    target = coeffs / np.linalg.norm(coeffs)

    def infidelity(candidate):
        return 1.0 - _fidelity_vec(target, _expand_stars(candidate))

    best_err = infidelity(stars)
    for radius in (0.6, 0.3, 1e-1, 3e-2, 1e-2, 1e-3, 1e-4):
        merged = _merge_clusters(coeffs, stars, radius)
        if merged is None:
            continue
        err = infidelity(merged)
        if err <= max(best_err, 1e-14) * 10.0:
            stars, best_err = merged, err
            break
    norm = np.linalg.norm(coeffs)
    for p in stars:
        z, w = _star_vector(p)
        res = abs(_homogeneous_value(coeffs, z, w))
        if res > RESIDUAL_RTOL * norm and best_err > 1e-9:
            raise NumericalError(f"star residual {res:.3e} exceeds tolerance", residual=res)
    return StarConfiguration(stars)


def state_from_stars(c: StarConfiguration) -> SpinState:
    """Spin state (canonical representative) whose Majorana stars are ``c``."""
    coeffs = _expand_stars(c.stars)
    return SpinState(canonical_vector(amplitudes_from_coefficients(coeffs)))


def coherent_state(d: int, a: SphereAngles) -> SpinState:
    """State with all ``d`` stars at ``a``; ``|c_k|^2 = beta_k^d(cos^2(theta/2))``."""
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    half = 0.5 * a.theta
    c, s = math.cos(half), math.sin(half)
    k = np.arange(d + 1)
    binom = np.sqrt([math.comb(d, int(j)) for j in k])
    amps = binom * c**k * s ** (d - k) * np.exp(1j * (d - k) * a.phi)
    return SpinState(canonical_vector(amps))


def measure_distribution(s: SpinState) -> np.ndarray:
    p = np.abs(s.amplitudes) ** 2
    return p / p.sum()


def expectation(s: SpinState, M) -> float:
    M = np.asarray(M)
    if M.shape != (s.d + 1, s.d + 1):
        raise ValueError(f"operator shape {M.shape} does not match d={s.d}")
    v = s.amplitudes
    return float((np.vdot(v, M @ v) / np.vdot(v, v)).real)


def fidelity(a: SpinState, b: SpinState) -> float:
    if a.d != b.d:
        raise ValueError("states of different dimension")
    return float(_fidelity_vec(a.amplitudes, b.amplitudes))

