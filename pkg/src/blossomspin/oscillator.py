"""Harmonic oscillators in a truncated number basis.

Covers ladder operators, displaced-vacuum coherent states with Poisson
occupation, and the two-oscillator (Schwinger) realization of spin.

Truncation: a cutoff ``N`` keeps ``|0>..|N>``. Identities such as
``[a, a+] = 1`` hold only away from the last index; checks exclude it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .poisson_curve import default_truncation, poisson_tail_bound
from .spin import SpinOperators, SpinState


@dataclass(frozen=True)
class LadderOperators:
    cutoff: int
    a: np.ndarray
    a_dagger: np.ndarray
    number: np.ndarray

    @property
    def position(self) -> np.ndarray:
        return (self.a + self.a_dagger) / math.sqrt(2.0)

    @property
    def momentum(self) -> np.ndarray:
        return 1j * (self.a_dagger - self.a) / math.sqrt(2.0)

    def hamiltonian(self) -> np.ndarray:
        """``(p^2 + x^2)/2`` assembled from the truncated ladder matrices."""
        x, p = self.position, self.momentum
        return 0.5 * (p @ p + x @ x)


def ladder_operators(N: int) -> LadderOperators:
    if N < 1:
        raise ValueError(f"cutoff must be at least 1, got {N}")
    a = np.diag(np.sqrt(np.arange(1, N + 1, dtype=float)), k=1).astype(complex)
    a_dagger = a.conj().T
    return LadderOperators(N, a, a_dagger, a_dagger @ a)


@dataclass(frozen=True, eq=False)
class FockState:
    """Amplitudes on ``|0>..|N>``."""

    amplitudes: np.ndarray

    def __init__(self, amplitudes):
        amps = np.array(amplitudes, dtype=complex).reshape(-1)
        if amps.size == 0 or not np.any(amps):
            raise ValueError("a Fock state needs at least one nonzero amplitude")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def cutoff(self) -> int:
        return self.amplitudes.size - 1

    def distribution(self) -> np.ndarray:
        p = np.abs(self.amplitudes) ** 2
        return p / p.sum()


def number_state(n: int, N: int) -> FockState:
    amps = np.zeros(N + 1, dtype=complex)
    amps[n] = 1.0
    return FockState(amps)


def coherent_amplitudes(z: float, N: int) -> np.ndarray:
    """``exp(-z^2/2) z^n / sqrt(n!)`` for ``n = 0..N`` (log-space, real ``z``)."""
    n = np.arange(N + 1)
    if z == 0:
        out = np.zeros(N + 1)
        out[0] = 1.0
        return out
    lgam = np.array([math.lgamma(k + 1) for k in n])
    mag = np.exp(-0.5 * z * z + n * math.log(abs(z)) - 0.5 * lgam)
    sign = np.where((z < 0) & (n % 2 == 1), -1.0, 1.0)
    return sign * mag


def oscillator_coherent(z: float, N: int | None = None) -> FockState:
    """Vacuum displaced along the position axis, with mean occupation ``z^2``.

    ``N`` defaults to ``ceil(z^2 + 10 sqrt(z^2 + 1))``. A smaller explicit
    cutoff is rejected because the neglected Poisson tail may exceed 1e-12.
    """
    z = float(z)
    lam = z * z
    needed = default_truncation(lam)
    if N is None:
        N = needed
    elif N < needed and poisson_tail_bound(lam, N) > 1e-12:
        raise ValueError(f"cutoff {N} too small for z={z}: need N >= {needed}")
    # unnormalized on purpose: the stored tail is the physical amplitude
    return FockState(coherent_amplitudes(z, N).astype(complex))


def oscillator_coherent_from_mean(lam: float, N: int | None = None) -> FockState:
    """Same family parameterized by the mean occupation ``lam = z^2``."""
    if lam < 0:
        raise ValueError(f"mean occupation must be non-negative, got {lam}")
    return oscillator_coherent(math.sqrt(lam), N)


# two modes -------------------------------------------------------------------


@dataclass(frozen=True)
class TwoModeState:
    """Amplitudes ``amplitudes[n1, n2]`` with a shared per-mode cutoff."""

    amplitudes: np.ndarray

    @property
    def cutoff(self) -> int:
        return self.amplitudes.shape[0] - 1

    @classmethod
    def product(cls, first: FockState, second: FockState) -> TwoModeState:
        return cls(np.outer(first.amplitudes, second.amplitudes))

    def flat(self) -> np.ndarray:
        return self.amplitudes.reshape(-1)


def sector_basis(d: int) -> list[tuple[int, int]]:
    """Occupations ``(d - k, k)`` for ``k = 0..d``: the ``d``-quanta sector."""
    if d < 0:
        raise ValueError(f"d must be non-negative, got {d}")
    return [(d - k, k) for k in range(d + 1)]


def spin_order(d: int) -> list[tuple[int, int]]:
    """Sector occupations listed in spin-basis order: index ``k`` is ``(k, d - k)``.

    Mode 1 holds the "up" quanta, since ``J_z = (N1 - N2)/2`` must equal
    ``-d/2 + k`` on basis vector ``k``.
    """
    return sector_basis(d)[::-1]


def _two_mode_ladders(N):
    one = ladder_operators(N)
    eye = np.eye(N + 1)
    a1 = np.kron(one.a, eye)
    a2 = np.kron(eye, one.a)
    return a1, a2


def sector_projector(d: int, N: int | None = None) -> np.ndarray:
    """Isometry from C^(d+1) (spin order) into the two-mode space with cutoff ``N``."""
    N = d if N is None else N
    V = np.zeros(((N + 1) ** 2, d + 1))
    for k, (n1, n2) in enumerate(spin_order(d)):
        V[n1 * (N + 1) + n2, k] = 1.0
    return V


def schwinger_spin(d: int) -> SpinOperators:
    """Spin matrices from ``J+ = a1+ a2``, ``J- = a2+ a1``, ``Jz = (N1 - N2)/2``.

    Built on the full two-mode space (cutoff ``d`` per mode), then restricted
    to the ``d``-quanta sector by explicit projection.
    """
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    a1, a2 = _two_mode_ladders(d)
    a1d, a2d = a1.conj().T, a2.conj().T
    Jp_full = a1d @ a2
    Jm_full = a2d @ a1
    Jz_full = 0.5 * (a1d @ a1 - a2d @ a2)
    V = sector_projector(d)
    Jp = V.T @ Jp_full @ V
    Jm = V.T @ Jm_full @ V
    Jz = V.T @ Jz_full @ V
    return SpinOperators(d, (Jp + Jm) / 2, (Jp - Jm) / 2j, Jz, Jp, Jm)


def restrict_to_sector(state: TwoModeState, d: int) -> SpinState:
    """Project a two-mode state onto the ``d``-quanta sector, in spin order."""
    V = sector_projector(d, state.cutoff)
    return SpinState(V.T @ state.flat())
