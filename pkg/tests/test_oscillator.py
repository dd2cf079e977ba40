import math

import numpy as np
import pytest
from scipy.linalg import expm
from scipy.stats import binom, poisson

from blossomspin.oscillator import (
    FockState,
    TwoModeState,
    ladder_operators,
    number_state,
    oscillator_coherent,
    oscillator_coherent_from_mean,
    restrict_to_sector,
    schwinger_spin,
    sector_basis,
    spin_order,
)
from blossomspin.projective import SphereAngles
from blossomspin.spin import coherent_state, commutator, measure_distribution, spin_operators, to_descending_m

SX = 0.5 * np.array([[0, 1], [1, 0]])
SY = 0.5 * np.array([[0, -1j], [1j, 0]])
SZ = 0.5 * np.array([[1, 0], [0, -1]])


def test_annihilate_vacuum():
    ops = ladder_operators(6)
    assert np.all(ops.a @ number_state(0, 6).amplitudes == 0)


def test_create_from_three():
    ops = ladder_operators(8)
    out = ops.a_dagger @ number_state(3, 8).amplitudes
    assert np.allclose(out, 2 * number_state(4, 8).amplitudes)


def test_ladder_structure():
    ops = ladder_operators(10)
    assert np.array_equal(ops.a_dagger, ops.a.conj().T)
    assert np.allclose(np.diag(ops.number).real, np.arange(11), atol=1e-13)
    assert np.count_nonzero(ops.number - np.diag(np.diag(ops.number))) == 0


def test_canonical_commutator_away_from_cutoff():
    N = 12
    ops = ladder_operators(N)
    c = commutator(ops.a, ops.a_dagger)
    assert np.allclose(c[:N, :N], np.eye(N), atol=1e-12)
    # the truncation only shows up in the last diagonal entry
    assert c[N, N] == pytest.approx(-N)
    off = c.copy()
    off[N, N] = 0
    assert np.allclose(off, np.diag(np.r_[np.ones(N), 0]), atol=1e-12)


def test_energy_levels():
    N = 40
    E = np.linalg.eigvalsh(ladder_operators(N).hamiltonian())
    for n in range(N - 4):
        assert np.min(np.abs(E - (n + 0.5))) < 1e-8
    # the cut-off row contributes one spurious level N/2 in place of N + 1/2
    assert np.min(np.abs(E - N / 2)) < 1e-8
    assert np.min(np.abs(E - (N + 0.5))) > 0.1


def test_cutoff_must_be_positive():
    with pytest.raises(ValueError):
        ladder_operators(0)


# coherent states -----------------------------------------------------------


def test_zero_displacement_is_vacuum():
    s = oscillator_coherent(0.0)
    assert s.amplitudes[0] == 1 and np.all(s.amplitudes[1:] == 0)


def test_unit_displacement_poisson_weights():
    p = np.abs(oscillator_coherent(1.0).amplitudes) ** 2
    ref = [math.exp(-1) / math.factorial(n) for n in range(p.size)]
    assert np.allclose(p, ref, rtol=1e-13, atol=0)


@pytest.mark.parametrize("z", [0.5, 1.0, 2.0, 4.0])
def test_number_mean(z):
    s = oscillator_coherent(z, 60)
    n = ladder_operators(60).number
    v = s.amplitudes
    mean = (np.vdot(v, n @ v) / np.vdot(v, v)).real
    assert abs(mean - z * z) < 1e-10


@pytest.mark.parametrize("z", [0.5, 1.0, 2.0, 4.0])
def test_poisson_against_scipy(z):
    s = oscillator_coherent(z)
    p = np.abs(s.amplitudes) ** 2
    ref = poisson.pmf(np.arange(p.size), z * z)
    tv = 0.5 * (np.abs(p - ref).sum() + poisson.sf(s.cutoff, z * z))
    assert tv < 1e-10


@pytest.mark.parametrize("z", [0.3, 1.0, 1.7])
def test_matches_exponential_of_ladder_operators(z):
    # independent construction: exp(z (a+ - a)) |0> on a generous cutoff
    N = 80
    ops = ladder_operators(N)
    ref = expm(z * (ops.a_dagger - ops.a))[:, 0]
    got = oscillator_coherent(z, N).amplitudes
    assert np.max(np.abs(got[:40] - ref[:40])) < 1e-12


def test_negative_displacement_signs():
    s = oscillator_coherent(-1.5)
    assert s.amplitudes[1].real < 0 < s.amplitudes[2].real


def test_cutoff_too_small():
    with pytest.raises(ValueError):
        oscillator_coherent(3.0, 10)


def test_mean_parameterization():
    a = oscillator_coherent_from_mean(2.25)
    b = oscillator_coherent(1.5)
    assert np.allclose(a.amplitudes, b.amplitudes)
    with pytest.raises(ValueError):
        oscillator_coherent_from_mean(-1.0)


def test_fock_state_rejects_zero():
    with pytest.raises(ValueError):
        FockState([0, 0])


# two oscillators -----------------------------------------------------------


def test_sector_basis_small():
    assert sector_basis(0) == [(0, 0)]
    assert sector_basis(2) == [(2, 0), (1, 1), (0, 2)]
    assert spin_order(2) == [(0, 2), (1, 1), (2, 0)]


def test_sector_basis_lengths():
    for d in range(51):
        b = sector_basis(d)
        assert len(b) == d + 1
        assert all(n1 + n2 == d for n1, n2 in b)


def test_schwinger_spin_half_matches_pauli_combinations():
    ops = schwinger_spin(1)
    assert np.allclose(to_descending_m(ops.Jplus), SX + 1j * SY)
    assert np.allclose(to_descending_m(ops.Jminus), SX - 1j * SY)
    assert np.allclose(to_descending_m(ops.Jz), SZ)
    # with the unscaled Pauli matrices the same operators read 2x(...)/2
    assert np.allclose(to_descending_m(ops.Jplus), 0.5 * ((2 * SX) + 1j * (2 * SY)))


@pytest.mark.parametrize("d", range(1, 13))
def test_schwinger_equals_ladder_construction(d):
    a, b = schwinger_spin(d), spin_operators(d)
    for name in ("Jx", "Jy", "Jz", "Jplus", "Jminus"):
        assert np.max(np.abs(getattr(a, name) - getattr(b, name))) < 1e-12
    assert np.max(np.abs(commutator(a.Jplus, a.Jminus) - 2 * a.Jz)) < 1e-12
    assert np.max(np.abs(commutator(a.Jz, a.Jplus) - a.Jplus)) < 1e-12
    assert np.max(np.abs(commutator(a.Jz, a.Jminus) + a.Jminus)) < 1e-12


def test_schwinger_jz_spectrum():
    d = 6
    ev = np.sort(np.linalg.eigvalsh(schwinger_spin(d).Jz))
    assert np.allclose(ev, np.arange(d + 1) - d / 2)


def test_poisson_pair_conditioned_is_binomial(rng):
    for d in (1, 4, 9):
        for _ in range(5):
            z1, z2 = rng.uniform(0.3, 2.0, size=2)
            pair = TwoModeState.product(oscillator_coherent(z1, 40), oscillator_coherent(z2, 40))
            dist = measure_distribution(restrict_to_sector(pair, d))
            t = z1**2 / (z1**2 + z2**2)
            assert np.max(np.abs(dist - binom.pmf(np.arange(d + 1), d, t))) < 1e-10
            theta = 2 * math.acos(math.sqrt(t))
            spin = measure_distribution(coherent_state(d, SphereAngles(theta)))
            assert np.max(np.abs(dist - spin)) < 1e-10
