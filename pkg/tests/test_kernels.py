import math
import os
import subprocess
import sys

import numpy as np
import pytest

from blossomspin.kernels import BACKEND, available_backends

BACKENDS = available_backends()


@pytest.fixture(params=sorted(BACKENDS))
def k(request):
    return BACKENDS[request.param]


def test_active_backend_is_listed():
    assert BACKEND in BACKENDS


def test_bernstein_row(k):
    for d in (0, 1, 5, 17):
        for t in (0.0, 0.3, 1.0, -0.7):
            ref = [math.comb(d, i) * (1 - t) ** (d - i) * t**i for i in range(d + 1)]
            assert np.allclose(k.bernstein_row(d, t), ref, rtol=1e-13, atol=1e-15)


def test_de_casteljau_against_direct(k, rng):
    P = rng.normal(size=(8, 2))
    for t in rng.uniform(0, 1, size=5):
        ref = sum(math.comb(7, i) * (1 - t) ** (7 - i) * t**i * P[i] for i in range(8))
        assert np.allclose(k.de_casteljau(P, np.full(7, t)), ref, atol=1e-13)


def test_de_casteljau_accepts_read_only(k):
    P = np.array([[0.0, 0.0], [1.0, 1.0]])
    P.flags.writeable = False
    params = np.array([0.25])
    params.flags.writeable = False
    assert np.allclose(k.de_casteljau(P, params), [0.25, 0.25])


def test_subdivide_pieces(k):
    P = np.array([[0.0], [1.0], [4.0]])
    left, right = k.subdivide(P, 0.5)
    assert np.allclose(left.ravel(), [0.0, 0.5, 1.5])
    assert np.allclose(right.ravel(), [1.5, 2.5, 4.0])


def test_fs_midpoint_degree_one(k):
    # the d = 1 density is sin(theta)/2, so the midpoint sum is 2 pi (h/2) / sin(h/2)
    n = 64
    h = math.pi / n
    got = k.fs_area_midpoint(1, n, 16, np.array([1.0, 1.0]))
    assert got == pytest.approx(2 * math.pi * (h / 2) / math.sin(h / 2), rel=1e-12)


def test_precession_kernels(k, rng):
    L0 = rng.normal(size=3)
    T = rng.normal(size=3)
    rot = k.precess_rotation(L0, T, 1e-2, 1000, 100)
    rk = k.precess_rk4(L0, T, 1e-2, 1000, 100)
    assert rot.shape == rk.shape == (11, 3)
    assert np.allclose(rot, rk, atol=1e-8)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
def test_backends_agree(rng):
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    P = rng.normal(size=(12, 3))
    params = rng.uniform(0, 1, size=11)
    assert np.allclose(py.de_casteljau(P, params), cy.de_casteljau(P, params), atol=1e-14)
    for a, b in zip(py.subdivide(P, 0.3), cy.subdivide(P, 0.3)):
        assert np.allclose(a, b, atol=1e-14)
    for d in (1, 3, 9):
        w = np.array([math.comb(d, i) for i in range(d + 1)], dtype=float)
        assert py.fs_area_midpoint(d, 50, 40, w) == pytest.approx(cy.fs_area_midpoint(d, 50, 40, w), rel=1e-13)
        assert np.allclose(py.bernstein_row(d, 0.42), cy.bernstein_row(d, 0.42), rtol=1e-15)
    L0, T = rng.normal(size=3), rng.normal(size=3)
    assert np.allclose(py.precess_rotation(L0, T, 1e-3, 5000, 50), cy.precess_rotation(L0, T, 1e-3, 5000, 50), atol=1e-13)
    assert np.allclose(py.precess_rk4(L0, T, 1e-3, 5000, 50), cy.precess_rk4(L0, T, 1e-3, 5000, 50), atol=1e-13)


def test_pure_python_switch():
    env = dict(os.environ, BLOSSOMSPIN_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import blossomspin; print(blossomspin.BACKEND)"], env=env, capture_output=True, text=True, check=True
    )
    assert out.stdout.strip() == "python"
