"""Smoke tests for the python bindings: a few analytically known values
and one short stepped run."""

import math

import numpy as np
import pytest

import aqglab


@pytest.fixture
def grid():
    return aqglab.Grid(32, 32)


def cos_x1(grid):
    x = np.arange(grid.n1) * grid.l1 / grid.n1
    return np.cos(x)[:, None] * np.ones((1, grid.n2))


def test_forward_places_cosine_amplitudes(grid):
    c = aqglab.forward(grid, cos_x1(grid))
    assert c[1, 0] == pytest.approx(0.5, abs=1e-14)
    assert c[-1, 0] == pytest.approx(0.5, abs=1e-14)
    assert abs(c[0, 0]) < 1e-15


def test_round_trip(grid):
    rng = np.random.default_rng(7)
    f = rng.standard_normal((grid.n1, grid.n2))
    c = aqglab.forward(grid, f)
    f2 = aqglab.inverse(grid, c)
    c2 = aqglab.forward(grid, f2)
    assert np.max(np.abs(c2 - c)) < 1e-13 * np.max(np.abs(c))


def test_l2_norm_of_cosine(grid):
    c = aqglab.forward(grid, cos_x1(grid))
    n = aqglab.sobolev_norm(grid, c, 0.0, False)
    assert n * n == pytest.approx(2.0 * math.pi**2, rel=1e-12)


def test_riesz_velocity_of_cosine(grid):
    c = aqglab.forward(grid, cos_x1(grid))
    u1, u2 = aqglab.riesz_velocity(grid, c)
    assert np.max(np.abs(u1)) < 1e-15
    x = np.arange(grid.n1) * grid.l1 / grid.n1
    expect = -np.sin(x)[:, None] * np.ones((1, grid.n2))
    got = aqglab.inverse(grid, u2)
    assert np.max(np.abs(got - expect)) < 1e-13


def test_dissipation_symbol_and_classification():
    p = aqglab.DissipationParams(0.5, 0.5)
    assert aqglab.dissipation_symbol(1.0, 1.0, p) == pytest.approx(2.0)
    assert aqglab.critical_exponent(0.3, 0.7) == pytest.approx(1.4)
    assert aqglab.classify_region(0.3, 0.7) == "global-regularity"
    assert aqglab.classify_region(0.25, 0.25) == "outside-region"


def test_stepper_reproduces_the_semigroup(grid):
    p = aqglab.DissipationParams(0.5, 0.5)
    c = np.zeros((grid.n1, grid.n2), dtype=complex)
    c[1, 1] = 0.5
    c[-1, -1] = 0.5
    stepper = aqglab.Stepper(grid, p, dt=0.01, masked_nonlinearity=True)
    for _ in range(100):
        c = stepper.step(grid, c)
    # symbol at (1,1) is 2: amplitude follows e^(-2t) with t = 1
    assert c[1, 1].real == pytest.approx(0.5 * math.exp(-2.0), rel=1e-12)


def test_frequency_split_partitions_energy(grid):
    p = aqglab.DissipationParams(0.3, 0.7)
    c = aqglab.random_field(grid, 3, 1.0, 10.0, 1.0)
    low, high = aqglab.frequency_split(grid, c, p, 2.0)
    assert np.max(np.abs(low + high - c)) == 0.0
    n = aqglab.sobolev_norm(grid, c, 0.0, False)
    nl = aqglab.sobolev_norm(grid, low, 0.0, False)
    nh = aqglab.sobolev_norm(grid, high, 0.0, False)
    assert n * n == pytest.approx(nl * nl + nh * nh, rel=1e-12)


def test_nonlinear_term_vanishes_for_plane_wave(grid):
    c = aqglab.forward(grid, cos_x1(grid))
    n = aqglab.nonlinear_term(grid, c, True)
    assert np.max(np.abs(n)) < 1e-14
