"""Unit tests for the classical 3-point disc Pick machinery."""

import numpy as np
import pytest

from ballpick.errors import NoSolution, NotExtremal
from ballpick.discpick import (
    DiscPickData,
    Solvability,
    blaschke_through,
    disc_solvable,
    disc_tstar,
    pick_matrix,
)
from ballpick.geometry import BlaschkeProduct


def test_pick_matrix_is_hermitian_psd_for_identity_data():
    data = DiscPickData((0.0, 0.3, -0.4j), (0.0, 0.3, -0.4j))
    m = pick_matrix(data)
    assert np.allclose(m, m.conj().T)
    # the identity map is extremal (degree-1 Blaschke through 3 points)
    assert disc_solvable(data) is Solvability.EXTREMAL


def test_solvability_trichotomy():
    nodes = (0.0, 0.5, -0.5)
    assert disc_solvable(DiscPickData(nodes, (0.0, 0.1, 0.1))) is Solvability.SOLVABLE
    assert disc_solvable(DiscPickData(nodes, (0.0, 0.25, 0.25))) is Solvability.EXTREMAL
    assert disc_solvable(DiscPickData(nodes, (0.0, 0.9, 0.9))) is Solvability.UNSOLVABLE


def test_disc_tstar_square_example():
    # lam^2 interpolates (0, 0.5, -0.5) -> (0, 0.25, 0.25) rigidly
    t = disc_tstar((0.0, 0.5, -0.5), (0.0, 0.25, 0.25))
    assert t == pytest.approx(1.0, abs=1e-10)


def test_disc_tstar_scaling_law():
    t1 = disc_tstar((0.0, 0.5, -0.5), (0.0, 0.25, 0.25))
    t2 = disc_tstar((0.0, 0.5, -0.5), (0.0, 0.5, 0.5))
    assert t2 * 0.5 == pytest.approx(t1 * 0.25, abs=1e-9)


def test_disc_tstar_two_zeros_case():
    # F vanishes at 0 and 0.4, so sup |F(0.7j)| is the degree-2 product value
    from ballpick.geometry import mobius_eval

    nodes = (0.0, 0.4, 0.7j)
    t = disc_tstar(nodes, (0.0, 0.0, 1.0))
    expected = 0.7 * abs(mobius_eval(0.4, 0.7j))
    assert t == pytest.approx(expected, abs=1e-9)


def test_blaschke_through_square():
    data = DiscPickData((0.0, 0.5, -0.5), (0.0, 0.25, 0.25))
    b = blaschke_through(data)
    assert b.degree == 2
    for lam in (0.1, -0.3 + 0.2j, 0.6j):
        assert b(lam) == pytest.approx(lam * lam, abs=1e-10)


def test_blaschke_through_identity():
    data = DiscPickData((0.1, 0.5j, -0.4), (0.1, 0.5j, -0.4))
    b = blaschke_through(data)
    assert b.degree == 1
    assert b(0.3 - 0.2j) == pytest.approx(0.3 - 0.2j, abs=1e-10)


def test_blaschke_through_random_forward_data():
    rng = np.random.default_rng(8)
    for _ in range(25):
        zeros = tuple(
            0.7 * (rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)) for _ in range(2)
        )
        eta = np.exp(1j * rng.uniform(0, 2 * np.pi))
        b = BlaschkeProduct(eta=eta, zeros=zeros)
        nodes = []
        while len(nodes) < 3:
            x = 0.6 * (rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1))
            if all(abs(x - y) > 0.05 for y in nodes):
                nodes.append(x)
        data = DiscPickData(tuple(nodes), tuple(b(x) for x in nodes))
        rec = blaschke_through(data)
        for x, l in zip(data.nodes, data.targets):
            assert rec(x) == pytest.approx(l, abs=1e-9)


def test_blaschke_through_rejects_non_extremal():
    with pytest.raises(NotExtremal):
        blaschke_through(DiscPickData((0.0, 0.5, -0.5), (0.0, 0.1, 0.1)))
    with pytest.raises(NoSolution):
        blaschke_through(DiscPickData((0.0, 0.5, -0.5), (0.0, 0.9, 0.9)))
