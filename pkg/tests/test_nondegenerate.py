"""Unit tests for 3-geodesic discs, left inverses, and chart inversion."""

import numpy as np
import pytest

from ballpick.errors import NoConvergence
from ballpick.geometry import mobius_eval, random_unitary
from ballpick.nondegenerate import (
    FEpsilonParams,
    GeodesicParams,
    InvertConfig,
    PhiPoint,
    canonical_phi_point,
    f_core_eval,
    f_epsilon_eval,
    fubini_study,
    gamma_of_c,
    invert_phi,
    left_inverse,
    phi_eval,
    phi_expr,
    phi_map,
)


def _random_params(rng):
    return GeodesicParams(
        a=rng.uniform(0.1, 0.9), u=random_unitary(rng), c=rng.uniform(-0.8, 0.8)
    )


def _random_disc(rng, scale=0.85):
    return scale * (rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)) / np.sqrt(2)


def test_gamma_values():
    assert gamma_of_c(0.0) == 0.0
    assert gamma_of_c(0.5) == pytest.approx(0.8)
    assert gamma_of_c(-0.5) == pytest.approx(-0.8)


def test_phi_anchor_and_origin():
    rng = np.random.default_rng(30)
    for _ in range(20):
        p = _random_params(rng)
        assert np.linalg.norm(phi_eval(p, 0.0)) < 1e-12
        assert np.allclose(phi_eval(p, p.c), p.anchor, atol=1e-12)


def test_phi_expr_matches_eval():
    rng = np.random.default_rng(31)
    p = _random_params(rng)
    for lam in (0.2, -0.4 + 0.3j, 0.1j):
        assert np.allclose(phi_expr(p)(lam), phi_eval(p, lam), atol=1e-13)


def test_left_inverse_identity():
    rng = np.random.default_rng(32)
    for _ in range(60):
        p = _random_params(rng)
        fi = left_inverse(p)
        lam = _random_disc(rng)
        want = lam * mobius_eval(p.gamma, lam)
        assert fi(phi_eval(p, lam)) == pytest.approx(want, abs=1e-11)


def test_left_inverse_spot_values():
    # a = 0.6, U = I, c = 0: phi(0.3) = (0.18, -0.072), F~ = -0.09
    p0 = GeodesicParams(a=0.6, u=np.eye(2, dtype=complex), c=0.0)
    z = phi_eval(p0, 0.3)
    assert np.allclose(z, [0.18, -0.072], atol=1e-14)
    assert left_inverse(p0)(z) == pytest.approx(-0.09, abs=1e-13)
    # a = 0.6, U = I, c = 0.5: anchor (0.3, 0.2), F~(anchor) = c^2 = 0.25
    p1 = GeodesicParams(a=0.6, u=np.eye(2, dtype=complex), c=0.5)
    assert np.allclose(p1.anchor, [0.3, 0.2], atol=1e-14)
    assert left_inverse(p1)(p1.anchor) == pytest.approx(0.25, abs=1e-13)


def test_f_core_on_geodesic_curve():
    rng = np.random.default_rng(33)
    for _ in range(30):
        a = rng.uniform(0.05, 0.95)
        b = np.sqrt(1 - a * a)
        lam = _random_disc(rng, 0.95)
        assert f_core_eval(a, np.array([a * lam, b * lam**2])) == pytest.approx(
            lam * lam, abs=1e-13
        )


def test_f_epsilon_agrees_on_curve_and_stays_bounded():
    rng = np.random.default_rng(34)
    for a in (0.2, 0.5, 0.8):
        for eps in (0.3, 0.6, 0.9):
            p = FEpsilonParams(a=a, epsilon=eps)
            b = np.sqrt(1 - a * a)
            for _ in range(10):
                lam = _random_disc(rng, 0.95)
                assert f_epsilon_eval(p, np.array([a * lam, b * lam**2])) == pytest.approx(
                    lam * lam, abs=1e-12
                )
            raw = rng.normal(size=(500, 4))
            raw /= np.linalg.norm(raw, axis=1, keepdims=True)
            pts = raw[:, :2] + 1j * raw[:, 2:]
            vals = f_epsilon_eval(p, pts)
            assert np.max(np.abs(vals)) <= 1.0 + 1e-9


def test_fubini_study_is_projective():
    assert fubini_study((0.3, 0.4), (0.6, 0.8)) == pytest.approx(0.0, abs=1e-14)
    assert fubini_study((1.0, 0.0), (0.0, 1.0)) == pytest.approx(1.0, abs=1e-14)


def test_invert_phi_round_trip():
    rng = np.random.default_rng(35)
    done = 0
    while done < 8:
        p = _random_params(rng)
        x, y = _random_disc(rng, 0.7), _random_disc(rng, 0.7)
        if min(abs(x), abs(y)) < 0.05 or abs(x - y) < 0.1:
            continue
        pt = canonical_phi_point(x, y, p)
        z, w, xi = phi_map(pt)
        rec = invert_phi(z, w, xi)
        assert abs(rec.x - pt.x) < 1e-7
        assert abs(rec.y - pt.y) < 1e-7
        assert abs(rec.params.a - pt.params.a) < 1e-7
        assert abs(rec.params.c - pt.params.c) < 1e-7
        assert np.max(np.abs(rec.params.u - pt.params.u)) < 1e-6
        done += 1


def test_invert_phi_fails_on_degenerate_datum():
    # the pair (0, z) is extremal for this datum, so no chart point exists
    z = np.array([0.5, 0.0], dtype=complex)
    w = np.array([0.3, 0.6], dtype=complex)
    with pytest.raises(NoConvergence):
        invert_phi(z, w, (0.5, 0.15), InvertConfig(starts=6, max_nfev=150))


def test_symmetry_gives_same_canonical_representative():
    rng = np.random.default_rng(36)
    for _ in range(10):
        p = _random_params(rng)
        if abs(p.c) < 0.05:
            continue
        x, y = 0.4 + 0.2j, -0.3 + 0.5j
        mirror = GeodesicParams(a=p.a, u=p.u @ np.diag([-1.0, 1.0]), c=-p.c)
        z1, w1, xi1 = phi_map(PhiPoint(x=x, y=y, params=p))
        z2, w2, xi2 = phi_map(PhiPoint(x=-x, y=-y, params=mirror))
        assert np.allclose(z1, z2, atol=1e-13) and np.allclose(w1, w2, atol=1e-13)
        # chordal distance loses half the digits near 0 (square root floor)
        assert fubini_study(xi1, xi2) < 1e-7
        q1 = canonical_phi_point(x, y, p)
        q2 = canonical_phi_point(-x, -y, mirror)
        assert abs(q1.x - q2.x) < 1e-13 and abs(q1.y - q2.y) < 1e-13
        assert abs(q1.params.c - q2.params.c) < 1e-13
        assert np.max(np.abs(q1.params.u - q2.params.u)) < 1e-13
