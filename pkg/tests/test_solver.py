"""Unit tests for classification, extremal scaling, and certificates."""

import numpy as np
import pytest

from ballpick.errors import InvalidParameter
from ballpick.geometry import random_unitary, mobius_eval
from ballpick.normalize import CanonicalProblem
from ballpick.degenerate import b_disc
from ballpick.nondegenerate import GeodesicParams, PhiPoint, phi_map
from ballpick.solver import (
    COLINEAR,
    DEGENERATE,
    EXTREMAL,
    NONDEGENERATE,
    PAIR_0Z,
    PAIR_ZW,
    SUBEXTREMAL,
    UNSOLVABLE,
    Certificate,
    SolverConfig,
    classify,
    compute_tstar,
    is_extremal,
    synthesize,
    verify_certificate,
)

Z_DEG = np.array([0.5, 0.0], dtype=complex)
W_DEG = np.array([0.3, 0.6], dtype=complex)


def test_degenerate_worked_example():
    res = compute_tstar(Z_DEG, W_DEG, 1.0, 0.3)
    assert res.tstar == pytest.approx(0.5, abs=1e-10)
    assert res.classification.kind == DEGENERATE
    assert res.classification.pair == PAIR_0Z
    assert res.witnesses["t_A"] == pytest.approx(0.5, abs=1e-12)
    assert res.witnesses["t_B"] == pytest.approx(np.sqrt(5), abs=1e-9)
    assert res.witnesses["t_C"] > 0.5
    assert res.witnesses["membership"] == "interior"


def test_colinear_worked_example():
    res = compute_tstar(
        np.array([0.5, 0.0], dtype=complex), np.array([-0.5, 0.0], dtype=complex),
        0.25, 0.25,
    )
    assert res.tstar == pytest.approx(1.0, abs=1e-9)
    assert res.classification.kind == COLINEAR


def test_nondegenerate_worked_example():
    params = GeodesicParams(a=0.6, u=np.eye(2, dtype=complex), c=0.0)
    z, w, xi = phi_map(PhiPoint(x=0.3, y=-0.4, params=params))
    res = compute_tstar(z, w, -0.09, -0.16)
    assert res.tstar == pytest.approx(1.0, abs=1e-8)
    assert res.classification.kind == NONDEGENERATE


def test_classify_wrapper():
    assert classify(Z_DEG, W_DEG, 1.0, 0.3).kind == DEGENERATE


def test_scaling_law():
    r1 = compute_tstar(Z_DEG, W_DEG, 1.0, 0.3)
    r2 = compute_tstar(Z_DEG, W_DEG, 2.0, 0.6)
    assert r2.tstar * 2.0 == pytest.approx(r1.tstar * 1.0, abs=1e-10)


def test_rejects_zero_direction_and_coincident_nodes():
    with pytest.raises(InvalidParameter):
        compute_tstar(Z_DEG, W_DEG, 0.0, 0.0)


def test_tie_of_two_pairs_routes_to_nondegenerate():
    # t_A = t_B = 0.5; two extremal pairs are impossible off a common line,
    # so the datum must be non-degenerate with t* < 0.5
    z = np.array([0.5, 0.0], dtype=complex)
    w = np.array([0.0, 0.5], dtype=complex)
    res = compute_tstar(z, w, 1.0, 1.0)
    assert res.classification.kind == NONDEGENERATE
    assert res.tstar < 0.5


def test_is_extremal_trichotomy():
    res = compute_tstar(Z_DEG, W_DEG, 1.0, 0.3)
    t = res.tstar

    def prob(s):
        return CanonicalProblem(z=Z_DEG, w=W_DEG, sigma=s * 1.0, tau=s * 0.3)

    assert is_extremal(prob(0.9 * t)) == SUBEXTREMAL
    assert is_extremal(prob(t)) == EXTREMAL
    assert is_extremal(prob(1.1 * t)) == UNSOLVABLE


def _verify(cert, z, w, sigma, tau, tstar):
    problem = CanonicalProblem(z=z, w=w, sigma=tstar * sigma, tau=tstar * tau)
    return verify_certificate(cert, problem)


def test_synthesize_degenerate_certificate():
    cert = synthesize(Z_DEG, W_DEG, 1.0, 0.3)
    assert cert.B.degree == 1
    assert cert.preimages[2] is None
    # f(0) = 0, f(0.5) = (0.5, 0); F(w) = 0.15
    assert np.allclose(cert.f(0.0), 0.0, atol=1e-14)
    assert np.allclose(cert.f(0.5), [0.5, 0.0], atol=1e-14)
    assert cert.F(W_DEG) == pytest.approx(0.15, abs=1e-12)
    rep = _verify(cert, Z_DEG, W_DEG, 1.0, 0.3, 0.5)
    assert rep["pass"]


def test_synthesize_colinear_certificate():
    z = np.array([0.5, 0.0], dtype=complex)
    w = np.array([-0.5, 0.0], dtype=complex)
    cert = synthesize(z, w, 0.25, 0.25)
    assert cert.B.degree == 2
    for lam in (0.3, -0.2 + 0.4j):
        assert cert.B(lam) == pytest.approx(lam * lam, abs=1e-10)
        assert np.allclose(cert.f(lam), [lam, 0.0], atol=1e-12)
    rep = _verify(cert, z, w, 0.25, 0.25, 1.0)
    assert rep["pass"]


def test_synthesize_nondegenerate_certificate():
    params = GeodesicParams(a=0.6, u=np.eye(2, dtype=complex), c=0.0)
    z, w, xi = phi_map(PhiPoint(x=0.3, y=-0.4, params=params))
    cert = synthesize(z, w, -0.09, -0.16)
    assert cert.B.degree == 2
    # B(lam) = -lam^2 up to the recovered gauge
    assert cert.B(0.5) == pytest.approx(-0.25, abs=1e-7)
    assert sorted(abs(complex(p)) for p in cert.preimages) == pytest.approx(
        [0.0, 0.3, 0.4], abs=1e-7
    )
    rep = _verify(cert, z, w, -0.09, -0.16, 1.0)
    assert rep["pass"]


def test_synthesize_pair_zw_certificate():
    # construct a datum whose extremal pair is (z, w)
    rng = np.random.default_rng(40)
    z = np.array([0.35, -0.1j], dtype=complex)
    w = np.array([-0.2, 0.4], dtype=complex)
    from ballpick.geometry import chi_eval, carath_ball
    from ballpick.solver import _frame_unitary
    from ballpick.degenerate import solve_tau_omega

    zeta = chi_eval(z, w)
    rho = carath_ball(z, w)
    vmat = _frame_unitary(zeta)
    u3 = vmat @ z
    val = mobius_eval(u3[0], 0.6 * b_disc(u3).radius * np.exp(0.9j))
    alpha = np.exp(0.37j)
    sigma = np.conj(alpha) * val
    tau = mobius_eval(sigma, np.conj(alpha) * rho)
    res = compute_tstar(z, w, sigma, tau)
    assert res.classification.kind == DEGENERATE
    assert res.classification.pair == PAIR_ZW
    assert res.tstar == pytest.approx(1.0, abs=1e-9)
    cert = synthesize(z, w, sigma, tau)
    assert cert.B.degree == 1
    assert cert.preimages[0] is None
    rep = _verify(cert, z, w, sigma, tau, 1.0)
    assert rep["pass"]


def test_verify_rejects_wrong_blaschke():
    cert = synthesize(Z_DEG, W_DEG, 1.0, 0.3)
    from ballpick.geometry import BlaschkeProduct

    bad = Certificate(
        F=cert.F, f=cert.f, B=BlaschkeProduct(eta=1.0, zeros=(0.3,)),
        preimages=cert.preimages, classification=cert.classification,
        tstar=cert.tstar,
    )
    rep = _verify(bad, Z_DEG, W_DEG, 1.0, 0.3, 0.5)
    assert not rep["pass"]
    assert rep["composition_residual"] > 1e-6


def test_verify_rejects_perturbed_disc():
    from ballpick.geometry import EmbedNode, MapExpr

    cert = synthesize(Z_DEG, W_DEG, 1.0, 0.3)
    v = np.array([np.sqrt(1 - 1e-3**2), 1e-3], dtype=complex)
    bad = Certificate(
        F=cert.F, f=MapExpr((EmbedNode(v),)), B=cert.B,
        preimages=cert.preimages, classification=cert.classification,
        tstar=cert.tstar,
    )
    rep = _verify(bad, Z_DEG, W_DEG, 1.0, 0.3, 0.5)
    assert not rep["pass"]


def test_certificate_json_round_trip():
    import json
    from ballpick.geometry import BlaschkeProduct, MapExpr
    from ballpick.solver import Classification

    cert = synthesize(Z_DEG, W_DEG, 1.0, 0.3)
    obj = json.loads(json.dumps(cert.to_json()))
    rec = Certificate(
        F=MapExpr.from_json(obj["F"]),
        f=MapExpr.from_json(obj["f"]),
        B=BlaschkeProduct.from_json(obj["B"]),
        preimages=tuple(None if p is None else complex(*p) for p in obj["preimages"]),
        classification=Classification(
            kind=obj["classification"]["kind"], pair=obj["classification"].get("pair")
        ),
        tstar=obj["tstar"],
    )
    assert rec.F(W_DEG) == pytest.approx(cert.F(W_DEG), abs=1e-14)
    rep = _verify(rec, Z_DEG, W_DEG, 1.0, 0.3, 0.5)
    assert rep["pass"]
