"""Two-pole Caratheodory and Lempert functions of the ball and their equality.

For p, q, z in B_n with p != q and z distinct from both:

    c(p;q;z) = sup { |F(z)| : F: B_n -> D holomorphic, F(p) = F(q) = 0 },
    l(p;q;z) = min( inf |lam sig| over analytic discs f with
                    f(0) = z, f(lam) = p, f(sig) = q,
                    c*(z, p),  c*(z, q) ).

c is computed exactly as the extremal scaling of the 3-point problem
anchored at p; the two-disc terms of l are closed-form Caratheodory
distances; the one-disc term is an upper bound from constrained
minimization over a normal-form family of discs through z.  The two
quantities agree on the ball, which coman_check verifies numerically.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import BallPickError, InvalidParameter
from .geometry import (
    carath_ball,
    check_ball_point,
    chi_eval,
    mobius_eval,
    unitary_from_params,
)
from .normalize import PickProblem3, canonicalize, pullback_disc
from .solver import SolverConfig, compute_tstar, synthesize


@dataclass(frozen=True)
class TwoPoleData:
    """Poles p != q and an evaluation point z distinct from both."""

    p: np.ndarray
    q: np.ndarray
    z: np.ndarray

    def __post_init__(self):
        p = check_ball_point(self.p, strict=True, what="p")
        q = check_ball_point(self.q, strict=True, what="q")
        z = check_ball_point(self.z, strict=True, what="z")
        if min(
            np.linalg.norm(p - q), np.linalg.norm(z - p), np.linalg.norm(z - q)
        ) <= 1e-12:
            raise InvalidParameter("p, q, z must be pairwise distinct")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "z", z)


@dataclass(frozen=True)
class GreenResult:
    c: float
    l: float
    gap: float
    terms: tuple


def carath_two_pole(data: TwoPoleData, cfg: SolverConfig | None = None) -> float:
    """sup |F(z)| over maps vanishing at both poles; exact via the 3-point solver."""
    problem = PickProblem3(nodes=(data.q, data.z, data.p), targets=(0.0, 0.0, 0.0))
    canonical, framing = canonicalize(problem)
    res = compute_tstar(canonical.z, canonical.w, 0.0, 1.0, cfg)
    return float(res.tstar)


def _extremal_disc_seed(data: TwoPoleData, cfg: SolverConfig):
    """Warm start for the disc search, rebuilt from the 3-point certificate.

    The infimum over discs is attained by the extremal disc of the
    associated 3-point problem.  Pull that disc back, reparametrize so the
    preimage of z sits at 0, and read off its normal form (a, alpha, U)
    from the first two derivatives at the origin.  Returns None when the
    certificate has an off-disc node or the normal form degenerates.
    """
    problem = PickProblem3(nodes=(data.q, data.z, data.p), targets=(0.0, 0.0, 0.0))
    canonical, framing = canonicalize(problem)
    try:
        cert = synthesize(canonical.z, canonical.w, 0.0, 1.0, cfg)
    except BallPickError:
        return None
    if any(pr is None for pr in cert.preimages):
        return None
    lam_p, lam_q, lam_z = (complex(pr) for pr in cert.preimages)
    disc = pullback_disc(framing, cert.f)

    def through_z(mu):
        return chi_eval(data.z, disc(mobius_eval(lam_z, mu)))

    h = 1e-5
    d1 = (through_z(h) - through_z(-h)) / (2 * h)
    d2 = (through_z(h) - 2 * through_z(0.0) + through_z(-h)) / (h * h)
    n2 = np.linalg.norm(d2)
    if n2 < 1e-9:
        return None
    u2 = -d2 / n2
    a_u1 = d1 - np.vdot(u2, d1) * u2
    a = float(np.linalg.norm(a_u1))
    if a < 1e-8 or a > 1.0 - 1e-12:
        return None
    b = np.sqrt(1.0 - a * a)
    u1 = a_u1 / a
    alpha = np.vdot(u2, d1) / b
    u = np.column_stack([u1, u2])
    half = np.angle(np.linalg.det(u)) / 2
    v = u * np.exp(-1j * half)
    th = np.arctan2(abs(v[0, 1]), abs(v[0, 0]))
    ub = float(np.angle(v[0, 0])) if abs(v[0, 0]) > 1e-12 else 0.0
    ud = float(np.angle(v[0, 1])) if abs(v[0, 1]) > 1e-12 else 0.0
    mu_p = mobius_eval(lam_z, lam_p)
    mu_q = mobius_eval(lam_z, lam_q)
    return [float(np.arccos(a)), float(abs(alpha)), float(np.angle(alpha)),
            float(th), float(half), ub, ud,
            mu_p.real, mu_p.imag, mu_q.real, mu_q.imag]


def _term1(data: TwoPoleData, cfg: SolverConfig) -> float:
    """inf |lam sig| over discs through z, p, q; constrained minimization upper bound.

    Variables are the normal form of a disc through z (psi with a =
    cos psi, the inner factor alpha in polar form, four unitary chart
    angles) plus the two preimages kept explicit; interpolation at the
    preimages supplies eight equality constraints.  Seeds: a deterministic
    lattice, random fills, and one warm start from the extremal disc of
    the associated 3-point problem, which attains the infimum.
    """
    z, p, q = data.z, data.p, data.q
    cp, cq = chi_eval(z, p), chi_eval(z, q)
    ncp, ncq = np.linalg.norm(cp), np.linalg.norm(cq)
    eps = 1e-9

    def disc_at(v, lam):
        psi, ra, pa, th, ua, ub, ud = v[:7]
        a, b = np.cos(psi), np.sin(psi)
        alpha = ra * np.exp(1j * pa)
        u = unitary_from_params(th, ua, ub, ud)
        mo = (alpha - lam) / (1.0 - np.conj(alpha) * lam)
        return u @ np.array([a * lam, b * lam * mo], dtype=complex)

    def constraints(v):
        lam = v[7] + 1j * v[8]
        sig = v[9] + 1j * v[10]
        rp = disc_at(v, lam) - cp
        rq = disc_at(v, sig) - cq
        return np.array([rp[0].real, rp[0].imag, rp[1].real, rp[1].imag,
                         rq[0].real, rq[0].imag, rq[1].real, rq[1].imag])

    def inequalities(v):
        return np.array([
            (1 - eps) ** 2 - (v[7] ** 2 + v[8] ** 2),
            (1 - eps) ** 2 - (v[9] ** 2 + v[10] ** 2),
        ])

    def objective(v):
        return (v[7] ** 2 + v[8] ** 2) * (v[9] ** 2 + v[10] ** 2)

    bounds = [
        (0.0, np.pi / 2 - 1e-8), (0.0, 1.0 - 1e-9), (-7.0, 7.0),
        (-7.0, 7.0), (-7.0, 7.0), (-7.0, 7.0), (-7.0, 7.0),
        (-1.0, 1.0), (-1.0, 1.0), (-1.0, 1.0), (-1.0, 1.0),
    ]
    lo = np.array([b[0] for b in bounds])
    hi = np.array([b[1] for b in bounds])

    rng = np.random.default_rng(cfg.seed)
    seeds = []
    warm = _extremal_disc_seed(data, cfg)
    if warm is not None:
        seeds.append(warm)
    for a0 in (0.95, 0.75, 0.5, 0.25):
        for ra0 in (0.05, 0.45, 0.8):
            for _ in range(2):
                ang = rng.uniform(-np.pi, np.pi, 3)
                seeds.append([
                    np.arccos(a0), ra0, ang[0],
                    rng.uniform(0, np.pi / 2), rng.uniform(-3, 3),
                    rng.uniform(-3, 3), rng.uniform(-3, 3),
                    ncp * np.cos(ang[1]), ncp * np.sin(ang[1]),
                    ncq * np.cos(ang[2]), ncq * np.sin(ang[2]),
                ])
    while len(seeds) < cfg.starts:
        ang = rng.uniform(-np.pi, np.pi, 2)
        seeds.append([
            rng.uniform(1e-3, np.pi / 2 - 1e-3), rng.uniform(0, 0.9),
            rng.uniform(-3, 3), rng.uniform(0, np.pi / 2), rng.uniform(-3, 3),
            rng.uniform(-3, 3), rng.uniform(-3, 3),
            ncp * np.cos(ang[0]), ncp * np.sin(ang[0]),
            ncq * np.cos(ang[1]), ncq * np.sin(ang[1]),
        ])
    seeds = seeds[: max(cfg.starts, 1)]

    def solve_from(v0):
        return minimize(
            objective, v0, bounds=bounds, method="SLSQP",
            constraints=[
                {"type": "eq", "fun": constraints},
                {"type": "ineq", "fun": inequalities},
            ],
            options={"maxiter": 300, "ftol": 1e-16},
        )

    def feasible(x):
        return (
            np.max(np.abs(constraints(x))) < 1e-9
            and np.min(inequalities(x)) > -1e-10
        )

    best, best_x = np.inf, None
    for s in seeds:
        v0 = np.clip(np.asarray(s, dtype=float), lo, hi)
        res = solve_from(v0)
        if feasible(res.x) and float(objective(res.x)) < best:
            best, best_x = float(objective(res.x)), res.x
    # polish: SLSQP restarted at the incumbent often shaves the last digits
    if best_x is not None:
        for _ in range(3):
            res = solve_from(best_x)
            if feasible(res.x) and float(objective(res.x)) < best:
                best, best_x = float(objective(res.x)), res.x
            else:
                break
    if not np.isfinite(best):
        warnings.warn("no disc through all three points found; term dropped")
        return best
    return float(np.sqrt(best))


def lempert_two_pole(data: TwoPoleData, cfg: SolverConfig | None = None):
    """l(p;q;z) with its three-term breakdown (one-disc, c*(z,p), c*(z,q))."""
    cfg = cfg or SolverConfig()
    t2 = carath_ball(data.z, data.p)
    t3 = carath_ball(data.z, data.q)
    t1 = _term1(data, cfg)
    terms = (float(t1), float(t2), float(t3))
    return float(min(terms)), terms


def coman_check(data: TwoPoleData, tol: float = 1e-6,
                cfg: SolverConfig | None = None) -> GreenResult:
    """Verify the two-pole equality c = l; gap = l - c must vanish to tol."""
    cfg = cfg or SolverConfig()
    c = carath_two_pole(data, cfg)
    l, terms = lempert_two_pole(data, cfg)
    return GreenResult(c=c, l=l, gap=l - c, terms=terms)


def green_report(data: TwoPoleData, tol: float = 1e-6,
                 cfg: SolverConfig | None = None) -> dict:
    res = coman_check(data, tol, cfg)
    return {
        "c": res.c,
        "l": res.l,
        "gap": res.gap,
        "terms": list(res.terms),
        "pass": bool(abs(res.gap) <= tol),
    }
