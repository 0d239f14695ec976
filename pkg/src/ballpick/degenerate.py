"""The degenerate branch: reachable values of the third node and the F_{tau,omega} family.

When a 2-point subproblem pinning the first-axis disc is already extremal,
the set of values an interpolant can take at a third point w in B_2 is a
closed Euclidean disc.  This module computes that disc, tests membership,
evaluates the extremal family

    F_{tau,omega}(z) = (2 z1 (1 - tau z1) - conj(tau) omega^2 z2^2)
                       / (2 (1 - tau z1) - omega^2 z2^2),

recovers (tau, omega) in closed form from a prescribed value, and
implements the conjugation identity that closes the family under the
m_{w1} / chi_{(w1,0)} framing.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFrame, DomainViolation, InvalidParameter, OutsideB
from .geometry import FTauOmegaNode, MapExpr, check_ball_point, check_disc_point, mobius_eval

INTERIOR = "interior"
BOUNDARY = "boundary"
OUTSIDE = "outside"


@dataclass(frozen=True)
class DegenerateParams:
    """Family parameters: |tau| = 1, |omega| <= 1."""

    tau: complex
    omega: complex

    def __post_init__(self):
        tau = complex(self.tau)
        omega = complex(self.omega)
        if abs(abs(tau) - 1.0) > 1e-12:
            raise InvalidParameter(f"|tau| must equal 1, got {abs(tau)}")
        if abs(omega) > 1.0 + 1e-12:
            raise InvalidParameter(f"|omega| must be <= 1, got {abs(omega)}")
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "omega", omega)

    def to_json(self):
        return {"tau": [self.tau.real, self.tau.imag], "omega": [self.omega.real, self.omega.imag]}


@dataclass(frozen=True)
class BDisc:
    """The reachable set at w: the image under m_{w1} of the closed disc of radius r."""

    center_param: complex
    radius: float


def b_disc(w) -> BDisc:
    """Closed-disc description of the values reachable at w.

    radius r = |w2|^2 / (2 - 2 |w1|^2 - |w2|^2); the set is m_{w1}(closed
    disc of radius r about 0).
    """
    w = check_ball_point(w, strict=True, what="w")
    w1, w2 = complex(w[0]), complex(w[1])
    r = abs(w2) ** 2 / (2.0 - 2.0 * abs(w1) ** 2 - abs(w2) ** 2)
    return BDisc(center_param=w1, radius=float(r))


def b_member(w, sigma, tol: float = 1e-9) -> str:
    """Classify sigma against the reachable disc at w: interior / boundary / outside."""
    sigma = check_disc_point(sigma, strict=True, what="sigma")
    disc = b_disc(w)
    d = abs(mobius_eval(disc.center_param, sigma)) - disc.radius
    if d < -tol:
        return INTERIOR
    if d <= tol:
        return BOUNDARY
    return OUTSIDE


def f_tau_omega_eval(params: DegenerateParams, z):
    """Evaluate a family member; fixes the first-axis disc pointwise."""
    z = check_ball_point(z, what="z")
    if float(np.linalg.norm(z)) >= 1.0 + 1e-12:
        raise DomainViolation("z must lie in the closed ball")
    return FTauOmegaNode(params.tau, params.omega).apply(z)


def conjugate_params(tau, omega, w1) -> DegenerateParams:
    """Parameters of the framed member m_{w1} o F_{tau,omega} o chi_{(w1,0)}.

    tau~ = (conj(w1) - tau) / (1 - tau w1),
    omega~^2 = -omega^2 (conj(tau) conj(w1) - 1) / (1 - tau w1);
    omega~ is the principal square root.
    """
    tau = complex(tau)
    omega = complex(omega)
    w1 = complex(w1)
    if abs(abs(tau) - 1.0) > 1e-12:
        raise InvalidParameter("|tau| must equal 1")
    if abs(omega) > 1.0 + 1e-12:
        raise InvalidParameter("|omega| must be <= 1")
    if abs(w1) >= 1.0:
        raise InvalidParameter("|w1| must be < 1")
    den = 1.0 - tau * w1
    tau_t = (np.conj(w1) - tau) / den
    omega_t_sq = -omega * omega * (np.conj(tau) * np.conj(w1) - 1.0) / den
    omega_t = cmath.sqrt(omega_t_sq)
    tau_t = tau_t / abs(tau_t)
    if abs(omega_t) > 1.0:
        omega_t = omega_t / abs(omega_t)
    return DegenerateParams(tau=tau_t, omega=omega_t)


def solve_tau_omega(w, sigma, tol: float = 1e-9):
    """Family member taking the value sigma at w; returns (DegenerateParams, MapExpr).

    Works in the frame w' = chi_{(w1,0)}(w) = (0, w2'), sigma' = m_{w1}(sigma):
    with s = 2|sigma'| / (1 + |sigma'|) choose omega^2 w2'^2 = s and
    tau = -conj(sigma') (2 - s)/s, then conjugate back so the returned
    parameters describe the member directly (F = F_{tau,omega} as a
    function of the original coordinates).
    """
    w = check_ball_point(w, strict=True, what="w")
    sigma = check_disc_point(sigma, strict=True, what="sigma")
    w1, w2 = complex(w[0]), complex(w[1])

    if abs(w2) <= 1e-12:
        # collapsed frame: the value at w is forced to w1
        if abs(sigma - w1) > tol:
            raise DegenerateFrame("w lies on the pinned axis; the value at w is forced to w1")
        params = DegenerateParams(tau=1.0, omega=0.0)
        return params, MapExpr((FTauOmegaNode(params.tau, params.omega),))

    if b_member(w, sigma, tol=tol) == OUTSIDE:
        raise OutsideB("sigma is not reachable at w")

    w2p = w2 / np.sqrt(1.0 - abs(w1) ** 2)
    sigma_p = mobius_eval(w1, sigma)
    mod = abs(sigma_p)
    if mod <= 1e-15:
        # center of the disc; tau is immaterial once omega = 0
        params = DegenerateParams(tau=1.0, omega=0.0)
        return params, MapExpr((FTauOmegaNode(params.tau, params.omega),))
    else:
        s = 2.0 * mod / (1.0 + mod)
        rho = s / (w2p * w2p)
        if abs(rho) > 1.0 + 1e-9:
            raise OutsideB("sigma is not reachable at w")
        if abs(rho) > 1.0:
            rho = rho / abs(rho)
        tau_f = -np.conj(sigma_p) * (2.0 - s) / s
        tau_f = tau_f / abs(tau_f)
        omega_f = cmath.sqrt(rho)

    params = conjugate_params(tau_f, omega_f, w1)
    return params, MapExpr((FTauOmegaNode(params.tau, params.omega),))
