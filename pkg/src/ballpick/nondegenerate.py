"""The non-degenerate branch: 3-geodesic discs, their left inverses, and the chart Phi.

The family of analytic discs

    phi_{a,U,c}(lam) = chi_w( U (a m_c(lam), sqrt(1-a^2) m_c(lam)^2) ),
    w = U (a c, sqrt(1-a^2) c^2),

parametrizes (2:1) every non-degenerate extremal 3-point datum via

    Phi(x, y, a, U, c) = (phi(x), phi(y), [x m_gamma(x) : y m_gamma(y)]),
    gamma = 2c / (1 + c^2).

Each disc carries the explicit left inverse m_{c^2} o F_a o U^{-1} o chi_w
with quadratic core F_a(z) = (z1^2 + 2 sqrt(1-a^2) z2) / (2 - a^2), and the
one-parameter perturbations F_eps of the core witness non-uniqueness of
left inverses.  Phi is inverted numerically by damped multi-start least
squares.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares

from .errors import DomainViolation, InvalidParameter, NoConvergence
from .geometry import (
    ChiNode,
    FCoreNode,
    GeodesicCoreNode,
    MapExpr,
    MobiusNode,
    UnitaryInvNode,
    UnitaryNode,
    check_ball_point,
    check_disc_point,
    chi_eval,
    is_unitary,
    mobius_eval,
    unitary_from_params,
)

_MARGIN = 1e-12


def gamma_of_c(c: float) -> float:
    """gamma = 2c / (1 + c^2), the Blaschke-zero location induced by the anchor c."""
    c = float(c)
    if abs(c) >= 1.0:
        raise InvalidParameter("|c| must be < 1")
    return 2.0 * c / (1.0 + c * c)


@dataclass(frozen=True)
class GeodesicParams:
    """Disc parameters (a, U, c) with a in (0,1), U unitary 2x2, c in (-1,1)."""

    a: float
    u: np.ndarray
    c: float

    def __post_init__(self):
        a = float(self.a)
        c = float(self.c)
        if not (_MARGIN < a < 1.0 - _MARGIN):
            raise InvalidParameter(f"a must lie in (0, 1), got {a}")
        if not (-1.0 + _MARGIN < c < 1.0 - _MARGIN):
            raise InvalidParameter(f"c must lie in (-1, 1), got {c}")
        u = np.asarray(self.u, dtype=complex)
        if u.shape != (2, 2) or not is_unitary(u, tol=1e-10):
            raise InvalidParameter("u must be a 2x2 unitary matrix")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "c", c)

    @property
    def b(self) -> float:
        return float(np.sqrt(1.0 - self.a**2))

    @property
    def gamma(self) -> float:
        return gamma_of_c(self.c)

    @property
    def anchor(self) -> np.ndarray:
        """The point w = U (a c, b c^2) exchanged with 0 by the chi factor."""
        return self.u @ np.array([self.a * self.c, self.b * self.c**2], dtype=complex)

    def to_json(self):
        return {
            "a": self.a,
            "u": [[[v.real, v.imag] for v in row] for row in self.u],
            "c": self.c,
        }


@dataclass(frozen=True)
class PhiPoint:
    """A point of the chart domain: x != y in the punctured disc plus GeodesicParams."""

    x: complex
    y: complex
    params: GeodesicParams

    def __post_init__(self):
        x, y = complex(self.x), complex(self.y)
        for name, v in (("x", x), ("y", y)):
            if not (_MARGIN < abs(v) < 1.0 - _MARGIN):
                raise InvalidParameter(f"{name} must lie in the punctured open disc")
        if abs(x - y) <= _MARGIN:
            raise InvalidParameter("x and y must be distinct")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)


@dataclass(frozen=True)
class FEpsilonParams:
    """Core parameter a in (0,1) and perturbation strength eps in [0,1)."""

    a: float
    epsilon: float

    def __post_init__(self):
        a, eps = float(self.a), float(self.epsilon)
        if not (0.0 < a < 1.0):
            raise InvalidParameter("a must lie in (0, 1)")
        if not (0.0 <= eps < 1.0):
            raise InvalidParameter("epsilon must lie in [0, 1)")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "epsilon", eps)


def phi_eval(params: GeodesicParams, lam) -> np.ndarray:
    """Evaluate the geodesic disc phi_{a,U,c} at lam."""
    lam = check_disc_point(lam, what="lam")
    mc = mobius_eval(params.c, lam)
    inner = params.u @ np.array([params.a * mc, params.b * mc * mc], dtype=complex)
    w = params.anchor
    if np.linalg.norm(w) < 1e-15:
        return -inner
    return chi_eval(w, inner)


def phi_expr(params: GeodesicParams) -> MapExpr:
    """phi_{a,U,c} as an exact composition chain."""
    return MapExpr(
        (
            MobiusNode(complex(params.c)),
            GeodesicCoreNode(params.a),
            UnitaryNode(params.u),
            ChiNode(params.anchor),
        )
    )


def left_inverse(params: GeodesicParams) -> MapExpr:
    """Left inverse F~ = m_{c^2} o F_a o U^{-1} o chi_w with F~(phi(lam)) = lam m_gamma(lam)."""
    return MapExpr(
        (
            ChiNode(params.anchor),
            UnitaryInvNode(params.u),
            FCoreNode(params.a),
            MobiusNode(complex(params.c) ** 2),
        )
    )


def f_core_eval(a: float, z):
    """The quadratic core F(z) = (z1^2 + 2 sqrt(1-a^2) z2)/(2 - a^2); F(a l, b l^2) = l^2."""
    a = float(a)
    if not (0.0 < a < 1.0):
        raise InvalidParameter("a must lie in (0, 1)")
    z = np.asarray(z, dtype=complex)
    if np.any(np.sum(np.abs(z) ** 2, axis=-1) > 1.0 + 1e-9):
        raise DomainViolation("points must lie in the closed ball")
    b = np.sqrt(1.0 - a * a)
    out = (z[..., 0] ** 2 + 2.0 * b * z[..., 1]) / (2.0 - a * a)
    return complex(out) if out.ndim == 0 else out


def f_epsilon_eval(params: FEpsilonParams, z):
    """F_eps = F / sqrt(1 - eps^2 (b z1^2 - a^2 z2)^2 / (2-a^2)^2), principal root.

    Agrees with the core on the curve (a lam, b lam^2) and still maps the
    ball into the disc for every eps in [0, 1).
    """
    a, eps = params.a, params.epsilon
    b = np.sqrt(1.0 - a * a)
    z = np.asarray(z, dtype=complex)
    if np.any(np.sum(np.abs(z) ** 2, axis=-1) > 1.0 + 1e-9):
        raise DomainViolation("points must lie in the closed ball")
    core = (z[..., 0] ** 2 + 2.0 * b * z[..., 1]) / (2.0 - a * a)
    g = b * z[..., 0] ** 2 - a * a * z[..., 1]
    rad = 1.0 - (eps * g / (2.0 - a * a)) ** 2
    out = core / np.sqrt(rad + 0j)
    return complex(out) if out.ndim == 0 else out


def phi_map(p: PhiPoint):
    """Phi(x, y, a, U, c) = (phi(x), phi(y), [x m_gamma(x) : y m_gamma(y)])."""
    g = p.params.gamma
    z = phi_eval(p.params, p.x)
    w = phi_eval(p.params, p.y)
    xi = (p.x * mobius_eval(g, p.x), p.y * mobius_eval(g, p.y))
    return z, w, xi


# ---------------------------------------------------------------------------
# numerical inversion of Phi

@dataclass(frozen=True)
class InvertConfig:
    tol: float = 1e-9
    starts: int = 36
    seed: int = 0
    max_nfev: int = 700


def normalize_projective(xi):
    """Unit-norm representative with the first nonzero component real positive."""
    v = np.array([complex(xi[0]), complex(xi[1])])
    n = np.linalg.norm(v)
    if n < 1e-15:
        raise InvalidParameter("projective point must be nonzero")
    v = v / n
    lead = v[0] if abs(v[0]) > 1e-14 else v[1]
    return v * (np.conj(lead) / abs(lead))


def fubini_study(xi1, xi2) -> float:
    """Chordal Fubini-Study distance between two points of the projective line."""
    u, v = normalize_projective(xi1), normalize_projective(xi2)
    return float(np.sqrt(max(0.0, 1.0 - abs(np.vdot(u, v)) ** 2)))


def _clip_disc(v, cap=1.0 - 1e-9):
    r = abs(v)
    return v if r <= cap else v * (cap / r)


def _phi_from_vector(p):
    xr, xi_, yr, yi_, a, th, al, be, de, c = p
    x = _clip_disc(complex(xr, xi_))
    y = _clip_disc(complex(yr, yi_))
    u = unitary_from_params(th, al, be, de)
    params = GeodesicParams(a=float(np.clip(a, 1e-9, 1 - 1e-9)), u=u, c=float(np.clip(c, -1 + 1e-9, 1 - 1e-9)))
    return x, y, params


def _residual(p, z, w, xi_n):
    x, y, params = _phi_from_vector(p)
    g = params.gamma
    rz = phi_eval(params, x) - z
    rw = phi_eval(params, y) - w
    sx = x * mobius_eval(g, x)
    sy = y * mobius_eval(g, y)
    cross = xi_n[1] * sx - xi_n[0] * sy
    return np.array(
        [rz[0].real, rz[0].imag, rz[1].real, rz[1].imag,
         rw[0].real, rw[0].imag, rw[1].real, rw[1].imag,
         cross.real, cross.imag]
    )


def canonical_phi_point(x, y, params: GeodesicParams) -> PhiPoint:
    """Quotient the symmetries of the chart: c >= 0, and x > 0 when c = 0.

    For c != 0 only the sign symmetry (x, y, c) -> (-x, -y, -c) remains and
    c >= 0 picks a representative.  At c = 0 the chart acquires a full
    circle of gauges (rotate lam, absorb the phases into U); rotating x
    onto the positive real axis fixes it, and subsumes the sign flip.
    """
    if params.c < -1e-12:
        # (x, y, c, U) -> (-x, -y, -c, U diag(-1, 1)) leaves Phi unchanged
        x, y = -x, -y
        flip = params.u @ np.diag([-1.0, 1.0])
        params = GeodesicParams(a=params.a, u=flip, c=-params.c)
    if abs(params.c) <= 1e-12:
        ph = np.exp(1j * np.angle(x))
        u = params.u @ np.diag([ph, ph * ph])
        x, y = x / ph, y / ph
        params = GeodesicParams(a=params.a, u=u, c=params.c)
    return PhiPoint(x=x, y=y, params=params)


def _seed_xy(z, w, a, u, c):
    """Approximate disc preimages of z, w for a candidate (a, U, c)."""
    anchor = u @ np.array([a * c, np.sqrt(1 - a * a) * c * c], dtype=complex)
    out = []
    for pt in (z, w):
        inner = -pt if np.linalg.norm(anchor) < 1e-15 else chi_eval(anchor, pt)
        v = u.conj().T @ inner
        mc = _clip_disc(v[0] / a)
        out.append(_clip_disc(mobius_eval(c, mc)))
    return out


def invert_phi(z, w, xi, cfg: InvertConfig | None = None) -> PhiPoint:
    """Recover the canonical chart point mapping to (z, w, [sigma : tau]).

    Damped multi-start least squares on the 10 real parameters; raises
    NoConvergence when no start reaches cfg.tol (typically the datum is
    degenerate or colinear and outside the chart range).
    """
    cfg = cfg or InvertConfig()
    z = check_ball_point(z, strict=True, what="z")
    w = check_ball_point(w, strict=True, what="w")
    xi_n = normalize_projective(xi)

    lo = np.array([-1, -1, -1, -1, 1e-6, -10, -10, -10, -10, -1 + 1e-6], dtype=float)
    hi = np.array([1, 1, 1, 1, 1 - 1e-6, 10, 10, 10, 10, 1 - 1e-6], dtype=float)

    rng = np.random.default_rng(cfg.seed)
    u_seeds = [
        (0.0, 0.0, 0.0, 0.0),
        (0.7, 0.0, 0.4, -0.9),
        (1.3, 0.0, -1.1, 0.6),
    ]
    seeds = []
    for c0 in (0.0, 0.4, -0.4, 0.7, -0.7):
        for a0 in (0.3, 0.6, 0.85):
            for up in u_seeds[:2]:
                seeds.append((a0, c0, up))
    while len(seeds) < cfg.starts:
        seeds.append(
            (
                float(rng.uniform(0.1, 0.9)),
                float(rng.uniform(-0.8, 0.8)),
                tuple(rng.uniform(-np.pi, np.pi, size=4)),
            )
        )
    seeds = seeds[: max(cfg.starts, 1)]

    for a0, c0, up in seeds:
        u0 = unitary_from_params(*up)
        x0, y0 = _seed_xy(z, w, a0, u0, c0)
        if abs(x0 - y0) < 1e-6:
            y0 = _clip_disc(y0 + 0.05)
        p0 = np.array(
            [x0.real, x0.imag, y0.real, y0.imag, a0, up[0], up[1], up[2], up[3], c0]
        )
        p0 = np.clip(p0, lo + 1e-12, hi - 1e-12)
        res = least_squares(
            _residual, p0, args=(z, w, xi_n), bounds=(lo, hi),
            xtol=3e-16, ftol=3e-16, gtol=1e-15,
            max_nfev=min(150, cfg.max_nfev),
        )
        # restarting resets the trust region; this rescues runs that stall
        # within sight of a root but crawl with tiny steps
        r = float(np.linalg.norm(res.fun))
        polish = 0
        while 1e-13 < r < 1e-3 and polish < 3:
            res = least_squares(
                _residual, res.x, args=(z, w, xi_n), bounds=(lo, hi),
                xtol=3e-16, ftol=3e-16, gtol=1e-15, max_nfev=cfg.max_nfev,
            )
            r_new = float(np.linalg.norm(res.fun))
            polish += 1
            if r_new > 0.5 * r:
                r = r_new
                break
            r = r_new
        x, y, params = _phi_from_vector(res.x)
        if abs(x) < 1e-9 or abs(y) < 1e-9 or abs(x - y) < 1e-9:
            continue
        zz, ww, xi_m = phi_map(PhiPoint(x=x, y=y, params=params))
        # compare directions by phase-aligned difference: the chordal
        # distance has a square-root cancellation floor near 1e-8 that
        # would make acceptance at tight tolerances a coin flip
        metric = max(
            float(np.linalg.norm(zz - z)),
            float(np.linalg.norm(ww - w)),
            float(np.linalg.norm(normalize_projective(xi_m) - xi_n)),
        )
        if metric < cfg.tol:
            return canonical_phi_point(x, y, params)
    raise NoConvergence("no start converged; datum is likely degenerate or colinear")
