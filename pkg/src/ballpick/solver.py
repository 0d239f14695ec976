"""Classification and certification of extremal 3-point ball Pick data.

Canonical data 0 -> 0, z -> sigma, w -> tau fall into three kinds:

    colinear      the nodes sit on one complex line through 0 and the
                  problem reduces to the disc;
    degenerate    some 2-point subproblem is already extremal and the
                  third value lies in its reachable closed disc;
    nondegenerate no 2-point subproblem is extremal; the datum sits on a
                  3-geodesic from the chart Phi.

compute_tstar finds the unique scaling t* of a target direction at which
the problem turns extremal; synthesize produces a certificate (F, f, B)
with F o f = B a non-constant Blaschke product of degree <= 2; and
verify_certificate re-checks a certificate numerically from scratch.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import (
    DegenerateInput,
    InconsistentData,
    InvalidParameter,
    NoConvergence,
    NotExtremal,
)
from .geometry import (
    BlaschkeProduct,
    BlaschkeNode,
    ChiNode,
    ConjNode,
    EmbedNode,
    FTauOmegaNode,
    MapExpr,
    MobiusNode,
    ProjectNode,
    UnitaryNode,
    carath_ball,
    carath_disc,
    check_ball_point,
    check_disc_point,
    chi_eval,
    mobius_eval,
)
from .degenerate import OUTSIDE, b_member, solve_tau_omega
from .discpick import DiscPickData, blaschke_through, disc_tstar
from .normalize import CanonicalProblem, detect_colinear
from .nondegenerate import InvertConfig, PhiPoint, invert_phi, left_inverse, phi_expr

COLINEAR = "colinear"
DEGENERATE = "degenerate"
NONDEGENERATE = "nondegenerate"

PAIR_0Z = "(0,z)"
PAIR_0W = "(0,w)"
PAIR_ZW = "(z,w)"

SUBEXTREMAL = "subextremal"
EXTREMAL = "extremal"
UNSOLVABLE = "unsolvable"

_TIE_RTOL = 1e-9


@dataclass(frozen=True)
class Classification:
    """Kind of the extremal datum; pair names the extremal 2-point subproblem."""

    kind: str
    pair: str | None = None

    def __post_init__(self):
        if self.kind not in (COLINEAR, DEGENERATE, NONDEGENERATE):
            raise InvalidParameter(f"unknown kind {self.kind!r}")
        if (self.kind == DEGENERATE) != (self.pair is not None):
            raise InvalidParameter("pair is set exactly for the degenerate kind")
        if self.pair is not None and self.pair not in (PAIR_0Z, PAIR_0W, PAIR_ZW):
            raise InvalidParameter(f"unknown pair {self.pair!r}")

    def to_json(self):
        out = {"kind": self.kind}
        if self.pair is not None:
            out["pair"] = self.pair
        return out


@dataclass(frozen=True)
class ScalingResult:
    tstar: float
    classification: Classification
    witnesses: dict = field(default_factory=dict)
    phi_point: PhiPoint | None = None


@dataclass(frozen=True)
class Certificate:
    """Extremality certificate: F o f = B with f through the nodes.

    preimages aligns with the node order (0, z, w); an entry is None when
    the disc f misses that node (allowed for degree-1 certificates, which
    pass through two nodes only).
    """

    F: MapExpr
    f: MapExpr
    B: BlaschkeProduct
    preimages: tuple
    classification: Classification
    tstar: float

    def to_json(self):
        return {
            "tstar": self.tstar,
            "classification": self.classification.to_json(),
            "F": self.F.to_json(),
            "f": self.f.to_json(),
            "B": self.B.to_json(),
            "preimages": [
                None if p is None else [complex(p).real, complex(p).imag]
                for p in self.preimages
            ],
        }


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-9
    starts: int = 36
    samples: int = 200
    boundary_samples: int = 2000
    seed: int = 0

    def invert_config(self) -> InvertConfig:
        return InvertConfig(tol=self.tol, starts=self.starts, seed=self.seed)


def _frame_unitary(v):
    """2x2 unitary V with V v = (||v||, 0)."""
    v = np.asarray(v, dtype=complex)
    u = v / np.linalg.norm(v)
    return np.array([[np.conj(u[0]), np.conj(u[1])], [-u[1], u[0]]])


def _colinear_scaling(z, w, v, sigma, tau):
    lam1 = complex(np.vdot(v, z))
    lam2 = complex(np.vdot(v, w))
    return disc_tstar((0.0, lam1, lam2), (0.0, sigma, tau))


def _t_pair_third(pair, z, w, sigma, tau):
    """Frame the extremal pair onto the pinned axis; return (node, value, phase).

    The framed problem asks for a map G fixing the first-axis disc with
    G(node) = value; phase records the unimodular disc rotation used.
    """
    if pair == PAIR_0Z:
        vmat = _frame_unitary(z)
        phase = np.linalg.norm(z) / sigma
        phase = phase / abs(phase)
        return vmat @ w, phase * tau, phase, vmat
    if pair == PAIR_0W:
        vmat = _frame_unitary(w)
        phase = np.linalg.norm(w) / tau
        phase = phase / abs(phase)
        return vmat @ z, phase * sigma, phase, vmat
    # pair (z, w): move z to 0 first
    zeta = chi_eval(z, w)
    vmat = _frame_unitary(zeta)
    rho = float(np.linalg.norm(zeta))
    phase = rho / mobius_eval(sigma, tau)
    phase = phase / abs(phase)
    return vmat @ z, phase * sigma, phase, vmat


def _find_t_c(sigma, tau, c_zw):
    """Root of carath_disc(t sigma, t tau) = c*(z, w) on the admissible bracket."""
    if abs(sigma - tau) <= 1e-14 * max(abs(sigma), abs(tau), 1.0):
        return np.inf
    t_max = (1.0 - 1e-9) / max(abs(sigma), abs(tau))

    def h(t):
        return carath_disc(t * sigma, t * tau) - c_zw

    ts = np.linspace(0.0, t_max, 65)
    vals = [h(t) for t in ts]
    if not np.all(np.diff(vals) >= -1e-12):
        warnings.warn("pair distance not monotone in t; taking the smallest root")
    for k in range(64):
        if vals[k] < 0.0 <= vals[k + 1]:
            if vals[k + 1] == 0.0:
                return float(ts[k + 1])
            return float(brentq(h, ts[k], ts[k + 1], xtol=1e-15, rtol=1e-15))
    return np.inf


def compute_tstar(z, w, sigma, tau, cfg: SolverConfig | None = None) -> ScalingResult:
    """The unique t* > 0 making 0 -> 0, z -> t* sigma, w -> t* tau extremal.

    Branches: colinear nodes reduce to the disc; otherwise the binding
    2-point subproblem is found and its reachable-disc membership decides
    between the degenerate kind (t* = the pair's scaling) and the
    non-degenerate kind (t* read off the inverted chart point).
    """
    cfg = cfg or SolverConfig()
    z = check_ball_point(z, strict=True, what="z")
    w = check_ball_point(w, strict=True, what="w")
    sigma, tau = complex(sigma), complex(tau)
    if abs(sigma) < 1e-15 and abs(tau) < 1e-15:
        raise InvalidParameter("sigma and tau must not both vanish")
    if np.linalg.norm(z) < 1e-12 or np.linalg.norm(w) < 1e-12 or np.linalg.norm(z - w) < 1e-12:
        raise DegenerateInput("nodes 0, z, w must be pairwise distinct")

    v = detect_colinear(z, w)
    if v is not None:
        t = _colinear_scaling(z, w, v, sigma, tau)
        return ScalingResult(
            tstar=float(t),
            classification=Classification(kind=COLINEAR),
            witnesses={"direction": v},
        )

    t_a = np.linalg.norm(z) / abs(sigma) if abs(sigma) > 1e-15 else np.inf
    t_b = np.linalg.norm(w) / abs(tau) if abs(tau) > 1e-15 else np.inf
    c_zw = carath_ball(z, w)
    t_c = _find_t_c(sigma, tau, c_zw)

    pairs = {PAIR_0Z: t_a, PAIR_0W: t_b, PAIR_ZW: t_c}
    t_min = min(pairs.values())
    attaining = [p for p, t in pairs.items() if t <= t_min * (1.0 + _TIE_RTOL)]
    witnesses = {"t_A": float(t_a), "t_B": float(t_b), "t_C": float(t_c)}

    if len(attaining) == 1:
        pair = attaining[0]
        node3, value3, _, _ = _t_pair_third(pair, z, w, t_min * sigma, t_min * tau)
        membership = b_member(node3, value3, tol=cfg.tol)
        witnesses["membership"] = membership
        witnesses["pair"] = pair
        if membership != OUTSIDE:
            return ScalingResult(
                tstar=float(t_min),
                classification=Classification(kind=DEGENERATE, pair=pair),
                witnesses=witnesses,
            )
    else:
        # two non-colinear pairs binding together cannot both be extremal,
        # so the datum is not degenerate; fall through to the chart
        witnesses["tie"] = attaining

    point = invert_phi(z, w, (sigma, tau), cfg.invert_config())
    g = point.params.gamma
    readings = []
    if abs(sigma) > 1e-15:
        readings.append(abs(point.x * mobius_eval(g, point.x) / sigma))
    if abs(tau) > 1e-15:
        readings.append(abs(point.y * mobius_eval(g, point.y) / tau))
    if len(readings) == 2 and abs(readings[0] - readings[1]) > 1e-6:
        raise InconsistentData(
            f"chart t* readings disagree: {readings[0]} vs {readings[1]}"
        )
    tstar = float(np.mean(readings))
    witnesses["chart_readings"] = [float(r) for r in readings]
    return ScalingResult(
        tstar=tstar,
        classification=Classification(kind=NONDEGENERATE),
        witnesses=witnesses,
        phi_point=point,
    )


def classify(z, w, sigma, tau, cfg: SolverConfig | None = None) -> Classification:
    """Kind of the extremal problem in the direction [sigma : tau]."""
    return compute_tstar(z, w, sigma, tau, cfg).classification


def is_extremal(problem: CanonicalProblem, tol: float = 1e-8,
                cfg: SolverConfig | None = None) -> str:
    """Compare the given targets against the extremal scaling of their direction."""
    res = compute_tstar(problem.z, problem.w, problem.sigma, problem.tau, cfg)
    if 1.0 < res.tstar - tol:
        return SUBEXTREMAL
    if abs(res.tstar - 1.0) <= tol:
        return EXTREMAL
    return UNSOLVABLE


def _synthesize_colinear(z, w, sigma, tau, v, tstar):
    lam1 = complex(np.vdot(v, z))
    lam2 = complex(np.vdot(v, w))
    b = blaschke_through(DiscPickData((0.0, lam1, lam2), (0.0, sigma, tau)))
    vmat = _frame_unitary(v)
    big_f = MapExpr((UnitaryNode(vmat), ProjectNode(0), BlaschkeNode(b)))
    f = MapExpr((EmbedNode(v),))
    return Certificate(
        F=big_f, f=f, B=b, preimages=(0.0, lam1, lam2),
        classification=Classification(kind=COLINEAR), tstar=tstar,
    )


def _synthesize_degenerate(pair, z, w, sigma, tau, tstar):
    node3, value3, phase, vmat = _t_pair_third(pair, z, w, sigma, tau)
    _, g_expr = solve_tau_omega(node3, value3)
    inv_phase = np.conj(phase)
    if pair == PAIR_0Z:
        big_f = MapExpr((UnitaryNode(vmat),)) + g_expr + MapExpr((ConjNode(inv_phase),))
        f = MapExpr((EmbedNode(z / np.linalg.norm(z)),))
        b = BlaschkeProduct(eta=-inv_phase, zeros=(0.0,))
        preimages = (0.0, complex(np.linalg.norm(z)), None)
    elif pair == PAIR_0W:
        big_f = MapExpr((UnitaryNode(vmat),)) + g_expr + MapExpr((ConjNode(inv_phase),))
        f = MapExpr((EmbedNode(w / np.linalg.norm(w)),))
        b = BlaschkeProduct(eta=-inv_phase, zeros=(0.0,))
        preimages = (0.0, None, complex(np.linalg.norm(w)))
    else:
        zeta = chi_eval(z, w)
        rho = float(np.linalg.norm(zeta))
        big_f = (
            MapExpr((ChiNode(z), UnitaryNode(vmat)))
            + g_expr
            + MapExpr((ConjNode(inv_phase), MobiusNode(sigma)))
        )
        f = MapExpr((EmbedNode(zeta / rho), ChiNode(z)))
        b = BlaschkeProduct(eta=inv_phase, zeros=(phase * sigma,))
        preimages = (None, 0.0, rho)
    return Certificate(
        F=big_f, f=f, B=b, preimages=preimages,
        classification=Classification(kind=DEGENERATE, pair=pair), tstar=tstar,
    )


def _synthesize_nondegenerate(point: PhiPoint, sigma, tstar):
    params = point.params
    g = params.gamma
    kappa = point.x * mobius_eval(g, point.x) / sigma
    eta = kappa / abs(kappa)
    big_f = left_inverse(params) + MapExpr((ConjNode(np.conj(eta)),))
    f = phi_expr(params)
    b = BlaschkeProduct(eta=-np.conj(eta), zeros=(0.0, g))
    return Certificate(
        F=big_f, f=f, B=b, preimages=(0.0, point.x, point.y),
        classification=Classification(kind=NONDEGENERATE), tstar=tstar,
    )


def synthesize(z, w, sigma, tau, cfg: SolverConfig | None = None,
               rescale: bool = True) -> Certificate:
    """Certificate (F, f, B) for the extremal problem in the direction [sigma : tau].

    If the given targets are not already extremal they are rescaled to the
    extremal values t* (sigma, tau); with rescale=False a non-extremal
    datum raises NotExtremal instead.
    """
    cfg = cfg or SolverConfig()
    res = compute_tstar(z, w, sigma, tau, cfg)
    if abs(res.tstar - 1.0) > 1e-8:
        if not rescale:
            raise NotExtremal(f"targets sit at scaling t* = {res.tstar}, not 1")
        sigma, tau = res.tstar * complex(sigma), res.tstar * complex(tau)
    z = check_ball_point(z, strict=True, what="z")
    w = check_ball_point(w, strict=True, what="w")

    kind = res.classification.kind
    if kind == COLINEAR:
        return _synthesize_colinear(z, w, sigma, tau, res.witnesses["direction"], res.tstar)
    if kind == DEGENERATE:
        return _synthesize_degenerate(res.classification.pair, z, w, sigma, tau, res.tstar)
    point = res.phi_point
    if point is None:
        point = invert_phi(z, w, (sigma, tau), cfg.invert_config())
    return _synthesize_nondegenerate(point, sigma, res.tstar)


def verify_certificate(cert: Certificate, problem: CanonicalProblem,
                       cfg: SolverConfig | None = None) -> dict:
    """Re-check a certificate against its problem from scratch.

    Reports interpolation residuals at the nodes, the identity F o f = B on
    random disc samples, boundedness of |F| on random sphere samples, and
    the degree constraints on B.
    """
    cfg = cfg or SolverConfig()
    rng = np.random.default_rng(cfg.seed)
    nodes = (np.zeros(2, dtype=complex), problem.z, problem.w)
    targets = (0.0, problem.sigma, problem.tau)

    node_res = max(abs(cert.F(nd) - complex(tg)) for nd, tg in zip(nodes, targets))
    pre_res = 0.0
    covered = 0
    for nd, lam in zip(nodes, cert.preimages):
        if lam is None:
            continue
        covered += 1
        pre_res = max(pre_res, float(np.linalg.norm(cert.f(complex(lam)) - nd)))

    lams = np.sqrt(rng.uniform(0.0, 1.0, cfg.samples)) * np.exp(
        2j * np.pi * rng.uniform(0.0, 1.0, cfg.samples)
    )
    comp_res = max(abs(cert.F(cert.f(complex(l))) - cert.B(complex(l))) for l in lams)

    raw = rng.normal(size=(cfg.boundary_samples, 4))
    raw /= np.linalg.norm(raw, axis=1, keepdims=True)
    boundary_max = 0.0
    for row in raw:
        pt = np.array([row[0] + 1j * row[1], row[2] + 1j * row[3]])
        boundary_max = max(boundary_max, abs(cert.F(pt)))

    ok = (
        node_res < cfg.tol * 10
        and pre_res < cfg.tol * 10
        and comp_res < cfg.tol * 10
        and boundary_max <= 1.0 + 1e-9
        and 1 <= cert.B.degree <= 2
        and covered >= 2
    )
    return {
        "node_residual": float(node_res),
        "preimage_residual": float(pre_res),
        "composition_residual": float(comp_res),
        "boundary_max": float(boundary_max),
        "degree": cert.B.degree,
        "nonconstant": cert.B.degree >= 1,
        "nodes_covered": covered,
        "pass": bool(ok),
    }
