"""Classical 3-point Nevanlinna-Pick machinery in the unit disc.

Pick matrix, solvability classification, the unique extremal scaling of a
target direction, and construction of the degree <= 2 Blaschke interpolant
by Schur reduction.  This is the workhorse of the colinear branch of the
ball solver and of certificate generation.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, NoConvergence, NoSolution, NotExtremal
from .geometry import BlaschkeProduct, carath_disc, check_disc_point, mobius_eval

_SEPARATION = 1e-12


class Solvability(enum.Enum):
    SOLVABLE = "solvable"
    EXTREMAL = "extremal"
    UNSOLVABLE = "unsolvable"


@dataclass(frozen=True)
class DiscPickData:
    """Three pairwise distinct nodes in the disc with three disc targets."""

    nodes: tuple
    targets: tuple

    def __post_init__(self):
        nodes = tuple(check_disc_point(x, strict=True, what="node") for x in self.nodes)
        targets = tuple(check_disc_point(t, strict=True, what="target") for t in self.targets)
        if len(nodes) != 3 or len(targets) != 3:
            raise InvalidParameter("exactly three nodes and three targets required")
        for i in range(3):
            for j in range(i + 1, 3):
                if abs(nodes[i] - nodes[j]) <= _SEPARATION:
                    raise InvalidParameter("nodes must be pairwise distinct")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "targets", targets)


def pick_matrix(data: DiscPickData) -> np.ndarray:
    """Hermitian Pick matrix M_ij = (1 - l_i conj(l_j)) / (1 - x_i conj(x_j))."""
    x = np.asarray(data.nodes, dtype=complex)
    l = np.asarray(data.targets, dtype=complex)
    num = 1.0 - np.outer(l, l.conj())
    den = 1.0 - np.outer(x, x.conj())
    m = num / den
    return 0.5 * (m + m.conj().T)  # symmetrize away roundoff


def disc_solvable(data: DiscPickData, tol: float | None = None) -> Solvability:
    """Classify solvability by the smallest eigenvalue of the Pick matrix."""
    m = pick_matrix(data)
    if tol is None:
        tol = 1e-10 * float(np.trace(m).real)
    emin = float(np.linalg.eigvalsh(m)[0])
    if emin > tol:
        return Solvability.SOLVABLE
    if emin >= -tol:
        return Solvability.EXTREMAL
    return Solvability.UNSOLVABLE


def _min_eig_at(nodes, direction, t):
    data = DiscPickData(nodes, tuple(t * s for s in direction))
    return float(np.linalg.eigvalsh(pick_matrix(data))[0])


def disc_tstar(nodes, direction, tol: float = 1e-13) -> float:
    """The unique t* > 0 making targets t* * direction extremal.

    Bisection on the smallest Pick eigenvalue over [0, min 1/|sigma_j|).
    """
    nodes = tuple(check_disc_point(x, strict=True, what="node") for x in nodes)
    direction = tuple(complex(s) for s in direction)
    mags = [abs(s) for s in direction if abs(s) > 0]
    if not mags:
        raise InvalidParameter("direction must not be identically zero")
    t_hi = (1.0 - 1e-9) / max(mags)
    t_lo = 0.0
    f_lo = _min_eig_at(nodes, direction, t_lo)
    f_hi = _min_eig_at(nodes, direction, t_hi)
    if f_lo <= 0.0:
        raise NoConvergence("Pick matrix not positive definite at t = 0")
    if f_hi > 0.0:
        raise NoConvergence("no sign change of the smallest eigenvalue on the bracket")
    while t_hi - t_lo > tol:
        t_mid = 0.5 * (t_lo + t_hi)
        if _min_eig_at(nodes, direction, t_mid) > 0.0:
            t_lo = t_mid
        else:
            t_hi = t_mid
    t_star = 0.5 * (t_lo + t_hi)
    # the eigenvalue should decrease through the root; warn if it does not
    h = max(1e-7, 10 * tol)
    if t_star - h > 0 and t_star + h < (1.0 - 1e-9) / max(mags):
        if _min_eig_at(nodes, direction, t_star - h) < _min_eig_at(nodes, direction, t_star + h):
            warnings.warn("smallest Pick eigenvalue not decreasing at the bisection root")
    return t_star


# ---------------------------------------------------------------------------
# Blaschke interpolant by Schur reduction

def _mobius_matrix(a):
    # m_a(t) = (a - t)/(1 - conj(a) t)  as a linear-fractional matrix [[p,q],[r,s]]
    return np.array([[-1.0, a], [-np.conj(a), 1.0]], dtype=complex)


def _lf_num_den(mat):
    # ascending coefficient arrays of numerator / denominator of (p t + q)/(r t + s)
    (p, q), (r, s) = mat
    return np.array([q, p]), np.array([s, r])


def blaschke_through(data: DiscPickData, tol: float = 1e-10) -> BlaschkeProduct:
    """The degree <= 2 Blaschke product through an extremal 3-point datum.

    Normalizes node 1 to 0 -> 0, writes B = lam * C(lam) and solves the
    residual 2-point problem for a degree <= 1 factor C.
    """
    if disc_solvable(data) is Solvability.UNSOLVABLE:
        raise NoSolution("datum is unsolvable")
    if disc_solvable(data) is Solvability.SOLVABLE:
        raise NotExtremal("Pick matrix is positive definite; no rigid interpolant")
    x1, x2, x3 = data.nodes
    l1, l2, l3 = data.targets
    n2, n3 = mobius_eval(x1, x2), mobius_eval(x1, x3)
    c2, c3 = mobius_eval(l1, l2) / n2, mobius_eval(l1, l3) / n3
    if abs(c2) > 1.0 + 1e-9 or abs(c3) > 1.0 + 1e-9:
        raise NoSolution("residual 2-point targets escape the closed disc")

    boundary2 = abs(c2) >= 1.0 - 1e-9
    boundary3 = abs(c3) >= 1.0 - 1e-9
    if boundary2 or boundary3:
        # Schwarz: a boundary value forces C constant unimodular
        if not (boundary2 and boundary3 and abs(c2 - c3) < 1e-8):
            raise NoSolution("residual 2-point problem infeasible at tolerance")
        eta0 = c2 / abs(c2)
        mat_c_nu = np.array([[0.0, eta0], [0.0, 1.0]], dtype=complex)
    else:
        # residual problem must itself be extremal: match hyperbolic distances
        theta = np.angle(mobius_eval(c2, c3)) - np.angle(mobius_eval(n2, n3))
        rot = np.array([[np.exp(1j * theta), 0.0], [0.0, 1.0]], dtype=complex)
        mat_c = _mobius_matrix(c2) @ rot @ _mobius_matrix(n2)
        mat_c_nu = mat_c @ _mobius_matrix(x1)

    # P(lam) = nu(lam) * C(nu(lam)); then B = m_{l1} o P
    n_nu, d_nu = _lf_num_den(_mobius_matrix(x1))
    n_c, d_c = _lf_num_den(mat_c_nu)
    n_p = np.polynomial.polynomial.polymul(n_nu, n_c)
    d_p = np.polynomial.polynomial.polymul(d_nu, d_c)
    deg = max(len(n_p), len(d_p))
    n_p = np.pad(n_p, (0, deg - len(n_p)))
    d_p = np.pad(d_p, (0, deg - len(d_p)))
    n_b = l1 * d_p - n_p
    d_b = d_p - np.conj(l1) * n_p

    scale = float(np.max(np.abs(n_b)))
    coeffs = np.where(np.abs(n_b) > 1e-10 * scale, n_b, 0.0)
    coeffs = np.trim_zeros(coeffs, "b")
    zeros = np.polynomial.polynomial.polyroots(coeffs) if len(coeffs) > 1 else np.array([])
    if np.any(np.abs(zeros) >= 1.0):
        raise NoSolution("interpolant zeros escape the disc")

    pt = 0.3141 + 0.2718j
    while min((abs(pt - z) for z in zeros), default=1.0) < 1e-3:
        pt *= 0.7
    val = np.polynomial.polynomial.polyval(pt, n_b) / np.polynomial.polynomial.polyval(pt, d_b)
    ref = np.prod([mobius_eval(z, pt) for z in zeros]) if len(zeros) else 1.0
    eta = val / ref
    if abs(abs(eta) - 1.0) > 1e-8:
        raise NoSolution("leading factor is not unimodular; datum is not rigid")
    b = BlaschkeProduct(eta=eta / abs(eta), zeros=tuple(zeros))

    for x, l in zip(data.nodes, data.targets):
        if abs(b(x) - l) > tol:
            raise NoSolution(f"constructed product misses a node by {abs(b(x) - l)}")
    return b
