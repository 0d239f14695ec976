"""Reduction of a 3-point ball Pick datum to the canonical form 0 -> 0, z -> sigma, w -> tau.

The third node is moved to the origin by an involutive automorphism, the
span of the remaining two nodes is rotated into the first two coordinates,
and the disc targets are normalized so the third target is 0 and sigma is
real-nonnegative.  The framing is recorded exactly (as composition chains)
so interpolants and analytic discs of the canonical problem can be pulled
back to the original datum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput, InvalidParameter
from .geometry import (
    ChiNode,
    ConjNode,
    MapExpr,
    MobiusNode,
    PadNode,
    TruncateNode,
    UnitaryInvNode,
    UnitaryNode,
    check_ball_point,
    check_disc_point,
    chi_eval,
    mobius_eval,
)

_SEPARATION = 1e-12


@dataclass(frozen=True)
class PickProblem3:
    """Three pairwise distinct nodes in B_n with three disc targets."""

    nodes: tuple
    targets: tuple

    def __post_init__(self):
        nodes = tuple(check_ball_point(z, strict=True, what="node") for z in self.nodes)
        # targets may sit on the unit circle: they double as direction data
        targets = tuple(check_disc_point(t, what="target") for t in self.targets)
        if len(nodes) != 3 or len(targets) != 3:
            raise InvalidParameter("exactly three nodes and three targets required")
        dims = {z.size for z in nodes}
        if len(dims) != 1:
            raise InvalidParameter("all nodes must have the same dimension")
        for i in range(3):
            for j in range(i + 1, 3):
                if np.linalg.norm(nodes[i] - nodes[j]) <= _SEPARATION:
                    raise DegenerateInput("nodes must be pairwise distinct")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "targets", targets)

    @property
    def dim(self):
        return self.nodes[0].size


@dataclass(frozen=True)
class CanonicalProblem:
    """The reduced datum in B_2: 0 -> 0, z -> sigma, w -> tau."""

    z: np.ndarray
    w: np.ndarray
    sigma: complex
    tau: complex

    def __post_init__(self):
        z = check_ball_point(self.z, strict=True, what="z")
        w = check_ball_point(self.w, strict=True, what="w")
        if z.size != 2 or w.size != 2:
            raise InvalidParameter("canonical nodes live in B_2")
        if np.linalg.norm(z) <= _SEPARATION or np.linalg.norm(w) <= _SEPARATION:
            raise DegenerateInput("canonical nodes must be nonzero")
        if np.linalg.norm(z - w) <= _SEPARATION:
            raise DegenerateInput("canonical nodes must be distinct")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "sigma", complex(self.sigma))
        object.__setattr__(self, "tau", complex(self.tau))


@dataclass(frozen=True)
class Framing:
    """Exact record of the reduction: ball automorphism, dimension reduction, disc automorphism."""

    ball_pre: MapExpr      # automorphism of B_n sending node 3 to 0
    dim_reduce: np.ndarray  # n x n unitary rotating the node span into C^2 x {0}
    target_post: MapExpr   # disc automorphism sending target 3 to 0, sigma >= 0
    dim: int

    def apply_node(self, z):
        v = self.dim_reduce @ self.ball_pre(np.asarray(z, dtype=complex))
        return v[:2]

    def apply_target(self, t):
        return self.target_post(complex(t))

    def target_post_inverse(self) -> MapExpr:
        nodes = []
        for node in reversed(self.target_post.nodes):
            if isinstance(node, MobiusNode):
                nodes.append(node)  # involution
            elif isinstance(node, ConjNode):
                nodes.append(ConjNode(np.conj(node.eta)))
            else:
                raise InvalidParameter("unexpected node in target framing")
        return MapExpr(tuple(nodes))

    def to_json(self):
        return {
            "ball_pre": self.ball_pre.to_json(),
            "dim_reduce": [[(c.real, c.imag) for c in row] for row in self.dim_reduce],
            "target_post": self.target_post.to_json(),
            "dim": self.dim,
        }


def _completed_unitary(e1, e2, n):
    """n x n unitary whose first rows are conj(e1), conj(e2); deterministic completion."""
    basis = [e1, e2]
    for k in range(n):
        v = np.zeros(n, dtype=complex)
        v[k] = 1.0
        for b in basis:
            v = v - np.vdot(b, v) * b
        nv = np.linalg.norm(v)
        if nv > 1e-8:
            basis.append(v / nv)
        if len(basis) == n:
            break
    return np.array([b.conj() for b in basis[:n]])


def canonicalize(problem: PickProblem3):
    """Reduce to the canonical B_2 datum; returns (CanonicalProblem, Framing)."""
    n = problem.dim
    n1, n2, n3 = problem.nodes
    t1, t2, t3 = problem.targets

    ball_pre = MapExpr((ChiNode(n3),))
    v1 = chi_eval(n3, n1)
    v2 = chi_eval(n3, n2)

    e1 = v1 / np.linalg.norm(v1)
    r2 = v2 - np.vdot(e1, v2) * e1
    if np.linalg.norm(r2) > 1e-10:
        e2 = r2 / np.linalg.norm(r2)
    else:
        # colinear images: complete deterministically from the standard basis
        e2 = None
        for k in range(n):
            cand = np.zeros(n, dtype=complex)
            cand[k] = 1.0
            cand = cand - np.vdot(e1, cand) * e1
            if np.linalg.norm(cand) > 1e-8:
                e2 = cand / np.linalg.norm(cand)
                break
    w_mat = _completed_unitary(e1, e2, n)

    sigma_raw = mobius_eval(t3, t1)
    tau_raw = mobius_eval(t3, t2)
    if abs(sigma_raw) > _SEPARATION:
        phase = np.conj(sigma_raw) / abs(sigma_raw)
    elif abs(tau_raw) > _SEPARATION:
        phase = np.conj(tau_raw) / abs(tau_raw)
    else:
        phase = 1.0
    target_post = MapExpr((MobiusNode(t3), ConjNode(phase)))

    framing = Framing(ball_pre=ball_pre, dim_reduce=w_mat, target_post=target_post, dim=n)
    z_c = framing.apply_node(n1)
    w_c = framing.apply_node(n2)
    canonical = CanonicalProblem(z=z_c, w=w_c, sigma=phase * sigma_raw, tau=phase * tau_raw)
    return canonical, framing


def pullback_interpolant(framing: Framing, f_canonical: MapExpr) -> MapExpr:
    """Conjugate a canonical interpolant F: B_2 -> D back to the original datum.

    Returns G = target_post^{-1} o F o truncate o dim_reduce o ball_pre, so
    G(original node_j) = original target_j whenever F solves the canonical
    problem.
    """
    pre = list(framing.ball_pre.nodes) + [UnitaryNode(framing.dim_reduce)]
    if framing.dim > 2:
        pre.append(TruncateNode(2))
    return MapExpr(tuple(pre) + tuple(f_canonical.nodes) + tuple(framing.target_post_inverse().nodes))


def pullback_disc(framing: Framing, disc_canonical: MapExpr) -> MapExpr:
    """Conjugate a canonical analytic disc f: D -> B_2 back to the original ball."""
    post = []
    if framing.dim > 2:
        post.append(PadNode(framing.dim))
    post.append(UnitaryInvNode(framing.dim_reduce))
    # ball_pre is an involution (a single chi node), so it is its own inverse
    post.extend(framing.ball_pre.nodes)
    return MapExpr(tuple(disc_canonical.nodes) + tuple(post))


def detect_colinear(z, w, tol: float = 1e-10):
    """Unit direction v with z, w both disc multiples of v, or None.

    Tests complex proportionality; invariant under a common unitary factor.
    """
    z = check_ball_point(z, strict=True, what="z")
    w = check_ball_point(w, strict=True, what="w")
    nz, nw = np.linalg.norm(z), np.linalg.norm(w)
    if nz <= _SEPARATION or nw <= _SEPARATION:
        raise InvalidParameter("nodes must be nonzero")
    if abs(abs(np.vdot(z, w)) - nz * nw) > tol:
        return None
    v = z / nz
    k = int(np.argmax(np.abs(v)))
    return v * (np.conj(v[k]) / abs(v[k]))
