"""Holomorphic geometry of the unit disc and the complex Euclidean ball.

Primitives used everywhere else in the package: idempotent Mobius maps of
the disc, Blaschke products of degree <= 2 in factored form, unitary
matrices, the involutive ball automorphisms chi_w, the Caratheodory
pseudodistances of disc and ball, and a small composition-tree language
(MapExpr) that represents disc/ball maps exactly so they can be
serialized and re-verified.

Sign conventions, fixed once and inherited by every other module:

    m_a(lam) = (a - lam) / (1 - conj(a) lam)

so m_a is an involution with m_a(0) = a, m_a(a) = 0, and in particular
m_0 = -id.  chi_w is the involutive ball automorphism exchanging 0 and w
whose two-dimensional special case is

    chi_{(w1,0)}(z) = (m_{w1}(z1), sqrt(1-|w1|^2) z2 / (1 - conj(w1) z1)),

with chi_0 := -id.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ChainMismatch, DomainViolation, InvalidParameter

# Points with norm within BOUNDARY_TOL of 1 are accepted for boundary
# sampling; strict-interior checks use the same tolerance.
BOUNDARY_TOL = 1e-12


# ---------------------------------------------------------------------------
# scalar / vector helpers

def complex_to_json(z):
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(v):
    return complex(v[0], v[1])


def vector_to_json(z):
    return [complex_to_json(c) for c in np.asarray(z, dtype=complex)]


def vector_from_json(v):
    return np.array([complex_from_json(c) for c in v], dtype=complex)


def check_disc_point(lam, tol=BOUNDARY_TOL, strict=False, what="point"):
    lam = complex(lam)
    r = abs(lam)
    if not np.isfinite(r):
        raise DomainViolation(f"{what} is not finite")
    if strict:
        if r >= 1.0 - tol:
            raise DomainViolation(f"{what} must lie strictly inside the unit disc (|.| = {r})")
    elif r > 1.0 + tol:
        raise DomainViolation(f"{what} lies outside the closed unit disc (|.| = {r})")
    return lam


def check_ball_point(z, tol=BOUNDARY_TOL, strict=False, what="point"):
    z = np.asarray(z, dtype=complex)
    if z.ndim != 1:
        raise DomainViolation(f"{what} must be a vector")
    r = float(np.linalg.norm(z))
    if not np.isfinite(r):
        raise DomainViolation(f"{what} is not finite")
    if strict:
        if r >= 1.0 - tol:
            raise DomainViolation(f"{what} must lie strictly inside the unit ball (||.|| = {r})")
    elif r > 1.0 + tol:
        raise DomainViolation(f"{what} lies outside the closed unit ball (||.|| = {r})")
    return z


# ---------------------------------------------------------------------------
# Mobius maps and Caratheodory pseudodistances

def mobius_eval(a, lam, tol=1e-9):
    """Evaluate the idempotent Mobius map m_a(lam) = (a - lam)/(1 - conj(a) lam).

    Requires |a| < 1 and |lam| <= 1 (closed disc).  m_a exchanges 0 and a
    and is its own inverse.
    """
    a = complex(a)
    if abs(a) >= 1.0:
        raise InvalidParameter(f"Mobius parameter must satisfy |a| < 1, got |a| = {abs(a)}")
    lam = check_disc_point(lam, tol=tol, what="Mobius argument")
    return (a - lam) / (1.0 - np.conj(a) * lam)


def carath_disc(x, y):
    """Caratheodory distance function of the disc: |x - y| / |1 - x conj(y)|."""
    x = check_disc_point(x, strict=True, what="disc point x")
    y = check_disc_point(y, strict=True, what="disc point y")
    return abs(x - y) / abs(1.0 - x * np.conj(y))


def carath_ball(w, z):
    """Caratheodory distance function of the ball.

    c*(w, z) = sqrt(1 - (1-||w||^2)(1-||z||^2) / |1 - <w,z>|^2).
    """
    w = check_ball_point(w, strict=True, what="ball point w")
    z = check_ball_point(z, strict=True, what="ball point z")
    ip = np.vdot(z, w)  # <w, z> = sum w_k conj(z_k)
    num = (1.0 - float(np.linalg.norm(w)) ** 2) * (1.0 - float(np.linalg.norm(z)) ** 2)
    val = 1.0 - num / abs(1.0 - ip) ** 2
    return float(np.sqrt(max(val, 0.0)))


def chi_eval(w, z, tol=BOUNDARY_TOL):
    """The involutive automorphism chi_w of the ball, exchanging 0 and w.

    chi_w(z) = (w - P_w z + s_w Q_w z) / (1 - <z, w>) with P_w the
    orthogonal projection onto span{w}, Q_w = I - P_w and
    s_w = sqrt(1 - ||w||^2).  chi_0 = -id.  The sign on the Q_w part is
    chosen so the map restricts to
    (m_{w1}(z1), s_w z2/(1 - conj(w1) z1)) when w = (w1, 0).
    """
    w = np.asarray(w, dtype=complex)
    nw = float(np.linalg.norm(w))
    if nw >= 1.0 - tol:
        raise InvalidParameter(f"chi parameter must lie strictly inside the ball, ||w|| = {nw}")
    z = check_ball_point(z, tol=tol, what="chi argument")
    if nw == 0.0:
        return -z
    ip = np.vdot(w, z)  # <z, w>
    s = np.sqrt(1.0 - nw**2)
    pz = (ip / nw**2) * w
    return (w - pz + s * (z - pz)) / (1.0 - ip)


def unitary_from_params(theta, alpha, beta, delta):
    """A surjective chart on the 2x2 unitary group.

    U = e^{i alpha} [[e^{i beta} cos(theta),  e^{i delta} sin(theta)],
                     [-e^{-i delta} sin(theta), e^{-i beta} cos(theta)]]

    (0,0,0,0) gives the identity.
    """
    ct, st = np.cos(theta), np.sin(theta)
    u = np.array(
        [
            [np.exp(1j * beta) * ct, np.exp(1j * delta) * st],
            [-np.exp(-1j * delta) * st, np.exp(-1j * beta) * ct],
        ],
        dtype=complex,
    )
    return np.exp(1j * alpha) * u


def is_unitary(u, tol=1e-12):
    u = np.asarray(u, dtype=complex)
    return bool(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))) < tol)


def random_unitary(rng, n=2):
    """Haar-ish random unitary from a QR factorization with fixed phase gauge."""
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(a)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


# ---------------------------------------------------------------------------
# Blaschke products

@dataclass(frozen=True, eq=False)
class BlaschkeProduct:
    """eta * prod_i m_{a_i} with |eta| = 1 and at most two zeros a_i in the disc.

    Note the factor convention: the zeros of the product are the points a_i,
    since m_{a_i}(a_i) = 0, and B(0) = eta * prod a_i.
    """

    eta: complex
    zeros: tuple = ()

    def __post_init__(self):
        eta = complex(self.eta)
        if abs(abs(eta) - 1.0) > 1e-12:
            raise InvalidParameter(f"|eta| must equal 1, got {abs(eta)}")
        zeros = tuple(complex(a) for a in self.zeros)
        if len(zeros) > 2:
            raise InvalidParameter("at most two zeros supported")
        for a in zeros:
            if abs(a) >= 1.0:
                raise InvalidParameter(f"Blaschke zero must lie in the open disc, |a| = {abs(a)}")
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "zeros", zeros)

    @property
    def degree(self):
        return len(self.zeros)

    def __call__(self, lam):
        lam = check_disc_point(lam, what="Blaschke argument")
        out = self.eta
        for a in self.zeros:
            out *= (a - lam) / (1.0 - np.conj(a) * lam)
        return out

    def to_json(self):
        return {"eta": complex_to_json(self.eta), "zeros": [complex_to_json(a) for a in self.zeros]}

    @staticmethod
    def from_json(obj):
        return BlaschkeProduct(
            eta=complex_from_json(obj["eta"]),
            zeros=tuple(complex_from_json(a) for a in obj["zeros"]),
        )


def blaschke_eval(b: BlaschkeProduct, lam):
    return b(lam)


def blaschke_winding(b: BlaschkeProduct, samples=2048):
    """Winding number of B around 0 along the unit circle; equals the degree."""
    th = np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False)
    vals = np.array([b(np.exp(1j * t)) for t in th])
    dphase = np.angle(vals[np.r_[1:samples, 0]] / vals)
    return int(round(float(np.sum(dphase)) / (2.0 * np.pi)))


# ---------------------------------------------------------------------------
# MapExpr: exact composition chains

DISC = "disc"
BALL = "ball"


@dataclass(frozen=True, eq=False)
class MobiusNode:
    a: complex
    dom = DISC
    cod = DISC

    def apply(self, v):
        return mobius_eval(self.a, v)

    def to_json(self):
        return {"kind": "mobius", "a": complex_to_json(self.a)}


@dataclass(frozen=True, eq=False)
class ConjNode:
    """Multiplication by a unimodular constant eta."""

    eta: complex
    dom = DISC
    cod = DISC

    def __post_init__(self):
        if abs(abs(complex(self.eta)) - 1.0) > 1e-12:
            raise InvalidParameter("Conj factor must be unimodular")

    def apply(self, v):
        return self.eta * v

    def to_json(self):
        return {"kind": "conj", "eta": complex_to_json(self.eta)}


@dataclass(frozen=True, eq=False)
class UnitaryNode:
    u: np.ndarray
    dom = BALL
    cod = BALL

    def __post_init__(self):
        u = np.asarray(self.u, dtype=complex)
        if not is_unitary(u, tol=1e-10):
            raise InvalidParameter("matrix is not unitary")
        object.__setattr__(self, "u", u)

    def apply(self, v):
        return self.u @ v

    def to_json(self):
        return {"kind": "unitary", "u": [vector_to_json(row) for row in self.u]}


@dataclass(frozen=True, eq=False)
class UnitaryInvNode(UnitaryNode):
    def apply(self, v):
        return self.u.conj().T @ v

    def to_json(self):
        return {"kind": "unitary_inv", "u": [vector_to_json(row) for row in self.u]}


@dataclass(frozen=True, eq=False)
class ChiNode:
    w: np.ndarray
    dom = BALL
    cod = BALL

    def __post_init__(self):
        object.__setattr__(self, "w", np.asarray(self.w, dtype=complex))

    def apply(self, v):
        return chi_eval(self.w, v)

    def to_json(self):
        return {"kind": "chi", "w": vector_to_json(self.w)}


@dataclass(frozen=True, eq=False)
class FCoreNode:
    """The quadratic left-inverse core F(z) = (z1^2 + 2 sqrt(1-a^2) z2)/(2 - a^2)."""

    a: float
    dom = BALL
    cod = DISC

    def apply(self, v):
        a = float(self.a)
        b = np.sqrt(1.0 - a * a)
        return (v[0] ** 2 + 2.0 * b * v[1]) / (2.0 - a * a)

    def to_json(self):
        return {"kind": "fcore", "a": float(self.a)}


@dataclass(frozen=True, eq=False)
class FTauOmegaNode:
    """Degenerate-family interpolant fixing the first-axis disc pointwise."""

    tau: complex
    omega: complex
    dom = BALL
    cod = DISC

    def apply(self, v):
        t, o = complex(self.tau), complex(self.omega)
        z1, z2 = v[0], v[1]
        num = 2.0 * z1 * (1.0 - t * z1) - np.conj(t) * o * o * z2 * z2
        den = 2.0 * (1.0 - t * z1) - o * o * z2 * z2
        return num / den

    def to_json(self):
        return {"kind": "ftauomega", "tau": complex_to_json(self.tau), "omega": complex_to_json(self.omega)}


@dataclass(frozen=True, eq=False)
class EmbedNode:
    """Disc to ball along a unit direction: lam -> lam * v."""

    v: np.ndarray
    dom = DISC
    cod = BALL

    def __post_init__(self):
        v = np.asarray(self.v, dtype=complex)
        if abs(np.linalg.norm(v) - 1.0) > 1e-10:
            raise InvalidParameter("embedding direction must be a unit vector")
        object.__setattr__(self, "v", v)

    def apply(self, lam):
        return lam * self.v

    def to_json(self):
        return {"kind": "embed", "v": vector_to_json(self.v)}


@dataclass(frozen=True, eq=False)
class ProjectNode:
    """Coordinate projection of the ball onto a disc coordinate."""

    index: int
    dom = BALL
    cod = DISC

    def apply(self, v):
        return complex(v[self.index])

    def to_json(self):
        return {"kind": "project", "index": int(self.index)}


@dataclass(frozen=True, eq=False)
class BlaschkeNode:
    """A factored Blaschke product as a disc-to-disc chain node."""

    b: BlaschkeProduct
    dom = DISC
    cod = DISC

    def apply(self, v):
        return self.b(v)

    def to_json(self):
        return {"kind": "blaschke", **self.b.to_json()}


@dataclass(frozen=True, eq=False)
class GeodesicCoreNode:
    """The normalized geodesic disc lam -> (a lam, sqrt(1-a^2) lam^2)."""

    a: float
    dom = DISC
    cod = BALL

    def apply(self, lam):
        a = float(self.a)
        b = np.sqrt(1.0 - a * a)
        return np.array([a * lam, b * lam * lam], dtype=complex)

    def to_json(self):
        return {"kind": "geodesic_core", "a": float(self.a)}


@dataclass(frozen=True, eq=False)
class TruncateNode:
    """Drop trailing ball coordinates (holomorphic coordinate projection)."""

    dim: int
    dom = BALL
    cod = BALL

    def apply(self, v):
        return np.asarray(v, dtype=complex)[: self.dim]

    def to_json(self):
        return {"kind": "truncate", "dim": int(self.dim)}


@dataclass(frozen=True, eq=False)
class PadNode:
    """Extend a ball point with trailing zero coordinates."""

    dim: int
    dom = BALL
    cod = BALL

    def apply(self, v):
        v = np.asarray(v, dtype=complex)
        out = np.zeros(self.dim, dtype=complex)
        out[: v.size] = v
        return out

    def to_json(self):
        return {"kind": "pad", "dim": int(self.dim)}


_NODE_KINDS = {
    "mobius": lambda o: MobiusNode(complex_from_json(o["a"])),
    "conj": lambda o: ConjNode(complex_from_json(o["eta"])),
    "unitary": lambda o: UnitaryNode(np.array([vector_from_json(r) for r in o["u"]])),
    "unitary_inv": lambda o: UnitaryInvNode(np.array([vector_from_json(r) for r in o["u"]])),
    "chi": lambda o: ChiNode(vector_from_json(o["w"])),
    "fcore": lambda o: FCoreNode(float(o["a"])),
    "ftauomega": lambda o: FTauOmegaNode(complex_from_json(o["tau"]), complex_from_json(o["omega"])),
    "embed": lambda o: EmbedNode(vector_from_json(o["v"])),
    "project": lambda o: ProjectNode(int(o["index"])),
    "blaschke": lambda o: BlaschkeNode(BlaschkeProduct.from_json(o)),
    "geodesic_core": lambda o: GeodesicCoreNode(float(o["a"])),
    "truncate": lambda o: TruncateNode(int(o["dim"])),
    "pad": lambda o: PadNode(int(o["dim"])),
}


@dataclass(frozen=True, eq=False)
class MapExpr:
    """An ordered chain of primitive holomorphic maps, applied left to right.

    The empty chain is the identity (on either domain).
    """

    nodes: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        self.validate()

    def validate(self):
        for prev, nxt in zip(self.nodes, self.nodes[1:]):
            if prev.cod != nxt.dom:
                raise ChainMismatch(
                    f"node {type(prev).__name__} produces {prev.cod} but "
                    f"{type(nxt).__name__} expects {nxt.dom}"
                )

    @property
    def domain(self):
        return self.nodes[0].dom if self.nodes else None

    @property
    def codomain(self):
        return self.nodes[-1].cod if self.nodes else None

    def __add__(self, other):
        return MapExpr(self.nodes + tuple(other.nodes))

    def __call__(self, point):
        return map_eval(self, point)

    def to_json(self):
        return [n.to_json() for n in self.nodes]

    @staticmethod
    def from_json(arr):
        nodes = []
        for obj in arr:
            kind = obj.get("kind")
            if kind not in _NODE_KINDS:
                raise InvalidParameter(f"unknown MapExpr node kind {kind!r}")
            nodes.append(_NODE_KINDS[kind](obj))
        return MapExpr(tuple(nodes))


def map_eval(expr: MapExpr, point):
    """Evaluate a composition chain at a disc point (complex) or ball point (vector)."""
    val = point
    if expr.nodes:
        first = expr.nodes[0]
        if first.dom == DISC and isinstance(point, np.ndarray):
            raise ChainMismatch("chain expects a disc point, got a vector")
        if first.dom == BALL and not isinstance(point, np.ndarray):
            val = np.asarray(point, dtype=complex)
            if val.ndim != 1:
                raise ChainMismatch("chain expects a ball point")
    for node in expr.nodes:
        val = node.apply(val)
    return val
