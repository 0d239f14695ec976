"""Extremal 3-point Nevanlinna-Pick interpolation in the complex unit ball.

Solve, classify, and certify extremal 3-point Pick problems B_n -> D:
reduction to a canonical form, the colinear / degenerate / non-degenerate
trichotomy, the unique extremal scaling t*, explicit certificates
(F, f, B) with F o f a Blaschke product of degree <= 2, and the two-pole
Caratheodory / Lempert functions of the ball.
"""

from .errors import (
    BallPickError,
    ChainMismatch,
    DegenerateFrame,
    DegenerateInput,
    DomainViolation,
    InconsistentData,
    InvalidParameter,
    NoConvergence,
    NoSolution,
    NotExtremal,
    OutsideB,
)
from .geometry import (
    BlaschkeProduct,
    MapExpr,
    blaschke_winding,
    carath_ball,
    carath_disc,
    chi_eval,
    mobius_eval,
    random_unitary,
    unitary_from_params,
)
from .discpick import (
    DiscPickData,
    Solvability,
    blaschke_through,
    disc_solvable,
    disc_tstar,
    pick_matrix,
)
from .normalize import (
    CanonicalProblem,
    Framing,
    PickProblem3,
    canonicalize,
    detect_colinear,
    pullback_disc,
    pullback_interpolant,
)
from .degenerate import (
    BDisc,
    DegenerateParams,
    b_disc,
    b_member,
    conjugate_params,
    f_tau_omega_eval,
    solve_tau_omega,
)
from .nondegenerate import (
    FEpsilonParams,
    GeodesicParams,
    InvertConfig,
    PhiPoint,
    canonical_phi_point,
    f_core_eval,
    f_epsilon_eval,
    gamma_of_c,
    invert_phi,
    left_inverse,
    phi_eval,
    phi_expr,
    phi_map,
)
from .solver import (
    Certificate,
    Classification,
    ScalingResult,
    SolverConfig,
    classify,
    compute_tstar,
    is_extremal,
    synthesize,
    verify_certificate,
)
from .green import (
    GreenResult,
    TwoPoleData,
    carath_two_pole,
    coman_check,
    green_report,
    lempert_two_pole,
)

__version__ = "1.0.0"
