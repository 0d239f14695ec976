"""Classify, scale, and certify 3-point extremal interpolation problems.

A datum (0 -> 0, z -> sigma, w -> tau) admits a unique scaling t* making the
problem extremal.  The solver classifies the extremal kind (colinear /
degenerate / non-degenerate), computes t*, and produces a certificate
(F, f, B): an analytic disc f, a map F to the unit disc, and a Blaschke
product B with F o f = B, interpolating the scaled data.
"""

import numpy as np

from ballpick import CanonicalProblem, SolverConfig, compute_tstar, synthesize, verify_certificate

EXAMPLES = [
    ("degenerate", [0.5, 0.0], [0.3, 0.6], 1.0, 0.3),
    ("colinear", [0.5, 0.0], [-0.5, 0.0], 0.25, 0.25),
    ("tie of two pairs", [0.5, 0.0], [0.0, 0.5], 1.0, 1.0),
]

cfg = SolverConfig(seed=0)
for name, z, w, sigma, tau in EXAMPLES:
    z = np.array(z, dtype=complex)
    w = np.array(w, dtype=complex)
    res = compute_tstar(z, w, sigma, tau, cfg)
    print(f"[{name}]")
    print(f"  classification : {res.classification.kind}"
          + (f" (pair {res.classification.pair})" if res.classification.pair else ""))
    print(f"  t*             : {res.tstar:.10f}")

    cert = synthesize(z, w, sigma, tau, cfg)
    scaled = CanonicalProblem(z=z, w=w, sigma=cert.tstar * sigma, tau=cert.tstar * tau)
    rep = verify_certificate(cert, scaled, cfg)
    print(f"  B degree       : {cert.B.degree}")
    print(f"  verification   : pass={rep['pass']}, "
          f"composition residual {rep['composition_residual']:.2e}, "
          f"boundary max {rep['boundary_max']:.12f}")
    print()
