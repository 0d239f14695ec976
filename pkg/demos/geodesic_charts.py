"""Charts of extremal discs and their left inverses.

The non-degenerate extremal problems live on a family of analytic discs
phi_{a,U,c} through the origin.  Each disc admits an explicit left inverse
F~ with F~(phi(lam)) = lam * m_gamma(lam), a degree-2 Blaschke product.
Given two points and the projective direction of their target values, the
chart parameters can be recovered numerically.
"""

import numpy as np

from ballpick import (
    GeodesicParams,
    PhiPoint,
    canonical_phi_point,
    invert_phi,
    left_inverse,
    mobius_eval,
    phi_eval,
    phi_map,
    random_unitary,
)

rng = np.random.default_rng(1)
params = GeodesicParams(a=0.6, u=random_unitary(rng), c=0.4)
print(f"chart parameters: a = {params.a}, c = {params.c}, gamma = {params.gamma:.4f}")

fi = left_inverse(params)
print("\nleft-inverse identity F~(phi(lam)) = lam m_gamma(lam):")
for lam in (0.3, -0.2 + 0.5j):
    got = fi(phi_eval(params, lam))
    want = lam * mobius_eval(params.gamma, lam)
    print(f"  lam = {lam}: residual {abs(got - want):.2e}")

# forward: two disc points -> two ball points + target direction
pt = canonical_phi_point(0.45 - 0.1j, -0.3 + 0.2j, params)
z, w, xi = phi_map(pt)
print(f"\nforward data: z = {z}, w = {w}")

# backward: recover the canonical chart point from the data alone
rec = invert_phi(z, w, xi)
print("recovered parameters vs truth:")
print(f"  |a - a^|   = {abs(rec.params.a - pt.params.a):.2e}")
print(f"  |c - c^|   = {abs(rec.params.c - pt.params.c):.2e}")
print(f"  |x - x^|   = {abs(rec.x - pt.x):.2e}")
print(f"  |y - y^|   = {abs(rec.y - pt.y):.2e}")
print(f"  max |U-U^| = {np.max(np.abs(rec.params.u - pt.params.u)):.2e}")
