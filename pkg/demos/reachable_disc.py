"""The degenerate map family and its reachable disc.

Every holomorphic map F of the two-dimensional complex unit ball into the
unit disc that fixes the slice {(lam, 0)} pointwise belongs to a closed
two-parameter family F_{tau,omega}.  At any other point w of the ball, the
set of values {F(w)} swept by the family is a closed disc -- the image under
the Mobius map m_{w1} of a disc of explicitly known radius.

This script samples the family densely at one point and compares the swept
set with the closed-form description.
"""

import numpy as np

from ballpick import DegenerateParams, b_disc, b_member, f_tau_omega_eval, mobius_eval

w = np.array([0.3, 0.6], dtype=complex)
disc = b_disc(w)
print(f"point w = {w}")
print(f"reachable set = m_{{{disc.center_param}}}(closed disc of radius {disc.radius:.6f})")

rng = np.random.default_rng(0)
vals = []
for _ in range(4000):
    tau = np.exp(1j * rng.uniform(0, 2 * np.pi))
    omega = np.sqrt(rng.uniform()) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    vals.append(f_tau_omega_eval(DegenerateParams(tau=tau, omega=omega), w))
vals = np.array(vals)

# pull the sampled values back through m_{w1}: they should fill the round disc
pulled = np.array([mobius_eval(disc.center_param, v) for v in vals])
print(f"max |m_w1(F(w))| over 4000 samples : {np.abs(pulled).max():.6f}")
print(f"closed-form radius                 : {disc.radius:.6f}")

print("\nmembership verdicts for a few candidate values:")
for s in (0.15, mobius_eval(0.3, disc.radius), 0.9):
    print(f"  sigma = {s:.6f} -> {b_member(w, s)}")
