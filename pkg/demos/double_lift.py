"""
Lifting to the double
=====================

Every interior point lifts to a pair (A, B) of special unitary matrices
whose group commutator is the fixed diagonal matrix mu0.  The spectra of A
and B give back the actions and the positions.
"""

import numpy as np

from rscompact import matkernel as mk
from rscompact import qh_double as qd
from rscompact import rs_classical as rc

params = rc.derive_params(4, 3, 0.5)
rng = np.random.default_rng(3)
p = rc.sample_interior(params, rng)

D, v = qd.lift_to_double(p, params)
target = qd.mu0(params.n, params.y).value
print("|mu(A, B) - mu0| =", np.abs(qd.moment_map(D) - target).max())
print("constraint residual:", qd.constraint_residual(p, params))

# The spectral functions of A and B, scaled by 2/a.
xa, _ = mk.alcove_reduce(D.A)
xb, _ = mk.alcove_reduce(D.B)
print("2/a xi(A):", 2 / params.a * xa[:-1])
print("actions:  ", rc.action_map(p, params))
print("2/a xi(B):", 2 / params.a * xb[:-1])
print("gamma:    ", p.gamma)

# The torus flows preserve the constraint and return after 2 pi.
moved = qd.torus_flow_alpha(D, 2, 1.0)
print("mu drift after alpha flow:", np.abs(qd.moment_map(moved) - target).max())
back = qd.torus_flow_beta(D, 1, 2 * np.pi)
print("beta flow after 2 pi:", np.abs(back.A - D.A).max())

# The 2-form satisfies the moment map condition up to the constant 2/a.
lhs, rhs = [], []
for _ in range(10):
    q = qd.random_double_point(3, rng)
    zeta = mk.random_su_algebra(3, rng)
    _, l, r = qd.axiom_a2_residual(q, zeta, qd.random_tangent(q, rng), params.a)
    lhs.append(l)
    rhs.append(r)
c, residual, spread = qd.fit_a2_normalization(lhs, rhs)
print("fitted ratio {:.12f}, 2/a = {:.12f}, spread {:.1e}".format(c, 2 / params.a, spread))
