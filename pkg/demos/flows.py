"""
Hamiltonian flows
=================

Integrate flows in Darboux coordinates with RK4 and watch the conserved
quantities.
"""

import numpy as np

from rscompact import rs_classical as rc

params = rc.derive_params(2, 3, 0.7)
p = rc.DarbouxPoint([2.3], [0.4])

H = lambda q: rc.local_hamiltonian(q, params)
traj = rc.flow_rk4(H, p, 1.0, 1e-3, params=params)
print("H flow: |dH| = {:.2e}, |d alpha| = {:.2e}".format(
    abs(H(traj.final) - H(p)),
    np.abs(rc.action_map(traj.final, params) - rc.action_map(p, params)).max()))

# The action variable generates a circle action with period 2 pi.
alpha = lambda q: rc.action_map(q, params)[0]
traj = rc.flow_rk4(alpha, p, 2 * np.pi, 2 * np.pi / 200, params=params)
gap = np.abs(traj.final.as_vector() - p.as_vector())
gap[1] = abs(np.angle(np.exp(1j * gap[1])))
print("alpha flow after 2 pi: distance {:.2e}".format(gap.max()))

# gamma_1 generates a translation of theta_1.
traj = rc.flow_rk4(lambda q: q.gamma[0], p, 0.5, 0.05, params=params)
print("gamma flow: theta goes from {:.3f} to {:.3f}".format(p.theta[0], traj.final.theta[0]))

# theta_1 pushes gamma_1 into a facet, where the chart ends.
traj = rc.flow_rk4(lambda q: q.theta[0], p, 5.0, 0.01, params=params)
print("theta flow exited: {} at t = {:.2f}".format(traj.exited, traj.times[-1]))
