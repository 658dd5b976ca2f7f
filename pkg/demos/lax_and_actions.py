"""
Lax matrix and action variables
===============================

Build the unitary Lax matrix at a point of the compact phase space, check
that its trace reproduces the Hamiltonian, and read off the action
variables from its spectrum.
"""

import numpy as np

from rscompact import matkernel as mk
from rscompact import rs_classical as rc

# Three particles with M = 2 and g = 1 fix a = 2 pi / 5 and y = pi / 5.
params = rc.derive_params(3, 2, 1.0)
print("a = {:.6f}, y = {:.6f}".format(params.a, params.y))

# Darboux coordinates live over the polytope gamma_k >= g, sum <= M + 2g.
poly = params.polytope
print("polytope vertices:", [v.tolist() for v in poly.vertices()])

p = rc.DarbouxPoint([1.4, 1.8], [0.5, -1.2])
L = rc.lax_matrix(p, params)

# L is special unitary, and Re tr L is the Hamiltonian.
print("|L^H L - I| =", np.abs(L.conj().T @ L - np.eye(3)).max())
print("det L =", np.round(np.linalg.det(L), 14))
print("Re tr L =", np.trace(L).real, " H =", rc.local_hamiltonian(p, params))

# The actions are the alcove coordinates of L, scaled by 2/a.
xi, _ = mk.alcove_reduce(L)
print("alcove coordinates:", xi, " sum =", xi.sum())
alpha = rc.action_map(p, params)
print("actions:", alpha, "->", rc.polytope_membership(alpha, poly).value)

# Embedding into the sphere of radius sqrt(M) in C^3.
u = rc.embed_sphere(p, params)
print("|u|^2 =", rc.chi(u), " (M = {})".format(params.M))
