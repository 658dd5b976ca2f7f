"""
Quantum spectrum
================

States are lattice points nu with sum(nu) <= M.  The actions take the
values nu + g, and the Hamiltonians are elementary symmetric functions of a
diagonal unitary matrix built from them.
"""

import numpy as np

from rscompact import quantum as qm

q = qm.QuantizationData(2, 2, 1.0)
for row in qm.spectrum_table(q).rows:
    print(row.nu, row.actions, np.round(row.h_real, 12))
print("e_1 for n = 2 is sqrt(2), 0, -sqrt(2)")

q = qm.QuantizationData(3, 2, 1.0)
table = qm.spectrum_table(q)
print("\nn = 3: {} states, action multiplicity {}".format(len(table.rows), table.action_multiplicity))
for row in table.rows:
    print(row.nu, row.actions, np.round(row.h_complex, 6))

# e_2 is the conjugate of e_1, and reversing nu conjugates both, so the real
# parts alone cannot separate nu from its reverse.
print("real-part collisions:", table.h_collisions)
print("min distance of complex tuples: {:.4f}".format(table.min_e_distance))
