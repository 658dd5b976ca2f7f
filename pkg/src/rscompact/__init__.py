"""
Numerics for the compactified (III_b) Ruijsenaars-Schneider system.

Submodules
----------
matkernel
    Unitary eigendecomposition and alcove coordinates of SU(n).
rs_classical
    Lax matrix, local Hamiltonian, Darboux coordinates, action map, flows.
qh_double
    The internally fused double SU(n) x SU(n), its moment map, 2-form,
    torus actions and the lift of Darboux points to the constraint surface.
quantum
    State lattice and joint spectra of the quantized actions and Hamiltonians.
verify
    Seeded identity checks used by the ``verify`` command.
"""

from . import matkernel, qh_double, quantum, rs_classical, verify
from .errors import DomainError
from .quantum import QuantizationData
from .rs_classical import CouplingParams, DarbouxPoint, derive_params

__version__ = '0.1.0'
