"""
Joint spectra of the quantized action variables and the commuting Hamiltonians.

Reduced states are labelled by ``nu`` in ``Z_{>=0}^{n-1}`` with ``sum(nu) <= M``.
The action operators act diagonally with eigenvalues ``nu_k + g``; the r-th
Hamiltonian has eigenvalue ``e_r`` of the diagonal of
``exp(-i a sum_k (nu_k + g) Lambda_k)``, and its physical (real) part is
``Re e_r``.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from . import rs_classical as rc

__all__ = ['QuantizationData', 'SpectrumRow', 'SpectrumTable', 'enumerate_states',
           'count_states', 'action_spectrum', 'elementary_symmetric',
           'elementary_symmetric_subsets', 'state_delta', 'hamiltonian_eigenvalues',
           'spectrum_table', 'in_closed_polytope_exact']


@dataclass(frozen=True)
class QuantizationData:
    """Parameters ``(n, M, g)`` with integer ``M``; ``a`` and ``y`` are derived."""
    n: int
    M: int
    g: float

    def __post_init__(self):
        if isinstance(self.M, bool) or int(self.M) != self.M or self.M < 1:
            raise ValueError("quantization needs a positive integer M, got {!r}".format(self.M))
        object.__setattr__(self, 'M', int(self.M))
        # validates n and g
        self.params

    @property
    def params(self):
        return rc.derive_params(self.n, self.M, self.g)

    @property
    def a(self):
        return self.params.a

    @property
    def y(self):
        return self.params.y


def count_states(n, M):
    return comb(M + n - 1, n - 1)


def enumerate_states(n, M):
    """All ``nu`` in ``Z_{>=0}^{n-1}`` with ``sum(nu) <= M``, in lexicographic order."""
    if n < 2 or M < 0:
        raise ValueError("need n >= 2 and M >= 0")
    return [nu for nu in itertools.product(range(M + 1), repeat=n - 1) if sum(nu) <= M]


def action_spectrum(nu, g):
    return np.asarray(nu, dtype=float) + g


def in_closed_polytope_exact(nu, M, g):
    """
    Exact check that ``nu + g`` lies in ``gamma_k >= g, sum gamma <= M + (n-1) g``.

    ``g`` is converted to the rational number equal to its binary value, so
    no rounding enters the comparison.
    """
    g = Fraction(g)
    gamma = [Fraction(v) + g for v in nu]
    return all(c >= g for c in gamma) and sum(gamma) <= M + len(gamma) * g


def elementary_symmetric(values):
    """
    ``[e_0, e_1, ..., e_n]`` of the given numbers via the one-pass recurrence
    ``e_r <- e_r + x e_{r-1}``.
    """
    values = np.asarray(values, dtype=complex)
    e = np.zeros(values.size + 1, dtype=complex)
    e[0] = 1.0
    for k, x in enumerate(values):
        e[1:k + 2] = e[1:k + 2] + x * e[0:k + 1]
    return e


def elementary_symmetric_subsets(values):
    """Brute-force ``[e_0, ..., e_n]`` as sums over all index subsets."""
    values = list(np.asarray(values, dtype=complex))
    out = [1.0 + 0j]
    for r in range(1, len(values) + 1):
        out.append(sum(np.prod(c) for c in itertools.combinations(values, r)))
    return np.array(out)


def state_delta(nu, q):
    """Diagonal of ``exp(-i a sum_k (nu_k + g) Lambda_k)``."""
    gamma = action_spectrum(nu, q.g)
    p = rc.DarbouxPoint(gamma, np.zeros_like(gamma))
    return rc.position_phases(p, q.params)


def hamiltonian_eigenvalues(nu, q):
    """
    Eigenvalues of the commuting Hamiltonians on the state ``nu``.

    Returns
    -------
    e : ndarray
        Complex ``e_1, ..., e_{n-1}``.
    h_real : ndarray
        Their real parts.
    """
    e = elementary_symmetric(state_delta(nu, q))[1:-1]
    return e, e.real.copy()


@dataclass(frozen=True)
class SpectrumRow:
    nu: tuple
    actions: np.ndarray
    h_complex: np.ndarray
    h_real: np.ndarray


@dataclass(frozen=True)
class SpectrumTable:
    """
    Rows of the joint spectrum with a degeneracy summary.

    ``action_multiplicity`` is the largest number of states sharing one action
    tuple.  ``min_h_distance`` and ``min_e_distance`` are the smallest
    Euclidean distances between two different states' real Hamiltonian tuples
    and complex ``e`` tuples (``inf`` for a single state).  ``h_collisions``
    lists state pairs whose real tuples agree within ``collision_tol``;
    reversing ``nu`` conjugates every ``e_r``, so such pairs are expected.
    """
    q: QuantizationData
    rows: list
    action_multiplicity: int
    min_h_distance: float
    min_e_distance: float
    h_collisions: list


def _pairwise_min(X):
    if len(X) < 2:
        return float('inf'), np.full((len(X), len(X)), np.inf)
    diff = X[:, None, :] - X[None, :, :]
    dist = np.sqrt((np.abs(diff) ** 2).sum(axis=-1))
    dist[np.diag_indices(len(X))] = np.inf
    return float(dist.min()), dist


def spectrum_table(q, collision_tol=1e-9):
    rows = []
    for nu in enumerate_states(q.n, q.M):
        e, h = hamiltonian_eigenvalues(nu, q)
        rows.append(SpectrumRow(nu, action_spectrum(nu, q.g), e, h))
    counts = {}
    for row in rows:
        key = tuple(row.actions)
        counts[key] = counts.get(key, 0) + 1
    min_h, dist = _pairwise_min(np.array([row.h_real for row in rows]))
    min_e, _ = _pairwise_min(np.array([row.h_complex for row in rows]))
    collisions = [(rows[i].nu, rows[j].nu)
                  for i, j in zip(*np.nonzero(dist < collision_tol)) if i < j]
    return SpectrumTable(q, rows, max(counts.values()), min_h, min_e, collisions)
