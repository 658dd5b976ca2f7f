"""
Unitary eigendecomposition and the alcove parameterization of SU(n) spectra.

A point of the alcove is an array ``xi`` of ``n`` non-negative angles summing
to pi.  The diagonal matrix ``delta(xi)`` has consecutive eigenphases spaced by
``2 xi_1, ..., 2 xi_{n-1}`` and closes the circle with the gap ``2 xi_n``.  Every
special unitary ``C`` can be written ``C = eta^{-1} delta(xi) eta`` with a unique
alcove point, whose components are the spectral functions of ``C``.

Index arguments that label weights, alcove components or torus directions are
1-based, matching the usual mathematical labelling.
"""

import numpy as np
import scipy.linalg

from .errors import EigensolverError, NotSpecialUnitary, NotUnitary

__all__ = ['UNITARY_TOL', 'EIG_TOL', 'ALCOVE_TOL',
           'as_unitary', 'as_special_unitary', 'check_alcove',
           'eig_unitary', 'delta_diag', 'delta_of_xi', 'delta_from_weights',
           'fundamental_weight', 'alcove_reduce', 'spectral_function',
           'spectral_functions', 'is_regular', 'eigenphase_gap',
           'random_unitary', 'random_special_unitary', 'random_su_algebra']

UNITARY_TOL = 1e-9
EIG_TOL = 1e-10
ALCOVE_TOL = 1e-8

TWO_PI = 2 * np.pi


def as_unitary(U, tol=UNITARY_TOL):
    """Return ``U`` as a square complex array, raising if it is not unitary."""
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ValueError("expected a square matrix, got shape {}".format(U.shape))
    err = np.abs(U.conj().T @ U - np.eye(U.shape[0])).max()
    if err >= tol:
        raise NotUnitary("|U^H U - I|_max = {:.3e} exceeds {:.1e}".format(err, tol))
    return U


def as_special_unitary(U, tol=UNITARY_TOL):
    U = as_unitary(U, tol)
    det = np.linalg.det(U)
    if abs(det - 1) >= tol:
        raise NotSpecialUnitary("det = {} is not 1 within {:.1e}".format(det, tol))
    return U


def check_alcove(xi, tol=ALCOVE_TOL):
    """Validate an alcove point and return it as a float array."""
    xi = np.asarray(xi, dtype=float)
    if xi.ndim != 1 or xi.size < 2:
        raise ValueError("alcove point must be a 1-d array of length >= 2")
    if np.any(xi < -tol):
        raise ValueError("alcove coordinates must be non-negative: {}".format(xi))
    if abs(xi.sum() - np.pi) >= tol:
        raise ValueError("alcove coordinates must sum to pi, got {!r}".format(xi.sum()))
    return xi


def _wrap_phase(phi):
    phi = np.mod(phi, TWO_PI)
    # np.mod maps tiny negatives onto 2pi itself
    return np.where(phi >= TWO_PI, 0.0, phi)


def eig_unitary(U, tol=UNITARY_TOL):
    """
    Eigendecomposition of a unitary matrix.

    The complex Schur form of a normal matrix is diagonal, so the Schur vectors
    form an orthonormal eigenbasis even when eigenvalues are repeated.

    Parameters
    ----------
    U : array_like
        ``(n, n)`` unitary matrix.
    tol : float
        Unitarity tolerance for the input check.

    Returns
    -------
    phases : ndarray
        Eigenphases in ``[0, 2 pi)``, ascending.
    V : ndarray
        Unitary matrix whose columns are the matching eigenvectors.
    """
    U = as_unitary(U, tol)
    try:
        T, Z = scipy.linalg.schur(U, output='complex')
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise EigensolverError("Schur decomposition failed: {}".format(exc)) from exc
    phases = _wrap_phase(np.angle(np.diag(T)))
    order = np.argsort(phases, kind='stable')
    return phases[order], Z[:, order]


def fundamental_weight(n, k):
    """Diagonal matrix of the k-th fundamental weight of su(n), ``1 <= k <= n-1``."""
    if not 1 <= k <= n - 1:
        raise ValueError("weight index k={} outside 1..{}".format(k, n - 1))
    diag = np.full(n, -k / n)
    diag[:k] += 1.0
    return np.diag(diag)


def delta_diag(xi, tol=ALCOVE_TOL):
    """Diagonal entries of ``delta(xi)`` as a complex vector."""
    xi = check_alcove(xi, tol)
    n = xi.size
    phases = np.empty(n)
    phases[0] = 2.0 / n * np.dot(np.arange(1, n + 1), xi)
    phases[1:] = phases[0] + 2.0 * np.cumsum(xi[:-1])
    return np.exp(1j * phases)


def delta_of_xi(xi, tol=ALCOVE_TOL):
    """The diagonal special unitary matrix ``delta(xi)``."""
    return np.diag(delta_diag(xi, tol))


def delta_from_weights(xi):
    """``exp(-2i sum_k xi_k Lambda_k)`` built from the fundamental weights."""
    xi = np.asarray(xi, dtype=float)
    n = xi.size
    H = sum(xi[k - 1] * fundamental_weight(n, k) for k in range(1, n))
    return scipy.linalg.expm(-2j * H)


def _circular_distance(x, y):
    d = np.mod(x - y, TWO_PI)
    return np.minimum(d, TWO_PI - d)


def alcove_reduce(C, tol=ALCOVE_TOL, unitary_tol=UNITARY_TOL):
    """
    Write a special unitary matrix as ``C = eta^{-1} delta(xi) eta``.

    The sorted eigenphases are read off cyclically from each possible
    starting eigenvalue; for each start the half-gaps give a candidate alcove
    point, and the candidate whose ``delta_11`` reproduces the starting
    eigenvalue is accepted.  At boundary points several starts can agree and
    the smallest one is returned.

    Returns
    -------
    xi : ndarray
        The alcove point, shape ``(n,)``.
    eta : ndarray
        Special unitary matrix whose rows are eigenvectors of ``C`` in the
        order of the diagonal of ``delta(xi)``.
    """
    C = as_special_unitary(C, unitary_tol)
    n = C.shape[0]
    phases, V = eig_unitary(C, unitary_tol)
    weights = np.arange(1, n + 1)
    for s in range(n):
        q = np.concatenate([phases[s:], phases[:s] + TWO_PI])
        xi = np.diff(np.append(q, q[0] + TWO_PI)) / 2.0
        first = 2.0 / n * np.dot(weights, xi)
        if _circular_distance(first, phases[s]) < tol:
            break
    else:
        raise EigensolverError("no cyclic start reproduces the spectrum; "
                               "eigenphases {}".format(phases))
    order = np.roll(np.arange(n), -s)
    eta = V[:, order].conj().T
    eta[0] *= np.conj(np.linalg.det(eta))
    return xi, eta


def spectral_functions(C, tol=ALCOVE_TOL):
    """All ``n`` spectral functions of ``C``."""
    return alcove_reduce(C, tol)[0]


def spectral_function(C, j, tol=ALCOVE_TOL):
    """The j-th spectral function (``1 <= j <= n``) of a special unitary matrix."""
    xi = spectral_functions(C, tol)
    if not 1 <= j <= xi.size:
        raise ValueError("index j={} outside 1..{}".format(j, xi.size))
    return xi[j - 1]


def eigenphase_gap(C):
    """Smallest circular distance between two eigenphases of ``C``."""
    phases, _ = eig_unitary(C)
    gaps = np.diff(np.append(phases, phases[0] + TWO_PI))
    return gaps.min()


def is_regular(C, tol=1e-8):
    """True iff all eigenvalues of ``C`` are separated by more than ``tol``."""
    return bool(eigenphase_gap(C) > tol)


def random_unitary(n, rng):
    """Haar-distributed unitary from the QR decomposition of a Ginibre matrix."""
    Z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_special_unitary(n, rng):
    U = random_unitary(n, rng)
    det = np.linalg.det(U)
    return U * det ** (-1.0 / n)


def random_su_algebra(n, rng, scale=1.0):
    """Random traceless anti-Hermitian matrix."""
    X = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    X = scale * (X - X.conj().T) / 2
    return X - np.trace(X) / n * np.eye(n)
