"""
The internally fused double ``D = SU(n) x SU(n)``.

``SU(n)`` acts by simultaneous conjugation, the group-valued moment map is the
commutator ``mu(A, B) = A B A^{-1} B^{-1}``, and the invariant 2-form is built
from the scalar product ``<X, Y> = -(1/a) tr(X Y)`` on su(n).  This module also
lifts Darboux points of the III_b system onto the constraint surface
``mu^{-1}(mu_0)`` and implements the two commuting torus actions generated by
the spectral functions of ``A`` and ``B``.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import matkernel
from . import rs_classical as rc
from .errors import NonPositiveRatio, NotRegular

__all__ = ['DoublePoint', 'DoubleTangent', 'Mu0', 'moment_map', 'mu0',
           'scalar_product', 'omega_eval', 'zeta_action', 'moment_map_derivative',
           'moment_map_derivative_fd', 'axiom_a2_residual', 'fit_a2_normalization',
           'conjugate_point', 'conjugate_tangent', 'lift_vector', 'complete_unitary',
           'lift_to_double', 'constraint_residual', 'constraint_matrix',
           'torus_flow_alpha', 'torus_flow_beta', 'involution_m', 'involution_gamma',
           'random_double_point', 'random_tangent']


def _dag(X):
    return X.conj().T


@dataclass(frozen=True)
class DoublePoint:
    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'A', matkernel.as_special_unitary(self.A))
        object.__setattr__(self, 'B', matkernel.as_special_unitary(self.B))
        if self.A.shape != self.B.shape:
            raise ValueError("A and B must have the same size")

    @property
    def n(self):
        return self.A.shape[0]


@dataclass(frozen=True)
class DoubleTangent:
    """Tangent vector ``(X_A, X_B)`` at ``base``, stored in ambient form."""
    base: DoublePoint
    XA: np.ndarray
    XB: np.ndarray
    tol: float = 1e-9

    def __post_init__(self):
        XA = np.asarray(self.XA, dtype=complex)
        XB = np.asarray(self.XB, dtype=complex)
        object.__setattr__(self, 'XA', XA)
        object.__setattr__(self, 'XB', XB)
        for name, U, X in (('A', self.base.A, XA), ('B', self.base.B, XB)):
            Y = _dag(U) @ X
            err = max(np.abs(Y + _dag(Y)).max(), abs(np.trace(Y)))
            if err >= self.tol:
                raise ValueError("{}^-1 X_{} is not in su(n) (err {:.2e})".format(name, name, err))


@dataclass(frozen=True)
class Mu0:
    """The moment-map value ``diag(e^{2iy}, ..., e^{2iy}, e^{2(1-n)iy})``."""
    n: int
    y: float
    value: np.ndarray


def moment_map(p):
    """Group commutator ``A B A^{-1} B^{-1}``."""
    return p.A @ p.B @ _dag(p.A) @ _dag(p.B)


def mu0(n, y):
    if not 0 < abs(y) < np.pi / n:
        raise ValueError("need 0 < |y| < pi/n, got y={} for n={}".format(y, n))
    phases = np.full(n, 2 * y)
    phases[-1] = 2 * (1 - n) * y
    return Mu0(n, y, np.diag(np.exp(1j * phases)))


def scalar_product(X, Y, a):
    """Invariant scalar product ``-(1/a) tr(X Y)`` on su(n)."""
    return float(-np.trace(X @ Y).real / a)


def _wedge(f, g, t1, t2, a):
    return scalar_product(f(t1), g(t2), a) - scalar_product(f(t2), g(t1), a)


def omega_eval(t1, t2, a):
    """
    The 2-form of the double on two tangent vectors at the same base point::

        (1/a) <A^-1 dA ^ dB B^-1> + (1/a) <dA A^-1 ^ B^-1 dB>
            - (1/a) <(AB)^-1 d(AB) ^ (BA)^-1 d(BA)>

    with ``<alpha ^ beta>(X, Y) = <alpha(X), beta(Y)> - <alpha(Y), beta(X)>``.
    """
    if t1.base is not t2.base and not (np.array_equal(t1.base.A, t2.base.A)
                                       and np.array_equal(t1.base.B, t2.base.B)):
        raise ValueError("tangent vectors live at different base points")
    A, B = t1.base.A, t1.base.B
    Ai, Bi = _dag(A), _dag(B)
    ABi, BAi = _dag(A @ B), _dag(B @ A)
    first = _wedge(lambda t: Ai @ t.XA, lambda t: t.XB @ Bi, t1, t2, a)
    second = _wedge(lambda t: t.XA @ Ai, lambda t: Bi @ t.XB, t1, t2, a)
    third = _wedge(lambda t: ABi @ (t.XA @ B + A @ t.XB),
                   lambda t: BAi @ (t.XB @ A + B @ t.XA), t1, t2, a)
    return (first + second - third) / a


def zeta_action(p, zeta):
    """Fundamental vector field of the conjugation action: ``(zeta A - A zeta, zeta B - B zeta)``."""
    return DoubleTangent(p, zeta @ p.A - p.A @ zeta, zeta @ p.B - p.B @ zeta)


def moment_map_derivative(t):
    """Product-rule derivative of ``A B A^{-1} B^{-1}`` along ``t``."""
    A, B = t.base.A, t.base.B
    Ai, Bi = _dag(A), _dag(B)
    dAi = -Ai @ t.XA @ Ai
    dBi = -Bi @ t.XB @ Bi
    return (t.XA @ B @ Ai @ Bi + A @ t.XB @ Ai @ Bi
            + A @ B @ dAi @ Bi + A @ B @ Ai @ dBi)


def _retract(U, X, s):
    """Curve through ``U`` with velocity ``X``: ``U expm(s U^-1 X)``."""
    return U @ scipy.linalg.expm(s * _dag(U) @ X)


def moment_map_derivative_fd(t, step=1e-6):
    """Central-difference derivative of the moment map along the group curve of ``t``."""
    def at(s):
        A = _retract(t.base.A, t.XA, s)
        B = _retract(t.base.B, t.XB, s)
        return A @ B @ _dag(A) @ _dag(B)
    return (at(step) - at(-step)) / (2 * step)


def axiom_a2_residual(p, zeta, X, a):
    """
    Compare ``omega(zeta_D, X)`` with ``(1/2) <mu^-1 dmu(X) + dmu(X) mu^-1, zeta>``.

    Returns
    -------
    residual : float
        Absolute difference of the two sides.
    lhs, rhs : float
        The two sides, so a normalization constant can be fitted across samples.
    """
    lhs = omega_eval(zeta_action(p, zeta), X, a)
    mu = moment_map(p)
    dmu = moment_map_derivative(X)
    rhs = 0.5 * scalar_product(_dag(mu) @ dmu + dmu @ _dag(mu), zeta, a)
    return abs(lhs - rhs), lhs, rhs


def fit_a2_normalization(lhs, rhs):
    """
    Least-squares constant ``c`` with ``lhs ~ c rhs``.

    Returns ``(c, max |lhs - c rhs|, max |lhs_i/rhs_i - c|)``.
    """
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    c = float(lhs @ rhs / (rhs @ rhs))
    residual = float(np.abs(lhs - c * rhs).max())
    spread = float(np.abs(lhs / rhs - c).max())
    return c, residual, spread


def conjugate_point(p, eta):
    return DoublePoint(eta @ p.A @ _dag(eta), eta @ p.B @ _dag(eta))


def conjugate_tangent(t, eta):
    """Push a tangent vector forward along simultaneous conjugation by ``eta``."""
    return DoubleTangent(conjugate_point(t.base, eta),
                         eta @ t.XA @ _dag(eta), eta @ t.XB @ _dag(eta))


def lift_vector(p, params):
    """
    The unit vector proportional to ``[sin y / sin ny]^{1/2} W_j(delta(a gamma/2), y)``.
    """
    n, y = params.n, params.y
    ratio = np.sin(y) / np.sin(n * y)
    if not ratio > 0:
        raise NonPositiveRatio("sin(y)/sin(ny) = {} for n={}, y={}".format(ratio, n, y))
    delta = rc.position_phases(p, params)
    v = np.sqrt(ratio) * np.array([rc.w_factor(delta, y, j) for j in range(1, n + 1)])
    return v / np.linalg.norm(v)


def complete_unitary(v, scheme='gram-schmidt'):
    """
    Unitary matrix whose last column is the unit vector ``v``.

    ``'gram-schmidt'`` orthonormalizes the standard basis vectors in index
    order, skipping the one most parallel to ``v``; ``'qr'`` takes the Q
    factor of ``[v, I]``.
    """
    v = np.asarray(v, dtype=complex)
    n = v.size
    if scheme == 'gram-schmidt':
        skip = int(np.argmax(np.abs(v)))
        cols = [v]
        for i in range(n):
            if i == skip:
                continue
            w = np.zeros(n, dtype=complex)
            w[i] = 1.0
            for c in cols:
                w = w - c * np.vdot(c, w)
            cols.append(w / np.linalg.norm(w))
        return np.column_stack(cols[1:] + cols[:1])
    if scheme == 'qr':
        Q, _ = np.linalg.qr(np.column_stack([v, np.eye(n)]))
        Q = Q[:, :n]
        Q[:, 0] *= np.vdot(Q[:, 0], v)
        return np.column_stack([Q[:, 1:], Q[:, 0]])
    raise ValueError("unknown completion scheme {!r}".format(scheme))


def lift_to_double(p, params, scheme='gram-schmidt'):
    """
    Lift a Darboux point to the constraint surface:
    ``(A, B) = (eta^-1 L eta, eta^-1 delta eta)`` where the last column of
    ``eta`` is the unit lift vector.

    Returns
    -------
    point : DoublePoint
    v_hat : ndarray
    """
    L = rc.lax_matrix(p, params)
    v_hat = lift_vector(p, params)
    eta = complete_unitary(v_hat, scheme)
    delta = np.diag(rc.position_phases(p, params))
    return DoublePoint(_dag(eta) @ L @ eta, _dag(eta) @ delta @ eta), v_hat


def constraint_matrix(params, v_hat):
    """``e^{2iy}(I - (1 - e^{-2niy}) v v^H)``, i.e. ``mu_0`` rotated so its odd eigenvector is ``v``."""
    n, y = params.n, params.y
    return np.exp(2j * y) * (np.eye(n) - (1 - np.exp(-2j * n * y)) * np.outer(v_hat, v_hat.conj()))


def constraint_residual(p, params):
    """
    ``|L delta L^-1 delta^-1 - e^{2iy}(I - (1 - e^{-2niy}) v v^H)|_max``.

    Depends only on the lift vector, not on how it is completed to a unitary.
    """
    L = rc.lax_matrix(p, params)
    delta = rc.position_phases(p, params)
    v_hat = lift_vector(p, params)
    comm = L @ np.diag(delta) @ _dag(L) @ np.diag(delta.conj())
    return float(np.abs(comm - constraint_matrix(params, v_hat)).max())


def _regular_diagonalizer(C, tol):
    if not matkernel.is_regular(C, tol):
        raise NotRegular("eigenvalue gap {:.2e} below {:.1e}".format(matkernel.eigenphase_gap(C), tol))
    return matkernel.alcove_reduce(C)[1]


def _phase_pair(n, j, t):
    if not 1 <= j <= n - 1:
        raise ValueError("torus index j={} outside 1..{}".format(j, n - 1))
    d = np.ones(n, dtype=complex)
    d[j - 1] = np.exp(1j * t)
    d[j] = np.exp(-1j * t)
    return d


def torus_flow_alpha(p, j, t, tol=1e-8):
    """Circle action of the j-th spectral function of ``A``: ``B -> B eta(A)^-1 D_j(t) eta(A)``."""
    eta = _regular_diagonalizer(p.A, tol)
    D = np.diag(_phase_pair(p.n, j, t))
    return DoublePoint(p.A, p.B @ _dag(eta) @ D @ eta)


def torus_flow_beta(p, j, t, tol=1e-8):
    """Circle action of the j-th spectral function of ``B``: ``A -> A eta(B)^-1 D_j(-t) eta(B)``."""
    eta = _regular_diagonalizer(p.B, tol)
    D = np.diag(_phase_pair(p.n, j, -t))
    return DoublePoint(p.A @ _dag(eta) @ D @ eta, p.B)


def involution_m(p):
    """``m(A, B) = (conj(B), conj(A))``."""
    return DoublePoint(p.B.conj(), p.A.conj())


def involution_gamma(u):
    """``(u_1, ..., u_{n-1}, u_n) -> (conj(u_{n-1}), ..., conj(u_1), conj(u_n))``."""
    u = np.asarray(u, dtype=complex)
    return np.append(u[-2::-1].conj(), u[-1].conj())


def random_double_point(n, rng):
    return DoublePoint(matkernel.random_special_unitary(n, rng),
                       matkernel.random_special_unitary(n, rng))


def random_tangent(p, rng):
    n = p.n
    return DoubleTangent(p, p.A @ matkernel.random_su_algebra(n, rng),
                         p.B @ matkernel.random_su_algebra(n, rng))
