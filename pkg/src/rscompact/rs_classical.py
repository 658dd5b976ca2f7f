"""
The local compactified Ruijsenaars-Schneider system in Darboux coordinates.

Phase-space points are given by ``gamma`` (shifted particle positions, the
global position variables of the completed phase space) and angles ``theta``.
The Lax matrix, the local Hamiltonian, the embedding into the sphere
``|u|^2 = M`` and the action map all take a :class:`DarbouxPoint` together with
:class:`CouplingParams`.

Conventions
-----------
* ``delta(a gamma / 2) = exp(-i a sum_k gamma_k Lambda_k)``, so the particle
  positions are ``x_j = arg(delta_j) / a`` and ``gamma`` is minus the position
  vector up to the weight transformation.
* ``Theta(theta) = exp(-i sum_k theta_k (E_kk - E_{k+1,k+1}))`` and the momenta
  are ``p_j = -arg(Theta_j)``.
* Poisson bracket ``{F, G} = sum_k dF/dtheta_k dG/dgamma_k - dF/dgamma_k dG/dtheta_k``,
  i.e. the symplectic form ``sum_k dtheta_k ^ dgamma_k``.
"""

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import matkernel
from .errors import (DenominatorSingular, DomainError, NegativeRadicand,
                     NonPositiveFactor, OutsidePolytope, SingularConfiguration)

__all__ = ['CouplingParams', 'DarbouxPoint', 'Polytope', 'Membership',
           'derive_params', 'params_from_ay', 'position_phases', 'theta_diag',
           'w_factor', 'lax_matrix', 'local_hamiltonian', 'hamiltonian_xp',
           'embed_sphere', 'chi', 'action_map', 'polytope_membership',
           'gradient_fd', 'poisson_bracket_fd', 'poisson_matrix_fd', 'Trajectory', 'flow_rk4',
           'sample_interior', 'sphere_form', 'darboux_form', 'embed_jacobian',
           'local_form', 'FACET_MARGIN', 'W_IMAG_TOL']

FACET_MARGIN = 1e-8
W_IMAG_TOL = 1e-10
SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class CouplingParams:
    """
    Coupling constants of the III_b system.

    ``a > 0`` sets the inverse length scale and ``0 < |y| < pi/n`` the
    coupling.  ``g`` and ``M`` are the derived constants that fix the
    polytope ``gamma_j >= g, sum gamma <= M + (n-1) g``.
    """
    n: int
    a: float
    y: float

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2, got {}".format(self.n))
        if not self.a > 0:
            raise ValueError("a must be positive, got {}".format(self.a))
        if not 0 < abs(self.y) < np.pi / self.n:
            raise ValueError("need 0 < |y| < pi/n, got y={} for n={}".format(self.y, self.n))

    @property
    def g(self):
        return 2 * abs(self.y) / self.a

    @property
    def M(self):
        return 2 / self.a * (np.pi - self.n * abs(self.y))

    @property
    def polytope(self):
        return Polytope(self.n, self.g, self.M)


def derive_params(n, M, g, sign=1):
    """
    Coupling constants from ``(n, M, g)``.

    Inverts ``g = 2|y|/a`` and ``M = (2/a)(pi - n|y|)``, giving
    ``a = 2 pi/(M + n g)`` and ``|y| = pi g/(M + n g)``.  ``sign`` selects the
    sign of ``y``.
    """
    if n < 2:
        raise ValueError("n must be at least 2, got {}".format(n))
    if not M > 0 or not g > 0:
        raise ValueError("M and g must be positive, got M={}, g={}".format(M, g))
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    a = 2 * np.pi / (M + n * g)
    y = sign * np.pi * g / (M + n * g)
    return CouplingParams(n, a, y)


def params_from_ay(n, a, y):
    return CouplingParams(int(n), float(a), float(y))


@dataclass(frozen=True)
class DarbouxPoint:
    """Point ``(gamma, theta)`` with ``n-1`` components each."""
    gamma: np.ndarray
    theta: np.ndarray

    def __post_init__(self):
        gamma = np.atleast_1d(np.asarray(self.gamma, dtype=float))
        theta = np.atleast_1d(np.asarray(self.theta, dtype=float))
        if gamma.ndim != 1 or gamma.shape != theta.shape:
            raise ValueError("gamma and theta must be 1-d of equal length")
        object.__setattr__(self, 'gamma', gamma)
        object.__setattr__(self, 'theta', theta)

    @property
    def n(self):
        return self.gamma.size + 1

    @property
    def tau(self):
        return np.exp(1j * self.theta)

    def as_vector(self):
        return np.concatenate([self.gamma, self.theta])

    @classmethod
    def from_vector(cls, z):
        z = np.asarray(z, dtype=float)
        m = z.size // 2
        return cls(z[:m], z[m:])


class Membership(enum.Enum):
    INTERIOR = 'interior'
    BOUNDARY = 'boundary'
    OUTSIDE = 'outside'


@dataclass(frozen=True)
class Polytope:
    """``{gamma : gamma_j >= g, sum_j gamma_j <= M + (n-1) g}`` in R^{n-1}."""
    n: int
    g: float
    M: float

    @property
    def total(self):
        return self.M + (self.n - 1) * self.g

    @property
    def is_empty(self):
        return not self.M > 0

    def slacks(self, gamma):
        """Facet slacks ``gamma_j - g`` and ``M + (n-1) g - sum gamma``."""
        gamma = np.asarray(gamma, dtype=float)
        return np.append(gamma - self.g, self.total - gamma.sum())

    def vertices(self):
        m = self.n - 1
        verts = [np.full(m, self.g)]
        for j in range(m):
            v = np.full(m, self.g)
            v[j] += self.M
            verts.append(v)
        return np.array(verts)

    def centroid(self):
        return self.vertices().mean(axis=0)

    def facets(self):
        """Facets as ``(normal, offset)`` pairs meaning ``normal . gamma <= offset``."""
        m = self.n - 1
        out = [(-np.eye(m)[j], -self.g) for j in range(m)]
        out.append((np.ones(m), self.total))
        return out


def polytope_membership(point, poly, tol=1e-10):
    """Classify a point against the polytope with a band of width ``tol`` at each facet."""
    slack = poly.slacks(point)
    if np.any(slack < -tol):
        return Membership.OUTSIDE
    if np.any(slack <= tol):
        return Membership.BOUNDARY
    return Membership.INTERIOR


def _check_point(p, params, margin):
    if p.n != params.n:
        raise ValueError("point has n={} but params have n={}".format(p.n, params.n))
    slack = params.polytope.slacks(p.gamma)
    if np.any(slack <= margin):
        raise OutsidePolytope("gamma={} has facet slacks {}".format(p.gamma, slack))


def alcove_of_gamma(gamma, a):
    """Alcove point ``xi`` with ``xi_k = a gamma_k / 2`` for ``k < n``."""
    gamma = np.asarray(gamma, dtype=float)
    xi = a * gamma / 2
    return np.append(xi, np.pi - xi.sum())


def position_phases(p, params):
    """Diagonal of ``delta(a gamma/2)``."""
    return matkernel.delta_diag(alcove_of_gamma(p.gamma, params.a), tol=np.inf)


def theta_diag(theta):
    """Diagonal of ``Theta(theta)``."""
    t = np.concatenate([[0.0], np.asarray(theta, dtype=float), [0.0]])
    return np.exp(-1j * np.diff(t))


def w_factor(delta, y, j):
    """
    ``W_j(delta, y)`` for a regular diagonal ``delta``, ``1 <= j <= n``.

    Each bracket factor ``(e^{iy} delta_j - e^{-iy} delta_k)/(delta_j - delta_k)``
    must come out real and positive; its positive root is taken.
    """
    delta = np.asarray(delta)
    if delta.ndim == 2:
        delta = np.diag(delta)
    if not 1 <= j <= delta.size:
        raise ValueError("index j={} outside 1..{}".format(j, delta.size))
    return _w(delta, y, j - 1)


def _w(delta, y, j):
    ey = np.exp(1j * y)
    result = 1.0
    for k in range(delta.size):
        if k == j:
            continue
        den = delta[j] - delta[k]
        if abs(den) < SINGULAR_TOL:
            raise SingularConfiguration(
                "delta_{} and delta_{} coincide (|diff|={:.2e})".format(j, k, abs(den)))
        factor = (ey * delta[j] - delta[k] / ey) / den
        if abs(factor.imag) > W_IMAG_TOL or factor.real <= 0:
            raise NonPositiveFactor(
                "bracket factor ({}, {}) = {} is not positive real".format(j, k, factor))
        result *= np.sqrt(factor.real)
    return result


def lax_matrix(p, params, margin=FACET_MARGIN):
    """
    The unitary Lax matrix at a strict interior point.

    ``L_jl = (e^{iy} - e^{-iy}) / (e^{iy} delta_j/delta_l - e^{-iy})
    W_j(delta, y) W_l(delta, -y) Theta_l`` with ``delta = delta(a gamma/2)``.
    """
    _check_point(p, params, margin)
    n, y = params.n, params.y
    delta = position_phases(p, params)
    Theta = theta_diag(p.theta)
    w_plus = np.array([_w(delta, y, j) for j in range(n)])
    w_minus = np.array([_w(delta, -y, j) for j in range(n)])
    ey = np.exp(1j * y)
    den = ey * np.outer(delta, 1 / delta) - 1 / ey
    if np.abs(den).min() < SINGULAR_TOL:
        raise DenominatorSingular("Cauchy denominator vanishes")
    return (ey - 1 / ey) / den * np.outer(w_plus, w_minus * Theta)


def hamiltonian_xp(x, p, a, y):
    """
    ``sum_j cos p_j prod_{k != j} [1 - sin^2 y / sin^2(a (x_j - x_k)/2)]^{1/2}``
    for explicit positions ``x`` and momenta ``p``.
    """
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    s2 = np.sin(a * (x[:, None] - x[None, :]) / 2) ** 2
    np.fill_diagonal(s2, 1.0)
    if not s2.all():
        raise SingularConfiguration("two particles collide")
    rad = 1 - np.sin(y) ** 2 / s2
    np.fill_diagonal(rad, 1.0)
    if rad.min() < 0:
        j, k = np.argwhere(rad < 0)[0]
        raise NegativeRadicand("radicand {} at pair ({}, {})".format(rad[j, k], j, k))
    return float(np.cos(p) @ np.prod(np.sqrt(rad), axis=1))


@lru_cache(maxsize=None)
def _position_weights(n):
    # entry (m, k-1) is the m-th diagonal entry of the k-th fundamental weight
    w = np.array([[(1.0 if m < k else 0.0) - k / n for k in range(1, n)] for m in range(n)])
    w.flags.writeable = False
    return w


def positions_and_momenta(p, params):
    """Particle positions ``x`` and momenta from Darboux data, computed directly."""
    x = -_position_weights(params.n) @ p.gamma
    t = np.concatenate([[0.0], p.theta, [0.0]])
    mom = np.diff(t)
    return x, mom


def local_hamiltonian(p, params):
    """The local Hamiltonian at ``p``, evaluated from positions and momenta."""
    if p.n != params.n:
        raise ValueError("dimension mismatch")
    x, mom = positions_and_momenta(p, params)
    return hamiltonian_xp(x, mom, params.a, params.y)


def chi(u):
    """U(1) moment map ``sum_k |u_k|^2``."""
    return float(np.sum(np.abs(u) ** 2))


def embed_sphere(p, params, tol=1e-12):
    """
    Map ``(gamma, theta)`` into ``chi^{-1}(M)``:
    ``u_j = tau_j sqrt(gamma_j - g)``, ``u_n = sqrt(M + (n-1) g - sum gamma)``.
    """
    if p.n != params.n:
        raise ValueError("dimension mismatch")
    slack = params.polytope.slacks(p.gamma)
    if np.any(slack < -tol):
        raise OutsidePolytope("gamma={} outside the closed polytope".format(p.gamma))
    slack = np.clip(slack, 0.0, None)
    return np.append(p.tau * np.sqrt(slack[:-1]), np.sqrt(slack[-1]) + 0j)


def action_map(p, params, margin=FACET_MARGIN):
    """Action variables ``(2/a) xi_k(L)`` for ``k = 1..n-1``."""
    L = lax_matrix(p, params, margin)
    xi = matkernel.spectral_functions(L)
    return 2 / params.a * xi[:-1]


def gradient_fd(f, z, step=1e-4):
    """
    Fourth-order central-difference derivative of ``f`` at the vector ``z``.

    ``f`` may return a scalar or an array; the result has shape
    ``z.shape + shape(f(z))``.
    """
    z = np.asarray(z, dtype=float)
    rows = []
    for i in range(z.size):
        e = np.zeros_like(z)
        e[i] = step
        rows.append((-np.asarray(f(z + 2 * e)) + 8 * np.asarray(f(z + e))
                     - 8 * np.asarray(f(z - e)) + np.asarray(f(z - 2 * e))) / (12 * step))
    return np.array(rows)


def _lift(fun):
    return lambda z: fun(DarbouxPoint.from_vector(z))


def poisson_bracket_fd(f, g, p, step=1e-4):
    """
    Finite-difference Poisson bracket of two functions of a :class:`DarbouxPoint`.

    Uses the five-point central stencil for every partial derivative.
    """
    m = p.gamma.size
    z = p.as_vector()
    df = gradient_fd(_lift(f), z, step)
    dg = gradient_fd(_lift(g), z, step)
    return float(df[m:] @ dg[:m] - df[:m] @ dg[m:])


def poisson_matrix_fd(F, p, step=1e-4):
    """Matrix of brackets ``{F_i, F_j}`` for a vector-valued function ``F``."""
    m = p.gamma.size
    J = gradient_fd(_lift(F), p.as_vector(), step)
    return J[m:].T @ J[:m] - J[:m].T @ J[m:]


@dataclass(frozen=True)
class Trajectory:
    """Flow samples; ``exited`` marks a run truncated at the polytope boundary."""
    times: np.ndarray
    points: tuple
    exited: bool

    def __len__(self):
        return len(self.points)

    @property
    def final(self):
        return self.points[-1]


def _hamilton_rhs(h, step):
    def rhs(z):
        m = z.size // 2
        grad = gradient_fd(lambda w: h(DarbouxPoint.from_vector(w)), z, step)
        return np.concatenate([grad[m:], -grad[:m]])
    return rhs


def flow_rk4(h, p0, t_final, dt, params=None, step=1e-4, margin=FACET_MARGIN):
    """
    Integrate ``dgamma/dt = dh/dtheta``, ``dtheta/dt = -dh/dgamma`` with RK4.

    If ``params`` is given, the run stops (with ``exited=True``) as soon as a
    step would leave the strict interior of the polytope, or the Hamiltonian
    cannot be evaluated.
    """
    rhs = _hamilton_rhs(h, step)
    nsteps = int(round(t_final / dt))
    z = p0.as_vector()
    times = [0.0]
    points = [p0]
    exited = False
    for i in range(nsteps):
        try:
            k1 = rhs(z)
            k2 = rhs(z + dt / 2 * k1)
            k3 = rhs(z + dt / 2 * k2)
            k4 = rhs(z + dt * k3)
        except DomainError:
            exited = True
            break
        znew = z + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        new = DarbouxPoint.from_vector(znew)
        if params is not None and np.any(params.polytope.slacks(new.gamma) <= margin):
            exited = True
            break
        z = znew
        times.append((i + 1) * dt)
        points.append(new)
    return Trajectory(np.array(times), tuple(points), exited)


def sample_interior(params, rng, margin=0.05):
    """
    Random interior point: Dirichlet-distributed slacks kept ``margin * M``
    away from every facet, uniform angles.
    """
    n, M, g = params.n, params.M, params.g
    if not 0 <= margin * n < 1:
        raise ValueError("margin too large for n={}".format(n))
    w = margin + (1 - n * margin) * rng.dirichlet(np.ones(n))
    gamma = g + M * w[:-1]
    theta = rng.uniform(0, 2 * np.pi, n - 1)
    return DarbouxPoint(gamma, theta)


def embed_jacobian(p, params, step=1e-4):
    """Complex Jacobian ``du/d(gamma, theta)``, shape ``(n, 2(n-1))``, by finite differences."""
    return gradient_fd(lambda z: embed_sphere(DarbouxPoint.from_vector(z), params),
                       p.as_vector(), step).T


def sphere_form(du1, du2):
    """``i sum_k dubar_k ^ du_k`` on two tangent vectors of C^n."""
    val = 1j * np.sum(np.conj(du1) * du2 - np.conj(du2) * du1)
    return float(val.real)


def darboux_form(v1, v2):
    """``sum_k dtheta_k ^ dgamma_k`` on tangent vectors ``(dgamma, dtheta)``."""
    v1 = np.asarray(v1, dtype=float)
    v2 = np.asarray(v2, dtype=float)
    m = v1.size // 2
    return float(v1[m:] @ v2[:m] - v2[m:] @ v1[:m])


def local_form(p, params, v1, v2):
    """
    ``(1/a) tr(delta^{-1} d delta ^ Theta^{-1} d Theta)`` on tangent vectors
    ``(dgamma, dtheta)``.
    """
    n, a = params.n, params.a
    m = n - 1
    weights = np.array([np.diag(matkernel.fundamental_weight(n, k)) for k in range(1, n)])
    roots = np.zeros((m, n))
    for k in range(m):
        roots[k, k], roots[k, k + 1] = 1.0, -1.0

    def log_deltas(v):
        v = np.asarray(v, dtype=float)
        return -1j * a * (v[:m] @ weights), -1j * (v[m:] @ roots)

    d1, t1 = log_deltas(v1)
    d2, t2 = log_deltas(v2)
    return float((np.sum(d1 * t2) - np.sum(d2 * t1)).real / a)
