"""
Seeded randomized checks of the identities of each module.

Every check records the largest residual seen over its samples and compares it
to a tolerance.  Checks flagged ``asserted=False`` are reported only and do not
affect the overall status.  Sample ``i`` of a run with master seed ``s`` draws
from ``numpy.random.default_rng([s, i])``, so results do not depend on the
order in which samples are processed.
"""

from dataclasses import dataclass, field
from math import comb

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import matkernel
from . import qh_double as qd
from . import quantum
from . import rs_classical as rc

__all__ = ['DEFAULT_SEED', 'DEFAULT_TOLS', 'Check', 'VerifyReport', 'sample_rng',
           'verify_classical', 'verify_double', 'verify_quantum', 'run_suite',
           'eigenvalue_match_distance']

DEFAULT_SEED = 20110117

DEFAULT_TOLS = {
    # classical
    'trace_identity': 1e-10,
    'lax_unitarity': 1e-9,
    'lax_determinant': 1e-9,
    'polytope_containment': 1e-10,
    'integrability': 1e-5,
    'sphere_pullback': 1e-8,
    'local_form_pullback': 1e-12,
    'sphere_level': 1e-12,
    'flow_energy': 1e-8,
    'flow_actions': 1e-6,
    # double
    'mu_equivariance': 1e-12,
    'mu_constraint': 1e-8,
    'mu_spectrum': 1e-8,
    'spectral_recovery': 1e-9,
    'completion_invariance': 1e-12,
    'torus_periodicity': 1e-12,
    'torus_commutation': 1e-10,
    'torus_mu_preservation': 1e-10,
    'omega_antisymmetry': 1e-12,
    'omega_invariance': 1e-10,
    'a2_residual': 1e-6,
    'a2_ratio_spread': 1e-6,
    'dmu_fd': 1e-8,
    'involutions': 1e-15,
    # quantum
    'state_count': 0.0,
    'action_lattice': 0.0,
    'quantum_containment': 0.0,
    'quantum_interior': 0.0,
    'quantum_determinant': 1e-12,
    'symmetric_oracle': 1e-12,
    'conjugation_symmetry': 1e-12,
    'action_multiplicity': 0.0,
}


@dataclass
class Check:
    name: str
    samples: int
    max_residual: float
    tolerance: float
    asserted: bool = True
    info: dict = field(default_factory=dict)

    @property
    def passed(self):
        return bool(self.max_residual <= self.tolerance)

    def to_dict(self):
        return {'name': self.name, 'samples': self.samples,
                'max_residual': float(self.max_residual), 'tolerance': float(self.tolerance),
                'asserted': self.asserted, 'passed': self.passed, 'info': self.info}


@dataclass
class VerifyReport:
    suite: str
    checks: list

    @property
    def passed(self):
        return all(c.passed for c in self.checks if c.asserted)

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {'suite': self.suite, 'passed': self.passed,
                'checks': [c.to_dict() for c in self.checks]}


def sample_rng(seed, index):
    return np.random.default_rng([seed, index])


def _tol(tols, name):
    return (tols or {}).get(name, DEFAULT_TOLS[name])


class _Recorder:
    def __init__(self, tols):
        self.tols = tols
        self.checks = {}

    def add(self, name, value, asserted=True):
        c = self.checks.get(name)
        if c is None:
            c = self.checks[name] = Check(name, 0, 0.0, _tol(self.tols, name), asserted)
        c.samples += 1
        c.max_residual = max(c.max_residual, float(value))
        return c

    def result(self):
        return list(self.checks.values())


def eigenvalue_match_distance(values, expected):
    """Largest distance in the optimal one-to-one matching of two eigenvalue multisets."""
    cost = np.abs(np.asarray(values)[:, None] - np.asarray(expected)[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def verify_classical(params, samples=20, seed=DEFAULT_SEED, tols=None,
                     flow_time=1.0, flow_dt=1e-3, bracket_step=1e-4):
    rec = _Recorder(tols)
    n = params.n
    poly = params.polytope
    for i in range(samples):
        rng = sample_rng(seed, i)
        p = rc.sample_interior(params, rng)
        L = rc.lax_matrix(p, params)
        rec.add('trace_identity', abs(np.trace(L).real - rc.local_hamiltonian(p, params)))
        rec.add('lax_unitarity', np.abs(L.conj().T @ L - np.eye(n)).max())
        rec.add('lax_determinant', abs(np.linalg.det(L) - 1), asserted=False)
        alpha = rc.action_map(p, params)
        rec.add('polytope_containment', max(0.0, -poly.slacks(alpha).min()))
        if n > 2:
            PB = rc.poisson_matrix_fd(lambda q: rc.action_map(q, params), p, bracket_step)
            rec.add('integrability', np.abs(PB).max())
        u = rc.embed_sphere(p, params)
        rec.add('sphere_level', abs(rc.chi(u) - params.M) / params.M)
        v1, v2 = rng.normal(size=(2, 2 * (n - 1)))
        J = rc.embed_jacobian(p, params)
        rec.add('sphere_pullback', abs(rc.sphere_form(J @ v1, J @ v2) - rc.darboux_form(v1, v2)))
        rec.add('local_form_pullback',
                abs(rc.local_form(p, params, v1, v2) - rc.darboux_form(v1, v2)))
    if flow_time > 0:
        rng = sample_rng(seed, samples)
        p = rc.sample_interior(params, rng, margin=0.1)
        H = lambda q: rc.local_hamiltonian(q, params)
        traj = rc.flow_rk4(H, p, flow_time, flow_dt, params=params)
        c = rec.add('flow_energy', abs(H(traj.final) - H(p)))
        c.info = {'t_final': float(traj.times[-1]), 'exited': traj.exited}
        if traj.exited:
            c.max_residual = np.inf
        rec.add('flow_actions', np.abs(rc.action_map(traj.final, params)
                                       - rc.action_map(p, params)).max())
    return VerifyReport('classical', rec.result())


def verify_double(params, samples=20, seed=DEFAULT_SEED, tols=None):
    rec = _Recorder(tols)
    n, a, y = params.n, params.a, params.y
    target = qd.mu0(n, y).value
    lhs_all, rhs_all = [], []
    for i in range(samples):
        rng = sample_rng(seed, i)
        # generic points of the double
        d = qd.random_double_point(n, rng)
        eta = matkernel.random_special_unitary(n, rng)
        mu = qd.moment_map(d)
        rec.add('mu_equivariance',
                np.abs(qd.moment_map(qd.conjugate_point(d, eta)) - eta @ mu @ eta.conj().T).max())
        X = qd.random_tangent(d, rng)
        Y = qd.random_tangent(d, rng)
        wxy, wyx = qd.omega_eval(X, Y, a), qd.omega_eval(Y, X, a)
        rec.add('omega_antisymmetry', max(abs(wxy + wyx), abs(qd.omega_eval(X, X, a))))
        rec.add('omega_invariance', abs(qd.omega_eval(qd.conjugate_tangent(X, eta),
                                                      qd.conjugate_tangent(Y, eta), a) - wxy))
        zeta = matkernel.random_su_algebra(n, rng)
        _, lhs, rhs = qd.axiom_a2_residual(d, zeta, X, a)
        lhs_all.append(lhs)
        rhs_all.append(rhs)
        rec.add('dmu_fd', np.abs(qd.moment_map_derivative(X) - qd.moment_map_derivative_fd(X)).max())
        rec.add('involutions', np.abs(np.concatenate([
            (qd.involution_m(qd.involution_m(d)).A - d.A).ravel(),
            (qd.involution_m(qd.involution_m(d)).B - d.B).ravel()])).max())
        # points of the constraint surface
        p = rc.sample_interior(params, rng)
        lifted, v_hat = qd.lift_to_double(p, params)
        other, _ = qd.lift_to_double(p, params, scheme='qr')
        mu = qd.moment_map(lifted)
        rec.add('mu_constraint', qd.constraint_residual(p, params))
        rec.add('mu_spectrum', eigenvalue_match_distance(np.linalg.eigvals(mu), np.diag(target)))
        xiA = matkernel.spectral_functions(lifted.A)
        xiB = matkernel.spectral_functions(lifted.B)
        rec.add('spectral_recovery', max(
            np.abs(2 / a * xiA[:-1] - rc.action_map(p, params)).max(),
            np.abs(2 / a * xiB[:-1] - p.gamma).max()))
        rec.add('completion_invariance', max(
            np.abs(qd.moment_map(other) - mu).max(),
            np.abs(matkernel.spectral_functions(other.A) - xiA).max()))
        u = rc.embed_sphere(p, params)
        gu = qd.involution_gamma(u)
        rec.add('involutions', max(np.abs(qd.involution_gamma(gu) - u).max(),
                                   abs(rc.chi(gu) - rc.chi(u))))
        if n > 1:
            period, comm, pres = 0.0, 0.0, 0.0
            for flow, keep in ((qd.torus_flow_alpha, 'A'), (qd.torus_flow_beta, 'B')):
                for j in range(1, n):
                    full = flow(lifted, j, 2 * np.pi)
                    period = max(period, np.abs(full.A - lifted.A).max(),
                                 np.abs(full.B - lifted.B).max())
                    t = rng.uniform(0, 2 * np.pi)
                    moved = flow(lifted, j, t)
                    pres = max(pres, np.abs(qd.moment_map(moved) - mu).max())
                for j in range(1, n):
                    for k in range(j + 1, n):
                        s, t = rng.uniform(0, 2 * np.pi, 2)
                        jk = flow(flow(lifted, j, s), k, t)
                        kj = flow(flow(lifted, k, t), j, s)
                        comm = max(comm, np.abs(jk.A - kj.A).max(), np.abs(jk.B - kj.B).max())
            rec.add('torus_periodicity', period)
            rec.add('torus_mu_preservation', pres)
            if n > 2:
                rec.add('torus_commutation', comm)
    checks = rec.result()
    if samples:
        c, resid, spread = qd.fit_a2_normalization(lhs_all, rhs_all)
        info = {'ratio': c, 'expected_ratio_2_over_a': 2 / a}
        checks.append(Check('a2_residual', samples, resid, _tol(tols, 'a2_residual'), info=info))
        checks.append(Check('a2_ratio_spread', samples, spread, _tol(tols, 'a2_ratio_spread'),
                            info=info))
    return VerifyReport('double', checks)


def verify_quantum(q, tols=None, sweep_n=6, sweep_M=12):
    rec = _Recorder(tols)
    n, M, g = q.n, q.M, q.g
    for nn in range(2, sweep_n + 1):
        for MM in range(1, sweep_M + 1):
            states = quantum.enumerate_states(nn, MM)
            bad = len(states) != comb(MM + nn - 1, nn - 1) or len(set(states)) != len(states)
            rec.add('state_count', float(bad))
    for nu in quantum.enumerate_states(n, M):
        rec.add('action_lattice', float(np.any(quantum.action_spectrum(nu, g) != np.asarray(nu) + g)))
        rec.add('quantum_containment', float(not quantum.in_closed_polytope_exact(nu, M, g)))
        if min(nu) >= 1 and sum(nu) <= M - 1:
            member = rc.polytope_membership(quantum.action_spectrum(nu, g), q.params.polytope)
            rec.add('quantum_interior', float(member is not rc.Membership.INTERIOR))
        delta = quantum.state_delta(nu, q)
        e = quantum.elementary_symmetric(delta)
        rec.add('quantum_determinant', abs(e[-1] - 1))
        rec.add('symmetric_oracle', np.abs(e - quantum.elementary_symmetric_subsets(delta)).max())
        rec.add('conjugation_symmetry', np.abs(e[::-1][1:-1] - e[1:-1].conj()).max())
    table = quantum.spectrum_table(q)
    c = rec.add('action_multiplicity', table.action_multiplicity - 1)
    c.info = {'min_h_distance': table.min_h_distance, 'min_e_distance': table.min_e_distance,
              'h_collisions': [[list(a), list(b)] for a, b in table.h_collisions]}
    return VerifyReport('quantum', rec.result())


def run_suite(suite, params=None, q=None, samples=20, seed=DEFAULT_SEED, tols=None):
    """Run ``'classical'``, ``'double'``, ``'quantum'`` or ``'all'``; returns a list of reports."""
    if suite == 'all':
        names = ['classical', 'double'] + (['quantum'] if q is not None else [])
    else:
        names = [suite]
    reports = []
    for name in names:
        if name == 'classical':
            reports.append(verify_classical(params, samples, seed, tols))
        elif name == 'double':
            reports.append(verify_double(params, samples, seed, tols))
        elif name == 'quantum':
            if q is None:
                raise ValueError("the quantum suite needs integer M and g")
            reports.append(verify_quantum(q, tols))
        else:
            raise ValueError("unknown suite {!r}".format(name))
    return reports
