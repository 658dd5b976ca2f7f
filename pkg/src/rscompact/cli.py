"""
Command-line interface.

Subcommands: ``params``, ``qspectrum``, ``action-map``, ``flow`` and ``verify``.
Exit status is 0 on success, 1 when a verification fails or a flow leaves the
polytope interior, and 2 on invalid usage or parameters.  Results go to
standard output (or ``--output``); diagnostics go to standard error.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import quantum
from . import rs_classical as rc
from . import verify
from .errors import DomainError

__all__ = ['RunConfig', 'main', 'build_parser']

FORMATS = ('json', 'csv', 'text')


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: int
    M: int = None
    g: float = None
    a: float = None
    y: float = None
    seed: int = verify.DEFAULT_SEED
    samples: int = 20
    tols: dict = field(default_factory=dict)
    format: str = 'json'
    output: str = None

    def __post_init__(self):
        mg = self.M is not None or self.g is not None
        ay = self.a is not None or self.y is not None
        if mg == ay:
            raise UsageError("give exactly one of (--M, --g) or (--a, --y)")
        if mg and (self.M is None or self.g is None):
            raise UsageError("--M and --g must be given together")
        if ay and (self.a is None or self.y is None):
            raise UsageError("--a and --y must be given together")

    @property
    def params(self):
        try:
            if self.M is not None:
                return rc.derive_params(self.n, self.M, self.g)
            return rc.params_from_ay(self.n, self.a, self.y)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc

    @property
    def quantization(self):
        if self.M is None:
            return None
        try:
            return quantum.QuantizationData(self.n, self.M, self.g)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc


def _num(x):
    return float(x)


def _vec(v):
    return [float(x) for x in np.asarray(v).ravel()]


def _cell(v):
    return ' '.join(repr(float(x)) for x in np.atleast_1d(v))


def _params_dict(params, M=None):
    M = _num(params.M) if M is None else M
    return {'n': params.n, 'M': M, 'g': _num(params.g),
            'a': _num(params.a), 'y': _num(params.y)}


def _dump_json(obj):
    return json.dumps(obj, indent=2, allow_nan=False) + '\n'


def _parse_vector(text, name):
    try:
        return np.array([float(x) for x in text.split(',')])
    except ValueError as exc:
        raise UsageError("--{} expects comma-separated numbers".format(name)) from exc


def _point_from_args(args, params):
    m = params.n - 1
    gamma = params.polytope.centroid() if args.gamma is None else _parse_vector(args.gamma, 'gamma')
    theta = np.zeros(m) if args.theta is None else _parse_vector(args.theta, 'theta')
    if gamma.size != m or theta.size != m:
        raise UsageError("--gamma and --theta need {} components for n={}".format(m, params.n))
    p = rc.DarbouxPoint(gamma, theta)
    if rc.polytope_membership(gamma, params.polytope, rc.FACET_MARGIN) is not rc.Membership.INTERIOR:
        raise UsageError("gamma={} is not in the strict polytope interior".format(list(gamma)))
    return p


# ---------------------------------------------------------------- commands

def cmd_params(cfg, args):
    params = cfg.params
    poly = params.polytope
    data = {'params': _params_dict(params, cfg.M),
            'polytope': {'facets': [{'normal': _vec(nrm), 'offset': _num(off)}
                                    for nrm, off in poly.facets()],
                         'vertices': [_vec(v) for v in poly.vertices()]}}
    if cfg.format == 'json':
        return _dump_json(data), 0
    if cfg.format == 'csv':
        lines = ['n;M;g;a;y', ';'.join(repr(v) if isinstance(v, float) else str(v)
                                       for v in data['params'].values())]
        return '\n'.join(lines) + '\n', 0
    lines = ['{} = {!r}'.format(k, v) for k, v in data['params'].items()]
    lines.append('polytope: gamma_j >= {!r}, sum(gamma) <= {!r}'.format(poly.g, poly.total))
    return '\n'.join(lines) + '\n', 0


def cmd_qspectrum(cfg, args):
    q = cfg.quantization
    if q is None:
        raise UsageError("qspectrum needs integer --M and --g")
    table = quantum.spectrum_table(q)
    states = [{'nu': list(r.nu), 'actions': _vec(r.actions),
               'e': [[float(z.real), float(z.imag)] for z in r.h_complex],
               'h_real': _vec(r.h_real)} for r in table.rows]
    if cfg.format == 'json':
        return _dump_json({'params': _params_dict(q.params, q.M), 'states': states}), 0
    if cfg.format == 'csv':
        lines = ['nu;actions;e_re;e_im;h_real']
        for r in table.rows:
            lines.append(';'.join([' '.join(str(v) for v in r.nu), _cell(r.actions),
                                   _cell(r.h_complex.real), _cell(r.h_complex.imag),
                                   _cell(r.h_real)]))
        return '\n'.join(lines) + '\n', 0
    lines = ['{} states, n={}, M={}, g={!r}'.format(len(table.rows), q.n, q.M, q.g)]
    for r in table.rows:
        lines.append('nu={}  actions={}  Re e={}'.format(
            list(r.nu), _vec(r.actions), ['{:.12g}'.format(h) for h in r.h_real]))
    return '\n'.join(lines) + '\n', 0


def cmd_action_map(cfg, args):
    params = cfg.params
    p = _point_from_args(args, params)
    alpha = rc.action_map(p, params)
    member = rc.polytope_membership(alpha, params.polytope)
    data = {'params': _params_dict(params), 'gamma': _vec(p.gamma), 'theta': _vec(p.theta),
            'alpha': _vec(alpha), 'membership': member.value}
    if cfg.format == 'json':
        return _dump_json(data), 0
    if cfg.format == 'csv':
        return 'gamma;theta;alpha;membership\n{};{};{};{}\n'.format(
            _cell(p.gamma), _cell(p.theta), _cell(alpha), member.value), 0
    return 'gamma = {}\ntheta = {}\nalpha = {}\nmembership = {}\n'.format(
        data['gamma'], data['theta'], data['alpha'], member.value), 0


def _flow_hamiltonian(name, params):
    if name == 'H':
        return lambda q: rc.local_hamiltonian(q, params)
    for prefix in ('alpha', 'gamma', 'theta'):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            k = int(name[len(prefix):])
            if not 1 <= k <= params.n - 1:
                break
            if prefix == 'alpha':
                return lambda q: rc.action_map(q, params)[k - 1]
            if prefix == 'gamma':
                return lambda q: q.gamma[k - 1]
            return lambda q: q.theta[k - 1]
    raise UsageError("unknown --hamiltonian {!r} (use H, alphaK, gammaK or thetaK)".format(name))


def cmd_flow(cfg, args):
    params = cfg.params
    p = _point_from_args(args, params)
    h = _flow_hamiltonian(args.hamiltonian, params)
    if not args.dt > 0 or not args.t > 0:
        raise UsageError("--t and --dt must be positive")
    traj = rc.flow_rk4(h, p, args.t, args.dt, params=params)
    H = lambda q: rc.local_hamiltonian(q, params)
    H0, alpha0 = H(p), rc.action_map(p, params)
    records = []
    for k in range(0, len(traj), args.every):
        q = traj.points[k]
        records.append((float(traj.times[k]), q, H(q), rc.action_map(q, params)))
    final = traj.final
    summary = {'t_final': float(traj.times[-1]), 'steps': len(traj) - 1,
               'exited': traj.exited, 'dH': float(abs(H(final) - H0)),
               'dalpha': float(np.abs(rc.action_map(final, params) - alpha0).max())}
    status = 1 if traj.exited else 0
    if traj.exited:
        print("flow left the polytope interior at t={!r}; output truncated".format(
            summary['t_final']), file=sys.stderr)
    if cfg.format == 'json':
        data = {'params': _params_dict(params), 'hamiltonian': args.hamiltonian,
                'trajectory': [{'t': t, 'gamma': _vec(q.gamma), 'theta': _vec(q.theta),
                                'H': float(hv), 'alpha': _vec(al)}
                               for t, q, hv, al in records],
                'summary': summary}
        return _dump_json(data), status
    if cfg.format == 'csv':
        lines = ['t;gamma;theta;H;alpha']
        for t, q, hv, al in records:
            lines.append(';'.join([repr(t), _cell(q.gamma), _cell(q.theta), repr(float(hv)),
                                   _cell(al)]))
        lines.append('# summary;t_final={!r};dH={!r};dalpha={!r};exited={}'.format(
            summary['t_final'], summary['dH'], summary['dalpha'], str(traj.exited).lower()))
        return '\n'.join(lines) + '\n', status
    lines = ['{:.6f}  H={:.15g}  alpha={}'.format(t, hv, ['{:.12g}'.format(x) for x in al])
             for t, q, hv, al in records]
    lines.append('final |H-H0| = {:.3e}, max |alpha-alpha0| = {:.3e}, exited = {}'.format(
        summary['dH'], summary['dalpha'], traj.exited))
    return '\n'.join(lines) + '\n', status


def cmd_verify(cfg, args):
    params = cfg.params
    q = cfg.quantization
    if args.suite == 'quantum' and q is None:
        raise UsageError("the quantum suite needs integer --M and --g")
    if cfg.samples < 1:
        raise UsageError("--samples must be positive")
    reports = verify.run_suite(args.suite, params, q, cfg.samples, cfg.seed, cfg.tols)
    passed = all(r.passed for r in reports)
    for r in reports:
        for c in r.checks:
            if c.asserted and not c.passed:
                print("FAILED {}/{}: {:.3e} > {:.1e}".format(r.suite, c.name, c.max_residual,
                                                           c.tolerance), file=sys.stderr)
    status = 0 if passed else 1
    if cfg.format == 'json':
        data = {'params': _params_dict(params), 'seed': cfg.seed, 'samples': cfg.samples,
                'passed': passed, 'reports': [r.to_dict() for r in reports]}
        return _dump_json(_finite(data)), status
    if cfg.format == 'csv':
        lines = ['suite;check;samples;max_residual;tolerance;asserted;status']
        for r in reports:
            for c in r.checks:
                lines.append(';'.join([r.suite, c.name, str(c.samples), repr(c.max_residual),
                                       repr(c.tolerance), str(c.asserted).lower(),
                                       'pass' if c.passed else 'fail']))
        return '\n'.join(lines) + '\n', status
    lines = []
    for r in reports:
        lines.append('[{}] {}'.format(r.suite, 'PASS' if r.passed else 'FAIL'))
        for c in r.checks:
            tag = ('pass' if c.passed else 'FAIL') if c.asserted else 'info'
            lines.append('  {:<24} {:>5}  max={:.3e}  tol={:.1e}  {}'.format(
                c.name, c.samples, c.max_residual, c.tolerance, tag))
    lines.append('overall: {}'.format('PASS' if passed else 'FAIL'))
    return '\n'.join(lines) + '\n', status


def _finite(obj):
    if isinstance(obj, float) and not np.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    return obj


COMMANDS = {'params': cmd_params, 'qspectrum': cmd_qspectrum, 'action-map': cmd_action_map,
            'flow': cmd_flow, 'verify': cmd_verify}


# ---------------------------------------------------------------- parsing

def _add_common(p):
    p.add_argument('--n', type=int, required=True, help="number of particles")
    p.add_argument('--M', type=int, help="positive integer M (with --g)")
    p.add_argument('--g', type=float, help="coupling g = 2|y|/a (with --M)")
    p.add_argument('--a', type=float, help="inverse length scale (with --y)")
    p.add_argument('--y', type=float, help="coupling angle, 0 < |y| < pi/n (with --a)")
    p.add_argument('--format', choices=FORMATS, default='json')
    p.add_argument('--output', help="write results to this file instead of stdout")


def _add_point(p):
    p.add_argument('--gamma', help="comma-separated gamma (default: polytope centroid)")
    p.add_argument('--theta', help="comma-separated theta (default: zeros)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog='rscompact',
        description="Compactified Ruijsenaars-Schneider system: classical, double and quantum checks.")
    sub = parser.add_subparsers(dest='command', required=True)

    _add_common(sub.add_parser('params', help="derived constants and the polytope"))
    _add_common(sub.add_parser('qspectrum', help="joint spectrum of actions and Hamiltonians"))

    p = sub.add_parser('action-map', help="action variables at a Darboux point")
    _add_common(p)
    _add_point(p)

    p = sub.add_parser('flow', help="RK4 trajectory of a Hamiltonian flow")
    _add_common(p)
    _add_point(p)
    p.add_argument('--t', type=float, default=1.0, help="final time")
    p.add_argument('--dt', type=float, default=1e-3, help="time step")
    p.add_argument('--hamiltonian', default='H', help="H, alphaK, gammaK or thetaK")
    p.add_argument('--every', type=int, default=1, help="emit every k-th step")

    p = sub.add_parser('verify', help="seeded randomized identity checks")
    _add_common(p)
    p.add_argument('--suite', choices=('classical', 'double', 'quantum', 'all'), default='all')
    p.add_argument('--seed', type=int, default=verify.DEFAULT_SEED)
    p.add_argument('--samples', type=int, default=20)
    for name, tol in verify.DEFAULT_TOLS.items():
        p.add_argument('--tol-' + name.replace('_', '-'), dest='tol_' + name, type=float,
                       default=None, help="tolerance override (default {:g})".format(tol))
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    tols = {name: getattr(args, 'tol_' + name) for name in verify.DEFAULT_TOLS
            if getattr(args, 'tol_' + name, None) is not None}
    try:
        cfg = RunConfig(args.command, args.n, args.M, args.g, args.a, args.y,
                        getattr(args, 'seed', verify.DEFAULT_SEED),
                        getattr(args, 'samples', 20), tols, args.format, args.output)
        if getattr(args, 'every', 1) < 1:
            raise UsageError("--every must be positive")
        text, status = COMMANDS[args.command](cfg, args)
    except UsageError as exc:
        print("error: {}".format(exc), file=sys.stderr)
        return 2
    except DomainError as exc:
        print("error: {}".format(exc), file=sys.stderr)
        return 2 if args.command in ('action-map', 'flow') else 1
    if cfg.output:
        with open(cfg.output, 'w') as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status
