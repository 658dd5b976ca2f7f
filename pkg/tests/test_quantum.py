from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rscompact import quantum as qm
from rscompact import rs_classical as rc


def states_recursive(n, M):
    """Independent enumeration: choose the first entry, recurse on the rest."""
    if n == 1:
        return [()]
    return [(k,) + rest for k in range(M + 1) for rest in states_recursive(n - 1, M - k)]


def test_enumeration_examples():
    assert qm.enumerate_states(2, 2) == [(0,), (1,), (2,)]
    assert qm.enumerate_states(3, 1) == [(0, 0), (0, 1), (1, 0)]
    assert len(qm.enumerate_states(3, 2)) == 6 == comb(4, 2)


@pytest.mark.parametrize('n', range(2, 7))
def test_enumeration_counts(n):
    for M in range(1, 13):
        states = qm.enumerate_states(n, M)
        assert len(states) == comb(M + n - 1, n - 1) == qm.count_states(n, M)
        assert states == sorted(set(states))
        assert states == states_recursive(n, M)


def test_quantization_data_validation():
    with pytest.raises(ValueError):
        qm.QuantizationData(3, 0, 1.0)
    with pytest.raises(ValueError):
        qm.QuantizationData(3, 2.5, 1.0)
    with pytest.raises(ValueError):
        qm.QuantizationData(3, 2, -1.0)
    q = qm.QuantizationData(3, 2.0, 1.0)
    assert q.M == 2 and isinstance(q.M, int)
    assert q.a == pytest.approx(2 * np.pi / 5)


def test_action_spectrum():
    np.testing.assert_array_equal(qm.action_spectrum((0, 0, 0), 0.7), [0.7] * 3)
    np.testing.assert_array_equal(qm.action_spectrum((2,), 1), [3.0])


@pytest.mark.parametrize('n,M,g', [(2, 5, 0.3), (3, 4, 1.0), (4, 6, 0.1), (5, 3, 2.2)])
def test_lattice_in_polytope(n, M, g):
    poly = rc.Polytope(n, g, M)
    for nu in qm.enumerate_states(n, M):
        assert qm.in_closed_polytope_exact(nu, M, g)
        gamma = qm.action_spectrum(nu, g)
        interior = min(nu) >= 1 and sum(nu) <= M - 1
        status = rc.polytope_membership(gamma, poly)
        assert status is not rc.Membership.OUTSIDE
        if interior:
            assert status is rc.Membership.INTERIOR


def test_exact_containment_rejects():
    assert not qm.in_closed_polytope_exact((3, 0), 2, 0.1)
    assert not qm.in_closed_polytope_exact((-1, 0), 2, 0.1)
    assert qm.in_closed_polytope_exact((2, 0), 2, 0.1)


def test_two_particle_hamiltonian():
    q = qm.QuantizationData(2, 2, 1)
    e1 = [qm.hamiltonian_eigenvalues((k,), q)[0][0] for k in range(3)]
    np.testing.assert_allclose(e1, [np.sqrt(2), 0, -np.sqrt(2)], atol=1e-12)


def test_state_delta_is_special_unitary():
    q = qm.QuantizationData(4, 5, 0.5)
    for nu in qm.enumerate_states(4, 5):
        d = qm.state_delta(nu, q)
        np.testing.assert_allclose(np.abs(d), 1, atol=1e-14)
        assert abs(np.prod(d) - 1) < 1e-12


@pytest.mark.parametrize('n', [2, 3, 4, 5])
def test_symmetric_functions(n):
    q = qm.QuantizationData(n, 4, 0.6)
    for nu in qm.enumerate_states(n, 4):
        d = qm.state_delta(nu, q)
        e = qm.elementary_symmetric(d)
        np.testing.assert_allclose(e, qm.elementary_symmetric_subsets(d), atol=1e-12)
        # coefficients of the characteristic polynomial give a third route
        np.testing.assert_allclose(e, np.poly(d) * (-1) ** np.arange(n + 1), atol=1e-12)
        assert abs(e[-1] - 1) < 1e-12
        np.testing.assert_allclose(e[1:-1][::-1], e[1:-1].conj(), atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
                min_size=1, max_size=6))
def test_symmetric_oracle_property(values):
    np.testing.assert_allclose(qm.elementary_symmetric(values),
                               qm.elementary_symmetric_subsets(values), atol=1e-9)


def test_spectrum_table_two_particles():
    table = qm.spectrum_table(qm.QuantizationData(2, 2, 1))
    assert [tuple(r.actions) for r in table.rows] == [(1.0,), (2.0,), (3.0,)]
    assert table.action_multiplicity == 1
    assert table.min_h_distance == pytest.approx(np.sqrt(2), abs=1e-12)
    assert table.h_collisions == []


def test_spectrum_table_three_particles_degeneracy():
    table = qm.spectrum_table(qm.QuantizationData(3, 2, 1))
    assert len(table.rows) == 6
    assert table.action_multiplicity == 1
    # reversing nu conjugates every e_r, so the real parts coincide pairwise
    assert sorted(table.h_collisions) == [((0, 1), (1, 0)), ((0, 2), (2, 0))]
    assert table.min_h_distance < 1e-12
    assert table.min_e_distance > 1.0


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 5), st.integers(1, 6), st.floats(0.05, 3.0))
def test_action_multiplicity_one(n, M, g):
    table = qm.spectrum_table(qm.QuantizationData(n, M, g))
    assert table.action_multiplicity == 1
    assert len(table.rows) == comb(M + n - 1, n - 1)
