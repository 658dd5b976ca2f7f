import numpy as np
import pytest

from rscompact import quantum as qm
from rscompact import rs_classical as rc
from rscompact import verify


def test_report_semantics():
    checks = [verify.Check('a', 3, 1e-3, 1e-6, asserted=False),
              verify.Check('b', 3, 1e-9, 1e-6)]
    report = verify.VerifyReport('demo', checks)
    assert report.passed
    assert report['b'].passed and not report['a'].passed
    report.checks.append(verify.Check('c', 1, 1.0, 0.5))
    assert not report.passed
    assert report.to_dict()['passed'] is False


def test_sub_seeds_reproducible():
    a = verify.sample_rng(5, 2).normal(size=3)
    b = verify.sample_rng(5, 2).normal(size=3)
    c = verify.sample_rng(5, 3).normal(size=3)
    assert np.array_equal(a, b) and not np.array_equal(a, c)


def test_eigenvalue_matching():
    assert verify.eigenvalue_match_distance([1j, 1, 1], [1, 1j, 1]) == 0
    assert verify.eigenvalue_match_distance([1, 2], [2.1, 1]) == pytest.approx(0.1)


def test_double_suite_passes_and_reports_ratio():
    params = rc.derive_params(3, 2, 1.0)
    report = verify.verify_double(params, samples=5, seed=1)
    assert report.passed
    assert report['a2_ratio_spread'].info['ratio'] == pytest.approx(2 / params.a, rel=1e-9)


def test_quantum_suite_and_override():
    q = qm.QuantizationData(3, 2, 1.0)
    assert verify.verify_quantum(q).passed
    assert verify.run_suite('quantum', q.params, q)[0].passed
    with pytest.raises(ValueError):
        verify.run_suite('quantum', q.params, None)
    with pytest.raises(ValueError):
        verify.run_suite('nonsense', q.params, q)


def test_tolerance_override_fails():
    params = rc.derive_params(2, 2, 1.0)
    report = verify.verify_double(params, samples=2, seed=1, tols={'mu_constraint': 0.0})
    assert not report.passed
    assert not report['mu_constraint'].passed
