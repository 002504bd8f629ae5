import numpy as np
import pytest

from prodwishart import rmt
from prodwishart.empirics import EmpiricalMeasure, ks_distance
from prodwishart.numerics import DomainError
from prodwishart.raney import cdf_V_array


def test_config_validation():
    with pytest.raises(DomainError):
        rmt.EnsembleConfig(r=2, n=10, kappa=0, nu=[0])  # l < 2n + nu_1
    with pytest.raises(DomainError):
        rmt.EnsembleConfig(r=3, n=10, kappa=1, nu=[0])
    with pytest.raises(DomainError):
        rmt.EnsembleConfig(r=2, n=1, kappa=1, nu=[0])
    with pytest.raises(DomainError):
        rmt.EnsembleConfig(r=2, n=5, kappa=1, nu=[0], trials=0)
    cfg = rmt.EnsembleConfig(r=3, n=4, kappa=3, nu=[2, 1])
    assert cfg.l == 10
    assert cfg.shapes() == [(6, 4), (5, 6), (4, 5)]


def test_ginibre():
    g = rmt.ginibre(3, 5, rmt.stream(1, 0, 0))
    assert g.shape == (3, 5) and g.dtype == complex
    big = rmt.ginibre(1000, 1000, rmt.stream(2, 0, 0))
    assert abs(np.mean(np.abs(big) ** 2) - 1) <= 0.01
    assert abs(np.var(big.real) - 0.5) <= 0.01
    np.testing.assert_array_equal(g, rmt.ginibre(3, 5, rmt.stream(1, 0, 0)))
    with pytest.raises(DomainError):
        rmt.ginibre(0, 3, rmt.stream(1, 0, 0))


def test_streams_are_distinct():
    a = rmt.ginibre(4, 4, rmt.stream(5, 0, 0))
    assert not np.array_equal(a, rmt.ginibre(4, 4, rmt.stream(5, 1, 0)))
    assert not np.array_equal(a, rmt.ginibre(4, 4, rmt.stream(5, 0, 1)))
    assert not np.array_equal(a, rmt.ginibre(4, 4, rmt.stream(6, 0, 0)))
    # negative seeds are folded into 64 bits
    rmt.stream(-1, 0, 0)


def test_truncated_unitary():
    u = rmt.truncated_unitary(7, 7, 7, rmt.stream(3, 0, 0))
    assert np.max(np.abs(u.conj().T @ u - np.eye(7))) <= 1e-12
    block = rmt.truncated_unitary(9, 5, 3, rmt.stream(3, 1, 0))
    assert block.shape == (5, 3)
    assert np.linalg.svd(block, compute_uv=False).max() <= 1 + 1e-12
    with pytest.raises(DomainError):
        rmt.truncated_unitary(3, 4, 1, rmt.stream(3, 0, 0))


def test_haar_corner_law():
    # |U_11|^2 of a 2x2 Haar unitary is uniform on [0, 1]
    vals = np.array([abs(rmt.truncated_unitary(2, 1, 1, rmt.stream(11, t, 0))[0, 0]) ** 2 for t in range(100_000)])
    assert np.all(vals <= 1 + 1e-12)
    assert ks_distance(EmpiricalMeasure(vals), lambda x: np.clip(x, 0, 1)) <= 0.01


def test_haar_phase_invariance():
    # E[U_11] = 0 and E[|U_11|^2] = 1/l for Haar; without phase correction the mean is biased
    l = 4
    vals = np.array([rmt.haar_unitary(l, rmt.stream(4, t, 0))[0, 0] for t in range(20_000)])
    assert abs(vals.mean()) < 0.02
    assert abs(np.mean(np.abs(vals) ** 2) - 1 / l) < 0.01


def test_identity_debug_mode():
    cfg = rmt.EnsembleConfig(r=2, n=8, kappa=1, nu=[0], identity_gaussians=True)
    s = rmt.product_squared_singvals(cfg, 0)
    assert len(s) == 8
    assert np.all((s >= 0) & (s <= 1 + 1e-12))
    x = rmt.truncated_unitary(cfg.l, 8, 8, rmt.stream(cfg.seed, 0, 0))
    np.testing.assert_allclose(s, np.sort(np.linalg.svd(x, compute_uv=False) ** 2), atol=1e-14)


def test_singvals_shape_and_determinism():
    cfg = rmt.EnsembleConfig(r=3, n=12, kappa=2, nu=[1, 2], seed=99)
    s = rmt.product_squared_singvals(cfg, 3)
    assert len(s) == 12 and np.all(s >= 0) and np.all(np.diff(s) >= 0)
    np.testing.assert_array_equal(s, rmt.product_squared_singvals(cfg, 3))


def test_first_moment_r2():
    cfg = rmt.EnsembleConfig(r=2, n=100, kappa=1, nu=[0], trials=50, seed=42)
    mu = rmt.ensemble_run(cfg)
    assert abs(mu.moment(1) - 0.5) <= 0.05


def test_ensemble_run_basics():
    mu = rmt.ensemble_run(rmt.EnsembleConfig(r=2, n=10, kappa=1, nu=[0], trials=1))
    assert len(mu) == 10 and mu.weight == pytest.approx(0.1)
    assert np.all(mu.atoms >= 0)


def test_ensemble_independent_of_jobs():
    cfg = rmt.EnsembleConfig(r=3, n=20, kappa=1, nu=[0, 0], trials=8, seed=5)
    a = rmt.ensemble_run(cfg, jobs=1).atoms
    b = rmt.ensemble_run(cfg, jobs=4).atoms
    np.testing.assert_array_equal(a, b)


def test_ensemble_r3_ks():
    cfg = rmt.EnsembleConfig(r=3, n=100, kappa=1, nu=[0, 0], trials=50, seed=42)
    assert ks_distance(rmt.ensemble_run(cfg), lambda x: cdf_V_array(x, 3)) <= 0.08
