# Copyright 2026 The dppipa Authors
# SPDX-License-Identifier: Apache-2.0

import itertools

import numpy as np
import pytest

import dppipa


def uniform_pipeline(n, k):
    orbitals = dppipa.fourier_orbitals(dppipa.build_grid(n, dppipa.Boundary.periodic), k)
    rho = dppipa.density(orbitals)
    scdm = dppipa.scdm_localize(orbitals)
    partition = dppipa.balance(scdm.v, rho)
    return orbitals, rho, scdm, partition, dppipa.build_model(partition, rho, orbitals.grid)


def test_shell_counts_and_violation():
    assert dppipa.closed_shell_counts(128)[:6] == [1, 5, 9, 13, 21, 25]
    with pytest.raises(dppipa.DppError, match="9 and 13"):
        dppipa.fourier_orbitals(dppipa.build_grid(32, dppipa.Boundary.periodic), 12)


def test_orbitals_are_orthonormal_numpy_arrays():
    orbitals = dppipa.fourier_orbitals(dppipa.build_grid(16, dppipa.Boundary.periodic), 9)
    phi = np.asarray(orbitals.phi)
    assert phi.shape == (256, 9)
    np.testing.assert_allclose(phi.T @ phi, np.eye(9), atol=1e-12)
    np.testing.assert_allclose(dppipa.density(orbitals), np.full(256, 9 / 256), atol=1e-12)


def test_scdm_preserves_the_projector():
    orbitals, _, scdm, _, _ = uniform_pipeline(16, 5)
    phi, v = np.asarray(orbitals.phi), np.asarray(scdm.v)
    np.testing.assert_allclose(v @ v.T, phi @ phi.T, atol=1e-10)
    assert len(set(scdm.pivots)) == 5


def test_partition_and_model():
    _, rho, _, partition, model = uniform_pipeline(32, 13)
    assert partition.k == 13
    assert max(abs(np.asarray(partition.masses) - 1)) <= 0.1
    labels = np.asarray(partition.labels)
    for i in range(model.k):
        cells = model.region_cells(i)
        assert np.all(labels[cells] == i)
        assert sum(model.region_weights(i)) == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(
        dppipa.region_masses(partition.labels, rho, 13), partition.masses, atol=1e-12)


def test_sampling_shape_and_determinism():
    _, _, _, _, model = uniform_pipeline(32, 13)
    a = dppipa.sample_many(model, 200, seed=3)
    b = dppipa.sample_many(model, 200, seed=3)
    assert a.shape == (200, 13) and a.dtype == np.uint32
    np.testing.assert_array_equal(a, b)
    region_of = np.asarray(model.region_of)
    assert np.all(region_of[a] == np.arange(13))


def test_brute_force_matches_numpy_determinants():
    orbitals = dppipa.make_orbital_set(dppipa.random_orthonormal(6, 2, 4))
    subsets, probs = dppipa.brute_force_pmf(orbitals)
    phi = np.asarray(orbitals.phi)
    expected = [np.linalg.det(phi[list(s)]) ** 2 for s in itertools.combinations(range(6), 2)]
    np.testing.assert_array_equal(subsets, list(itertools.combinations(range(6), 2)))
    np.testing.assert_allclose(probs, expected, atol=1e-12)
    assert sorted(dppipa.exact_sample(orbitals, seed=1)) == sorted(set(dppipa.exact_sample(orbitals, seed=1)))


def test_compare_report():
    orbitals, _, _, _, model = uniform_pipeline(16, 5)
    report = dppipa.compare(orbitals, model, pairs=500, seed=2, brute_force=False)
    assert 0 <= report.marginal_l1 <= 0.5
    assert report.pairs == 500
    assert report.tv_small is None
