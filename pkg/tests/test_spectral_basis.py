"""Tests for the closed-form eigensystem and spectral projections."""
from __future__ import annotations

import math

import numpy as np
import pytest

from qw_spectral import (
    SpectralBasis,
    SpectralConsistencyError,
    class_of,
    coin_ratio,
    decompose,
    degenerate_classes,
    eigenpair,
    eigenvalue,
    eigenvector,
    limiting_distribution,
    project,
    reconstruct,
    slot,
)
from qw_states import make_single_node
from qw_walk import (
    CycleParams,
    final_average,
    node_distribution,
    step,
    transition_matrix,
    tvd_between,
)


def test_eigenvalue_examples(params24: CycleParams) -> None:
    assert eigenvalue(0, 0, params24) == pytest.approx(1.0)
    assert eigenvalue(0, 1, params24) == pytest.approx(-1.0)
    assert eigenvalue(3, 0, params24) == pytest.approx(complex(math.sqrt(3) / 2, -0.5))
    assert eigenpair(3, 0, params24).phase == pytest.approx(-math.pi / 6)


@pytest.mark.parametrize("d", [4, 6, 8, 12, 24, 50])
def test_eigenvalues_are_unimodular(d: int) -> None:
    params = CycleParams(d)
    for k in (0, 1):
        for j in range(d):
            assert abs(eigenvalue(j, k, params)) == pytest.approx(1.0, abs=1e-14)


def test_index_errors(params24: CycleParams) -> None:
    with pytest.raises(IndexError):
        eigenvalue(24, 0, params24)
    with pytest.raises(IndexError):
        eigenvector(0, 2, params24)
    with pytest.raises(IndexError):
        class_of(-1, 0, params24)


def test_ground_eigenvector_has_flat_phases(params24: CycleParams) -> None:
    pair = eigenpair(0, 0, params24)
    assert pair.b == pytest.approx(math.sqrt(2) - 1)
    assert pair.a == pytest.approx(1 / math.sqrt(24 * (4 - 2 * math.sqrt(2))))
    amps = eigenvector(0, 0, params24).amplitudes
    np.testing.assert_allclose(amps[0], np.full(24, pair.a), atol=1e-15)
    np.testing.assert_allclose(amps[1], np.full(24, pair.a * pair.b), atol=1e-15)


def test_coin_ratio_carries_plane_wave_phase(params24: CycleParams) -> None:
    theta = 2 * math.pi * 5 / 24
    radial = math.sqrt(1 + math.cos(theta) ** 2) - math.cos(theta)
    phase = complex(math.cos(theta), math.sin(theta))
    assert coin_ratio(5, 0, params24) == pytest.approx(radial * phase)


@pytest.mark.parametrize("d", [4, 6, 8, 12, 24, 50])
def test_eigen_relation(d: int) -> None:
    params = CycleParams(d)
    matrix = transition_matrix(params)
    for k in (0, 1):
        for j in range(d):
            vector = eigenvector(j, k, params).vector()
            residual = matrix @ vector - eigenvalue(j, k, params) * vector
            assert np.linalg.norm(residual) < 1e-10


def test_step_multiplies_eigenvectors_by_eigenvalue(params24: CycleParams) -> None:
    for j in (0, 3, 7, 12, 19):
        state = eigenvector(j, 1, params24)
        expected = eigenvalue(j, 1, params24) * state.amplitudes
        np.testing.assert_allclose(step(state).amplitudes, expected, atol=1e-12)


@pytest.mark.parametrize("d", [4, 10, 24, 50])
def test_eigenvectors_are_orthonormal(d: int) -> None:
    params = CycleParams(d)
    vectors = [eigenvector(j, k, params).vector() for k in (0, 1) for j in range(d)]
    columns = np.column_stack(vectors)
    np.testing.assert_allclose(columns.conj().T @ columns, np.eye(2 * d), atol=1e-11)


@pytest.mark.parametrize("d", [6, 8, 24])
def test_conjugate_symmetry(d: int) -> None:
    params = CycleParams(d)
    for k in (0, 1):
        for m in range(1, d // 2):
            mirrored = eigenvalue(d // 2 + m, k, params)
            assert abs(mirrored - eigenvalue(m, k, params).conjugate()) < 1e-13


def test_classes_for_d24(basis24: SpectralBasis) -> None:
    classes = degenerate_classes(basis24)
    assert ((3, 0), (9, 0)) in classes
    assert ((0, 1), (12, 1)) in classes
    assert ((6, 0),) in classes
    assert ((18, 1),) in classes
    members = [index for group in classes for index in group]
    assert sorted(members) == sorted((j, k) for k in (0, 1) for j in range(24))


@pytest.mark.parametrize("d", [6, 10, 14])
def test_no_singletons_when_four_does_not_divide(d: int) -> None:
    basis = SpectralBasis.build(CycleParams(d))
    assert all(len(group) == 2 for group in basis.classes)


def test_class_of_matches_index_arithmetic(params24: CycleParams) -> None:
    assert class_of(3, 0, params24) == ((3, 0), (9, 0))
    assert class_of(15, 1, params24) == ((15, 1), (21, 1))
    assert class_of(6, 0, params24) == ((6, 0),)


def test_build_rejects_float_partition_mismatch(params24: CycleParams) -> None:
    # a coarse tolerance merges distinct eigenvalues
    with pytest.raises(SpectralConsistencyError):
        SpectralBasis.build(params24, tolerance=0.5)


def test_decompose_eigenvector_is_unit_slot(basis24: SpectralBasis, params24: CycleParams) -> None:
    coefficients = decompose(eigenvector(7, 1, params24), basis24)
    expected = np.zeros(48, dtype=complex)
    expected[slot(7, 1, params24)] = 1.0
    np.testing.assert_allclose(coefficients, expected, atol=1e-12)


@pytest.mark.parametrize("v0", [0, 1, 5, 17])
def test_single_node_coefficients(v0: int, basis24: SpectralBasis, params24: CycleParams) -> None:
    coefficients = decompose(make_single_node(params24, v0), basis24)
    omega = params24.omega
    for k in (0, 1):
        for j in range(24):
            pair = eigenpair(j, k, params24)
            g = pair.a * (1 + 1j * pair.b.conjugate()) / math.sqrt(2)
            expected = g * omega ** (v0 * j)
            assert coefficients[slot(j, k, params24)] == pytest.approx(expected, abs=1e-12)


def test_parseval_and_round_trip(basis24: SpectralBasis, params24: CycleParams) -> None:
    state = step(step(make_single_node(params24, 4)))
    coefficients = decompose(state, basis24)
    assert float(np.sum(np.abs(coefficients) ** 2)) == pytest.approx(1.0, abs=1e-12)
    rebuilt = reconstruct(coefficients, basis24)
    np.testing.assert_allclose(rebuilt.amplitudes, state.amplitudes, atol=1e-12)


def test_decompose_rejects_other_cycle(basis24: SpectralBasis) -> None:
    with pytest.raises(ValueError, match="dimension mismatch"):
        decompose(make_single_node(CycleParams(8), 0), basis24)
    with pytest.raises(ValueError):
        reconstruct(np.zeros(10, dtype=complex), basis24)


def test_projections_sum_to_state(basis24: SpectralBasis, params24: CycleParams) -> None:
    state = make_single_node(params24, 0)
    total = sum(project(state, members, basis24) for members in basis24.classes)
    np.testing.assert_allclose(total, state.amplitudes, atol=1e-12)


def test_limiting_distribution_of_eigenvector(
    basis24: SpectralBasis, params24: CycleParams
) -> None:
    state = eigenvector(5, 0, params24)
    limit = limiting_distribution(state, basis24)
    np.testing.assert_allclose(limit.p, node_distribution(state).p, atol=1e-12)


def test_limiting_distribution_invariant_under_step(
    basis24: SpectralBasis, params24: CycleParams
) -> None:
    state = make_single_node(params24, 0)
    before = limiting_distribution(state, basis24).p
    after = limiting_distribution(step(state), basis24).p
    np.testing.assert_allclose(before, after, atol=1e-11)


def test_limiting_distribution_matches_long_running_mean(
    basis24: SpectralBasis, params24: CycleParams
) -> None:
    state = make_single_node(params24, 0)
    mean, _ = final_average(state, 20_000)
    limit = limiting_distribution(state, basis24)
    assert tvd_between(mean, limit) < 5e-3
