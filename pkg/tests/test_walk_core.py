"""Unit tests for state evolution and time-averaged distributions."""
from __future__ import annotations

import numpy as np
import pytest

from qw_states import make_single_node
from qw_walk import (
    CycleParams,
    Distribution,
    TvdSeries,
    WalkState,
    apply_coin,
    apply_shift,
    evolve,
    evolve_averaged,
    final_average,
    iter_averaged,
    node_distribution,
    norm,
    point_mass,
    state_from_vector,
    step,
    transition_matrix,
    tvd,
    tvd_between,
    uniform,
)


@pytest.mark.parametrize("d", [0, 2, 3, 7, -4])
def test_cycle_params_rejects_odd_or_small(d: int) -> None:
    with pytest.raises(ValueError):
        CycleParams(d)


def test_cycle_params_rejects_bool() -> None:
    with pytest.raises(ValueError):
        CycleParams(True)  # type: ignore[arg-type]


@pytest.mark.parametrize(("d", "m_max"), [(4, 0), (6, 1), (8, 1), (10, 2), (24, 5), (50, 12)])
def test_m_max(d: int, m_max: int) -> None:
    assert CycleParams(d).m_max == m_max


def test_omega_is_primitive_root(params24: CycleParams) -> None:
    assert params24.omega ** 24 == pytest.approx(1.0)
    assert params24.omega ** 12 == pytest.approx(-1.0)


def test_walk_state_validates_shape_and_norm(params24: CycleParams) -> None:
    with pytest.raises(ValueError, match="shape"):
        WalkState(params24, np.zeros((2, 23), dtype=complex))
    with pytest.raises(ValueError, match="normalized"):
        WalkState(params24, np.ones((2, 24), dtype=complex))


def test_walk_state_is_read_only(params24: CycleParams) -> None:
    state = make_single_node(params24, 0)
    with pytest.raises(ValueError):
        state.amplitudes[0, 0] = 1.0


def test_apply_shift_moves_coin_zero_left_and_coin_one_right(params24: CycleParams) -> None:
    amps = np.zeros((2, 24), dtype=complex)
    amps[0, 5] = 0.6
    amps[1, 5] = 0.8j
    shifted = apply_shift(WalkState(params24, amps)).amplitudes
    assert shifted[0, 4] == 0.6
    assert shifted[1, 6] == 0.8j
    assert np.count_nonzero(shifted) == 2


def test_apply_shift_wraps_around(params24: CycleParams) -> None:
    amps = np.zeros((2, 24), dtype=complex)
    amps[0, 0] = 1.0
    assert apply_shift(WalkState(params24, amps)).amplitudes[0, 23] == 1.0


def test_apply_coin_is_hadamard(params24: CycleParams) -> None:
    amps = np.zeros((2, 24), dtype=complex)
    amps[0, 3] = 1.0
    coined = apply_coin(WalkState(params24, amps)).amplitudes
    assert coined[0, 3] == pytest.approx(1 / np.sqrt(2))
    assert coined[1, 3] == pytest.approx(1 / np.sqrt(2))


def test_first_step_from_single_node_splits_evenly(params24: CycleParams) -> None:
    after = node_distribution(step(make_single_node(params24, 0))).p
    assert after[23] == pytest.approx(0.5)
    assert after[1] == pytest.approx(0.5)
    assert after.sum() == pytest.approx(1.0)


def test_step_is_shift_after_coin(params24: CycleParams) -> None:
    state = make_single_node(params24, 7)
    composed = apply_shift(apply_coin(state))
    np.testing.assert_array_equal(step(state).amplitudes, composed.amplitudes)


@pytest.mark.parametrize("d", [4, 6, 8, 12, 24])
def test_step_matches_dense_matrix(d: int) -> None:
    params = CycleParams(d)
    rng = np.random.default_rng(d)
    raw = rng.normal(size=2 * d) + 1j * rng.normal(size=2 * d)
    state = state_from_vector(params, raw / np.linalg.norm(raw))
    expected = transition_matrix(params) @ state.vector()
    np.testing.assert_allclose(step(state).vector(), expected, rtol=0, atol=1e-13)


def test_transition_matrix_is_unitary() -> None:
    matrix = transition_matrix(CycleParams(12))
    np.testing.assert_allclose(matrix.conj().T @ matrix, np.eye(24), atol=1e-14)


def test_evolve_preserves_norm_over_long_runs(params24: CycleParams) -> None:
    final = evolve(make_single_node(params24, 0), 10_000)
    assert abs(norm(final) - 1.0) < 1e-12
    assert abs(node_distribution(final).p.sum() - 1.0) < 1e-12


def test_repeated_single_steps_keep_norm(params24: CycleParams) -> None:
    state = make_single_node(params24, 0)
    for _ in range(10_000):
        state = step(state)
    assert abs(norm(state) - 1.0) < 1e-12


@pytest.mark.parametrize("t", [1, 7, 101])
def test_evolve_odd_horizon_matches_single_steps(params24: CycleParams, t: int) -> None:
    state = make_single_node(params24, 5)
    expected = step(evolve(state, t - 1)).amplitudes
    np.testing.assert_allclose(evolve(state, t).amplitudes, expected, rtol=0, atol=1e-14)


def test_walk_state_rejects_small_norm_errors(params24: CycleParams) -> None:
    amps = np.zeros((2, 24), dtype=complex)
    amps[0, 0] = np.sqrt(1.0 + 1e-10)
    with pytest.raises(ValueError, match="normalized"):
        WalkState(params24, amps)
    amps[0, 0] = np.sqrt(1.0 + 1e-14)
    assert WalkState(params24, amps).d == 24


def test_million_step_average_stays_normalized() -> None:
    params = CycleParams(4)
    state0 = make_single_node(params, 0)
    mean, delta = final_average(state0, 1_000_000)
    assert abs(float(mean.p.sum()) - 1.0) < 1e-12
    assert 0.0 <= delta <= 1.0 - 1.0 / 4
    assert abs(norm(evolve(state0, 1_000_000)) - 1.0) < 1e-12


def test_evolve_zero_steps_is_identity(params24: CycleParams) -> None:
    state = make_single_node(params24, 2)
    np.testing.assert_array_equal(evolve(state, 0).amplitudes, state.amplitudes)
    with pytest.raises(ValueError):
        evolve(state, -1)


def test_distribution_clamps_rounding_noise(params24: CycleParams) -> None:
    p = np.full(24, 1 / 24)
    p[1] += p[0]
    p[0] = -5e-15
    dist = Distribution(params24, p)
    assert dist.p[0] == 0.0
    assert dist.p.min() >= 0.0


def test_distribution_rejects_real_negatives_and_bad_sums(params24: CycleParams) -> None:
    p = np.full(24, 1 / 24)
    p[0] = -1e-6
    p[1] += 1e-6 + 1 / 24
    with pytest.raises(ValueError, match="negative"):
        Distribution(params24, p)
    with pytest.raises(ValueError, match="sums"):
        Distribution(params24, np.full(24, 0.05))


def test_tvd_bounds(params24: CycleParams) -> None:
    assert tvd(uniform(params24)) == 0.0
    assert tvd(point_mass(params24, 3)) == pytest.approx(1 - 1 / 24)
    with pytest.raises(IndexError):
        point_mass(params24, 24)


def test_tvd_between_is_half_l1(params24: CycleParams) -> None:
    assert tvd_between(point_mass(params24, 0), point_mass(params24, 1)) == pytest.approx(1.0)
    assert tvd_between(uniform(params24), point_mass(params24, 0)) == pytest.approx(1 - 1 / 24)
    with pytest.raises(ValueError):
        tvd_between(uniform(params24), uniform(CycleParams(8)))


def test_running_mean_matches_direct_average(params24: CycleParams) -> None:
    state0 = make_single_node(params24, 0)
    averaged, series = evolve_averaged(state0, 10)
    direct = np.mean([node_distribution(evolve(state0, t)).p for t in range(11)], axis=0)
    np.testing.assert_allclose(averaged[-1].p, direct, atol=1e-12)
    assert series.times == list(range(11))
    assert series.last == pytest.approx(tvd(averaged[-1]))


def test_averaged_series_starts_from_initial_distribution(params24: CycleParams) -> None:
    first = next(iter_averaged(make_single_node(params24, 0), 5))
    t, mean, delta = first
    assert t == 0
    assert mean.p[0] == pytest.approx(1.0)
    assert delta == pytest.approx(1 - 1 / 24)


def test_iter_averaged_rejects_negative_horizon(params24: CycleParams) -> None:
    with pytest.raises(ValueError):
        list(iter_averaged(make_single_node(params24, 0), -1))


def test_tvd_series_validation() -> None:
    with pytest.raises(ValueError, match="start"):
        TvdSeries(((1, 0.1),))
    with pytest.raises(ValueError, match="increase"):
        TvdSeries(((0, 0.1), (2, 0.1), (2, 0.2)))
    with pytest.raises(ValueError, match="outside"):
        TvdSeries(((0, 1.5),))
    with pytest.raises(ValueError, match="outside"):
        TvdSeries(((0, 0.99),), d=24)
    assert TvdSeries(((0, 1 - 1 / 24),), d=24).last == pytest.approx(1 - 1 / 24)


def test_averaged_series_carries_cycle_size(params24: CycleParams) -> None:
    _, series = evolve_averaged(make_single_node(params24, 0), 20)
    assert series.d == 24
    assert float(series.deltas.max()) <= 1 - 1 / 24


def test_tvd_series_tail_limit() -> None:
    series = TvdSeries(tuple((t, 0.5 if t < 8 else 0.1) for t in range(10)))
    assert series.tail_limit(2) == pytest.approx(0.1)
    assert series.tail_limit(100) == pytest.approx((8 * 0.5 + 2 * 0.1) / 10)
    with pytest.raises(ValueError):
        series.tail_limit(0)
