"""Named property checks run by ``qw verify``.

Each check reads its grids and tolerances from :class:`VerifySettings` and returns a
:class:`CheckResult`. Operations are looked up through this module's globals at call time.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

import structlog

from qw_analytic import (
    averaged_quad,
    limiting_pair,
    limiting_single_node,
    tvd_limit_single_node,
    tvd_limit_single_node_asymptotic,
    tvd_pair,
    tvd_pair_closed,
)
from qw_sdk.models import VerifySettings
from qw_spectral import (
    SpectralBasis,
    decompose,
    eigenpair,
    eigenvalue,
    eigenvector,
    limiting_distribution,
    reconstruct,
    slot,
)
from qw_states import (
    Branch,
    make_pair,
    make_quad,
    make_single_node,
    pair_members,
    quad_members,
)
from qw_walk import (
    CycleParams,
    WalkState,
    apply_coin,
    apply_shift,
    evolve,
    iter_averaged,
    node_distribution,
    norm,
    step,
    transition_matrix,
)

logger = structlog.get_logger(__name__)

NORM_CHUNK = 100


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def as_dict(self) -> Dict[str, object]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


CheckFn = Callable[[VerifySettings], CheckResult]

CHECKS: Dict[str, CheckFn] = {}


def check(name: str) -> Callable[[Callable[[VerifySettings], CheckResult]], CheckFn]:
    """Register a check under ``name``; registration order is report order."""

    def decorator(func: Callable[[VerifySettings], CheckResult]) -> CheckFn:
        if name in CHECKS:
            raise ValueError(f"duplicate check name {name!r}")
        CHECKS[name] = func
        return func

    return decorator


def _bounded(name: str, worst: float, tolerance: float, context: str = "") -> CheckResult:
    detail = f"max deviation {worst:.3e} (tolerance {tolerance:.0e})"
    if context:
        detail = f"{detail}; {context}"
    return CheckResult(name, bool(worst < tolerance), detail)


def _random_state(params: CycleParams, rng: np.random.Generator) -> WalkState:
    amps = rng.normal(size=(2, params.d)) + 1j * rng.normal(size=(2, params.d))
    return WalkState(params, amps / np.linalg.norm(amps))


def _all_pair_states(params: CycleParams) -> Iterable[WalkState]:
    for k in (0, 1):
        for m in range(params.m_max + 1):
            yield make_pair(params, m, k, Branch.lower)
            if m >= 1:
                yield make_pair(params, m, k, Branch.upper)


# walk


@check("norm_preservation")
def check_norm_preservation(settings: VerifySettings) -> CheckResult:
    params = CycleParams(settings.runs.norm_d)
    rng = np.random.default_rng(settings.runs.seed)
    state = _random_state(params, rng)
    worst = 0.0
    done = 0
    while done < settings.runs.norm_steps:
        chunk = min(NORM_CHUNK, settings.runs.norm_steps - done)
        state = evolve(state, chunk)
        done += chunk
        worst = max(worst, abs(norm(state) - 1.0))
    steps = f"{settings.runs.norm_steps} steps"
    return _bounded("norm_preservation", worst, settings.tolerances.norm, steps)


@check("distribution_normalization")
def check_distribution_normalization(settings: VerifySettings) -> CheckResult:
    params = CycleParams(settings.runs.norm_d)
    final = evolve(make_single_node(params, 0), settings.runs.norm_steps)
    worst = abs(float(node_distribution(final).p.sum()) - 1.0)
    return _bounded("distribution_normalization", worst, settings.tolerances.distribution_sum)


@check("step_matches_matrix")
def check_step_matches_matrix(settings: VerifySettings) -> CheckResult:
    rng = np.random.default_rng(settings.runs.seed)
    worst = 0.0
    for d in settings.grids.spectral:
        params = CycleParams(d)
        matrix = transition_matrix(params)
        state = _random_state(params, rng)
        expected = matrix @ state.vector()
        worst = max(worst, float(np.max(np.abs(step(state).vector() - expected))))
    return _bounded("step_matches_matrix", worst, settings.tolerances.matrix_step)


@check("coin_involution")
def check_coin_involution(settings: VerifySettings) -> CheckResult:
    rng = np.random.default_rng(settings.runs.seed)
    worst = 0.0
    for d in settings.grids.spectral:
        state = _random_state(CycleParams(d), rng)
        twice = apply_coin(apply_coin(state))
        worst = max(worst, float(np.max(np.abs(twice.amplitudes - state.amplitudes))))
    return _bounded("coin_involution", worst, settings.tolerances.coin_involution)


@check("shift_permutation")
def check_shift_permutation(settings: VerifySettings) -> CheckResult:
    rng = np.random.default_rng(settings.runs.seed)
    for d in settings.grids.spectral:
        state = _random_state(CycleParams(d), rng)
        shifted = apply_shift(state)
        if not np.array_equal(np.sort_complex(shifted.vector()), np.sort_complex(state.vector())):
            return CheckResult("shift_permutation", False, f"amplitudes changed for d={d}")
    return CheckResult("shift_permutation", True, "shift only permutes amplitudes")


@check("parity_confinement")
def check_parity_confinement(settings: VerifySettings) -> CheckResult:
    for d in settings.grids.closed_form:
        params = CycleParams(d)
        for v0 in (0, 1):
            nodes = np.arange(d)
            amps_state = make_single_node(params, v0)
            for t in range(settings.runs.parity_steps + 1):
                forbidden = (nodes - v0 - t) % 2 == 1
                leaked = node_distribution(amps_state).p[forbidden]
                if np.any(leaked != 0.0):
                    return CheckResult(
                        "parity_confinement", False, f"d={d}, v0={v0}, t={t}: {leaked.max():.3e}"
                    )
                amps_state = step(amps_state)
    return CheckResult("parity_confinement", True, "wrong-parity nodes stay exactly empty")


# spectral


@check("eigen_relation")
def check_eigen_relation(settings: VerifySettings) -> CheckResult:
    worst = 0.0
    where = ""
    for d in settings.grids.spectral:
        params = CycleParams(d)
        matrix = transition_matrix(params)
        for k in (0, 1):
            for j in range(d):
                vector = eigenvector(j, k, params).vector()
                value = eigenvalue(j, k, params)
                residual = float(np.linalg.norm(matrix @ vector - value * vector))
                if residual > worst:
                    worst, where = residual, f"d={d}, j={j}, k={k}"
    return _bounded("eigen_relation", worst, settings.tolerances.eigen_relation, where)


@check("orthonormal_completeness")
def check_orthonormal_completeness(settings: VerifySettings) -> CheckResult:
    worst = 0.0
    for d in settings.grids.spectral:
        params = CycleParams(d)
        columns = np.column_stack(
            [eigenvector(j, k, params).vector() for k in (0, 1) for j in range(d)]
        )
        gram = columns.conj().T @ columns
        worst = max(worst, float(np.max(np.abs(gram - np.eye(2 * d)))))
    return _bounded("orthonormal_completeness", worst, settings.tolerances.orthonormality)


@check("conjugate_symmetry")
def check_conjugate_symmetry(settings: VerifySettings) -> CheckResult:
    worst = 0.0
    for d in settings.grids.spectral:
        params = CycleParams(d)
        for k in (0, 1):
            for m in range(1, params.half):
                mirrored = eigenvalue(params.half + m, k, params)
                worst = max(worst, abs(mirrored - eigenvalue(m, k, params).conjugate()))
    return _bounded("conjugate_symmetry", worst, settings.tolerances.conjugate_symmetry)


@check("class_partition")
def check_class_partition(settings: VerifySettings) -> CheckResult:
    sizes = []
    for d in settings.grids.spectral:
        basis = SpectralBasis.build(CycleParams(d))
        sizes.append(f"d={d}:{len(basis.classes)}")
    return CheckResult("class_partition", True, "classes per size " + " ".join(sizes))


@check("decompose_reconstruct")
def check_decompose_reconstruct(settings: VerifySettings) -> CheckResult:
    rng = np.random.default_rng(settings.runs.seed)
    worst = 0.0
    for d in settings.grids.spectral:
        basis = SpectralBasis.build(CycleParams(d))
        coefficients = rng.normal(size=2 * d) + 1j * rng.normal(size=2 * d)
        coefficients /= np.linalg.norm(coefficients)
        recovered = decompose(reconstruct(coefficients, basis), basis)
        worst = max(worst, float(np.max(np.abs(recovered - coefficients))))
    return _bounded("decompose_reconstruct", worst, settings.tolerances.reconstruction)


@check("single_node_decomposition")
def check_single_node_decomposition(settings: VerifySettings) -> CheckResult:
    worst = 0.0
    for d in settings.grids.closed_form:
        params = CycleParams(d)
        basis = SpectralBasis.build(params)
        coefficients = decompose(make_single_node(params, 0), basis)
        for k in (0, 1):
            for j in range(d):
                pair = eigenpair(j, k, params)
                expected = pair.a * (1.0 + 1j * pair.b.conjugate()) / math.sqrt(2.0)
                worst = max(worst, abs(coefficients[slot(j, k, params)] - expected))
    return _bounded("single_node_decomposition", worst, settings.tolerances.decomposition)


@check("limiting_step_invariance")
def check_limiting_step_invariance(settings: VerifySettings) -> CheckResult:
    rng = np.random.default_rng(settings.runs.seed)
    worst = 0.0
    for d in settings.grids.spectral:
        params = CycleParams(d)
        basis = SpectralBasis.build(params)
        for state in (make_single_node(params, 0), _random_state(params, rng)):
            before = limiting_distribution(state, basis).p
            after = limiting_distribution(step(state), basis).p
            worst = max(worst, float(np.max(np.abs(before - after))))
    return _bounded("limiting_step_invariance", worst, settings.tolerances.limiting_invariance)


# initial states


@check("constructor_norm")
def check_constructor_norm(settings: VerifySettings) -> CheckResult:
    worst = 0.0
    for d in settings.grids.closed_form:
        params = CycleParams(d)
        states: List[WalkState] = [make_single_node(params, v) for v in range(d)]
        states.extend(_all_pair_states(params))
        states.extend(make_quad(params, m, k) for k in (0, 1) for m in range(1, params.m_max + 1))
        worst = max(worst, max(abs(norm(state) - 1.0) for state in states))
    return _bounded("constructor_norm", worst, settings.tolerances.constructor_norm)


@check("pair_frozen")
def check_pair_frozen(settings: VerifySettings) -> CheckResult:
    tol = settings.tolerances
    worst_value = 0.0
    worst_overlap = 0.0
    for d in settings.grids.closed_form:
        params = CycleParams(d)
        for k in (0, 1):
            for m in range(params.m_max + 1):
                for branch in (Branch.lower, Branch.upper):
                    if branch is Branch.upper and m == 0:
                        continue
                    first, second = pair_members(params, m, branch)
                    gap = abs(eigenvalue(first, k, params) - eigenvalue(second, k, params))
                    worst_value = max(worst_value, gap)
        state0 = make_pair(params, params.m_max, 0)
        state = state0
        for _ in range(settings.runs.frozen_steps):
            state = step(state)
            overlap = abs(np.vdot(state.vector(), state0.vector()))
            worst_overlap = max(worst_overlap, abs(overlap - 1.0))
    passed = worst_value < tol.frozen and worst_overlap < tol.frozen_overlap
    detail = f"eigenvalue gap {worst_value:.3e}, overlap drift {worst_overlap:.3e}"
    return CheckResult("pair_frozen", passed, detail)


@check("quad_conjugate_classes")
def check_quad_conjugate_classes(settings: VerifySettings) -> CheckResult:
    worst = 0.0
    for d in settings.grids.closed_form:
        params = CycleParams(d)
        for k in (0, 1):
            for m in range(1, params.m_max + 1):
                values = [eigenvalue(j, k, params) for j, _ in quad_members(params, m)]
                phase = eigenpair(m, k, params).phase
                target = [complex(np.exp(1j * phase))] * 2 + [complex(np.exp(-1j * phase))] * 2
                worst = max(worst, max(abs(v - w) for v, w in zip(values, target)))
    return _bounded("quad_conjugate_classes", worst, settings.tolerances.frozen)


# analytic


@check("single_node_closed_form")
def check_single_node_closed_form(settings: VerifySettings) -> CheckResult:
    worst = 0.0
    for d in settings.grids.closed_form:
        params = CycleParams(d)
        oracle = limiting_distribution(make_single_node(params, 0), SpectralBasis.build(params))
        closed = limiting_single_node(params, 0, check=False)
        worst = max(worst, float(np.max(np.abs(closed.p - oracle.p))))
    return _bounded("single_node_closed_form", worst, settings.tolerances.oracle)


@check("pair_closed_form")
def check_pair_closed_form(settings: VerifySettings) -> CheckResult:
    worst = 0.0
    for d in settings.grids.closed_form:
        params = CycleParams(d)
        for state_k in (0, 1):
            for m in range(params.m_max + 1):
                closed = limiting_pair(params, m).p
                for branch in (Branch.lower, Branch.upper):
                    if branch is Branch.upper and m == 0:
                        continue
                    initial = node_distribution(make_pair(params, m, state_k, branch)).p
                    worst = max(worst, float(np.max(np.abs(closed - initial))))
    return _bounded("pair_closed_form", worst, settings.tolerances.pair_closed)


@check("pair_sum_vs_closed_form")
def check_pair_sum_vs_closed_form(settings: VerifySettings) -> CheckResult:
    worst = 0.0
    cases = 0
    for d in range(4, settings.grids.pair_consistency_d_max + 1, 2):
        params = CycleParams(d)
        for m in range(1, params.m_max + 1):
            if params.half % m:
                continue
            worst = max(worst, abs(tvd_pair(params, m) - tvd_pair_closed(params, m)))
            cases += 1
    return _bounded(
        "pair_sum_vs_closed_form", worst, settings.tolerances.pair_consistency, f"{cases} cases"
    )


@check("asymptotic_odd_half")
def check_asymptotic_odd_half(settings: VerifySettings) -> CheckResult:
    for d in settings.grids.odd_half:
        value = tvd_limit_single_node_asymptotic(CycleParams(d))
        if value != 1.0 / d:
            return CheckResult("asymptotic_odd_half", False, f"d={d}: {value!r} != 1/{d}")
    return CheckResult("asymptotic_odd_half", True, "large-d branch is exactly 1/d")


@check("asymptotic_trend")
def check_asymptotic_trend(settings: VerifySettings) -> CheckResult:
    gaps = []
    for d in settings.grids.trend:
        params = CycleParams(d)
        gaps.append(abs(tvd_limit_single_node_asymptotic(params) - tvd_limit_single_node(params)))
    detail = " ".join(f"d={d}:{gap:.2e}" for d, gap in zip(settings.grids.trend, gaps))
    return CheckResult("asymptotic_trend", bool(gaps[-1] < gaps[0]), detail)


def _quad_deviation(params: CycleParams, m: int, k: int, steps: int) -> Tuple[float, List[float]]:
    worst = 0.0
    deltas: List[float] = []
    for t, mean, delta in iter_averaged(make_quad(params, m, k), steps):
        worst = max(worst, float(np.max(np.abs(mean.p - averaged_quad(params, m, k, t).p))))
        deltas.append(delta)
    return worst, deltas


@check("quad_damped_law")
def check_quad_damped_law(settings: VerifySettings) -> CheckResult:
    runs = settings.runs
    worst, deltas = _quad_deviation(CycleParams(24), 3, 0, runs.quad_steps)
    tail = float(np.mean(deltas[runs.quad_tail_from :]))
    failures: List[str] = []
    cases = 0
    for d in settings.grids.quad_law:
        params = CycleParams(d)
        for m in range(1, params.m_max + 1):
            for k in (0, 1):
                deviation, _ = _quad_deviation(params, m, k, runs.quad_grid_steps)
                cases += 1
                worst = max(worst, deviation)
                if deviation >= settings.tolerances.quad_law:
                    failures.append(f"d={d},m={m},k={k}")
    passed = worst < settings.tolerances.quad_law and tail > deltas[0]
    detail = (
        f"max deviation {worst:.3e} over {cases} grid cases; "
        f"tail mean {tail:.6f} vs initial {deltas[0]:.6f}"
    )
    if failures:
        detail += f"; failing {' '.join(failures)}"
    return CheckResult("quad_damped_law", passed, detail)


@check("figure1_limit")
def check_figure1_limit(settings: VerifySettings) -> CheckResult:
    params = CycleParams(24)
    tol = settings.tolerances
    reference = settings.runs.reference_delta
    exact = tvd_limit_single_node(params)
    asymptotic = tvd_limit_single_node_asymptotic(params)
    series = iter_averaged(make_single_node(params, 0), settings.runs.figure1_steps)
    simulated = [delta for _, _, delta in series][-1]
    passed = (
        abs(simulated - exact) < tol.figure1_simulated
        and abs(exact - reference) < tol.figure1_reference
        and abs(asymptotic - reference) < tol.figure1_reference
    )
    detail = f"simulated {simulated:.6f}, exact {exact:.6f}, asymptotic {asymptotic:.6f}"
    return CheckResult("figure1_limit", passed, detail)


@check("figure2_frozen")
def check_figure2_frozen(settings: VerifySettings) -> CheckResult:
    params = CycleParams(24)
    expected = tvd_pair(params, 3)
    series = iter_averaged(make_pair(params, 3, 0), settings.runs.frozen_steps)
    deltas = [delta for _, _, delta in series]
    spread = max(deltas) - min(deltas)
    passed = (
        spread < settings.tolerances.frozen
        and abs(deltas[0] - expected) < settings.tolerances.figure2_analytic
        and round(expected, 3) == settings.runs.reference_pair_delta
    )
    return CheckResult("figure2_frozen", passed, f"delta {expected:.6f}, spread {spread:.3e}")


def _guarded(name: str, func: CheckFn, settings: VerifySettings) -> CheckResult:
    try:
        result = func(settings)
    except Exception as exc:  # noqa: BLE001 - a raising check is a failing check
        result = CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    if not result.passed:
        logger.warning("verify.check.failed", check=name, detail=result.detail)
    return result


def run_checks(
    settings: VerifySettings,
    names: Optional[Sequence[str]] = None,
    jobs: int = 1,
) -> List[CheckResult]:
    """Run the selected checks (all by default) and return results in the order selected."""

    selected = list(CHECKS) if names is None else list(names)
    unknown = [name for name in selected if name not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {', '.join(unknown)}")
    if jobs <= 1:
        return [_guarded(name, CHECKS[name], settings) for name in selected]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_guarded, name, CHECKS[name], settings) for name in selected]
        return [future.result() for future in futures]


__all__ = ["CHECKS", "CheckResult", "check", "run_checks"]
