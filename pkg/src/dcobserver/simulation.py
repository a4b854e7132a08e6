"""Propagation of (piecewise) dynamics on a time grid, running averages, diagnostics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ccr import CommutationStructure
from .closed_form import exp_norm_bound
from .linalg import expm, spectral_norm
from .synthesis import AugmentedSystem

BOUNDARY_TOL = 1e-9


@dataclass(frozen=True)
class Segment:
    """Constant dynamics ``a`` active for ``duration`` time units."""

    a: np.ndarray
    duration: float

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"segment dynamics must be square, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("segment dynamics contain non-finite entries")
        if not self.duration > 0:
            raise ValueError(f"segment duration must be positive, got {self.duration}")
        object.__setattr__(self, "a", a)


@dataclass(frozen=True)
class PropagatorSeries:
    """Transition matrices sampled on a grid; maps[0] is the identity."""

    times: np.ndarray
    maps: np.ndarray

    @property
    def dim(self) -> int:
        return self.maps.shape[1]


@dataclass(frozen=True)
class AverageSeries:
    """Running averages (1/T) int_0^T Phi(t) dt at T = times[k] (t = 0 excluded)."""

    times: np.ndarray
    averages: np.ndarray


def uniform_grid(t_end: float, dt: float) -> np.ndarray:
    """Uniform grid over [0, t_end]; the step is adjusted to hit t_end exactly."""
    if t_end <= 0 or dt <= 0 or dt > t_end:
        raise ValueError(f"need 0 < dt <= t_end, got dt={dt}, t_end={t_end}")
    steps = max(1, int(round(t_end / dt)))
    grid = (t_end / steps) * np.arange(steps + 1)
    grid[-1] = t_end
    return grid


def schedule_grid(segments: Sequence[Segment], dt: float) -> np.ndarray:
    """Union of per-segment uniform grids; every segment boundary is a grid point."""
    if not segments:
        raise ValueError("empty schedule")
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    pieces = [np.array([0.0])]
    t0 = 0.0
    for seg in segments:
        steps = max(1, int(round(seg.duration / dt)))
        local = t0 + (seg.duration / steps) * np.arange(1, steps + 1)
        local[-1] = t0 + seg.duration
        pieces.append(local)
        t0 += seg.duration
    return np.concatenate(pieces)


def _check_grid(times: np.ndarray) -> None:
    if times.ndim != 1 or times.size < 2:
        raise ValueError("grid must be a 1-D sequence with at least two points")
    if times[0] != 0.0:
        raise ValueError(f"grid must start at 0, got {times[0]}")
    if np.any(np.diff(times) <= 0):
        raise ValueError("grid must be strictly increasing")


def propagate(a, grid) -> PropagatorSeries:
    """Transition matrices expm(a t_k) by stepwise composition.

    One matrix exponential is computed per distinct step size; successive
    maps are obtained as expm(a dt) @ previous.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"a must be square, got shape {a.shape}")
    times = np.asarray(grid, dtype=float)
    _check_grid(times)
    n = a.shape[0]
    maps = np.empty((times.size, n, n))
    maps[0] = np.eye(n)
    step_cache: dict[float, np.ndarray] = {}
    for k in range(1, times.size):
        dt = float(times[k] - times[k - 1])
        step = step_cache.get(dt)
        if step is None:
            step = expm(a * dt)
            step_cache[dt] = step
        maps[k] = step @ maps[k - 1]
    return PropagatorSeries(times=times, maps=maps)


def propagate_schedule(segments: Sequence[Segment], grid) -> PropagatorSeries:
    """Left-composed piecewise propagator over a schedule of Segments.

    The grid must span exactly [0, sum of durations] and contain every
    segment boundary; within each step only one segment may be active.
    """
    if not segments:
        raise ValueError("empty schedule")
    times = np.asarray(grid, dtype=float)
    _check_grid(times)
    n = segments[0].a.shape[0]
    for seg in segments:
        if seg.a.shape != (n, n):
            raise ValueError("all segments must share the same dimension")
    boundaries = np.cumsum([seg.duration for seg in segments])
    if abs(times[-1] - boundaries[-1]) > BOUNDARY_TOL:
        raise ValueError(
            f"grid ends at {times[-1]} but the schedule spans [0, {boundaries[-1]}]"
        )
    maps = np.empty((times.size, n, n))
    maps[0] = np.eye(n)
    seg_i = 0
    step_cache: dict[tuple[int, float], np.ndarray] = {}
    for k in range(1, times.size):
        t_prev, t_cur = times[k - 1], times[k]
        while seg_i + 1 < len(segments) and t_prev >= boundaries[seg_i] - BOUNDARY_TOL:
            seg_i += 1
        if t_cur > boundaries[seg_i] + BOUNDARY_TOL:
            raise ValueError(
                f"segment boundary t={boundaries[seg_i]} is not a grid point "
                f"(step [{t_prev}, {t_cur}] straddles it)"
            )
        dt = float(t_cur - t_prev)
        key = (seg_i, dt)
        step = step_cache.get(key)
        if step is None:
            step = expm(segments[seg_i].a * dt)
            step_cache[key] = step
        maps[k] = step @ maps[k - 1]
    return PropagatorSeries(times=times, maps=maps)


def time_average(series: PropagatorSeries) -> AverageSeries:
    """Running averages by the composite trapezoid rule on the stored grid.

    The average at T -> 0 tends to the identity by continuity; T = 0 itself
    is excluded from the output.
    """
    times, maps = series.times, series.maps
    if times.size < 2:
        raise ValueError("series must contain at least one step beyond t=0")
    dt = np.diff(times)
    increments = 0.5 * dt[:, None, None] * (maps[1:] + maps[:-1])
    integrals = np.cumsum(increments, axis=0)
    averages = integrals / times[1:, None, None]
    return AverageSeries(times=times[1:].copy(), averages=averages)


def exact_propagator_average(a, t_end: float) -> np.ndarray:
    """(1/T) int_0^T expm(a t) dt = inv(a) (expm(a T) - I) / T for nonsingular a.

    Closed-form cross-check for single-segment averages; the augmented
    dynamics themselves are singular, but the observer block 2 theta_2 r_o
    is not.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"a must be square, got shape {a.shape}")
    if t_end <= 0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    if np.linalg.cond(a) > 1e12:
        raise ValueError("dynamics matrix is (numerically) singular; no closed-form average")
    return np.linalg.solve(a, expm(a * t_end) - np.eye(a.shape[0])) / t_end


@dataclass(frozen=True)
class InvariantReport:
    """Worst-case conservation residuals over a propagator series."""

    max_ccr_residual: float
    max_energy_residual: float


def invariant_monitor(series: PropagatorSeries, ccr: CommutationStructure, r_a) -> InvariantReport:
    """Max over the grid of |Phi theta Phi.T - theta| and |Phi.T r_a Phi - r_a|."""
    r_a = np.asarray(r_a, dtype=float)
    theta = ccr.theta
    if series.dim != ccr.n or r_a.shape != (ccr.n, ccr.n):
        raise ValueError("series, ccr and r_a dimensions disagree")
    maps = series.maps
    maps_t = maps.transpose(0, 2, 1)
    ccr_res = float(np.max(np.abs(maps @ theta @ maps_t - theta)))
    energy_res = float(np.max(np.abs(maps_t @ r_a @ maps - r_a)))
    return InvariantReport(max_ccr_residual=ccr_res, max_energy_residual=energy_res)


@dataclass(frozen=True)
class ConvergenceReport:
    """Decay of d(T) = ||averaged (z_p - z_o) coefficient rows at T||."""

    t_values: np.ndarray
    d_values: np.ndarray
    bound_constant: float
    max_t_times_d: float
    decay_rate: float
    converged: bool


def _row_norms(stack: np.ndarray) -> np.ndarray:
    # largest singular value per stacked row block
    return np.linalg.svd(stack, compute_uv=False)[:, 0]


def convergence_diagnostics(
    aug: AugmentedSystem, horizon: float, dt: float, tol: float = 1e-6
) -> ConvergenceReport:
    """Check the time-average convergence of the observer output rows.

    d(T) is evaluated on a geometric ladder of T values up to ``horizon`` and
    compared against bound_constant / T, the constant coming from the
    exponential norm bound of the observer block.  ``converged`` fails for
    couplings that transfer no information (for example alpha = 0).
    """
    grid = uniform_grid(horizon, dt)
    series = propagate(aug.a_a, grid)
    averages = time_average(series)
    diff_rows = aug.plant_output - aug.observer_output
    d_all = _row_norms(diff_rows @ averages.averages)

    t_ladder = []
    value = horizon
    while value >= 20.0 * dt:
        t_ladder.append(value)
        value /= 2.0
    if not t_ladder:
        t_ladder = [horizon]
    indices = [int(np.argmin(np.abs(averages.times - t))) for t in sorted(t_ladder)]
    t_sel = averages.times[indices]
    d_sel = d_all[indices]

    obs = aug.observer
    r_inv = np.linalg.inv(obs.r_o)
    kappa = exp_norm_bound(obs.r_o)
    mixing = np.hstack([r_inv @ obs.alpha @ aug.plant.beta.T, np.eye(obs.n_o)])
    bound_constant = (
        0.5
        * (kappa + 1.0)
        * spectral_norm(r_inv @ aug.theta_2)
        * spectral_norm(obs.c_o)
        * spectral_norm(mixing)
    )

    converged = bool(np.all(d_sel <= bound_constant / t_sel + tol))
    positive = np.maximum(d_sel, 1e-300)
    slope = float(np.polyfit(np.log(t_sel), np.log(positive), 1)[0]) if t_sel.size > 1 else 0.0
    return ConvergenceReport(
        t_values=t_sel,
        d_values=d_sel,
        bound_constant=float(bound_constant),
        max_t_times_d=float(np.max(averages.times * d_all)),
        decay_rate=slope,
        converged=converged,
    )
