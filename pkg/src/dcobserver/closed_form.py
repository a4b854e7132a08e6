"""Analytic coefficient maps for the augmented plant-observer dynamics.

With b = 2 theta_2 r_o and e(t) = expm(b t), the rows of expm(a_a t) split
into a plant block and an observer block:

    x_o(t) = e(t) x_o(0) + (e(t) - I) inv(r_o) alpha beta.T x_p(0)

    x_p(t) = x_p(0)
             - 2 t p inv(r_o) k x_p(0)
             - p (e(t) - I) inv(r_o) theta_2 inv(r_o) k x_p(0)
             - p (e(t) - I) inv(r_o) theta_2 x_o(0)

with p = theta_1 beta alpha.T and k = alpha beta.T.  The linear-in-t term is
the secular drift; it is annihilated by c_p because beta.T theta_1 beta = 0.
These expressions are exact for any symmetric positive definite r_o (the
middle factor inv(r_o) theta_2 inv(r_o) does not commute into a single
inv(r_o)^2 unless r_o commutes with theta_2) and serve as the oracle for the
numerical propagation.  A quadrature evaluation of the underlying
integral representation is provided as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import expm, is_positive_definite
from .synthesis import AugmentedSystem

SYMPLECTIC_TOL = 1e-9
GAIN_TOL = 1e-10


@dataclass(frozen=True)
class CoefficientMap:
    """Real matrix mapping the initial variables to the time-t variables."""

    t: float
    matrix: np.ndarray


def _pieces(aug: AugmentedSystem):
    plant, obs = aug.plant, aug.observer
    theta_2 = aug.theta_2
    p = aug.theta_1 @ plant.beta @ obs.alpha.T
    k = obs.alpha @ plant.beta.T
    r_inv = np.linalg.inv(obs.r_o)
    b = 2.0 * (theta_2 @ obs.r_o)
    return plant.n_p, obs.n_o, theta_2, p, k, r_inv, b


def observer_block(t: float, aug: AugmentedSystem) -> np.ndarray:
    """Rows of expm(a_a t) that propagate the observer variables."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    n_p, n_o, _, _, k, r_inv, b = _pieces(aug)
    e = expm(b * t)
    return np.hstack([(e - np.eye(n_o)) @ r_inv @ k, e])


def plant_block(t: float, aug: AugmentedSystem) -> np.ndarray:
    """Rows of expm(a_a t) that propagate the plant variables.

    Contains the secular term -2 t p inv(r_o) k acting on x_p(0); that term
    is confined to quadratures outside the estimated output.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    n_p, n_o, theta_2, p, k, r_inv, b = _pieces(aug)
    e_minus_i = expm(b * t) - np.eye(n_o)
    on_xp = (
        np.eye(n_p)
        - 2.0 * t * (p @ r_inv @ k)
        - p @ e_minus_i @ r_inv @ theta_2 @ r_inv @ k
    )
    on_xo = -(p @ e_minus_i @ r_inv @ theta_2)
    return np.hstack([on_xp, on_xo])


def plant_secular_matrix(aug: AugmentedSystem) -> np.ndarray:
    """Coefficient of t in the plant rows (on the x_p(0) block)."""
    _, _, _, p, k, r_inv, _ = _pieces(aug)
    return -2.0 * (p @ r_inv @ k)


def coefficient_map(t: float, aug: AugmentedSystem) -> CoefficientMap:
    """Full analytic transition matrix, plant rows stacked over observer rows."""
    matrix = np.vstack([plant_block(t, aug), observer_block(t, aug)])
    return CoefficientMap(t=float(t), matrix=matrix)


def output_maps(t: float, aug: AugmentedSystem) -> tuple[np.ndarray, np.ndarray]:
    """Coefficient rows of the estimated output z_p and the observer output z_o.

    z_p rows are constant equal to [c_p 0]; z_o rows are c_o applied to the
    observer block and their time average tends to [c_p 0].  Requires the
    gain condition to hold.
    """
    obs = aug.observer
    residual = float(
        np.max(np.abs(obs.c_o @ np.linalg.solve(obs.r_o, obs.alpha) + np.eye(aug.plant.m_p)))
    )
    if residual > GAIN_TOL:
        raise ValueError(f"observer gain condition violated: residual {residual:.3e}")
    return aug.plant_output, obs.c_o @ observer_block(t, aug)


def exp_norm_bound(r_o) -> float:
    """sqrt(lambda_max / lambda_min) of a positive definite r_o.

    Conservation of (1/2) x.T r_o x along x' = 2 theta_2 r_o x makes this an
    upper bound for ||expm(2 theta_2 r_o t)|| at every t.
    """
    report = is_positive_definite(np.asarray(r_o, dtype=float))
    if not report.positive_definite:
        raise ValueError(f"r_o is not positive definite (lambda_min = {report.lambda_min:.3e})")
    return float(np.sqrt(report.lambda_max / report.lambda_min))


def plant_block_quadrature(t: float, aug: AugmentedSystem, nodes: int = 12) -> np.ndarray:
    """Plant rows evaluated from the integral representation.

        x_p(t) = x_p(0) + 4 p [int_0^t e^{b(t-tau)} tau dtau] theta_2 k x_p(0)
                        + 2 p [int_0^t e^{b(t-tau)} dtau] x_o(0)

    Integrals are done by panelled Gauss-Legendre quadrature with panel
    length tied to ||b||; independent of the expanded form, for use as a test
    oracle.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    n_p, n_o, theta_2, p, k, _, b = _pieces(aug)
    moment_0 = np.zeros((n_o, n_o))
    moment_1 = np.zeros((n_o, n_o))
    if t > 0:
        panels = max(1, int(np.ceil(t * max(1.0, float(np.linalg.norm(b, 2))) / 1.5)))
        x, w = np.polynomial.legendre.leggauss(nodes)
        edges = np.linspace(0.0, t, panels + 1)
        for lo, hi in zip(edges[:-1], edges[1:]):
            mid = 0.5 * (lo + hi)
            half = 0.5 * (hi - lo)
            for xi, wi in zip(x, w):
                tau = mid + half * xi
                kernel = wi * half * expm(b * (t - tau))
                moment_0 += kernel
                moment_1 += tau * kernel
    on_xp = np.eye(n_p) + 4.0 * (p @ moment_1 @ theta_2 @ k)
    on_xo = 2.0 * (p @ moment_0)
    return np.hstack([on_xp, on_xo])
