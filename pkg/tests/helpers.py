"""Shared random-instance generators for the test suite.

Instances are scale-normalized: unit beta blocks, r_o spectrum inside
[0.5, 3], and output matrices resampled until the gain map is well
conditioned.  Absolute closed-form/propagator comparisons at 1e-8 are only
meaningful on such instances; arbitrarily ill-scaled couplings push the true
propagator entries to 1e3-1e4 where any double-precision matrix exponential
carries ~1e-6 absolute error.
"""

from __future__ import annotations

import numpy as np

from dcobserver import assemble_augmented, make_plant, make_theta, synthesize_observer

# canonical one-mode example: position-estimating observer, its Hamiltonian
# block, and the conjugate (momentum-estimating) observer used after the swap
A_ONE_MODE = np.array(
    [
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 2.0, 0.0],
        [0.0, 0.0, 0.0, 2.0],
        [2.0, 0.0, -2.0, 0.0],
    ]
)
R_ONE_MODE = np.array(
    [
        [0.0, 0.0, -1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [-1.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]
)
A_SWAPPED = np.array(
    [
        [0.0, 0.0, 0.0, -2.0],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, -2.0, 0.0, 2.0],
        [0.0, 0.0, -2.0, 0.0],
    ]
)


def one_mode_augmented():
    plant = make_plant([[1.0], [0.0]])
    observer = synthesize_observer(plant, np.eye(2), [[1.0, 0.0]])
    return assemble_augmented(plant, observer)


def swapped_augmented():
    plant = make_plant([[0.0], [1.0]])
    observer = synthesize_observer(plant, np.eye(2), [[0.0, 1.0]])
    return assemble_augmented(plant, observer)


def random_orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    return q * np.sign(np.diag(r))


def random_spd(rng: np.random.Generator, n: int, lo: float = 0.5, hi: float = 3.0) -> np.ndarray:
    q = random_orthogonal(rng, n)
    m = q @ np.diag(rng.uniform(lo, hi, size=n)) @ q.T
    return 0.5 * (m + m.T)


def random_beta(rng: np.random.Generator, n_p: int) -> np.ndarray:
    beta = np.zeros((n_p, n_p // 2))
    for i in range(n_p // 2):
        angle = rng.uniform(0.0, 2.0 * np.pi)
        beta[2 * i : 2 * i + 2, i] = (np.cos(angle), np.sin(angle))
    return beta


def random_output_matrix(
    rng: np.random.Generator, m_p: int, n_o: int, r_o: np.ndarray
) -> np.ndarray:
    # resample until the gain map is far from rank deficiency
    for _ in range(100):
        c_o = rng.normal(size=(m_p, n_o))
        c_o /= np.linalg.norm(c_o, axis=1, keepdims=True)
        gain = c_o @ np.linalg.inv(r_o)
        if np.linalg.svd(gain, compute_uv=False)[-1] >= 0.25:
            return c_o
    raise RuntimeError("could not draw a well-conditioned output matrix")


def random_augmented(rng: np.random.Generator, n_p: int, n_o: int):
    plant = make_plant(random_beta(rng, n_p))
    r_o = random_spd(rng, n_o)
    c_o = random_output_matrix(rng, n_p // 2, n_o, r_o)
    observer = synthesize_observer(plant, r_o, c_o)
    return assemble_augmented(plant, observer)


def random_realizable(rng: np.random.Generator, n_modes: int, scale: float = 1.0):
    """Random commutation-preserving dynamics a = 2 theta r with ||a||_2 = scale.

    Indefinite r gives real eigenvalue pairs +-lambda, so the flow grows
    exponentially; normalizing the norm keeps sampled flows bounded enough
    for absolute conservation checks in double precision.
    """
    ccr = make_theta(n_modes)
    g = rng.normal(size=(ccr.n, ccr.n))
    r = 0.5 * (g + g.T)
    a = 2.0 * (ccr.theta @ r)
    factor = scale / max(1e-12, float(np.linalg.norm(a, 2)))
    return a * factor, ccr, r * factor
