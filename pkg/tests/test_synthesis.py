"""Tests for observer synthesis and assembly of the augmented system."""

import dataclasses

import numpy as np
import pytest

from dcobserver import (
    ObserverSpec,
    assemble_augmented,
    eigenvalues,
    eigenvalues_mp,
    expm,
    make_plant,
    make_theta,
    synthesize_observer,
    verify_observer_conditions,
)
from helpers import (
    A_ONE_MODE,
    A_SWAPPED,
    R_ONE_MODE,
    one_mode_augmented,
    random_augmented,
    swapped_augmented,
)


def test_alpha_for_position_observer():
    plant = make_plant([[1.0], [0.0]])
    obs = synthesize_observer(plant, np.eye(2), [[1.0, 0.0]])
    assert np.allclose(obs.alpha, [[-1.0], [0.0]], atol=1e-14)


def test_alpha_for_momentum_observer():
    plant = make_plant([[0.0], [1.0]])
    obs = synthesize_observer(plant, np.eye(2), [[0.0, 1.0]])
    assert np.allclose(obs.alpha, [[0.0], [-1.0]], atol=1e-14)


def test_alpha_scales_with_observer_hamiltonian():
    # c_o inv(2I) alpha = -1  =>  alpha = (-2, 0)
    plant = make_plant([[1.0], [0.0]])
    obs = synthesize_observer(plant, 2.0 * np.eye(2), [[1.0, 0.0]])
    assert np.allclose(obs.alpha, [[-2.0], [0.0]], atol=1e-13)


def test_scaling_invariance_of_gain_condition():
    plant = make_plant([[1.0], [0.0]])
    base = synthesize_observer(plant, np.eye(2), [[1.0, 0.0]])
    for c in (0.5, 3.0, 10.0):
        scaled = synthesize_observer(plant, c * np.eye(2), [[1.0, 0.0]])
        assert np.allclose(scaled.alpha, c * base.alpha, atol=1e-12 * c)
        assert np.allclose(scaled.r_c, c * base.r_c, atol=1e-12 * c)


def test_minimum_norm_gain_when_underdetermined():
    # n_o > n_p: alpha must carry no component in the null space of the gain map
    rng = np.random.default_rng(2)
    plant = make_plant([[1.0], [0.0]])
    r_o = np.diag([1.0, 2.0, 3.0, 4.0])
    c_o = rng.normal(size=(1, 4))
    obs = synthesize_observer(plant, r_o, c_o)
    gain_map = c_o @ np.linalg.inv(r_o)
    assert np.max(np.abs(gain_map @ obs.alpha + np.eye(1))) <= 1e-12
    projector = np.linalg.pinv(gain_map) @ gain_map
    assert np.max(np.abs((np.eye(4) - projector) @ obs.alpha)) <= 1e-12


def test_rejects_indefinite_observer_hamiltonian():
    plant = make_plant([[1.0], [0.0]])
    with pytest.raises(ValueError, match="positive definite"):
        synthesize_observer(plant, np.diag([1.0, -1.0]), [[1.0, 0.0]])


def test_rejects_rank_deficient_output_matrix():
    plant = make_plant([[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 1.0]])
    c_o = np.array([[1.0, 0.0, 1.0, 0.0], [2.0, 0.0, 2.0, 0.0]])
    with pytest.raises(ValueError, match="rank deficient"):
        synthesize_observer(plant, np.eye(4), c_o)


def test_rejects_moving_plant():
    plant = make_plant([[1.0], [0.0]], a_p=2.0 * np.array([[0.0, 1.0], [-1.0, 0.0]]))
    with pytest.raises(ValueError, match="static"):
        synthesize_observer(plant, np.eye(2), [[1.0, 0.0]])


def test_rejects_wrong_output_shape():
    plant = make_plant([[1.0], [0.0]])
    with pytest.raises(ValueError, match="c_o"):
        synthesize_observer(plant, np.eye(2), [[1.0, 0.0, 0.0]])


def test_rejects_odd_observer_dimension():
    plant = make_plant([[1.0], [0.0]])
    with pytest.raises(ValueError, match="even"):
        synthesize_observer(plant, np.eye(3), [[1.0, 0.0, 0.0]])


def test_assemble_reproduces_one_mode_matrices_exactly():
    aug = one_mode_augmented()
    assert np.array_equal(aug.a_a, A_ONE_MODE)
    assert np.array_equal(aug.r_a, R_ONE_MODE)
    assert np.array_equal(aug.plant_output, [[1.0, 0.0, 0.0, 0.0]])
    assert np.array_equal(aug.observer_output, [[0.0, 0.0, 1.0, 0.0]])


def test_assemble_reproduces_swapped_observer_exactly():
    aug = swapped_augmented()
    assert np.array_equal(aug.a_a, A_SWAPPED)


def test_assemble_decoupled_observer_is_block_diagonal():
    plant = make_plant([[1.0], [0.0]])
    r_o = np.array([[2.0, 0.5], [0.5, 1.0]])
    spec = ObserverSpec(
        n_o=2,
        r_o=r_o,
        alpha=np.zeros((2, 1)),
        c_o=np.array([[1.0, 0.0]]),
        r_c=np.zeros((2, 2)),
    )
    aug = assemble_augmented(plant, spec)
    theta_2 = make_theta(1).theta
    expected = np.zeros((4, 4))
    expected[2:, 2:] = 2.0 * theta_2 @ r_o
    assert np.array_equal(aug.a_a, expected)


def test_assemble_rejects_dimension_mismatch():
    plant = make_plant([[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 1.0]])
    other = make_plant([[1.0], [0.0]])
    obs = synthesize_observer(other, np.eye(2), [[1.0, 0.0]])
    with pytest.raises(ValueError):
        assemble_augmented(plant, obs)


def test_observer_spec_shape_validation():
    with pytest.raises(ValueError):
        ObserverSpec(n_o=2, r_o=np.eye(3), alpha=np.zeros((2, 1)), c_o=np.zeros((1, 2)), r_c=np.zeros((2, 2)))
    with pytest.raises(ValueError):
        ObserverSpec(n_o=3, r_o=np.eye(3), alpha=np.zeros((3, 1)), c_o=np.zeros((1, 3)), r_c=np.zeros((2, 3)))


def test_verify_conditions_on_canonical_system():
    report = verify_observer_conditions(one_mode_augmented())
    assert report.r_o_lambda_min == pytest.approx(1.0)
    assert report.gain_residual <= 1e-12
    assert report.beta_block_valid
    assert report.beta_skew_residual == 0.0
    assert report.output_annihilation_residual == 0.0
    assert report.realizability_residual == 0.0
    assert report.spectrum_max_abs_real <= 1e-12
    expected = np.sort(np.array([0.0 + 0j, 0.0 + 0j, 2j, -2j]))
    assert np.allclose(np.sort(report.spectrum), expected, atol=1e-9)
    assert report.passes(1e-8)


def test_verify_conditions_flags_perturbed_dynamics():
    aug = one_mode_augmented()
    perturbed = aug.a_a.copy()
    perturbed[0, 0] = 0.1
    broken = dataclasses.replace(aug, a_a=perturbed)
    report = verify_observer_conditions(broken)
    assert report.realizability_residual > 1e-3
    assert not report.passes(1e-8)


def test_observer_block_spectrum_is_pure_rotation():
    report = eigenvalues(2.0 * make_theta(1).theta @ np.eye(2))
    assert np.allclose(np.sort(report.eigenvalues), np.sort(np.array([2j, -2j])), atol=1e-12)


def test_estimated_rows_annihilate_the_flow():
    rng = np.random.default_rng(8)
    for _ in range(10):
        aug = random_augmented(rng, int(rng.choice([2, 4])), int(rng.choice([2, 4])))
        rows = aug.plant_output
        for t in rng.uniform(0.0, 10.0, size=6):
            assert np.max(np.abs(rows @ expm(aug.a_a * t) - rows)) <= 1e-10


def test_assembled_spectra_stay_on_imaginary_axis():
    rng = np.random.default_rng(13)
    for _ in range(10):
        aug = random_augmented(rng, int(rng.choice([2, 4])), int(rng.choice([2, 4])))
        assert eigenvalues_mp(aug.a_a).max_abs_real_part <= 1e-9


@pytest.mark.parametrize("n_p,n_o", [(2, 2), (2, 4), (4, 2), (4, 4), (6, 4)])
def test_random_valid_observers_verify_cleanly(n_p, n_o):
    rng = np.random.default_rng(100 * n_p + n_o)
    for _ in range(5):
        report = verify_observer_conditions(random_augmented(rng, n_p, n_o))
        assert report.r_o_lambda_min > 0
        assert report.beta_block_valid
        assert report.gain_residual <= 1e-8
        assert report.beta_skew_residual <= 1e-8
        assert report.output_annihilation_residual <= 1e-8
        assert report.realizability_residual <= 1e-8
        assert report.spectrum_max_abs_real <= 1e-8
