import json
import math

import numpy as np
import pytest

from src.Model.QuantumState import DensityMatrix, InvalidStateError, \
    PureState, RankOutOfRangeError, SeedError, StateFileError, \
    ZeroVectorError, check_seed, child_seed, density_from_pure, \
    haar_random_state, haar_random_states, load_state, make_generator, \
    normalize, random_density_matrix, save_state, state_purity


def test_normalize_scales_to_unit_norm():
    psi = normalize([3, 4j])
    assert np.allclose(psi.amplitudes, [0.6, 0.8j])
    assert psi.dim == 2


def test_normalize_accepts_pairs():
    psi = normalize([[1, 0], [0, 1]])
    root = 1 / math.sqrt(2)
    assert np.allclose(psi.amplitudes, [root, 1j * root])


def test_normalize_rejects_zero_vector():
    with pytest.raises(ZeroVectorError):
        normalize([0, 0, 0])


def test_pure_state_checks_norm_and_is_read_only():
    with pytest.raises(InvalidStateError):
        PureState([1, 1])
    psi = PureState([1, 0])
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 0


@pytest.mark.parametrize("dim", [2, 3, 5, 7])
def test_haar_states_are_normalized(dim):
    states = haar_random_states(dim, 50, seed=11)
    assert states.shape == (50, dim)
    assert np.allclose(np.linalg.norm(states, axis=1), 1.0, atol=1e-12)


def test_haar_state_is_reproducible():
    first = haar_random_state(5, seed=42)
    second = haar_random_state(5, seed=42)
    assert first == second
    assert first != haar_random_state(5, seed=43)


def test_haar_mean_overlap_with_fixed_vector():
    # E|<0|psi>|^2 = 1/N for Haar states
    states = haar_random_states(4, 20000, seed=3)
    mean = np.mean(np.abs(states[:, 0]) ** 2)
    assert mean == pytest.approx(0.25, abs=0.01)


def test_seed_range():
    assert check_seed(2 ** 64 - 1) == 2 ** 64 - 1
    with pytest.raises(SeedError):
        check_seed(-1)
    with pytest.raises(SeedError):
        check_seed(2 ** 64)


def test_child_streams_are_independent_and_stable():
    a = make_generator(7, 0).standard_normal(4)
    b = make_generator(7, 1).standard_normal(4)
    assert not np.allclose(a, b)
    assert np.array_equal(a, make_generator(7, 0).standard_normal(4))
    assert child_seed(7, 3) == child_seed(7, 3)
    assert child_seed(7, 3) != child_seed(7, 4)


@pytest.mark.parametrize("rank", [1, 2, 3])
def test_random_density_matrix_is_valid(rank):
    rho = random_density_matrix(3, rank, seed=5)
    assert np.allclose(rho.entries, rho.entries.conj().T)
    assert np.trace(rho.entries).real == pytest.approx(1.0, abs=1e-12)
    assert np.linalg.eigvalsh(rho.entries)[0] > -1e-10
    assert 1 / 3 - 1e-12 <= state_purity(rho) <= 1 + 1e-12
    assert np.linalg.matrix_rank(rho.entries, tol=1e-9) == rank


def test_forced_weights():
    rho = random_density_matrix(2, 2, seed=3, weights=[0.5, 0.5])
    assert 0.5 - 1e-12 <= state_purity(rho) <= 1 + 1e-12
    # Weights are renormalized, so only their ratios matter
    scaled = random_density_matrix(2, 2, seed=3, weights=[2, 2])
    assert np.allclose(scaled.entries, rho.entries, atol=1e-15)
    # All weight on one state leaves it pure
    single = random_density_matrix(2, 2, seed=3, weights=[1, 0])
    assert state_purity(single) == pytest.approx(1.0, abs=1e-12)


def test_rank_one_density_matrix_is_pure():
    rho = random_density_matrix(4, 1, seed=9)
    assert state_purity(rho) == pytest.approx(1.0, abs=1e-12)


def test_rank_out_of_range():
    with pytest.raises(RankOutOfRangeError):
        random_density_matrix(3, 0, seed=1)
    with pytest.raises(RankOutOfRangeError):
        random_density_matrix(3, 4, seed=1)


def test_maximally_mixed_purity():
    rho = DensityMatrix(np.eye(4) / 4)
    assert state_purity(rho) == pytest.approx(0.25)


def test_density_matrix_rejects_invalid_operators():
    with pytest.raises(InvalidStateError):
        DensityMatrix([[1, 1], [0, 0]])
    with pytest.raises(InvalidStateError):
        DensityMatrix(np.eye(2))
    with pytest.raises(InvalidStateError):
        DensityMatrix([[1.5, 0], [0, -0.5]])


def test_density_from_pure_has_unit_purity():
    rho = density_from_pure(haar_random_state(3, seed=2))
    assert state_purity(rho) == pytest.approx(1.0, abs=1e-12)


def test_state_files(tmp_path):
    psi = haar_random_state(3, seed=8)
    path = tmp_path.joinpath("psi.json")
    save_state(psi, path)
    data = json.loads(path.read_text())
    assert data["dim"] == 3 and len(data["amplitudes"]) == 3
    assert np.allclose(load_state(path).amplitudes, psi.amplitudes,
                       atol=1e-15)

    rho = random_density_matrix(3, 2, seed=8)
    save_state(rho, tmp_path.joinpath("rho.json"))
    loaded = load_state(tmp_path.joinpath("rho.json"))
    assert isinstance(loaded, DensityMatrix)
    assert np.allclose(loaded.entries, rho.entries, atol=1e-15)


def test_malformed_state_files(tmp_path):
    path = tmp_path.joinpath("bad.json")
    path.write_text('{"dim": 3, "amplitudes": [[1, 0], [0, 0]]}')
    with pytest.raises(StateFileError):
        load_state(path)
    path.write_text('{"dim": 2, "amplitudes": [[1, 0], [1, 0]]}')
    with pytest.raises(StateFileError):
        load_state(path)
    path.write_text('not json')
    with pytest.raises(StateFileError):
        load_state(path)
