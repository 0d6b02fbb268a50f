"""
Dense pure and mixed state representations, Haar sampling and the JSON
state file format.

Pure state file:      {"dim": N, "amplitudes": [[re, im], ...]}
Density matrix file:  {"dim": N, "rows": [[[re, im], ...], ...]}
"""
import json
import logging

import numpy as np

from src import constants
from src.Model.OutputFiles import atomic_write


class ZeroVectorError(Exception):
    pass


class RankOutOfRangeError(Exception):
    pass


class InvalidStateError(Exception):
    pass


class DimMismatchError(Exception):
    pass


class StateFileError(Exception):
    pass


class SeedError(Exception):
    pass


SEED_MAX = 2 ** 64


def check_seed(seed):
    """
    Validate a seed as a 64-bit unsigned integer.
    :param seed: integer seed.
    :return: the seed as int.
    """
    try:
        seed = int(seed)
    except (TypeError, ValueError) as e:
        raise SeedError("Seed must be an integer, got %r" % (seed,)) from e
    if not 0 <= seed < SEED_MAX:
        raise SeedError("Seed must be a 64-bit unsigned integer, got %d"
                        % seed)
    return seed


def make_generator(seed, *stream):
    """
    Build the PCG64 generator used for every random draw. Extra integers
    in stream derive an independent child stream, e.g. (seed, restart).
    :param seed: 64-bit unsigned seed.
    :param stream: optional integers selecting a child stream.
    :return: numpy Generator.
    """
    entropy = [check_seed(seed)] + [int(s) for s in stream]
    if not stream:
        entropy = entropy[0]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def child_seed(seed, index):
    """
    Independent 64-bit seed for item index of a seeded batch.
    """
    sequence = np.random.SeedSequence([check_seed(seed), int(index)])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def _as_complex_vector(raw):
    """Accept complex numbers or (re, im) pairs."""
    array = np.asarray(raw)
    if array.ndim == 2 and array.shape[1] == 2 \
            and not np.iscomplexobj(array):
        array = array[:, 0] + 1j * array[:, 1]
    return np.array(array, dtype=np.complex128).reshape(-1)


class PureState:
    """
    Unit-norm complex amplitude vector. The amplitudes are stored as a
    read-only complex128 array; the norm is checked once on construction.
    """

    def __init__(self, amplitudes):
        amplitudes = _as_complex_vector(amplitudes)
        if amplitudes.size == 0:
            raise InvalidStateError("A state needs at least one amplitude")
        if not np.all(np.isfinite(amplitudes)):
            raise InvalidStateError("Amplitudes must be finite")
        norm_sq = float(np.sum(np.abs(amplitudes) ** 2))
        if abs(norm_sq - 1.0) > constants.NORM_TOLERANCE:
            raise InvalidStateError(
                "Squared norm %.17g differs from 1" % norm_sq)
        amplitudes.setflags(write=False)
        self.amplitudes = amplitudes

    @property
    def dim(self):
        return self.amplitudes.shape[0]

    def __eq__(self, other):
        if not isinstance(other, PureState):
            return NotImplemented
        return np.array_equal(self.amplitudes, other.amplitudes)

    def __hash__(self):
        return hash(self.amplitudes.tobytes())

    def __repr__(self):
        return "PureState(dim=%d)" % self.dim

    def to_dict(self):
        return {"dim": self.dim,
                "amplitudes": [[float(a.real), float(a.imag)]
                               for a in self.amplitudes]}


class DensityMatrix:
    """
    Hermitian, positive semidefinite, unit-trace N x N operator.
    Validation happens on construction only.
    """

    def __init__(self, entries):
        entries = np.asarray(entries)
        if entries.ndim == 3 and entries.shape[2] == 2 \
                and not np.iscomplexobj(entries):
            entries = entries[..., 0] + 1j * entries[..., 1]
        entries = np.array(entries, dtype=np.complex128)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] \
                or entries.shape[0] == 0:
            raise InvalidStateError("Density matrix must be square")
        if not np.all(np.isfinite(entries)):
            raise InvalidStateError("Entries must be finite")
        if np.max(np.abs(entries - entries.conj().T)) \
                > constants.HERMITIAN_TOLERANCE:
            raise InvalidStateError("Density matrix is not Hermitian")
        trace = np.trace(entries)
        if abs(trace - 1.0) > constants.TRACE_TOLERANCE:
            raise InvalidStateError("Trace %r differs from 1" % trace)
        smallest = np.linalg.eigvalsh(entries)[0]
        if smallest < constants.EIGENVALUE_FLOOR:
            raise InvalidStateError(
                "Density matrix has negative eigenvalue %.3g" % smallest)
        entries.setflags(write=False)
        self.entries = entries

    @property
    def dim(self):
        return self.entries.shape[0]

    def __repr__(self):
        return "DensityMatrix(dim=%d)" % self.dim

    def to_dict(self):
        return {"dim": self.dim,
                "rows": [[[float(a.real), float(a.imag)] for a in row]
                         for row in self.entries]}


def normalize(raw):
    """
    Scale a nonzero complex vector to unit norm.
    :param raw: sequence of complex numbers or (re, im) pairs.
    :return: PureState pointing in the same direction.
    """
    vector = _as_complex_vector(raw)
    if not np.all(np.isfinite(vector)):
        raise InvalidStateError("Amplitudes must be finite")
    if vector.size == 0 or np.all(np.abs(vector) < constants.ZERO_MAGNITUDE):
        raise ZeroVectorError("Cannot normalize the zero vector")
    return PureState(vector / np.linalg.norm(vector))


def haar_random_states(dim, count, seed):
    """
    Draw count Haar-random pure states as a (count, dim) array. Each state
    takes 2*dim standard normals from a PCG64 stream seeded with seed,
    read as (re, im) pairs, then normalized.
    """
    if dim < 1:
        raise InvalidStateError("Dimension must be positive")
    rng = make_generator(seed)
    draws = rng.standard_normal((count, dim, 2))
    vectors = draws[..., 0] + 1j * draws[..., 1]
    return vectors / np.linalg.norm(vectors, axis=1, keepdims=True)


def haar_random_state(dim, seed):
    """
    Single Haar-random pure state; the same seed always gives the same
    amplitudes.
    :param dim: Hilbert space dimension.
    :param seed: 64-bit unsigned seed.
    :return: PureState
    """
    return normalize(haar_random_states(dim, 1, seed)[0])


def random_density_matrix(dim, rank, seed, weights=None):
    """
    Mixture of rank Haar states with uniform weights renormalized to one.
    :param dim: Hilbert space dimension.
    :param rank: number of mixed pure states, 1 <= rank <= dim.
    :param seed: 64-bit unsigned seed.
    :param weights: optional explicit mixing weights (tests force these).
    :return: DensityMatrix
    """
    if not 1 <= rank <= dim:
        raise RankOutOfRangeError(
            "Rank %d outside 1..%d" % (rank, dim))
    rng = make_generator(seed)
    draws = rng.standard_normal((rank, dim, 2))
    vectors = draws[..., 0] + 1j * draws[..., 1]
    vectors /= np.linalg.norm(vectors, axis=1, keepdims=True)
    if weights is None:
        weights = rng.uniform(size=rank)
    weights = np.asarray(weights, dtype=float)
    weights = weights / weights.sum()
    rho = np.einsum('r,ri,rj->ij', weights, vectors, vectors.conj())
    # Remove the roundoff asymmetry left by the einsum
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(rho / np.trace(rho).real)


def state_purity(rho):
    """
    Purity Tr(rho^2) of a density matrix.
    :param rho: DensityMatrix
    :return: real in [1/N, 1].
    """
    return float(np.sum(np.abs(rho.entries) ** 2))


def density_from_pure(psi):
    """
    Projector |psi><psi| of a pure state.
    :param psi: PureState
    :return: DensityMatrix
    """
    return DensityMatrix(np.outer(psi.amplitudes, psi.amplitudes.conj()))


def save_state(state, destination):
    """
    Write a PureState or DensityMatrix in the JSON state file format.
    """
    with atomic_write(destination) as handle:
        json.dump(state.to_dict(), handle)
        handle.write("\n")
    logging.debug("Wrote %r to %s", state, destination)


def state_from_dict(data):
    """
    Rebuild a state from its JSON form.
    :param data: dict with dim and either amplitudes or rows.
    :return: PureState or DensityMatrix
    """
    try:
        dim = int(data["dim"])
        if "amplitudes" in data:
            state = PureState(np.asarray(data["amplitudes"], dtype=float))
        elif "rows" in data:
            state = DensityMatrix(np.asarray(data["rows"], dtype=float))
        else:
            raise StateFileError(
                "State file needs 'amplitudes' or 'rows'")
    except (KeyError, TypeError, ValueError) as e:
        raise StateFileError("Malformed state file: %s" % e) from e
    except InvalidStateError as e:
        raise StateFileError("Invalid state in file: %s" % e) from e
    if state.dim != dim:
        raise StateFileError(
            "Declared dim %d but found %d amplitudes" % (dim, state.dim))
    return state


def load_state(source):
    """
    Read a state file.
    :param source: path to the JSON file.
    :return: PureState or DensityMatrix
    """
    with open(source, "r") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as e:
            raise StateFileError("%s is not valid JSON: %s" % (source, e)) \
                from e
    return state_from_dict(data)
