"""
Born-rule outcome distributions, Shannon entropy, index purities and
Larsen's purity identity for complete sets of unbiased bases.

Single-state functions take a PureState or DensityMatrix; the batch_*
helpers take a (S, N) array of normalized amplitude rows and are what the
batch processes and the optimizer use.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import entr

from src import constants
from src.Model.QuantumState import DensityMatrix, DimMismatchError, \
    PureState, state_purity


class DomainError(Exception):
    pass


class IncompleteSetError(Exception):
    pass


@dataclass(frozen=True)
class LogBase:
    """
    Logarithm base threaded through every entropy and bound. The
    inequalities hold in any base as long as one base is used throughout.
    """
    base: float = 2.0

    def __post_init__(self):
        if not self.base > 1:
            raise DomainError("Log base must exceed 1, got %r" % self.base)

    @property
    def name(self):
        if self.base == math.e:
            return "e"
        return "%g" % self.base

    def log(self, x):
        if self.base == 2:
            return math.log2(x)
        return math.log(x) / math.log(self.base)

    @classmethod
    def from_name(cls, name):
        """
        :param name: "2", "e", or any number above 1.
        :return: LogBase
        """
        if str(name).strip().lower() == "e":
            return cls(math.e)
        try:
            return cls(float(name))
        except ValueError as e:
            raise DomainError("Unknown log base %r" % name) from e


BITS = LogBase(2.0)
NATS = LogBase(math.e)


class ProbabilityDistribution:
    """
    Outcome probabilities of one measurement. Roundoff below zero or
    above one is clamped; anything beyond the tolerance is an error.
    """

    def __init__(self, probs):
        probs = np.array(probs, dtype=float).reshape(-1)
        if probs.size == 0:
            raise DomainError("A distribution needs at least one outcome")
        if np.any(probs < -constants.PROBABILITY_TOLERANCE) \
                or np.any(probs > 1 + constants.PROBABILITY_TOLERANCE):
            raise DomainError("Probabilities outside [0, 1]: %s" % probs)
        probs = np.clip(probs, 0.0, 1.0)
        total = probs.sum()
        if abs(total - 1.0) > constants.DISTRIBUTION_SUM_TOLERANCE:
            raise DomainError("Probabilities sum to %.17g" % total)
        probs.setflags(write=False)
        self.probs = probs

    @property
    def dim(self):
        return self.probs.shape[0]

    def __repr__(self):
        return "ProbabilityDistribution(%s)" % np.array2string(self.probs)


@dataclass(frozen=True)
class IdentityReport:
    purity_sum: float
    state_purity: float
    residual: float
    tol: float

    @property
    def passed(self):
        return self.residual <= self.tol


def _check_dims(state, basis_dim):
    if state.dim != basis_dim:
        raise DimMismatchError(
            "State has dimension %d but the bases have %d"
            % (state.dim, basis_dim))


def born_probabilities(state, basis):
    """
    Outcome probabilities of measuring state in basis:
    |<a_i|psi>|^2 for pure states, <a_i|rho|a_i> for mixed ones.
    :param state: PureState or DensityMatrix
    :param basis: Basis
    :return: ProbabilityDistribution
    """
    _check_dims(state, basis.dim)
    if isinstance(state, DensityMatrix):
        probs = np.einsum('ij,jk,ik->i', basis.matrix.conj(), state.entries,
                          basis.matrix).real
    else:
        probs = np.abs(basis.matrix.conj() @ state.amplitudes) ** 2
    return ProbabilityDistribution(probs)


def _entropy_terms(probs):
    """-p log p elementwise in nats, with 0 log 0 = 0."""
    probs = np.where(probs < constants.ZERO_MAGNITUDE, 0.0, probs)
    return entr(probs)


def shannon_entropy(dist, base=BITS):
    """
    H = -sum p_i log p_i.
    :param dist: ProbabilityDistribution
    :param base: LogBase
    :return: real in [0, log N].
    """
    return float(_entropy_terms(dist.probs).sum()) / math.log(base.base)


def index_purity(dist):
    """
    pi = sum p_i^2, in [1/N, 1].
    """
    return float(np.sum(dist.probs ** 2))


def min_entropy_from_purity(pi, base=BITS):
    """
    Collision entropy -log pi, the floor under the Shannon entropy of a
    distribution with purity pi.
    """
    if not 0 < pi <= 1 + constants.PROBABILITY_TOLERANCE:
        raise DomainError("Purity %r outside (0, 1]" % pi)
    return -base.log(min(pi, 1.0))


def _distributions(state, mubs):
    _check_dims(state, mubs.dim)
    return [born_probabilities(state, basis) for basis in mubs.bases]


def entropy_sum(state, mubs, base=BITS):
    """
    Sum of Shannon entropies over every basis of the set.
    :param state: PureState or DensityMatrix
    :param mubs: MubSet
    :param base: LogBase
    """
    return sum(shannon_entropy(dist, base)
               for dist in _distributions(state, mubs))


def purity_sum(state, mubs):
    """
    Sum of index purities over every basis of the set.
    """
    return sum(index_purity(dist) for dist in _distributions(state, mubs))


def check_larsen_identity(state, full_mubs,
                          tol=constants.DEFAULT_VERIFY_TOLERANCE):
    """
    Larsen identity for a complete set: sum_k pi_k = Tr(rho^2) + 1.
    :param state: PureState or DensityMatrix
    :param full_mubs: MubSet with N + 1 bases
    :param tol: pass threshold on the residual.
    :return: IdentityReport
    """
    if not full_mubs.is_complete:
        raise IncompleteSetError(
            "Larsen identity needs all %d bases, got %d"
            % (full_mubs.dim + 1, full_mubs.count))
    total = purity_sum(state, full_mubs)
    if isinstance(state, PureState):
        purity = 1.0
    else:
        purity = state_purity(state)
    residual = abs(total - (purity + 1))
    if residual > tol:
        logging.warning("Larsen residual %.3g exceeds tolerance %.3g",
                        residual, tol)
    return IdentityReport(total, purity, residual, tol)


def batch_probabilities(amplitudes, mubs):
    """
    Outcome probabilities for many pure states at once.
    :param amplitudes: (S, N) complex array of normalized states.
    :param mubs: MubSet
    :return: (S, M, N) array, [s, k, i] = |<a_i^(k)|psi_s>|^2
    """
    amplitudes = np.atleast_2d(amplitudes)
    if amplitudes.shape[1] != mubs.dim:
        raise DimMismatchError(
            "States have dimension %d but the bases have %d"
            % (amplitudes.shape[1], mubs.dim))
    overlaps = np.einsum('kji,si->skj', mubs.stack.conj(), amplitudes)
    return np.abs(overlaps) ** 2


def batch_density_probabilities(rhos, mubs):
    """
    Outcome probabilities for a stack of density matrices, (S, M, N).
    """
    rhos = np.asarray(rhos)
    if rhos.ndim == 2:
        rhos = rhos[None]
    return np.einsum('kji,sil,kjl->skj', mubs.stack.conj(), rhos,
                     mubs.stack).real


def batch_basis_entropies(probabilities, base=BITS):
    """
    :param probabilities: (S, M, N) array from batch_probabilities.
    :return: (S, M) entropy of each state in each basis.
    """
    return _entropy_terms(probabilities).sum(axis=2) / math.log(base.base)


def batch_entropy_sums(probabilities, base=BITS):
    """
    :param probabilities: (S, M, N) array from batch_probabilities.
    :return: (S,) entropy sums.
    """
    return batch_basis_entropies(probabilities, base).sum(axis=1)


def batch_purity_sums(probabilities):
    """
    :param probabilities: (S, M, N) array from batch_probabilities.
    :return: (S,) purity sums.
    """
    return np.sum(probabilities ** 2, axis=(1, 2))
