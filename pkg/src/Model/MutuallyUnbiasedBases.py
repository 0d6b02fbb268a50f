"""
Complete and partial sets of mutually unbiased bases for prime
dimensions, plus unbiasedness checks for arbitrary basis sets.

Construction (p prime):
    basis 0      computational basis
    basis k >= 1 vector j has component i equal to
                 w^((k-1) i^2 + j i) / sqrt(p),  w = exp(2 pi i / p)
For p = 2 the quadratic phase degenerates, so the three qubit bases are
written out: computational, (1, +-1)/sqrt(2), (1, +-i)/sqrt(2).

Basis set file: {"dim": N, "bases": [{"label": k,
                 "vectors": [[[re, im], ...], ...]}, ...]}
"""
import json
import logging
import math
from dataclasses import dataclass

import numpy as np

from src import constants
from src.Model.OutputFiles import atomic_write
from src.Model.QuantumState import DimMismatchError, PureState


class NotPrimeError(Exception):
    pass


class CountOutOfRangeError(Exception):
    pass


class InvalidBasisError(Exception):
    pass


class BasisFileError(Exception):
    pass


def is_prime(n):
    """
    Deterministic trial division; dimensions of interest stay below ~10^4.
    """
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for divisor in range(3, int(math.sqrt(n)) + 1, 2):
        if n % divisor == 0:
            return False
    return True


def check_prime(dim):
    if int(dim) != dim or not is_prime(int(dim)):
        raise NotPrimeError(
            "Dimension %s is not prime; only prime dimensions are "
            "supported" % dim)


class Basis:
    """
    Ordered orthonormal basis. Row j of matrix is vector j.
    """

    def __init__(self, matrix, label=0, validate=True):
        matrix = np.array(matrix, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InvalidBasisError("A basis needs N vectors of length N")
        if validate:
            error = orthonormality_error(matrix)
            if error > constants.DEFAULT_VERIFY_TOLERANCE:
                raise InvalidBasisError(
                    "Basis %s is not orthonormal (error %.3g)"
                    % (label, error))
        matrix.setflags(write=False)
        self.matrix = matrix
        self.label = int(label)

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def vectors(self):
        return [PureState(row) for row in self.matrix]

    def __repr__(self):
        return "Basis(dim=%d, label=%d)" % (self.dim, self.label)

    def to_dict(self):
        return {"label": self.label,
                "vectors": [[[float(a.real), float(a.imag)] for a in row]
                            for row in self.matrix]}


class MubSet:
    """
    M bases of a common dimension N, 1 <= M <= N + 1. Unbiasedness is
    guaranteed by generate_mub_set and checked by verify_mub_set; a set
    read from a file is only trusted after verification.
    """

    def __init__(self, bases):
        bases = list(bases)
        if not bases:
            raise CountOutOfRangeError("A basis set needs at least one basis")
        dim = bases[0].dim
        if any(basis.dim != dim for basis in bases):
            raise DimMismatchError("All bases must share one dimension")
        if len(bases) > dim + 1:
            raise CountOutOfRangeError(
                "At most %d unbiased bases exist in dimension %d"
                % (dim + 1, dim))
        self.bases = bases
        self.stack = np.stack([basis.matrix for basis in bases])
        self.stack.setflags(write=False)

    @property
    def dim(self):
        return self.bases[0].dim

    @property
    def count(self):
        return len(self.bases)

    @property
    def is_complete(self):
        return self.count == self.dim + 1

    def subset(self, count):
        """First count bases as a new MubSet."""
        if not 1 <= count <= self.count:
            raise CountOutOfRangeError(
                "Count %d outside 1..%d" % (count, self.count))
        return MubSet(self.bases[:count])

    def __repr__(self):
        return "MubSet(dim=%d, count=%d)" % (self.dim, self.count)

    def to_dict(self):
        return {"dim": self.dim,
                "bases": [basis.to_dict() for basis in self.bases]}


@dataclass(frozen=True)
class UnbiasednessReport:
    max_orthonormality_error: float
    max_unbiasedness_error: float
    worst_pair: tuple
    tol: float

    @property
    def passed(self):
        return self.max_orthonormality_error <= self.tol \
            and self.max_unbiasedness_error <= self.tol


def _check_indices(dim, basis_index, vector_index):
    check_prime(dim)
    if not 0 <= basis_index <= dim:
        raise CountOutOfRangeError(
            "Basis index %d outside 0..%d" % (basis_index, dim))
    if not 0 <= vector_index < dim:
        raise CountOutOfRangeError(
            "Vector index %d outside 0..%d" % (vector_index, dim - 1))


def _qubit_basis(basis_index):
    root = 1 / math.sqrt(2)
    if basis_index == 0:
        return np.eye(2, dtype=np.complex128)
    if basis_index == 1:
        return root * np.array([[1, 1], [1, -1]], dtype=np.complex128)
    return root * np.array([[1, 1j], [1, -1j]], dtype=np.complex128)


def _phase_rows(p, basis_index, vector_indices):
    """Rows of the quadratic-phase basis for the given vector indices."""
    i = np.arange(p, dtype=np.int64)
    j = np.asarray(vector_indices, dtype=np.int64)[:, None]
    # Exponents reduced mod p in integers so large p keeps full accuracy
    exponent = ((basis_index - 1) * (i * i % p) + j * i) % p
    return np.exp(2j * np.pi * exponent / p) / math.sqrt(p)


def _basis_matrix(p, basis_index):
    if p == 2:
        return _qubit_basis(basis_index)
    if basis_index == 0:
        return np.eye(p, dtype=np.complex128)
    return _phase_rows(p, basis_index, range(p))


def basis_vector(dim, basis_index, vector_index):
    """
    Vector (basis_index, vector_index) of the complete set without
    building the set; O(p) time and memory.
    :return: PureState
    """
    _check_indices(dim, basis_index, vector_index)
    if dim == 2:
        return PureState(_qubit_basis(basis_index)[vector_index])
    if basis_index == 0:
        row = np.zeros(dim, dtype=np.complex128)
        row[vector_index] = 1
        return PureState(row)
    return PureState(_phase_rows(dim, basis_index, [vector_index])[0])


def generate_mub_set(dim, count):
    """
    First count bases of the standard complete set for prime dim.
    :param dim: prime p.
    :param count: number of bases M, 1 <= M <= p + 1.
    :return: MubSet
    """
    check_prime(dim)
    if not 1 <= count <= dim + 1:
        raise CountOutOfRangeError(
            "Count %d outside 1..%d for dimension %d"
            % (count, dim + 1, dim))
    logging.debug("Generating %d unbiased bases in dimension %d",
                  count, dim)
    bases = [Basis(_basis_matrix(dim, k), label=k, validate=False)
             for k in range(count)]
    return MubSet(bases)


def orthonormality_error(matrix):
    """Max |<v_i|v_j> - delta_ij| over the rows of matrix."""
    gram = matrix.conj() @ matrix.T
    return float(np.max(np.abs(gram - np.eye(matrix.shape[0]))))


def max_overlap(a, b):
    """
    c = max over vector pairs of |<a_j|b_k>|.
    :param a: Basis
    :param b: Basis
    :return: real in [1/sqrt(N), 1].
    """
    if a.dim != b.dim:
        raise DimMismatchError(
            "Bases have dimensions %d and %d" % (a.dim, b.dim))
    return float(np.max(np.abs(a.matrix.conj() @ b.matrix.T)))


def verify_mub_set(bases, tol=constants.DEFAULT_VERIFY_TOLERANCE):
    """
    Measure how far a list of bases is from being orthonormal and
    mutually unbiased.
    :param bases: list of Basis, or a MubSet.
    :param tol: pass threshold for both errors.
    :return: UnbiasednessReport; worst_pair is (k, l, i, j) of the worst
             cross overlap, or None for a single basis.
    """
    if isinstance(bases, MubSet):
        bases = bases.bases
    bases = list(bases)
    if not bases:
        raise CountOutOfRangeError("Nothing to verify")
    dim = bases[0].dim
    if any(basis.dim != dim for basis in bases):
        raise DimMismatchError("All bases must share one dimension")

    ortho = max(orthonormality_error(basis.matrix) for basis in bases)
    worst = 0.0
    worst_pair = None
    for k in range(len(bases)):
        for l in range(k + 1, len(bases)):
            overlaps = np.abs(bases[k].matrix.conj()
                              @ bases[l].matrix.T) ** 2
            deviation = np.abs(overlaps - 1.0 / dim)
            i, j = np.unravel_index(np.argmax(deviation), deviation.shape)
            if worst_pair is None or deviation[i, j] > worst:
                worst = float(deviation[i, j])
                worst_pair = (k, l, int(i), int(j))
    report = UnbiasednessReport(ortho, worst, worst_pair, tol)
    logging.info("Verified %d bases in dimension %d: orthonormality %.3g, "
                 "unbiasedness %.3g", len(bases), dim, ortho, worst)
    return report


def save_mub_set(mubs, destination):
    """Write a MubSet in the basis set file format."""
    with atomic_write(destination) as handle:
        json.dump(mubs.to_dict(), handle)
        handle.write("\n")
    logging.debug("Wrote %r to %s", mubs, destination)


def load_bases(source):
    """
    Read a basis set file without checking unbiasedness, so that
    verify_mub_set can report on arbitrary sets.
    :return: list of Basis
    """
    with open(source, "r") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as e:
            raise BasisFileError("%s is not valid JSON: %s" % (source, e)) \
                from e
    try:
        dim = int(data["dim"])
        bases = []
        for entry in data["bases"]:
            pairs = np.asarray(entry["vectors"], dtype=float)
            matrix = pairs[..., 0] + 1j * pairs[..., 1]
            if matrix.shape != (dim, dim):
                raise BasisFileError(
                    "Basis %s has shape %s, expected %d x %d"
                    % (entry.get("label"), matrix.shape, dim, dim))
            bases.append(Basis(matrix, label=entry["label"], validate=False))
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise BasisFileError("Malformed basis file: %s" % e) from e
    if not bases:
        raise BasisFileError("Basis file lists no bases")
    return bases


def load_mub_set(source):
    """Read a basis set file into a MubSet."""
    return MubSet(load_bases(source))
