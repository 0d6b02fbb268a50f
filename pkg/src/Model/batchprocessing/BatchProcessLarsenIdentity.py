import logging

import numpy as np

from src import constants
from src.Model.Measurement import batch_density_probabilities, \
    batch_probabilities, batch_purity_sums
from src.Model.QuantumState import child_seed, haar_random_states, \
    random_density_matrix
from src.Model.batchprocessing.BatchProcess import BatchProcess


class BatchProcessLarsenIdentity(BatchProcess):
    """
    This class checks the purity identity sum_k pi_k = Tr(rho^2) + 1
    over a complete set of bases for many random states.
    Inherits from the BatchProcess class.
    """

    def __init__(self, progress_callback, interrupt_flag, dim, samples,
                 seed, tol=constants.DEFAULT_VERIFY_TOLERANCE,
                 mixed_rank=None):
        """
        Class initialiser function.
        :param tol: largest residual that still passes.
        :param mixed_rank: when set, also check that many mixed states of
                           this rank, each drawn from its own child seed.
        """
        super(BatchProcessLarsenIdentity, self).__init__(progress_callback,
                                                         interrupt_flag,
                                                         dim, samples, seed)
        self.tol = tol
        self.mixed_rank = mixed_rank
        self.ready = self.load_bases(dim + 1)
        self.max_residual = None
        self.max_mixed_residual = None
        self.residuals = None

    @property
    def passed(self):
        worst = [r for r in (self.max_residual, self.max_mixed_residual)
                 if r is not None]
        return bool(worst) and max(worst) <= self.tol

    def start(self):
        """
        Goes through the pure samples and then the optional mixed ones.
        :return: True if every residual is within tolerance.
        """
        if self.interrupted():
            return False

        if not self.ready:
            self.summary = "SKIP"
            return False

        self.progress_callback.emit(("Drawing %d Haar states..."
                                     % self.samples, 10))
        states = haar_random_states(self.dim, self.samples, self.seed)

        self.progress_callback.emit(("Computing purity sums...", 30))
        sums = batch_purity_sums(batch_probabilities(states, self.mubs))
        self.residuals = np.abs(sums - 2.0)
        self.max_residual = float(self.residuals.max())

        if self.mixed_rank is not None:
            self.progress_callback.emit(("Checking mixed states...", 60))
            if not self.check_mixed():
                return False

        self.progress_callback.emit(("Identity check complete.", 100))
        self.summary = "PASS" if self.passed else "FAIL"
        logging.info("Purity identity for N=%d over %d samples: max "
                     "residual %.3g (%s)", self.dim, self.samples,
                     self.max_residual, self.summary)
        return self.passed

    def check_mixed(self):
        """
        Residuals |sum_k pi_k - Tr(rho^2) - 1| for random mixed states.
        :return: False if interrupted.
        """
        rhos = []
        for index in range(self.samples):
            if self.interrupted():
                return False
            rho = random_density_matrix(self.dim, self.mixed_rank,
                                        child_seed(self.seed, index))
            rhos.append(rho.entries)
        rhos = np.array(rhos)
        sums = batch_purity_sums(batch_density_probabilities(rhos,
                                                             self.mubs))
        purities = np.sum(np.abs(rhos) ** 2, axis=(1, 2))
        self.max_mixed_residual = float(np.max(np.abs(sums - purities - 1)))
        return True
