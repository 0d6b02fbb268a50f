import logging

import numpy as np

from src import constants
from src.Model.EntropicBounds import bound_report, is_rigorous, \
    purity_intermediate_bound
from src.Model.Measurement import BITS, batch_basis_entropies, \
    batch_density_probabilities, batch_probabilities
from src.Model.QuantumState import child_seed, haar_random_states, \
    random_density_matrix
from src.Model.batchprocessing.BatchProcess import BatchProcess


class BatchProcessSoundness(BatchProcess):
    """
    This class checks every rigorous bound against the entropy sums of
    random states, for every basis count M = 1..N + 1.
    Inherits from the BatchProcess class.
    """

    def __init__(self, progress_callback, interrupt_flag, dim, samples,
                 seed, base=BITS, mixed_rank=None):
        super(BatchProcessSoundness, self).__init__(progress_callback,
                                                    interrupt_flag,
                                                    dim, samples, seed)
        self.base = base
        self.mixed_rank = mixed_rank
        self.ready = self.load_bases(dim + 1)
        self.violations = []
        self.worst_slack = None
        self.checks = 0

    def start(self):
        """
        Goes through the pure samples and then the optional mixed ones.
        :return: True if no bound was violated.
        """
        if self.interrupted():
            return False

        if not self.ready:
            self.summary = "SKIP"
            return False

        self.progress_callback.emit(("Drawing %d Haar states..."
                                     % self.samples, 10))
        states = haar_random_states(self.dim, self.samples, self.seed)
        entropies = batch_basis_entropies(
            batch_probabilities(states, self.mubs), self.base)
        self.progress_callback.emit(("Comparing pure-state bounds...", 40))
        if not self.compare(np.cumsum(entropies, axis=1), "pure"):
            return False

        if self.mixed_rank is not None:
            self.progress_callback.emit(("Comparing mixed-state bounds...",
                                         70))
            if not self.check_mixed():
                return False

        self.progress_callback.emit(("Soundness check complete.", 100))
        self.summary = "FAIL" if self.violations else "PASS"
        logging.info("Checked %d bound values for N=%d: %d violations, "
                     "worst slack %.3g", self.checks, self.dim,
                     len(self.violations), self.worst_slack)
        return not self.violations

    def compare(self, cumulative, label, purities=None):
        """
        Compare each sample's entropy sums against the bounds.
        :param cumulative: (S, N + 1) array, [s, M - 1] is the sum of the
                           first M basis entropies of sample s.
        :param label: "pure" or "mixed", kept in violation records.
        :param purities: per-sample Tr(rho^2) for mixed samples; enables
                         the purity-aware intermediate bounds.
        :return: False if interrupted.
        """
        for m in range(1, self.dim + 2):
            if self.interrupted():
                return False
            sums = cumulative[:, m - 1]
            report = bound_report(self.dim, m, self.base)
            for kind, value in report.values.items():
                if is_rigorous(kind, m):
                    self.record(label, kind.value, m, sums - value)
            if purities is not None:
                for refined in (False, True):
                    bounds = np.array([
                        purity_intermediate_bound(self.dim, m, purity,
                                                  self.base, refined)
                        for purity in purities])
                    name = "PurityRefined" if refined else "Purity"
                    self.record(label, name, m, sums - bounds)
        return True

    def record(self, label, name, m, slack):
        self.checks += slack.size
        smallest = float(slack.min())
        if self.worst_slack is None or smallest < self.worst_slack:
            self.worst_slack = smallest
        if smallest < -constants.BOUND_SLACK:
            sample = int(np.argmin(slack))
            logging.warning("%s bound %s violated at M=%d by sample %d "
                            "(slack %.3g)", label, name, m, sample,
                            smallest)
            self.violations.append((label, name, m, sample, smallest))

    def check_mixed(self):
        rhos = []
        for index in range(self.samples):
            if self.interrupted():
                return False
            rho = random_density_matrix(self.dim, self.mixed_rank,
                                        child_seed(self.seed, index))
            rhos.append(rho.entries)
        rhos = np.array(rhos)
        purities = np.sum(np.abs(rhos) ** 2, axis=(1, 2))
        entropies = batch_basis_entropies(
            batch_density_probabilities(rhos, self.mubs), self.base)
        return self.compare(np.cumsum(entropies, axis=1), "mixed", purities)
