from src.Model.MutuallyUnbiasedBases import generate_mub_set
from src.Model.QuantumState import check_seed


class BatchProcess:
    """
    This class handles the shared set-up of a seeded run over many
    random states: the basis set, the sample count and the seed.
    """

    def __init__(self, progress_callback, interrupt_flag, dim, samples,
                 seed):
        """
        Class initialiser function.
        :param progress_callback: An object whose emit((message, percent))
                                  receives the current progress.
        :param interrupt_flag: A threading.Event() object that tells the
                               process to stop.
        :param dim: prime dimension of the states.
        :param samples: number of random states to draw.
        :param seed: 64-bit unsigned seed of the run.
        """
        self.progress_callback = progress_callback
        self.interrupt_flag = interrupt_flag
        self.dim = dim
        self.samples = samples
        self.seed = check_seed(seed)
        self.mubs = None
        self.ready = False
        self.summary = ""

    def is_ready(self):
        """
        Returns the status of the batch process.
        """
        return self.ready

    def start(self):
        """
        Starts the batch process.
        """
        pass

    def load_bases(self, count):
        """
        Build the first count bases for the run.
        :param count: number of bases needed.
        :return: True once the bases are available, False for a run with
                 no samples.
        """
        self.mubs = generate_mub_set(self.dim, count)
        return self.samples > 0

    def interrupted(self):
        """
        Record an interrupt in the summary if one was requested.
        :return: True if the process should stop.
        """
        if self.interrupt_flag.is_set():
            self.summary = "INTERRUPT"
            return True
        return False
