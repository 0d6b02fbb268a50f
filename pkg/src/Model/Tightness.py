"""
Numerical minimization of the entropy sum over pure states, to compare
the achieved minimum with the intermediate-regime bounds.

The state is parametrized by 2N reals (real parts then imaginary parts)
and renormalized after every accepted step. Each restart starts from a
Haar state drawn from its own child stream (seed, restart), so the best
result does not depend on how restarts are scheduled.
"""
import logging
import multiprocessing
from dataclasses import dataclass

import numpy as np

from src import constants
from src.Model.EntropicBounds import intermediate_bound, \
    refined_intermediate_bound
from src.Model.Measurement import BITS, batch_entropy_sums
from src.Model.MutuallyUnbiasedBases import generate_mub_set
from src.Model.QuantumState import check_seed, make_generator, normalize


class BoundViolationError(Exception):
    pass


class OptimizerConfigError(Exception):
    pass


class DimensionTooLargeError(OptimizerConfigError):
    pass


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = constants.DEFAULT_RESTARTS
    max_iters: int = constants.DEFAULT_MAX_ITERS
    step_init: float = constants.DEFAULT_STEP_INIT
    converge_tol: float = constants.DEFAULT_CONVERGE_TOL
    seed: int = 0
    max_dim: int = constants.DEFAULT_MAX_DIM

    def __post_init__(self):
        if self.restarts < 1 or self.max_iters < 1 or self.max_dim < 1:
            raise OptimizerConfigError(
                "restarts, max_iters and max_dim must be positive")
        if not self.step_init > 0 or not self.converge_tol > 0:
            raise OptimizerConfigError(
                "step_init and converge_tol must be positive")
        check_seed(self.seed)


@dataclass(frozen=True)
class TightnessResult:
    min_value: float
    argmin: object
    bound_value: float
    intermediate_value: float
    refined_value: float
    gap: float
    iterations_used: int
    count: int


def _objective(points, stack, base):
    """
    Entropy sum at each row of points, (S, 2N) reals read as re | im.
    """
    dim = stack.shape[1]
    vectors = points[:, :dim] + 1j * points[:, dim:]
    vectors = vectors / np.linalg.norm(vectors, axis=1, keepdims=True)
    overlaps = np.einsum('kji,si->skj', stack.conj(), vectors)
    return batch_entropy_sums(np.abs(overlaps) ** 2, base)


def _gradient(x, stack, base):
    """Central differences, all 4N evaluations in one batch."""
    size = x.shape[0]
    offsets = np.eye(size) * constants.FINITE_DIFFERENCE_STEP
    values = _objective(np.vstack([x + offsets, x - offsets]), stack, base)
    return (values[:size] - values[size:]) \
        / (2 * constants.FINITE_DIFFERENCE_STEP)


def _descend(x, stack, base, cfg):
    """
    Gradient descent with a backtracking line search that halves from
    step_init. Stops when an accepted step improves by less than
    converge_tol, when no step length improves, or after max_iters.
    :return: (x, value, iterations)
    """
    value = _objective(x[None], stack, base)[0]
    iteration = 0
    while iteration < cfg.max_iters:
        iteration += 1
        direction = _gradient(x, stack, base)
        step = cfg.step_init
        accepted = False
        while step >= constants.MIN_LINE_SEARCH_STEP:
            candidate = x - step * direction
            candidate /= np.linalg.norm(candidate)
            candidate_value = _objective(candidate[None], stack, base)[0]
            if candidate_value < value:
                accepted = True
                break
            step /= 2
        if not accepted:
            break
        improvement = value - candidate_value
        x, value = candidate, candidate_value
        if improvement < cfg.converge_tol:
            break
    return x, value, iteration


def _run_restart(args):
    """One restart; module level so multiprocessing can pickle it."""
    stack, base, cfg, restart = args
    dim = stack.shape[1]
    rng = make_generator(cfg.seed, restart)
    draws = rng.standard_normal((dim, 2))
    start = np.concatenate([draws[:, 0], draws[:, 1]])
    start /= np.linalg.norm(start)
    x, value, iterations = _descend(start, stack, base, cfg)
    logging.debug("Restart %d finished at %.12g after %d iterations",
                  restart, value, iterations)
    return value, x, iterations


def minimize_entropy_sum(mubs, base=BITS, cfg=None, processes=1):
    """
    Smallest entropy sum found over pure states for the bases of mubs.
    :param mubs: MubSet
    :param base: LogBase
    :param cfg: OptimizerConfig (defaults when None)
    :param processes: worker processes for the restarts; 1 runs inline.
    :return: TightnessResult; bound_value is the larger of the
             intermediate bound and its refinement.
    """
    cfg = cfg or OptimizerConfig()
    dim, count = mubs.dim, mubs.count
    if dim > cfg.max_dim:
        raise DimensionTooLargeError(
            "Dimension %d exceeds the optimizer guard max_dim=%d"
            % (dim, cfg.max_dim))

    stack = np.array(mubs.stack)
    jobs = [(stack, base, cfg, restart) for restart in range(cfg.restarts)]
    logging.info("Minimizing entropy sum: N=%d, M=%d, %d restarts",
                 dim, count, cfg.restarts)
    if processes > 1 and cfg.restarts > 1:
        with multiprocessing.Pool(processes) as pool:
            outcomes = pool.map(_run_restart, jobs)
    else:
        outcomes = [_run_restart(job) for job in jobs]

    # First restart wins ties so the result is independent of scheduling
    best = min(range(len(outcomes)), key=lambda r: (outcomes[r][0], r))
    min_value, x, iterations = outcomes[best]
    argmin = normalize(x[:dim] + 1j * x[dim:])

    if dim >= 2:
        eq8 = intermediate_bound(dim, count, base)
        eq9 = refined_intermediate_bound(dim, count, base)
    else:
        eq8 = eq9 = 0.0
    bound_value = max(eq8, eq9)
    gap = min_value - bound_value
    if gap < -constants.BOUND_SLACK:
        raise BoundViolationError(
            "Minimum %.12g lies below the bound %.12g for N=%d, M=%d"
            % (min_value, bound_value, dim, count))
    return TightnessResult(float(min_value), argmin, bound_value, eq8, eq9,
                           float(gap), iterations, count)


def gap_sweep(dim, m_values, base=BITS, cfg=None, processes=1):
    """
    minimize_entropy_sum for the first M bases of the standard set, for
    each M in m_values, in input order.
    """
    cfg = cfg or OptimizerConfig()
    m_values = list(m_values)
    if dim > cfg.max_dim:
        raise DimensionTooLargeError(
            "Dimension %d exceeds the optimizer guard max_dim=%d"
            % (dim, cfg.max_dim))
    largest = generate_mub_set(dim, max(m_values))
    return [minimize_entropy_sum(largest.subset(m), base, cfg, processes)
            for m in m_values]
