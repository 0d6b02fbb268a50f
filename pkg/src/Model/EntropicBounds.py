"""
Closed-form lower bounds on sums of measurement entropies over sets of
mutually unbiased bases, the purity caps they are derived from, and
selection of the strongest bound for a given dimension and basis count.

Everything here is arithmetic in (N, M); no bases are built, so a full
N = 1009 sweep costs a few thousand log evaluations.

Naming: M is the number of bases, q the ceiling integer of the convex
chord floor (written m in the literature).
"""
import enum
import math
from dataclasses import dataclass, field

from src import constants
from src.Model.Measurement import BITS, DomainError


class BoundKind(enum.Enum):
    Deutsch = "Deutsch"
    MaassenUffink = "MaassenUffink"
    SanchezComplete = "SanchezComplete"
    PairwiseWeak = "PairwiseWeak"
    SubtractionWeak = "SubtractionWeak"
    Intermediate = "Intermediate"
    RefinedIntermediate = "RefinedIntermediate"


# Tie-break order for best_bound: on equal values prefer the later,
# sharper derivation.
PREFERENCE = [
    BoundKind.RefinedIntermediate,
    BoundKind.Intermediate,
    BoundKind.SanchezComplete,
    BoundKind.MaassenUffink,
    BoundKind.PairwiseWeak,
    BoundKind.SubtractionWeak,
    BoundKind.Deutsch,
]


@dataclass(frozen=True)
class BoundReport:
    dim: int
    count: int
    base: object
    values: dict = field(default_factory=dict)
    best: BoundKind = None
    best_value: float = None

    def as_dict(self):
        return {"dim": self.dim,
                "count": self.count,
                "base": self.base.name,
                "values": {kind.value: value
                           for kind, value in self.values.items()},
                "best": self.best.value,
                "best_value": self.best_value}


def _check_overlap(c):
    if not 0 < c <= 1:
        raise DomainError("Overlap c=%r outside (0, 1]" % c)


def _check_dim(n):
    if int(n) != n or n < 2:
        raise DomainError("Dimension must be an integer >= 2, got %r" % n)
    return int(n)


def _check_count(n, m):
    n = _check_dim(n)
    if int(m) != m or not 1 <= m <= n + 1:
        raise DomainError(
            "Basis count %r outside 1..%d for dimension %d" % (m, n + 1, n))
    return n, int(m)


def _ceil_snapped(x):
    """ceil(x), but values within tolerance of an integer map to it."""
    nearest = round(x)
    if abs(x - nearest) <= constants.INTEGER_SNAP_TOLERANCE:
        return int(nearest)
    return int(math.ceil(x))


def deutsch_bound(c, base=BITS):
    """
    Deutsch: H_a + H_b >= -2 log((1 + c) / 2).
    :param c: max overlap between the two bases, in (0, 1].
    """
    _check_overlap(c)
    return -2 * base.log((1 + c) / 2)


def maassen_uffink_bound(c, base=BITS):
    """
    Maassen-Uffink: H_a + H_b >= -2 log c.
    """
    _check_overlap(c)
    return -2 * base.log(c)


def sanchez_complete_bound(n, base=BITS):
    """
    Complete set of N + 1 bases: sum H_k >= (N + 1) log((N + 1) / 2).
    """
    n = _check_dim(n)
    return (n + 1) * base.log((n + 1) / 2)


def pairwise_full_bound(n, base=BITS):
    """
    Complete set broken into pairs: sum H_k >= (N + 1) log(N) / 2.
    """
    return pairwise_weak_bound(n, _check_dim(n) + 1, base)


def pairwise_weak_bound(n, m, base=BITS):
    """
    sum_{k<=M} H_k >= (M / 2) log N. Reported literally at M = 1, where
    it exceeds the true minimum of zero.
    """
    n, m = _check_count(n, m)
    return m / 2 * base.log(n)


def subtraction_weak_bound(n, m, base=BITS):
    """
    Complete-set bound minus the largest possible entropy of the omitted
    bases: (N + 1) log((N + 1) / 2N) + M log N. Negative for M << N.
    """
    n, m = _check_count(n, m)
    return (n + 1) * base.log((n + 1) / (2 * n)) + m * base.log(n)


def weak_bound_crossing(n):
    """
    Real M at which the pairwise and subtraction weak bounds meet,
    2 (N + 1) log(2N / (N + 1)) / log N. Independent of the log base.
    """
    n = _check_dim(n)
    return 2 * (n + 1) * math.log(2 * n / (n + 1)) / math.log(n)


def purity_sum_cap(n, m, state_purity):
    """
    Cap on the purities of M bases: sum pi_k <= Pi + 1 - (N + 1 - M) / N.
    state_purity = 1 gives the pure-state cap (N - 1 + M) / N.
    """
    n, m = _check_count(n, m)
    if not 1 / n - constants.PURITY_TOLERANCE <= state_purity \
            <= 1 + constants.PURITY_TOLERANCE:
        raise DomainError(
            "State purity %r outside [1/%d, 1]" % (state_purity, n))
    return state_purity + 1 - (n + 1 - m) / n


def purity_product_cap(n, m):
    """
    Product of M purities under the pure-state sum cap is largest when
    they are equal: prod pi_k <= ((N - 1 + M) / (N M))^M.
    """
    n, m = _check_count(n, m)
    return ((n - 1 + m) / (n * m)) ** m


def intermediate_bound(n, m, base=BITS):
    """
    sum_{k<=M} H_k >= M log(N M / (N - 1 + M)).
    Zero at M = 1, the complete-set bound at M = N + 1.
    """
    n, m = _check_count(n, m)
    return m * base.log(n * m / (n - 1 + m))


def sanchez_chord(pi, q, base=BITS):
    """
    Chord of -log between 1/q and 1/(q - 1), evaluated at pi:
    log q - (q - 1)(q pi - 1) log(q / (q - 1)). q = 1 gives 0.
    """
    if q == 1:
        return 0.0
    return base.log(q) - (q - 1) * (q * pi - 1) * base.log(q / (q - 1))


def sanchez_convex_entropy_floor(pi, base=BITS):
    """
    Convex floor H >= log q - (q - 1)(q pi - 1) log(q / (q - 1)) with
    q = ceil(1 / pi), so 1/q <= pi <= 1/(q - 1). Touches -log pi at
    pi = 1/q and lies above it in between.
    """
    if not 0 < pi <= 1 + constants.PROBABILITY_TOLERANCE:
        raise DomainError("Purity %r outside (0, 1]" % pi)
    pi = min(pi, 1.0)
    return sanchez_chord(pi, _ceil_snapped(1 / pi), base)


def refined_intermediate_bound(n, m, base=BITS):
    """
    Intermediate bound strengthened by the convex floor:
    M [log q - (q - 1)(q pi - 1) log(q / (q - 1))],
    pi = (N + M - 1) / (N M), q = ceil(N M / (N + M - 1)).
    """
    n, m = _check_count(n, m)
    numerator, denominator = n * m, n + m - 1
    # Exact integer ceiling, so integer ratios land on q itself
    q = -(-numerator // denominator)
    if q == 1:
        return 0.0
    excess = (q * denominator - numerator) / numerator
    return m * (base.log(q) - (q - 1) * excess * base.log(q / (q - 1)))


def purity_intermediate_bound(n, m, state_purity, base=BITS, refined=True):
    """
    Intermediate bound keeping the state purity in the sum cap. With
    pi = (N Pi + M - 1) / (N M) returns M * floor(pi), the floor being
    the convex chord (refined) or -log pi. Equals the pure-state bounds
    at Pi = 1 and holds for mixed states.
    """
    cap = purity_sum_cap(n, m, state_purity)
    mean_purity = min(cap / m, 1.0)
    if refined:
        return m * sanchez_convex_entropy_floor(mean_purity, base)
    return -m * base.log(mean_purity)


def is_rigorous(kind, m):
    """
    False only where a reported bound is not a valid inequality:
    the pairwise weak bound for a single basis.
    """
    return not (kind is BoundKind.PairwiseWeak and m == 1)


def best_bound(values):
    """
    :param values: dict BoundKind -> value
    :return: (kind, value) with the largest value; ties go to PREFERENCE.
    """
    best_value = max(values.values())
    for kind in PREFERENCE:
        if kind in values and values[kind] == best_value:
            return kind, best_value


def bound_report(n, m, base=BITS):
    """
    Every bound that applies to M unbiased bases in dimension N.
    The complete-set bound is added at M = N + 1, the two-basis bounds
    with c = 1/sqrt(N) at M = 2.
    :return: BoundReport
    """
    n, m = _check_count(n, m)
    values = {
        BoundKind.PairwiseWeak: pairwise_weak_bound(n, m, base),
        BoundKind.SubtractionWeak: subtraction_weak_bound(n, m, base),
        BoundKind.Intermediate: intermediate_bound(n, m, base),
        BoundKind.RefinedIntermediate: refined_intermediate_bound(n, m, base),
    }
    if m == n + 1:
        values[BoundKind.SanchezComplete] = sanchez_complete_bound(n, base)
    if m == 2:
        c = 1 / math.sqrt(n)
        values[BoundKind.MaassenUffink] = maassen_uffink_bound(c, base)
        values[BoundKind.Deutsch] = deutsch_bound(c, base)
    best, best_value = best_bound(values)
    return BoundReport(n, m, base, values, best, best_value)
