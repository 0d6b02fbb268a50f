import math

import numpy as np
import pytest

from src.Model.EntropicBounds import BoundKind, best_bound, bound_report, \
    deutsch_bound, intermediate_bound, is_rigorous, maassen_uffink_bound, \
    pairwise_full_bound, pairwise_weak_bound, purity_intermediate_bound, \
    purity_product_cap, purity_sum_cap, refined_intermediate_bound, \
    sanchez_chord, sanchez_complete_bound, sanchez_convex_entropy_floor, \
    subtraction_weak_bound, weak_bound_crossing
from src.Model.Measurement import BITS, NATS, DomainError


def test_two_basis_bounds():
    c = 1 / math.sqrt(2)
    assert deutsch_bound(c) == pytest.approx(0.456893, abs=1e-6)
    assert maassen_uffink_bound(c) == pytest.approx(1.0, abs=1e-12)
    assert maassen_uffink_bound(1 / math.sqrt(1009)) == \
        pytest.approx(9.97871, abs=1e-5)
    assert deutsch_bound(1.0) == 0.0


def test_maassen_uffink_beats_deutsch():
    for c in np.linspace(1e-4, 1.0, 10000):
        assert maassen_uffink_bound(c) >= deutsch_bound(c) - 1e-12


def test_overlap_domain():
    with pytest.raises(DomainError):
        deutsch_bound(0.0)
    with pytest.raises(DomainError):
        maassen_uffink_bound(1.5)


def test_complete_set_bounds():
    assert sanchez_complete_bound(1009) == pytest.approx(9069.94, abs=0.01)
    assert sanchez_complete_bound(2) == pytest.approx(1.754888, abs=1e-6)
    assert pairwise_full_bound(1009) == \
        pytest.approx(1010 / 2 * math.log2(1009), abs=1e-9)
    assert sanchez_complete_bound(3, NATS) == \
        pytest.approx(4 * math.log(2), abs=1e-12)


def test_weak_bounds():
    assert pairwise_weak_bound(1009, 100) == pytest.approx(498.9355,
                                                           abs=1e-3)
    assert subtraction_weak_bound(1009, 100) == pytest.approx(-10.686,
                                                              abs=1e-2)
    assert subtraction_weak_bound(2, 1) == pytest.approx(-0.245112,
                                                         abs=1e-6)
    # Subtraction bound meets the complete-set bound at M = N + 1
    assert subtraction_weak_bound(7, 8) == \
        pytest.approx(sanchez_complete_bound(7), abs=1e-12)


def test_weak_bound_crossing():
    crossing = weak_bound_crossing(1009)
    assert crossing == pytest.approx(202.1, abs=0.2)
    below, above = int(crossing), int(crossing) + 1
    assert pairwise_weak_bound(1009, below) > \
        subtraction_weak_bound(1009, below)
    assert pairwise_weak_bound(1009, above) < \
        subtraction_weak_bound(1009, above)


def test_purity_caps():
    assert purity_sum_cap(5, 6, 1.0) == pytest.approx(2.0)
    assert purity_sum_cap(5, 3, 1.0) == pytest.approx(7 / 5)
    assert purity_product_cap(5, 3) == pytest.approx(0.101630, abs=1e-6)
    with pytest.raises(DomainError):
        purity_sum_cap(5, 3, 0.1)


def test_intermediate_bound():
    assert intermediate_bound(5, 3) == pytest.approx(3.29861, abs=1e-5)
    assert intermediate_bound(1009, 100) == pytest.approx(650.88, abs=0.05)
    assert intermediate_bound(7, 1) == 0.0


@pytest.mark.parametrize("n", [3, 5, 7, 1009])
def test_endpoints_at_odd_dimension(n):
    complete = sanchez_complete_bound(n)
    assert intermediate_bound(n, n + 1) == pytest.approx(complete, abs=1e-9)
    assert refined_intermediate_bound(n, n + 1) == \
        pytest.approx(complete, abs=1e-9)


def test_refined_bound_values():
    assert refined_intermediate_bound(5, 3) == pytest.approx(3.350978,
                                                             abs=1e-6)
    assert refined_intermediate_bound(2, 3) == pytest.approx(2.0, abs=1e-12)
    assert refined_intermediate_bound(2, 2) == pytest.approx(1.0, abs=1e-12)
    assert refined_intermediate_bound(3, 4) == pytest.approx(4.0, abs=1e-9)
    assert refined_intermediate_bound(11, 1) == 0.0


def test_refined_bound_can_exceed_complete_set_bound_at_even_dimension():
    assert refined_intermediate_bound(2, 3) > sanchez_complete_bound(2)


@pytest.mark.parametrize("n", [2, 3, 5, 7, 31, 1009])
def test_refined_never_below_intermediate(n):
    for m in range(1, n + 2):
        assert refined_intermediate_bound(n, m) >= \
            intermediate_bound(n, m) - 1e-12


def test_convex_floor():
    assert sanchez_convex_entropy_floor(0.4) == pytest.approx(1.35098,
                                                              abs=1e-5)
    assert sanchez_convex_entropy_floor(1 / 3) == \
        pytest.approx(math.log2(3), abs=1e-12)
    assert sanchez_convex_entropy_floor(1.0) == 0.0
    for pi in np.linspace(0.01, 1.0, 200):
        assert sanchez_convex_entropy_floor(pi) >= -math.log2(pi) - 1e-12
    with pytest.raises(DomainError):
        sanchez_convex_entropy_floor(0.0)


def test_chord_endpoints():
    q = 4
    assert sanchez_chord(1 / q, q) == pytest.approx(math.log2(q))
    assert sanchez_chord(1 / (q - 1), q) == pytest.approx(math.log2(q - 1))
    assert sanchez_chord(0.7, 1) == 0.0


def test_base_conversion():
    for n, m in [(5, 3), (1009, 100), (7, 8)]:
        bits = refined_intermediate_bound(n, m, BITS)
        nats = refined_intermediate_bound(n, m, NATS)
        assert nats == pytest.approx(bits * math.log(2), rel=1e-12)


def test_purity_intermediate_bound_matches_pure_bounds():
    for n, m in [(5, 3), (7, 4), (1009, 100)]:
        assert purity_intermediate_bound(n, m, 1.0, refined=False) == \
            pytest.approx(intermediate_bound(n, m), abs=1e-9)
        assert purity_intermediate_bound(n, m, 1.0) == \
            pytest.approx(refined_intermediate_bound(n, m), abs=1e-9)


def test_purity_intermediate_bound_for_maximally_mixed_state():
    # Uniform in every basis: M log N
    assert purity_intermediate_bound(5, 3, 0.2, refined=False) == \
        pytest.approx(3 * math.log2(5), abs=1e-9)
    assert purity_intermediate_bound(5, 3, 0.2) == \
        pytest.approx(3 * math.log2(5), abs=1e-9)


def test_is_rigorous():
    assert not is_rigorous(BoundKind.PairwiseWeak, 1)
    assert is_rigorous(BoundKind.PairwiseWeak, 2)
    assert is_rigorous(BoundKind.SubtractionWeak, 1)


def test_best_bound_tie_break():
    values = {BoundKind.Intermediate: 4.0,
              BoundKind.RefinedIntermediate: 4.0,
              BoundKind.SanchezComplete: 4.0}
    assert best_bound(values) == (BoundKind.RefinedIntermediate, 4.0)


def test_bound_report_contents():
    report = bound_report(3, 4)
    assert BoundKind.SanchezComplete in report.values
    assert BoundKind.MaassenUffink not in report.values
    assert report.values[BoundKind.RefinedIntermediate] == 4.0
    assert report.best_value == pytest.approx(4.0, abs=1e-12)

    report = bound_report(5, 2)
    assert report.values[BoundKind.MaassenUffink] == \
        pytest.approx(math.log2(5), abs=1e-12)
    assert report.best_value == pytest.approx(math.log2(5), abs=1e-12)

    report = bound_report(1009, 100)
    assert report.best is BoundKind.RefinedIntermediate
    data = report.as_dict()
    assert data["base"] == "2" and data["best"] == "RefinedIntermediate"


def test_bound_report_domain():
    with pytest.raises(DomainError):
        bound_report(1, 1)
    with pytest.raises(DomainError):
        bound_report(5, 7)
    with pytest.raises(DomainError):
        bound_report(5, 0)


DIMENSIONS = range(2, 201)


@pytest.mark.parametrize("n", DIMENSIONS)
def test_intermediate_endpoints(n):
    assert intermediate_bound(n, 1) == 0.0
    assert refined_intermediate_bound(n, 1) == 0.0
    assert intermediate_bound(n, n + 1) == \
        pytest.approx(sanchez_complete_bound(n), abs=1e-9)
    complete = refined_intermediate_bound(n, n + 1)
    assert complete >= sanchez_complete_bound(n) - 1e-9
    if n % 2 == 1:
        assert complete == pytest.approx(sanchez_complete_bound(n), abs=1e-9)


@pytest.mark.parametrize("n", DIMENSIONS)
def test_intermediate_bound_grows_with_count(n):
    values = [intermediate_bound(n, m) for m in range(1, n + 2)]
    for smaller, larger in zip(values, values[1:]):
        assert larger >= smaller - 1e-12


@pytest.mark.parametrize("n", DIMENSIONS)
def test_refined_dominates_intermediate_everywhere(n):
    for m in range(1, n + 2):
        assert refined_intermediate_bound(n, m) >= \
            intermediate_bound(n, m) - 1e-12


@pytest.mark.parametrize("n", DIMENSIONS)
def test_product_cap_is_mean_of_sum_cap_to_the_m(n):
    for m in range(1, n + 2):
        assert purity_product_cap(n, m) == pytest.approx(
            (purity_sum_cap(n, m, 1.0) / m) ** m, abs=1e-12)


def test_chord_pieces_meet():
    for q in range(1, 1001):
        assert sanchez_chord(1 / q, q) == \
            pytest.approx(sanchez_chord(1 / q, q + 1), abs=1e-9)


def test_convex_floor_above_collision_entropy_for_random_purities():
    rng = np.random.default_rng(0)
    for pi in rng.uniform(1e-6, 1.0, 10000):
        assert sanchez_convex_entropy_floor(pi) >= -math.log2(pi) - 1e-12
