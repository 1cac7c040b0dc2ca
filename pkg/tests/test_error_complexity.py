from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.analyzers.bitseq_core import PeriodicSequence, SupportSet, parse_sequence
from src.analyzers.cube_model import (
    leading_ones_cube,
    materialize,
    recognize_cube,
    standard_decompose,
)
from src.analyzers.error_complexity import (
    ScanFilter,
    ScanOutcome,
    SearchBudget,
    celcs,
    classify_sequence,
    conjecture_scan,
    is_stable_klc,
    klc_exhaustive,
    klc_profile,
    kmin_first_decrease,
    max_klc,
    predict_critical_ks,
)
from src.analyzers.linear_complexity import games_chan_lc
from src.errors import BudgetExceededError, InputError
from src.utils.bit_ops import mask_from_positions


def brute_force_klc(s, k):
    best = games_chan_lc(s)
    for weight in range(1, k + 1):
        for support in combinations(range(s.period), weight):
            e = mask_from_positions(support)
            best = min(best, games_chan_lc(PeriodicSequence(s.n, s.mask ^ e)))
    return best


def test_klc_of_four_leading_ones(budget):
    s = parse_sequence("11110000", "bits")
    assert klc_exhaustive(s, 3, budget) == 5
    assert klc_exhaustive(s, 4, budget) == 0
    assert is_stable_klc(s, 3, budget)
    assert not is_stable_klc(s, 4, budget)


def test_klc_of_three_pairs(three_pair_sequence, budget):
    assert klc_profile(three_pair_sequence, 6, budget) == [15, 15, 10, 10, 8, 8, 0]
    assert klc_exhaustive(three_pair_sequence, 2, budget) == 10


def test_klc_of_three_cube_does_not_drop_before_its_weight(three_cube_sequence, budget):
    assert klc_exhaustive(three_cube_sequence, 2, budget) == 5
    assert klc_exhaustive(three_cube_sequence, 4, budget) == 5


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=255), st.integers(min_value=0, max_value=8))
def test_klc_profile_matches_brute_force(mask, k):
    s = PeriodicSequence(3, mask)
    assert klc_exhaustive(s, k) == brute_force_klc(s, k)


def test_klc_closed_form_targets(budget):
    s = PeriodicSequence.from_positions(3, [0, 1, 2, 3, 4, 5, 6])
    # one change reaches the all-ones sequence
    assert klc_exhaustive(s, 1, budget) == 1
    assert klc_exhaustive(s, 7, budget) == 0
    assert klc_exhaustive(PeriodicSequence.zero(3), 2, budget) == 0


def test_klc_rejects_out_of_range_k(budget):
    s = parse_sequence("1100", "bits")
    with pytest.raises(InputError):
        klc_exhaustive(s, 5, budget)
    with pytest.raises(InputError):
        klc_exhaustive(s, -1, budget)


def test_klc_budget(three_pair_sequence):
    with pytest.raises(BudgetExceededError) as excinfo:
        klc_exhaustive(three_pair_sequence, 2, SearchBudget(max_patterns=10, max_weight=8))
    assert excinfo.value.required == 137
    assert excinfo.value.limit == 10
    with pytest.raises(BudgetExceededError):
        klc_exhaustive(three_pair_sequence, 2, SearchBudget(max_patterns=10**6, max_weight=1))


def test_klc_on_a_period_beyond_the_table(budget):
    s = PeriodicSequence.from_positions(5, [0, 1, 3, 4, 7, 8])
    assert klc_exhaustive(s, 1, budget, workers=1) == games_chan_lc(s)
    assert klc_exhaustive(s, 2, budget, workers=1) < games_chan_lc(s)


def test_kmin_first_decrease(three_pair_sequence):
    assert kmin_first_decrease(parse_sequence("11110000", "bits")) == 4
    assert kmin_first_decrease(three_pair_sequence) == 2
    assert kmin_first_decrease(PeriodicSequence.from_positions(3, [2])) == 1
    with pytest.raises(InputError):
        kmin_first_decrease(PeriodicSequence.zero(3))


def test_celcs(three_pair_sequence, three_cube_sequence, budget):
    assert celcs(three_pair_sequence, budget).points == ((0, 15), (2, 10), (4, 8), (6, 0))
    assert celcs(three_cube_sequence, budget).points == ((0, 5), (8, 0))
    assert celcs(PeriodicSequence.zero(3), budget).points == ((0, 0),)


@settings(deadline=None)
@given(st.integers(min_value=1, max_value=255))
def test_spectrum_shape(mask):
    s = PeriodicSequence(3, mask)
    points = celcs(s).points
    assert points[0] == (0, games_chan_lc(s))
    assert points[-1][1] == 0
    assert points[-1][0] <= s.weight
    ks = [k for k, _ in points]
    complexities = [c for _, c in points]
    assert ks == sorted(set(ks))
    assert complexities == sorted(set(complexities), reverse=True)
    if len(points) > 1:
        assert points[1][0] == kmin_first_decrease(s)


@pytest.mark.parametrize(
    "n, k, expected",
    [(3, 0, 8), (3, 1, 7), (3, 2, 5), (3, 3, 5), (3, 4, 1), (4, 7, 9)],
)
def test_max_klc(n, k, expected):
    assert max_klc(n, k) == expected


def test_max_klc_range():
    with pytest.raises(InputError):
        max_klc(3, 8)


def test_max_klc_bound_holds_exhaustively():
    for k in (1, 2, 3):
        attained = max(klc_exhaustive(PeriodicSequence(3, m), k) for m in range(256))
        assert attained == max_klc(3, k)


def test_predict_critical_ks(three_pair_sequence, three_cube_sequence):
    assert predict_critical_ks(standard_decompose(three_pair_sequence)) == [2, 4, 6]
    assert predict_critical_ks(standard_decompose(three_cube_sequence)) == [8]
    with pytest.raises(InputError):
        predict_critical_ks(standard_decompose(PeriodicSequence.from_positions(3, [1])))
    with pytest.raises(InputError):
        predict_critical_ks(standard_decompose(PeriodicSequence.zero(3)))


def test_classify_sequence(three_pair_sequence, three_cube_sequence, budget):
    outcome, witness = classify_sequence(three_pair_sequence, ScanFilter.ALL_EVEN_WEIGHT, budget)
    assert outcome is ScanOutcome.MATCH
    assert witness.predicted_ks == [2, 4, 6]

    outcome, witness = classify_sequence(three_pair_sequence, "prop32_unique", budget)
    assert outcome is ScanOutcome.SKIPPED
    assert witness is None

    outcome, _ = classify_sequence(three_cube_sequence, ScanFilter.PROP32_UNIQUE, budget)
    assert outcome is ScanOutcome.MATCH

    odd = PeriodicSequence.from_positions(4, [0, 1, 2])
    assert classify_sequence(odd, ScanFilter.ALL_EVEN_WEIGHT, budget)[0] is ScanOutcome.SKIPPED

    tight = SearchBudget(max_patterns=10, max_weight=1)
    outcome, _ = classify_sequence(three_pair_sequence, ScanFilter.ALL_EVEN_WEIGHT, tight)
    assert outcome is ScanOutcome.INCOMPLETE


@pytest.mark.parametrize("scan_filter", list(ScanFilter))
def test_scan_period_eight(scan_filter, budget):
    report = conjecture_scan(3, scan_filter, budget, workers=1)
    assert report.examined == 256
    assert sum(report.tallies.values()) == 256
    assert report.complete
    assert report.tallies["MISMATCH"] == len(report.mismatches)
    # odd weights and the zero sequence
    assert report.tallies["SKIPPED"] >= 129
    frame = report.to_frame()
    assert list(frame.columns) == ["positions", "predicted_ks", "oracle_ks", "cubes"]
    assert len(frame) == len(report.mismatches)


def test_scan_with_weight_bound(budget):
    report = conjecture_scan(
        5, ScanFilter.ALL_EVEN_WEIGHT, budget, workers=1, max_sequence_weight=2
    )
    assert report.examined == 1 + 496
    assert report.tallies["SKIPPED"] == 1
    assert report.complete


def test_scan_needs_weight_bound_beyond_table(budget):
    with pytest.raises(InputError):
        conjecture_scan(5, ScanFilter.ALL_EVEN_WEIGHT, budget)


@pytest.mark.slow
def test_full_scan_period_sixteen():
    report = conjecture_scan(4, ScanFilter.ALL_EVEN_WEIGHT)
    assert report.examined == 1 << 16
    assert sum(report.tallies.values()) == 1 << 16
    assert report.complete


def assert_first_decrease_law(s):
    complexity = games_chan_lc(s)
    k_min = kmin_first_decrease(s)
    profile = klc_profile(s, k_min)
    assert profile[:k_min] == [complexity] * k_min
    assert profile[k_min] < complexity


@pytest.mark.slow
def test_first_decrease_law_at_period_eight():
    for mask in range(1, 256):
        assert_first_decrease_law(PeriodicSequence(3, mask))


@pytest.mark.slow
def test_first_decrease_law_for_light_sequences_of_period_sixteen():
    for weight in range(1, 7):
        for support in combinations(range(16), weight):
            assert_first_decrease_law(PeriodicSequence(4, mask_from_positions(support)))


@pytest.mark.slow
def test_max_klc_is_attained_by_leading_ones_for_every_k():
    profiles = [klc_profile(PeriodicSequence(3, mask), 7) for mask in range(256)]
    for k in range(1, 8):
        assert max(profile[k] for profile in profiles) == max_klc(3, k)
        assert klc_exhaustive(leading_ones_cube(3, k.bit_length()), k) == max_klc(3, k)


@pytest.mark.slow
def test_single_cube_spectrum_at_period_sixteen():
    for size in (1, 2, 4, 8, 16):
        for support in combinations(range(16), size):
            cube = recognize_cube(SupportSet(4, support))
            if cube is None:
                continue
            points = celcs(materialize(cube)).points
            assert points == ((0, cube.linear_complexity), (size, 0))


@pytest.mark.slow
def test_unique_decomposition_scan_period_sixteen():
    report = conjecture_scan(4, ScanFilter.PROP32_UNIQUE)
    assert report.examined == 1 << 16
    assert report.complete
    assert report.tallies["MATCH"] == 2831
    assert report.tallies["MISMATCH"] == 184
    assert len(report.mismatches) == 184
    witness = next(w for w in report.mismatches if w.positions == [0, 1, 2, 5, 8, 10])
    assert witness.predicted_ks == [2, 6]
    assert [k for k, _ in witness.oracle_spectrum if k > 0] == [2, 4, 6]
