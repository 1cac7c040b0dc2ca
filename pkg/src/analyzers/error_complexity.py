"""
Error Complexity Module
-----------------------
k-error linear complexity of 2^n-periodic binary sequences and everything built
on it: the first-decrease point k_min, stability, the critical-point spectrum,
the maximum k-error bound, and the scanner that compares cube-dimension
predictions of the critical points against the exhaustive oracle.

The oracle enumerates error patterns by ascending weight, lexicographic by
support within one weight. Only weights up to 2^{n-1} are enumerated: adding
the all-ones sequence (linear complexity 1) to a sequence of linear complexity
at least 2 leaves it unchanged, so a heavier pattern is never better than its
complement. The two targets that remain, the zero sequence (at k >= W_H(s)) and
the all-ones sequence (at k >= 2^n - W_H(s)), are taken in closed form.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from itertools import islice
from math import comb

import numpy as np

from src.analyzers.bitseq_core import PeriodicSequence
from src.analyzers.cube_model import has_unique_decomposition_hint, standard_decompose
from src.analyzers.linear_complexity import (
    BATCH_MAX_EXPONENT,
    TABLE_MAX_EXPONENT,
    games_chan_lc,
    games_chan_lc_batch,
    lc_table,
)
from src.analyzers.parallel import run_partitioned
from src.analyzers.reports import CubeSummary, ScanReport, ScanWitness
from src.config import get_settings
from src.errors import BudgetExceededError, InputError, InvariantViolation
from src.utils.bit_ops import (
    pattern_count,
    patterns_of_weight,
    popcount,
    weight_class_array,
)

logger = logging.getLogger(__name__)

# Weight classes are streamed to numpy in chunks of this many patterns.
CHUNK_PATTERNS = 1 << 18


@dataclass(frozen=True)
class SearchBudget:
    max_patterns: int
    max_weight: int

    def __post_init__(self):
        if self.max_patterns <= 0 or self.max_weight <= 0:
            raise InputError("Search budget caps must be positive")

    @classmethod
    def default(cls):
        settings = get_settings()
        return cls(max_patterns=settings.max_patterns, max_weight=settings.max_weight)


@dataclass(frozen=True)
class Spectrum:
    """Critical points (k, L_k): strictly increasing k, strictly decreasing L_k."""

    points: tuple

    @property
    def critical_ks(self):
        return [k for k, _ in self.points if k > 0]


def _enumeration_weight(s, k):
    # weights >= W_H(s) are covered by the zero-sequence target
    return max(0, min(k, s.period // 2, s.weight - 1))


def _check_budget(s, weight, budget):
    if weight > budget.max_weight:
        raise BudgetExceededError(
            f"Error weight {weight} exceeds the budget of {budget.max_weight}",
            required=weight,
            limit=budget.max_weight,
        )
    required = pattern_count(s.period, weight)
    if required > budget.max_patterns:
        raise BudgetExceededError(
            f"{required} error patterns exceed the budget of {budget.max_patterns}",
            required=required,
            limit=budget.max_patterns,
        )
    return required


def _min_lc_over_range(start, stop, n, mask, weight):
    """Minimum L(s + e) over patterns [start, stop) of one weight class."""
    length = 1 << n
    patterns = patterns_of_weight(length, weight, start, stop)
    if n > BATCH_MAX_EXPONENT:
        return min(
            (games_chan_lc(PeriodicSequence(n, mask ^ e)) for e in patterns),
            default=None,
        )
    best = None
    base = np.uint64(mask)
    while True:
        chunk = np.fromiter(islice(patterns, CHUNK_PATTERNS), dtype=np.uint64)
        if chunk.size == 0:
            return best
        low = int(games_chan_lc_batch(chunk ^ base, n).min())
        best = low if best is None else min(best, low)


def _min_lc_at_weight(s, weight, workers):
    if s.n <= TABLE_MAX_EXPONENT:
        patterns = weight_class_array(s.period, weight)
        return int(lc_table(s.n)[patterns ^ np.uint64(s.mask)].min())
    total = comb(s.period, weight)
    partials = run_partitioned(
        _min_lc_over_range, total, args=(s.n, s.mask, weight), workers=workers
    )
    return min(p for p in partials if p is not None)


def klc_profile(s, k_max, budget=None, workers=None):
    """
    The map k -> L_k(s) for 0 <= k <= k_max from one enumeration.

    :param s: PeriodicSequence - The sequence.
    :param k_max: int - Largest error budget, 0 <= k_max <= 2^n.
    :param budget: SearchBudget - Enumeration caps (defaults from settings).
    :param workers: int - Worker count for weight classes too large to tabulate.
    :return: list of int - L_0, …, L_{k_max}.
    :raises BudgetExceededError: The enumeration would exceed the budget.
    """
    if not 0 <= k_max <= s.period:
        raise InputError(f"k must lie in [0, {s.period}], got {k_max}")
    budget = budget or SearchBudget.default()
    weight_cap = _enumeration_weight(s, k_max)
    _check_budget(s, weight_cap, budget)

    sequence_weight = s.weight
    profile = []
    incumbent = games_chan_lc(s)
    for k in range(k_max + 1):
        if 0 < k <= weight_cap and incumbent > 0:
            incumbent = min(incumbent, _min_lc_at_weight(s, k, workers))
        if k >= sequence_weight:
            incumbent = 0
        elif k >= s.period - sequence_weight:
            incumbent = min(incumbent, 1)
        profile.append(incumbent)
        if incumbent == 0:
            profile.extend([0] * (k_max - k))
            break
    return profile


def klc_exhaustive(s, k, budget=None, workers=None):
    """
    Smallest linear complexity reachable by changing at most k terms of a period.

    :raises InputError: k outside [0, 2^n].
    :raises BudgetExceededError: The enumeration would exceed the budget.
    """
    return klc_profile(s, k, budget, workers)[-1]


def kmin_first_decrease(s):
    """
    Smallest k with L_k(s) < L(s): 2^{W_H(2^n - L(s))}.

    :raises InputError: The zero sequence never decreases.
    """
    complexity = games_chan_lc(s)
    if complexity == 0:
        raise InputError("The zero sequence has no first decrease")
    return 1 << popcount(s.period - complexity)


def is_stable_klc(s, k, budget=None, workers=None):
    """
    True iff no change of at most k terms lowers the linear complexity.

    Cross-checked against k < k_min; a disagreement raises InvariantViolation.
    """
    return stability_from_klc(s, k, klc_exhaustive(s, k, budget, workers))


def stability_from_klc(s, k, klc_value):
    """Stability of s at k given an already computed L_k(s)."""
    stable = klc_value == games_chan_lc(s)
    if not s.is_zero() and stable != (k < kmin_first_decrease(s)):
        raise InvariantViolation(
            f"Stability at k={k} disagrees with k_min={kmin_first_decrease(s)} "
            f"for {s.to_text()}"
        )
    return stable


def spectrum_from_profile(profile):
    points = [(0, profile[0])]
    for k in range(1, len(profile)):
        if profile[k] < points[-1][1]:
            points.append((k, profile[k]))
    return Spectrum(tuple(points))


def celcs(s, budget=None, workers=None):
    """
    Critical error linear complexity spectrum: every (k, L_k) where L_k drops.
    """
    if s.is_zero():
        return Spectrum(((0, 0),))
    return spectrum_from_profile(klc_profile(s, s.weight, budget, workers))


def max_klc(n, k):
    """
    Maximum k-error linear complexity over all sequences of period 2^n:
    2^n - (2^l - 1) with 2^{l-1} <= k < 2^l (2^n for k = 0).

    :raises InputError: k outside [0, 2^n).
    """
    period = 1 << n
    if not 0 <= k < period:
        raise InputError(f"k must lie in [0, {period}), got {k}")
    if k == 0:
        return period
    return period - ((1 << k.bit_length()) - 1)


def predict_critical_ks(d):
    """
    Prefix sums of 2^{m_i}, the cube dimensions taken in descending order of
    linear complexity.

    :raises InputError: Empty decomposition or odd weight (lone vertex).
    """
    if d.lone_vertex is not None:
        raise InputError("Critical point prediction assumes even weight")
    if not d.cubes:
        raise InputError("Empty decomposition")
    ordered = sorted(d.cubes, key=lambda c: c.linear_complexity, reverse=True)
    predicted = []
    running = 0
    for cube in ordered:
        running += 1 << cube.dimension
        predicted.append(running)
    return predicted


class ScanFilter(str, Enum):
    PROP32_UNIQUE = "prop32_unique"
    ALL_EVEN_WEIGHT = "all_even_weight"


class ScanOutcome(str, Enum):
    MATCH = "MATCH"
    MISMATCH = "MISMATCH"
    SKIPPED = "SKIPPED"
    INCOMPLETE = "INCOMPLETE"


def classify_sequence(s, scan_filter, budget=None):
    """
    One scanner step: predicted critical ks from the standard decomposition
    against the oracle spectrum.

    :return: (ScanOutcome, ScanWitness or None) - The witness is filled for
             MATCH and MISMATCH.
    """
    scan_filter = ScanFilter(scan_filter)
    if s.is_zero() or s.weight % 2:
        return ScanOutcome.SKIPPED, None
    if scan_filter is ScanFilter.PROP32_UNIQUE and not has_unique_decomposition_hint(s):
        return ScanOutcome.SKIPPED, None
    decomposition = standard_decompose(s)
    predicted = predict_critical_ks(decomposition)
    try:
        spectrum = celcs(s, budget, workers=1)
    except BudgetExceededError:
        return ScanOutcome.INCOMPLETE, None
    outcome = (
        ScanOutcome.MATCH
        if set(predicted) == set(spectrum.critical_ks)
        else ScanOutcome.MISMATCH
    )
    witness = ScanWitness(
        positions=list(s.support.positions),
        outcome=outcome.value,
        decomposition=[CubeSummary.from_cube(c) for c in decomposition.cubes],
        predicted_ks=predicted,
        oracle_spectrum=[tuple(p) for p in spectrum.points],
    )
    return outcome, witness


def _scan_range(start, stop, n, scan_filter, budget, masks):
    tallies = Counter()
    mismatches = []
    for index in range(start, stop):
        mask = index if masks is None else masks[index]
        outcome, witness = classify_sequence(PeriodicSequence(n, mask), scan_filter, budget)
        tallies[outcome.value] += 1
        if outcome is ScanOutcome.MISMATCH:
            mismatches.append(witness.model_dump())
    return dict(tallies), mismatches


def _restricted_masks(n, max_sequence_weight):
    period = 1 << n
    masks = []
    for weight in range(0, min(max_sequence_weight, period) + 1, 2):
        masks.extend(patterns_of_weight(period, weight))
    return masks


class ConjectureScanner:
    def __init__(self, budget=None, workers=None):
        """
        :param budget: SearchBudget - Oracle caps for every scanned sequence.
        :param workers: int - Worker processes for the sweep.
        """
        self.logger = logging.getLogger(self.__class__.__name__)
        if not self.logger.hasHandlers():
            logging.basicConfig(level=logging.INFO)
        self.budget = budget or SearchBudget.default()
        self.workers = workers

    def scan(self, n, scan_filter=ScanFilter.PROP32_UNIQUE, max_sequence_weight=None):
        """
        Sweep even-weight sequences and classify each as MATCH, MISMATCH,
        SKIPPED or INCOMPLETE.

        :param n: int - Period exponent; the full sweep needs n <= 4.
        :param scan_filter: ScanFilter - prop32_unique or all_even_weight.
        :param max_sequence_weight: int - Restrict the sweep to sequences of at
                                    most this weight (required for n > 4).
        :return: ScanReport - Tallies and every MISMATCH witness.
        """
        scan_filter = ScanFilter(scan_filter)
        if n < 1:
            raise InputError("The scan needs n >= 1")
        if max_sequence_weight is None and n > TABLE_MAX_EXPONENT:
            raise InputError(
                f"Full sweeps are limited to n <= {TABLE_MAX_EXPONENT}; "
                "pass a sequence weight bound for larger periods"
            )
        masks = None
        total = 1 << (1 << n)
        if max_sequence_weight is not None:
            masks = _restricted_masks(n, max_sequence_weight)
            total = len(masks)
        self.logger.info(
            f"Scanning {total} sequences of period {1 << n} with filter {scan_filter.value}"
        )
        partials = run_partitioned(
            _scan_range,
            total,
            args=(n, scan_filter, self.budget, masks),
            workers=self.workers,
        )
        tallies = Counter({outcome.value: 0 for outcome in ScanOutcome})
        mismatches = []
        for partial_tallies, partial_mismatches in partials:
            tallies.update(partial_tallies)
            mismatches.extend(partial_mismatches)
        report = ScanReport(
            n=n,
            scan_filter=scan_filter.value,
            max_sequence_weight=max_sequence_weight,
            examined=total,
            tallies=dict(tallies),
            mismatches=[ScanWitness(**m) for m in mismatches],
            complete=tallies[ScanOutcome.INCOMPLETE.value] == 0,
        )
        self.logger.info(f"Scan tallies: {report.tallies}")
        return report


def conjecture_scan(n, scan_filter, budget=None, workers=None, max_sequence_weight=None):
    return ConjectureScanner(budget, workers).scan(n, scan_filter, max_sequence_weight)
