"""
Census Module
-------------
Closed-form counts of cubes and of sequences built from two or three
independent cubes, their brute-force verification by enumeration, and the audit
of the four-element linear complexity predictor against the Games-Chan oracle.

All arithmetic is on Python integers; nothing here touches floating point.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from itertools import combinations, islice
from math import comb

from src.analyzers.bitseq_core import PeriodicSequence, SupportSet
from src.analyzers.cube_model import recognize_cube, standard_decompose
from src.analyzers.error_complexity import SearchBudget
from src.analyzers.linear_complexity import games_chan_lc, quad_lc_predictor
from src.analyzers.parallel import run_partitioned
from src.analyzers.reports import CountVerification, QuadAuditCase, QuadAuditReport
from src.config import get_settings
from src.errors import BudgetExceededError, InputError, UnsupportedConfigurationError
from src.utils.bit_ops import mask_from_positions

AD_HOC_EDGE_SETS = ((0, 1), (0, 3))
QUAD_AUDIT_MAX_EXPONENT = 4
# Largest closed-form count materialized, in bits.
COUNT_MAX_BITS = 1 << 20


def _check_count_exponent(n):
    cap = get_settings().max_exponent
    if not isinstance(n, int) or not 1 <= n <= cap:
        raise InputError(f"Counting needs a period exponent in [1, {cap}], got {n!r}")


def _check_edge_list(n, edges):
    edges = tuple(edges)
    if not edges:
        raise InputError("Edge lists must be non-empty")
    if any(not isinstance(e, int) or e < 0 or e >= n for e in edges):
        raise InputError(f"Edge exponents must lie in [0, {n})")
    if any(b <= a for a, b in zip(edges, edges[1:])):
        raise InputError("Edge exponents must be strictly increasing")
    return edges


@dataclass(frozen=True)
class CountingSpec:
    """Edge exponents of one to three cubes, in C_1, C_2, C_3 order."""

    n: int
    cube_edge_sets: tuple

    def __post_init__(self):
        _check_count_exponent(self.n)
        edge_sets = tuple(_check_edge_list(self.n, e) for e in self.cube_edge_sets)
        if not 1 <= len(edge_sets) <= 3:
            raise InputError("A counting spec names one, two or three cubes")
        object.__setattr__(self, "cube_edge_sets", edge_sets)

    @property
    def combined_weight(self):
        return sum(1 << len(edges) for edges in self.cube_edge_sets)


def _cube_exponent(n, edges):
    """2^m·n - 2^{m-1}·i_m - … - 2·i_2 - i_1 - 2^{m+1} + 2."""
    m = len(edges)
    exponent = (1 << m) * n - (1 << (m + 1)) + 2
    for t, edge in enumerate(edges):
        exponent -= (1 << t) * edge
    return exponent


def _dependent_exponent(n, edges):
    # a cube counted relative to earlier cubes carries 2·j_1 instead of j_1
    return _cube_exponent(n, edges) - edges[0]


def _power_of_two(exponent):
    if exponent > COUNT_MAX_BITS:
        raise BudgetExceededError(
            f"A count of 2^{exponent} exceeds the {COUNT_MAX_BITS}-bit limit",
            required=exponent,
            limit=COUNT_MAX_BITS,
        )
    return 1 << exponent


def _rank_at_or_below(edges, bound):
    """max{x : edges[x] <= bound} with 1-based x, 0 when no edge qualifies."""
    return sum(1 for e in edges if e <= bound)


def count_cubes(n, edges):
    """
    Number of m-cubes with the given edge exponents in a period of 2^n.

    :return: int - 2^{2^m n - 2^{m-1} i_m - … - 2 i_2 - i_1 - 2^{m+1} + 2}.
    """
    _check_count_exponent(n)
    edges = _check_edge_list(n, edges)
    return _power_of_two(_cube_exponent(n, edges))


def _second_cube_factor(spec):
    first, second = spec.cube_edge_sets[:2]
    t = _rank_at_or_below(first, second[0])
    if t == 0 or (1 << second[0]) <= (1 << t):
        raise UnsupportedConfigurationError(
            f"Side condition 2^{second[0]} > 2^t fails (t = {t}) for C_1={list(first)}, "
            f"C_2={list(second)}"
        )
    return _power_of_two(_dependent_exponent(spec.n, second)) * ((1 << second[0]) - (1 << t))


def count_two_cube_sequences(spec):
    """
    Sequences made of two independent cubes C_1, C_2 with the given edges.

    :raises UnsupportedConfigurationError: 2^{j_1} > 2^t fails, or no edge of
                                           C_1 lies at or below j_1.
    """
    if len(spec.cube_edge_sets) != 2:
        raise InputError("count_two_cube_sequences needs exactly two cubes")
    return count_cubes(spec.n, spec.cube_edge_sets[0]) * _second_cube_factor(spec)


def count_three_cube_sequences(spec):
    """
    Sequences made of three independent cubes C_1, C_2, C_3.

    :raises UnsupportedConfigurationError: Either side condition fails.
    """
    if len(spec.cube_edge_sets) != 3:
        raise InputError("count_three_cube_sequences needs exactly three cubes")
    first, second, third = spec.cube_edge_sets
    u = _rank_at_or_below(first, third[0])
    v = _rank_at_or_below(second, third[0])
    if u == 0 or v == 0 or (1 << third[0]) <= (1 << u) + (1 << v):
        raise UnsupportedConfigurationError(
            f"Side condition 2^{third[0]} > 2^u + 2^v fails (u = {u}, v = {v})"
        )
    third_factor = _power_of_two(_dependent_exponent(spec.n, third)) * (
        (1 << third[0]) - (1 << u) - (1 << v)
    )
    return count_cubes(spec.n, first) * _second_cube_factor(spec) * third_factor


def example35_count(n):
    """
    Two-cube sequences with C_1 edges {0, 1} and C_2 edges {0, 3}, a
    configuration outside the two-cube side condition: 2^10 · (2^8)^{n-4}.

    :raises InputError: n < 4.
    """
    _check_count_exponent(n)
    if n < 4:
        raise InputError("The configuration needs n >= 4")
    return (1 << 10) * (1 << (8 * (n - 4)))


def example35_member(s):
    """True iff the standard decomposition has exactly the two cubes above."""
    decomposition = standard_decompose(s)
    return (
        decomposition.lone_vertex is None
        and decomposition.edge_profile() == tuple(sorted(AD_HOC_EDGE_SETS))
    )


def predicted_count(spec):
    """Closed-form count for a spec, dispatching on the number of cubes."""
    if len(spec.cube_edge_sets) == 1:
        return count_cubes(spec.n, spec.cube_edge_sets[0])
    if len(spec.cube_edge_sets) == 2:
        if spec.cube_edge_sets == AD_HOC_EDGE_SETS and spec.n >= 4:
            return example35_count(spec.n)
        return count_two_cube_sequences(spec)
    return count_three_cube_sequences(spec)


def _tally_supports(start, stop, n, size, target_profile):
    """Count supports [start, stop) of one size whose profile matches."""
    observed = 0
    single = len(target_profile) == 1
    for support in islice(combinations(range(1 << n), size), start, stop):
        if single:
            cube = recognize_cube(SupportSet(n, support))
            observed += cube is not None and cube.edges == target_profile[0]
        else:
            decomposition = standard_decompose(PeriodicSequence(n, mask_from_positions(support)))
            observed += (
                decomposition.lone_vertex is None
                and decomposition.edge_profile() == target_profile
            )
    return observed


class EnumerationCensus:
    def __init__(self, budget=None, workers=None):
        """
        :param budget: SearchBudget - max_patterns caps the supports scanned.
        :param workers: int - Worker processes for the enumeration.
        """
        self.logger = logging.getLogger(self.__class__.__name__)
        if not self.logger.hasHandlers():
            logging.basicConfig(level=logging.INFO)
        self.budget = budget or SearchBudget.default()
        self.workers = workers

    def verify_count_by_enumeration(self, spec):
        """
        Closed-form count next to the exact tally over every support of the
        combined weight. Single cubes are matched by recognize_cube; several
        cubes by the edge profile of the standard decomposition.

        :param spec: CountingSpec - The configuration.
        :return: CountVerification - predicted (None when no closed form applies)
                 and observed; equality is not asserted.
        :raises BudgetExceededError: More supports than budget.max_patterns.
        """
        size = spec.combined_weight
        total = comb(1 << spec.n, size)
        if total > self.budget.max_patterns:
            raise BudgetExceededError(
                f"C({1 << spec.n}, {size}) supports exceed the budget of "
                f"{self.budget.max_patterns}",
                required=total,
                limit=self.budget.max_patterns,
            )
        note = ""
        try:
            predicted = predicted_count(spec)
        except UnsupportedConfigurationError as e:
            predicted = None
            note = str(e)

        if len(spec.cube_edge_sets) == 1:
            target_profile = (spec.cube_edge_sets[0],)
        else:
            target_profile = tuple(sorted(spec.cube_edge_sets))
        self.logger.info(
            f"Enumerating {total} supports of size {size} for edge sets "
            f"{[list(e) for e in spec.cube_edge_sets]} at n={spec.n}"
        )
        partials = run_partitioned(
            _tally_supports, total, args=(spec.n, size, target_profile), workers=self.workers
        )
        observed = sum(partials)
        self.logger.info(f"Predicted {predicted}, observed {observed}")
        return CountVerification(
            n=spec.n,
            cube_edge_sets=[list(e) for e in spec.cube_edge_sets],
            predicted=predicted,
            observed=observed,
            examined=total,
            note=note,
        )

    def quad_lc_audit(self, n):
        """
        Compare quad_lc_predictor with games_chan_lc on every four-element
        support and every pairing (i, j), (k, l) meeting the predictor's
        hypotheses.

        :param n: int - Period exponent, 2 <= n <= 4.
        :return: QuadAuditReport - Tallies, every disagreement, and the
                 agreements on the support {0, 1, 2, 3}.
        """
        if not 2 <= n <= QUAD_AUDIT_MAX_EXPONENT:
            raise InputError(f"The audit needs 2 <= n <= {QUAD_AUDIT_MAX_EXPONENT}")
        report = QuadAuditReport(n=n)
        for support in combinations(range(1 << n), 4):
            oracle = games_chan_lc(PeriodicSequence(n, mask_from_positions(support)))
            for (i, j), (k, l) in _admissible_pairings(support):
                predicted = quad_lc_predictor(i, j, k, l, n)
                case = QuadAuditCase(
                    support=list(support),
                    pairing=((i, j), (k, l)),
                    predicted=predicted,
                    oracle=oracle,
                )
                report.cases += 1
                if predicted == oracle:
                    report.agreements += 1
                    if support == (0, 1, 2, 3):
                        report.agreement_examples.append(case)
                else:
                    report.disagreements += 1
                    report.witnesses.append(case)
        self.logger.info(
            f"Quad audit n={n}: {report.cases} cases, {report.disagreements} disagreements"
        )
        return report


def _admissible_pairings(support):
    """Splits of four positions into (i, j), (k, l) with i < j, k < l, i < k, k - i odd."""
    a, b, c, d = support
    for first, second in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
        (i, j), (k, l) = first, second
        if (k - i) % 2 == 1:
            yield (i, j), (k, l)


def verify_count_by_enumeration(spec, budget=None, workers=None):
    return EnumerationCensus(budget, workers).verify_count_by_enumeration(spec)


def quad_lc_audit(n):
    return EnumerationCensus().quad_lc_audit(n)


def count_lc_minimal_sequences(n, complexity):
    """
    Sequences of period 2^n with the given linear complexity and the least
    Hamming weight 2^{W_H(2^n - complexity)} such a sequence can have.
    """
    period = 1 << n
    if not 0 < complexity <= period:
        raise InputError(f"Linear complexity must lie in (0, {period}]")
    weight = 1 << (period - complexity).bit_count()
    return sum(
        1
        for support in combinations(range(period), weight)
        if games_chan_lc(PeriodicSequence(n, mask_from_positions(support))) == complexity
    )


def census_tally(verifications):
    """Agreement tally over several verifications (audit summary)."""
    return Counter("agree" if v.agrees else "differ" for v in verifications)
