"""
Linear Complexity Module
------------------------
Linear complexity of 2^n-periodic binary sequences.

- games_chan_lc: the halving recursion (equal halves keep Left; unequal halves
  add half the period and continue with Left xor Right), run iteratively.
- games_chan_lc_batch / lc_table: the same recursion vectorized with numpy over
  arrays of 64-bit masks, used by the exhaustive sweeps.
- lc_by_factor_multiplicity: independent oracle, 2^n minus the multiplicity of
  (1 + x) in the period polynomial over GF(2).
- pair_lc / quad_lc_predictor: closed forms for two- and four-element supports.
  The four-element predictor is evaluated as stated and never consults the
  recursion; the census audit compares the two.
"""

import logging
from functools import lru_cache

import numpy as np

from src.analyzers.bitseq_core import PeriodicSequence
from src.errors import InputError, PreconditionError
from src.utils.bit_ops import valuation2

logger = logging.getLogger(__name__)

# Largest period exponent whose sequences fit one uint64 lane.
BATCH_MAX_EXPONENT = 6
# Largest period exponent whose full linear-complexity table is materialized.
TABLE_MAX_EXPONENT = 4


def games_chan_lc(s):
    """
    :param s: PeriodicSequence - The sequence.
    :return: int - L(s); the zero sequence has linear complexity 0.
    """
    value = s.mask
    length = s.period
    complexity = 0
    while length > 1:
        half = length >> 1
        left = value & ((1 << half) - 1)
        right = value >> half
        if left != right:
            complexity += half
            value = left ^ right
        else:
            value = left
        length = half
    return complexity + value


def games_chan_lc_batch(masks, n):
    """
    Vectorized Games-Chan over many periods of the same length.

    :param masks: array-like of uint64 - One period per entry.
    :param n: int - Period exponent, at most BATCH_MAX_EXPONENT.
    :return: numpy.ndarray of int64 - Linear complexity per entry.
    """
    if n > BATCH_MAX_EXPONENT:
        raise InputError(f"Batch evaluation supports n <= {BATCH_MAX_EXPONENT}")
    values = np.array(masks, dtype=np.uint64, copy=True)
    complexity = np.zeros(values.shape, dtype=np.int64)
    length = 1 << n
    while length > 1:
        half = length >> 1
        low = np.uint64((1 << half) - 1)
        left = values & low
        right = values >> np.uint64(half)
        unequal = left != right
        complexity += unequal.astype(np.int64) * half
        values = np.where(unequal, left ^ right, left)
        length = half
    return complexity + values.astype(np.int64)


@lru_cache(maxsize=TABLE_MAX_EXPONENT + 1)
def lc_table(n):
    """
    Linear complexity of every sequence of period 2^n, indexed by mask.

    :param n: int - Period exponent, at most TABLE_MAX_EXPONENT.
    :return: numpy.ndarray - Read-only int64 table of length 2^(2^n).
    """
    if n > TABLE_MAX_EXPONENT:
        raise InputError(f"Full tables are limited to n <= {TABLE_MAX_EXPONENT}")
    logger.info(f"Building linear complexity table for period {1 << n}")
    table = games_chan_lc_batch(np.arange(1 << (1 << n), dtype=np.uint64), n)
    table.setflags(write=False)
    return table


def lc_by_factor_multiplicity(s):
    """
    Linear complexity as 2^n - v, v the multiplicity of (1 + x) in s^N(x).

    v < 2^n for a nonzero period, so v is assembled bit by bit from the top:
    (1 + x)^(2^k) = 1 + x^(2^k) over GF(2), and each such factor is divided out
    at most once.

    :param s: PeriodicSequence - The sequence.
    :return: int - L(s), 0 for the zero sequence.
    """
    poly = s.mask
    if poly == 0:
        return 0
    multiplicity = 0
    for k in reversed(range(s.n)):
        stride = 1 << k
        quotient = _divide_by_binomial(poly, stride)
        if quotient is not None:
            poly = quotient
            multiplicity += stride
    return s.period - multiplicity


def _divide_by_binomial(poly, stride):
    """
    Exact quotient of poly by (1 + x^stride), or None when it does not divide.
    Quotient coefficient q_i = p_i + p_{i - stride} + p_{i - 2 stride} + ….
    """
    width = poly.bit_length()
    if width <= stride:
        return None
    quotient = poly
    shift = stride
    while shift < width:
        quotient ^= quotient << shift
        shift <<= 1
    quotient &= (1 << (width - stride)) - 1
    if quotient ^ (quotient << stride) != poly:
        return None
    return quotient


def pair_lc(i, j, n):
    """
    L(E_i + E_j) = 2^n - 2^r where j - i = 2^r(1 + 2a).

    :raises InputError: i == j or a position outside [0, 2^n).
    """
    period = 1 << n
    if not (0 <= i < period and 0 <= j < period):
        raise InputError(f"Positions must lie in [0, {period})")
    if i == j:
        raise InputError("Positions of a pair must differ")
    low, high = sorted((i, j))
    return period - (1 << valuation2(high - low))


def quad_lc_predictor(i, j, k, l, n):
    """
    Four-element closed form: with j - i = 2^d(1+2u) and l - k = 2^e(1+2v),
    returns 2^n - (2^d + 1) when d = e, else 2^n - 2^min(d, e).

    Hypotheses: positions distinct and inside the period, i < j, k < l, i < k
    and k - i odd.

    :raises PreconditionError: Any hypothesis is violated.
    """
    period = 1 << n
    positions = (i, j, k, l)
    if any(not 0 <= p < period for p in positions):
        raise PreconditionError(f"Positions must lie in [0, {period})")
    if len(set(positions)) != 4:
        raise PreconditionError("The four positions must be distinct")
    if not (i < j and k < l and i < k):
        raise PreconditionError("Require i < j, k < l and i < k")
    if (k - i) % 2 == 0:
        raise PreconditionError("Require k - i odd")
    d = valuation2(j - i)
    e = valuation2(l - k)
    if d == e:
        return period - ((1 << d) + 1)
    return period - (1 << min(d, e))


def superposition_law_holds(s, t):
    """
    Check the superposition law on one pair: distinct complexities give
    L(s + t) = max, equal positive complexities give L(s + t) < L(s).

    :return: bool - True when the pair satisfies the law.
    """
    ls, lt = games_chan_lc(s), games_chan_lc(t)
    combined = games_chan_lc(PeriodicSequence(s.n, s.mask ^ t.mask))
    if ls != lt:
        return combined == max(ls, lt)
    if ls > 0:
        return combined < ls
    return combined == 0
