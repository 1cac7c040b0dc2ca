"""
Sequence Core Module
--------------------
Canonical representation of one period of a 2^n-periodic binary sequence, the
three text formats (bits, hex, positions) and the elementary operations every
other analyzer builds on.

A period is stored as an integer mask: bit i of the mask is the term s_i. The
"bits" text format reads left to right as ascending index, so "1100" is
s_0 = s_1 = 1. Hex packs four indices per character with index 4t in the most
significant bit of character t.
"""

import string
from dataclasses import dataclass
from enum import Enum

from src.config import get_settings
from src.errors import InputError, ParseError
from src.utils.bit_ops import iter_set_bits, mask_from_positions, popcount


class SequenceFormat(str, Enum):
    BITS = "bits"
    HEX = "hex"
    POSITIONS = "positions"


def _check_exponent(n):
    cap = get_settings().max_exponent
    if not isinstance(n, int) or n < 0 or n > cap:
        raise InputError(f"Period exponent must be an integer in [0, {cap}], got {n!r}")


@dataclass(frozen=True)
class SupportSet:
    """Positions of the non-zero terms of one period, strictly ascending."""

    n: int
    positions: tuple

    def __post_init__(self):
        _check_exponent(self.n)
        positions = tuple(self.positions)
        object.__setattr__(self, "positions", positions)
        period = 1 << self.n
        for previous, current in zip(positions, positions[1:]):
            if current <= previous:
                raise InputError("Support positions must be strictly ascending")
        if positions and (positions[0] < 0 or positions[-1] >= period):
            raise InputError(f"Support positions must lie in [0, {period})")

    @classmethod
    def of(cls, n, positions):
        """Build a support from positions in any order (duplicates rejected)."""
        ordered = sorted(positions)
        if len(set(ordered)) != len(ordered):
            raise InputError("Support positions must be distinct")
        return cls(n, tuple(ordered))

    def __len__(self):
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)

    def __contains__(self, position):
        return position in self.positions

    def to_sequence(self):
        return PeriodicSequence(self.n, mask_from_positions(self.positions))


@dataclass(frozen=True)
class PeriodicSequence:
    """One period s_0 … s_{N-1} of a binary sequence with period N = 2^n."""

    n: int
    mask: int

    def __post_init__(self):
        _check_exponent(self.n)
        if not isinstance(self.mask, int) or self.mask < 0 or self.mask >> self.period:
            raise InputError(f"Mask does not fit a period of length {self.period}")

    @property
    def period(self):
        return 1 << self.n

    @property
    def bits(self):
        return tuple((self.mask >> i) & 1 for i in range(self.period))

    @property
    def support(self):
        return SupportSet(self.n, tuple(iter_set_bits(self.mask)))

    @property
    def weight(self):
        return popcount(self.mask)

    def is_zero(self):
        return self.mask == 0

    @classmethod
    def zero(cls, n):
        return cls(n, 0)

    @classmethod
    def all_ones(cls, n):
        return cls(n, (1 << (1 << n)) - 1)

    @classmethod
    def from_bits(cls, bits):
        """
        :param bits: iterable of 0/1 - Terms in index order; length must be 2^n.
        """
        bits = list(bits)
        n = len(bits).bit_length() - 1
        if not bits or len(bits) != 1 << n:
            raise InputError(f"Period length {len(bits)} is not a power of two")
        if any(bit not in (0, 1) for bit in bits):
            raise InputError("Terms must be 0 or 1")
        return cls(n, mask_from_positions(i for i, bit in enumerate(bits) if bit))

    @classmethod
    def from_positions(cls, n, positions):
        return SupportSet.of(n, positions).to_sequence()

    def to_text(self, fmt=SequenceFormat.BITS):
        return serialize_sequence(self, fmt)

    def __str__(self):
        return serialize_sequence(self, SequenceFormat.BITS)


def parse_sequence(text, fmt, n=None):
    """
    Parse one period from text.

    :param text: str - The encoded period.
    :param fmt: SequenceFormat or str - One of bits, hex, positions.
    :param n: int - Period exponent; optional for bits (the length fixes it),
              required for hex and positions.
    :return: PeriodicSequence - The parsed sequence.
    :raises ParseError: Bad character, wrong length, position out of range or
                        duplicated.
    """
    try:
        fmt = SequenceFormat(fmt)
    except ValueError:
        raise ParseError(f"Unknown sequence format: {fmt!r}") from None
    text = text.strip()

    if fmt is SequenceFormat.BITS:
        if not text or any(ch not in "01" for ch in text):
            raise ParseError("Bits text must be a non-empty string of 0 and 1")
        length = len(text)
        exponent = length.bit_length() - 1
        if length != 1 << exponent:
            raise ParseError(f"Bits length {length} is not a power of two")
        if n is not None and exponent != n:
            raise ParseError(f"Bits length {length} does not match period 2^{n}")
        _check_parse_exponent(exponent)
        mask = mask_from_positions(i for i, ch in enumerate(text) if ch == "1")
        return PeriodicSequence(exponent, mask)

    if n is None:
        raise ParseError(f"Format {fmt.value} requires the period exponent n")
    _check_parse_exponent(n)
    period = 1 << n

    if fmt is SequenceFormat.HEX:
        if n < 2:
            raise ParseError("Hex format needs a period of at least 4")
        if len(text) != period // 4:
            raise ParseError(
                f"Hex text has {len(text)} characters, period 2^{n} needs {period // 4}"
            )
        mask = 0
        for t, ch in enumerate(text):
            if ch not in string.hexdigits:
                raise ParseError(f"Bad hex character {ch!r}")
            nibble = int(ch, 16)
            for offset in range(4):
                if nibble & (8 >> offset):
                    mask |= 1 << (4 * t + offset)
        return PeriodicSequence(n, mask)

    positions = []
    if text:
        for token in text.split(","):
            token = token.strip()
            if not (token.isascii() and token.isdigit()):
                raise ParseError(f"Bad position {token!r}")
            position = int(token)
            if position >= period:
                raise ParseError(f"Position {position} is not below the period {period}")
            positions.append(position)
    if len(set(positions)) != len(positions):
        raise ParseError("Duplicate position in positions list")
    return PeriodicSequence(n, mask_from_positions(positions))


def _check_parse_exponent(n):
    try:
        _check_exponent(n)
    except InputError as exc:
        raise ParseError(str(exc)) from None


def serialize_sequence(s, fmt=SequenceFormat.BITS):
    """Inverse of parse_sequence for each format."""
    fmt = SequenceFormat(fmt)
    if fmt is SequenceFormat.BITS:
        return "".join("1" if bit else "0" for bit in s.bits)
    if fmt is SequenceFormat.HEX:
        if s.n < 2:
            raise InputError("Hex format needs a period of at least 4")
        chars = []
        for t in range(s.period // 4):
            nibble = 0
            for offset in range(4):
                if (s.mask >> (4 * t + offset)) & 1:
                    nibble |= 8 >> offset
            chars.append(f"{nibble:x}")
        return "".join(chars)
    return ",".join(str(p) for p in s.support.positions)


def hamming_weight(s):
    return s.weight


def xor(s, t):
    """Termwise sum mod 2 of two sequences with the same period."""
    if s.n != t.n:
        raise InputError(f"Period mismatch: 2^{s.n} vs 2^{t.n}")
    return PeriodicSequence(s.n, s.mask ^ t.mask)


def halves(s):
    """
    Split a period into Left (indices [0, 2^{n-1})) and Right (the rest,
    re-indexed from 0).
    """
    if s.n == 0:
        raise InputError("A period of length 1 has no halves")
    half = s.period >> 1
    return (
        PeriodicSequence(s.n - 1, s.mask & ((1 << half) - 1)),
        PeriodicSequence(s.n - 1, s.mask >> half),
    )


def join_halves(left, right):
    """Concatenate Left and Right back into one period of twice the length."""
    if left.n != right.n:
        raise InputError(f"Period mismatch: 2^{left.n} vs 2^{right.n}")
    return PeriodicSequence(left.n + 1, left.mask | (right.mask << left.period))
