"""
Report Models
-------------
Pydantic models for every structured result that leaves an analyzer: sweep
reports, audit reports, count verifications and the CLI output document. Counts
that can exceed 64 bits are serialized as decimal strings.
"""

import sys
from typing import Any, Optional

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_serializer


def decimal_string(value):
    """Exact decimal text of an int, past the interpreter's str() digit limit."""
    limit = sys.get_int_max_str_digits()
    if limit == 0 or value.bit_length() < 3 * limit:
        return str(value)
    sys.set_int_max_str_digits(0)
    try:
        return str(value)
    finally:
        sys.set_int_max_str_digits(limit)


class CubeSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    positions: list[int]
    edges: list[int]
    anchor: int
    linear_complexity: int

    @classmethod
    def from_cube(cls, cube):
        return cls(
            positions=list(cube.positions),
            edges=list(cube.edges),
            anchor=cube.anchor,
            linear_complexity=cube.linear_complexity,
        )


class ScanWitness(BaseModel):
    positions: list[int]
    outcome: str
    decomposition: list[CubeSummary]
    predicted_ks: list[int]
    oracle_spectrum: list[tuple[int, int]]


class ScanReport(BaseModel):
    n: int
    scan_filter: str
    max_sequence_weight: Optional[int] = None
    examined: int = 0
    tallies: dict[str, int] = Field(default_factory=dict)
    mismatches: list[ScanWitness] = Field(default_factory=list)
    complete: bool = True

    def to_frame(self):
        """One row per mismatch witness."""
        return pd.DataFrame(
            [
                {
                    "positions": ",".join(map(str, w.positions)),
                    "predicted_ks": ",".join(map(str, w.predicted_ks)),
                    "oracle_ks": ",".join(str(k) for k, _ in w.oracle_spectrum if k > 0),
                    "cubes": len(w.decomposition),
                }
                for w in self.mismatches
            ],
            columns=["positions", "predicted_ks", "oracle_ks", "cubes"],
        )


class QuadAuditCase(BaseModel):
    support: list[int]
    pairing: tuple[tuple[int, int], tuple[int, int]]
    predicted: int
    oracle: int


class QuadAuditReport(BaseModel):
    n: int
    cases: int = 0
    agreements: int = 0
    disagreements: int = 0
    witnesses: list[QuadAuditCase] = Field(default_factory=list)
    agreement_examples: list[QuadAuditCase] = Field(default_factory=list)

    def to_frame(self):
        return pd.DataFrame(
            [
                {
                    "support": ",".join(map(str, w.support)),
                    "pairing": f"({w.pairing[0][0]},{w.pairing[0][1]})"
                    f"({w.pairing[1][0]},{w.pairing[1][1]})",
                    "predicted": w.predicted,
                    "oracle": w.oracle,
                }
                for w in self.witnesses
            ],
            columns=["support", "pairing", "predicted", "oracle"],
        )


class CountVerification(BaseModel):
    n: int
    cube_edge_sets: list[list[int]]
    predicted: Optional[int]
    observed: int
    examined: int
    note: str = ""

    @property
    def agrees(self):
        return self.predicted == self.observed

    @field_serializer("predicted", "observed")
    def _big(self, value):
        return None if value is None else decimal_string(value)


class OutputDocument(BaseModel):
    command: str
    input: dict[str, Any]
    status: str = "success"
    result: dict[str, Any] = Field(default_factory=dict)
    budget: Optional[dict[str, int]] = None
    timing_ms: Optional[float] = None
