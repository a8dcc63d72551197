"""The record every verifier returns, plus its JSON/CSV serializations."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Any, Optional

SCHEMA_VERSION = 1

CSV_COLUMNS = ("schema_version", "statement", "params", "modulus", "verdict",
               "witness_digest", "ms", "note")


class Outcome(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNDEFINED_GCD = "undefined_gcd"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class Witness:
    """Why a check did not hold: a digest of the remainder (never the full
    polynomial, which can be huge) and the offending factors or values."""

    digest: Optional[str] = None
    offending: tuple[str, ...] = ()
    detail: str = ""
    remainder: Any = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class CongruenceReport:
    statement_id: str
    parameters: dict
    modulus_description: str
    verdict: Outcome
    witness: Optional[Witness] = None
    ms: float = 0.0
    note: str = ""
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict is Outcome.HOLDS and self.witness is not None:
            raise ValueError("a report that holds carries no witness")
        if self.verdict is Outcome.FAILS and self.witness is None:
            raise ValueError("a failing report needs a witness")

    @property
    def ok(self) -> bool:
        return self.verdict is Outcome.HOLDS

    def to_record(self, verbose: bool = False, timing: bool = True) -> dict:
        rec = {
            "schema_version": SCHEMA_VERSION,
            "statement": self.statement_id,
            "params": self.parameters,
            "modulus": self.modulus_description,
            "verdict": self.verdict.value,
            "witness_digest": self.witness.digest if self.witness else None,
            "ms": round(self.ms, 3) if timing else None,
        }
        if self.note:
            rec["note"] = self.note
        if self.witness and (self.witness.offending or self.witness.detail):
            rec["witness"] = {"offending": list(self.witness.offending),
                              "detail": self.witness.detail}
        if self.details:
            rec["details"] = self.details
        if verbose and self.witness is not None and self.witness.remainder is not None:
            rec["remainder"] = str(self.witness.remainder)
        return rec

    def to_json(self, verbose: bool = False, timing: bool = True) -> str:
        return json.dumps(self.to_record(verbose, timing), sort_keys=True, default=str)

    def csv_row(self, timing: bool = True) -> list:
        rec = self.to_record(timing=timing)
        return [
            rec["schema_version"],
            rec["statement"],
            json.dumps(rec["params"], sort_keys=True),
            rec["modulus"],
            rec["verdict"],
            rec["witness_digest"] or "",
            "" if rec["ms"] is None else rec["ms"],
            self.note,
        ]

    def text_line(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.parameters.items())
        line = f"{self.statement_id:<10} {params:<24} {self.verdict.value:<14} mod {self.modulus_description}"
        if self.witness is not None:
            bits = [self.witness.digest or "", ",".join(self.witness.offending), self.witness.detail]
            line += "  [" + "; ".join(b for b in bits if b) + "]"
        if self.note:
            line += f"  ({self.note})"
        return line
