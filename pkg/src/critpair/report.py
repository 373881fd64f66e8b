"""Sweep reports: JSON round-trip and CSV summaries."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field

SCHEMA_VERSION = 1
TIMING_FIELDS = ("elapsed_ms",)


@dataclass
class GroupTally:
    group: str
    hypothesis_count: int = 0
    verified_count: int = 0
    counterexample_count: int = 0


@dataclass
class VerificationReport:
    theorem: str
    groups: list[str]
    hypothesis_count: int
    verified_count: int
    counterexamples: list[dict]
    elapsed_ms: float
    config: dict
    per_group: list[GroupTally] = field(default_factory=list)
    observations: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def consistent(self) -> bool:
        return self.verified_count + len(self.counterexamples) == self.hypothesis_count

    def to_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        d["observations"] = dict(sorted(self.observations.items()))
        if not timing:
            for k in TIMING_FIELDS:
                d.pop(k, None)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        d = dict(d)
        d["per_group"] = [GroupTally(**g) for g in d.get("per_group", [])]
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["theorem", "group", "hypothesis_count", "verified_count", "counterexamples"])
        for g in self.per_group:
            w.writerow([self.theorem, g.group, g.hypothesis_count, g.verified_count,
                        g.counterexample_count])
        return buf.getvalue()

    def summary(self) -> str:
        status = "OK" if self.ok else f"{len(self.counterexamples)} COUNTEREXAMPLES"
        return (f"{self.theorem}: {self.verified_count}/{self.hypothesis_count} verified "
                f"over {len(self.groups)} group(s) in {self.elapsed_ms:.0f} ms, {status}")
