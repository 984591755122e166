"""Structured pass/fail reports for sampled and exact checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class CheckReport:
    name: str
    passed: bool = True
    samples: int = 0
    failure: Optional[str] = None
    witness: Dict[str, Any] = field(default_factory=dict)
    violations: List[Dict[str, Any]] = field(default_factory=list)
    # "proof" for exhaustive/exact checks, "evidence" for sampled ones
    strength: str = "evidence"

    def fail(self, failure: str, **witness) -> "CheckReport":
        self.passed = False
        self.failure = failure
        self.witness = witness
        return self

    def __bool__(self):
        return self.passed

    def to_json(self) -> Dict[str, Any]:
        return {
            "check": self.name,
            "passed": self.passed,
            "samples": self.samples,
            "strength": self.strength,
            "failure": self.failure,
            "witness": {k: str(v) for k, v in self.witness.items()},
            "violations": [{k: str(v) for k, v in item.items()} for item in self.violations],
        }
