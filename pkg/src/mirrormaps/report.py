"""Structured outcome of a single check, serialisable to JSON."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

PASS = "pass"
FAIL = "fail"
INDETERMINATE = "indeterminate"
CONFORMING = "conjecture-conforming"

OUTCOMES = (PASS, FAIL, INDETERMINATE, CONFORMING)


@dataclass
class CheckReport:
    check_name: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    outcome: str = PASS
    witnesses: List[Tuple[Any, str]] = field(default_factory=list)
    timing_ms: int = 0

    def __post_init__(self):
        if self.outcome not in OUTCOMES:
            raise ValueError(f"unknown outcome {self.outcome!r}")
        if self.outcome in (FAIL, INDETERMINATE) and not self.witnesses:
            raise ValueError(f"a {self.outcome} report needs a witness or explanation")

    @property
    def ok(self) -> bool:
        return self.outcome in (PASS, CONFORMING)

    def to_dict(self, with_timing: bool = True) -> Dict[str, Any]:
        d = {
            "check_name": self.check_name,
            "parameters": self.parameters,
            "outcome": self.outcome,
            "witnesses": [[w[0], str(w[1])] for w in self.witnesses],
        }
        if with_timing:
            d["timing_ms"] = self.timing_ms
        return d

    def to_json(self, with_timing: bool = True) -> str:
        return json.dumps(self.to_dict(with_timing), sort_keys=True, default=str)


def exit_code(reports) -> int:
    """0 if everything passed or conformed, 3 if only indeterminate, else 1."""
    outcomes = {r.outcome for r in reports}
    if FAIL in outcomes:
        return 1
    if INDETERMINATE in outcomes:
        return 3
    return 0


def elapsed_ms(start: float) -> int:
    """Milliseconds since a ``time.perf_counter()`` reading."""
    return int(round((time.perf_counter() - start) * 1000))
