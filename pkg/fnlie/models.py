"""
Data models for command reports.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional


class Outcome(Enum):
    """Result of a command."""
    VALUE = "value"
    PASS = "pass"
    FAIL = "fail"


@dataclass
class Counterexample:
    """First failing trial of a verification run."""
    trial: int
    message: str
    model: str
    path: Optional[str] = None


@dataclass
class Report:
    """Everything a command prints; rendered by the reporters."""
    command: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    outcome: Outcome = Outcome.VALUE
    # named computed objects, in display order
    values: List[tuple] = field(default_factory=list)
    message: Optional[str] = None
    seed: Optional[int] = None
    trials: Optional[int] = None
    passed: Optional[int] = None
    counterexample: Optional[Counterexample] = None
    details: Dict[str, str] = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.outcome == Outcome.FAIL

    def add_value(self, label: str, value: Any) -> None:
        self.values.append((label, value))
