"""Shared report envelope for the CLI: exact values or certified bounds.

All numeric invariants are exact integers or rationals rendered as "p/q";
no floating point appears anywhere.  A report claims "exact" only when
every underlying search closed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List

SCHEMA = "factorum/1"


class Certification(str, Enum):
    EXACT = "exact"
    LOWER_BOUND = "lower-bound"
    UNKNOWN = "unknown"


def render_value(value: Any) -> Any:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return [render_value(v) for v in value]
    if isinstance(value, (dict,)):
        return {str(k): render_value(v) for k, v in sorted(value.items())}
    if isinstance(value, (set, frozenset)):
        return [render_value(v) for v in sorted(value)]
    return value


@dataclass
class InvariantReport:
    invariant: str
    value: Any
    certification: Certification
    budget: Dict[str, int] = field(default_factory=dict)
    witnesses: List[Any] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "schema": SCHEMA,
            "invariant": self.invariant,
            "value": render_value(self.value),
            "certification": self.certification.value,
            "budget": dict(sorted(self.budget.items())),
            "witnesses": render_value(self.witnesses),
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def to_table(self) -> str:
        lines = [f"{self.invariant}: {render_value(self.value)} "
                 f"[{self.certification.value}]"]
        for w in self.witnesses:
            lines.append(f"  witness: {render_value(w)}")
        for w in self.warnings:
            lines.append(f"  warning: {w}")
        return "\n".join(lines)
