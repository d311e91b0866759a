"""Verification reports and JSON conversion of library values."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np


@dataclass
class Report:
    check: str
    holds: bool
    counterexample: Any = None
    pairs_checked: int = 0
    seed: int | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "holds": self.holds,
            "counterexample": jsonable(self.counterexample),
            "pairs_checked": self.pairs_checked,
            "seed": self.seed,
            "details": jsonable(self.details),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def jsonable(obj: Any) -> Any:
    """Best-effort conversion of library values into plain JSON data."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Report):
        return obj.to_json()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [jsonable(x) for x in obj]
    if hasattr(obj, "vec") and hasattr(obj, "grp"):
        return {"vec": jsonable(obj.vec), "grp": jsonable(obj.grp)}
    return str(obj)


def combine(check: str, parts: dict[str, Report], seed: int | None = None) -> Report:
    """Fold named sub-reports into one; the first failure supplies the counterexample."""
    holds = all(r.holds for r in parts.values())
    cx = None
    for name, r in parts.items():
        if not r.holds:
            cx = {"part": name, "witness": r.counterexample}
            break
    return Report(
        check,
        holds,
        cx,
        sum(r.pairs_checked for r in parts.values()),
        seed,
        {name: r.holds for name, r in parts.items()},
    )
