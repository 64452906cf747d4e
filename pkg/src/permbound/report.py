"""Check reports and their stable JSON rendering."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"


def bound_value(x: float) -> float:
    """Round a bound to 12 significant digits for certificates."""
    return float(f"{x:.12g}")


def jsonable(obj: Any) -> Any:
    """Convert report payloads to plain JSON data with a fixed, sorted layout."""
    from .group import PermGroup
    from .perm import Permutation

    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj) or math.isnan(obj):
            return str(obj)
        return bound_value(obj)
    if isinstance(obj, Permutation):
        return str(obj)
    if isinstance(obj, PermGroup):
        return {"degree": obj.degree, "order": obj.order()}
    if hasattr(obj, "to_dict"):
        return jsonable(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(jsonable(v) for v in obj)
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2)


@dataclass
class CheckReport:
    lemma: str
    group: dict
    verdict: str
    witness: dict = field(default_factory=dict)
    reason: str | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> dict:
        witness = dict(self.witness)
        if self.reason is not None:
            witness["reason"] = self.reason
        return {"lemma": self.lemma, "group": self.group, "verdict": self.verdict,
                "witness": witness}


def describe(G, name: str | None = None) -> dict:
    return {"name": name or f"group_deg{G.degree}_ord{G.order()}", "degree": G.degree,
            "order": G.order()}


def verdict(ok: bool) -> str:
    return PASS if ok else FAIL
