"""Check reports with a stable JSON shape.

Every universally quantified check produces one report:
{"condition", "pass", "witness", "quantifier_space"}, plus sampling
metadata when a scan ran in seeded-sample mode instead of exhaustively.
Serialization is deterministic (sorted keys, fixed separators) so that
repeated runs emit byte-identical bundles.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckReport:
    condition: str
    ok: bool
    witness: object = None
    quantifier_space: dict = field(default_factory=dict)
    mode: str = "exhaustive"
    seed: int | None = None
    coverage: float | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        out = {
            "condition": self.condition,
            "pass": self.ok,
            "witness": self.witness,
            "quantifier_space": self.quantifier_space,
        }
        if self.mode != "exhaustive":
            out["mode"] = self.mode
            out["seed"] = self.seed
            out["coverage"] = self.coverage
        return out


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def coords_json(ring, coords):
    return [ring.domain.fmt(x) for x in coords]
