"""Run configuration shared by the CLI and the verification suites."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field, fields

from .orbit import DEFAULT_DIGIT_CAP
from .primeledger.factor import DEFAULT_BUDGET_MS


@dataclass
class RunConfig:
    map_text: str | None = None
    field: list = field(default_factory=list)
    x0: str = "0"
    steps: int = 10
    N_max: int = 10
    M: int = 1
    mode: str = "numerator"
    factor_budget_ms: float = DEFAULT_BUDGET_MS
    tower_budget: int = 24
    digit_cap: int = DEFAULT_DIGIT_CAP
    format: str = "json"
    allow_unknown: bool = False
    seed: int = 20240607

    @classmethod
    def from_file(cls, path):
        with open(path) as fh:
            data = json.load(fh)
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def with_env(self):
        """Apply ``DYNLAB_FACTOR_BUDGET_MS`` (the only setting read from the environment)."""
        raw = os.environ.get("DYNLAB_FACTOR_BUDGET_MS")
        if raw:
            self.factor_budget_ms = float(raw)
        return self

    def context(self):
        from .exactnum.fields import QQ
        from .ratmap.parse import parse_field

        return parse_field(self.field, QQ) if self.field else QQ

    def to_dict(self):
        return asdict(self)
