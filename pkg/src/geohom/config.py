"""Run configuration shared by the solvers, the CLI and the bench harness."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace
from fractions import Fraction

METHODS = ("auto", "brute", "string", "cliquebased", "fat", "twosat", "mincost", "whom")


@dataclass(frozen=True)
class RunConfig:
    method: str = "auto"
    # high-degree threshold n**deg_exponent; "representation-aware" preset
    # switches to n**(1/2) * log2(n)**(2/3)
    deg_exponent: float = 1 / 3
    deg_preset: str = "default"
    c_area: Fraction = Fraction(2)
    base_n: int = 12
    delta: Fraction = Fraction(2, 3)
    size_budget_factor: int = 4
    r_max: Fraction = Fraction(2)
    seed: int = 0
    parallelism: int = 1
    time_limit: float | None = None
    node_limit: int = 0

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.deg_preset not in ("default", "representation-aware"):
            raise ValueError(f"unknown degree preset {self.deg_preset!r}")
        for name in ("deg_exponent", "c_area", "base_n", "delta", "size_budget_factor", "r_max", "parallelism"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not self.delta < 1:
            raise ValueError("delta must be below 1")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")
        if self.node_limit < 0 or self.seed < 0:
            raise ValueError("node_limit and seed must be nonnegative")

    def deg_threshold(self, n: int) -> float:
        if self.deg_preset == "representation-aware":
            return math.sqrt(n) * math.log2(max(n, 2)) ** (2 / 3)
        return n ** self.deg_exponent

    def size_budget(self, m: int) -> int:
        return math.ceil(self.size_budget_factor * math.sqrt(m))

    def with_env(self) -> "RunConfig":
        """Apply environment overrides (currently only GEOHOM_SEED)."""
        raw = os.environ.get("GEOHOM_SEED")
        if raw is None:
            return self
        return replace(self, seed=int(raw))


DEFAULT = RunConfig()
