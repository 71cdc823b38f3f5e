"""Run configuration, reproducible seeding, and computation budgets.

Every report embeds the full config; identical config + version must give
identical output, so all randomness flows through seeded generators derived
from (seed, tag).
"""

from __future__ import annotations

import hashlib
import os
import random
import time
from dataclasses import dataclass, asdict

from .modp import PRIME_31, is_prime

DEFAULT_SEED = 94089
DEFAULT_STEP_CAP = 2_000_000


class ComputationTimeout(Exception):
    """A budgeted computation exceeded its step cap or wall-clock deadline."""

    def __init__(self, what: str = "computation"):
        super().__init__(f"{what}: budget exceeded")
        self.what = what


class Budget:
    """Step counter plus optional wall-clock deadline.

    `tick` raises ComputationTimeout rather than ever returning a wrong
    answer; callers that promise a Timeout *result* catch it.
    """

    __slots__ = ("step_cap", "steps", "deadline", "_timecheck")

    def __init__(self, timeout_secs: float | None = None, step_cap: int | None = None):
        self.step_cap = step_cap
        self.steps = 0
        self.deadline = None if timeout_secs is None else time.monotonic() + timeout_secs
        self._timecheck = 0

    def tick(self, n: int = 1, what: str = "computation") -> None:
        self.steps += n
        if self.step_cap is not None and self.steps > self.step_cap:
            raise ComputationTimeout(what)
        self._timecheck += 1
        if self.deadline is not None and self._timecheck >= 64:
            self._timecheck = 0
            if time.monotonic() > self.deadline:
                raise ComputationTimeout(what)

    def check_time(self, what: str = "computation") -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ComputationTimeout(what)

def _env_int(name: str, default):
    v = os.environ.get(name)
    return default if v in (None, "") else int(v)


def _env_float(name: str, default):
    v = os.environ.get(name)
    return default if v in (None, "") else float(v)


@dataclass
class Config:
    seed: int = DEFAULT_SEED
    prime: int = PRIME_31
    timeout_secs: float | None = None
    gb_step_cap: int = DEFAULT_STEP_CAP
    cache_dir: str | None = None
    output: str = "text"

    def __post_init__(self):
        if not is_prime(self.prime) or self.prime == 2:
            raise ValueError(f"modular prime must be an odd prime, got {self.prime}")
        if self.prime < (1 << 30):
            raise ValueError("modular prime must exceed 2^30")

    @classmethod
    def from_env(cls, **overrides) -> "Config":
        kw = dict(
            seed=_env_int("DETLAB_SEED", DEFAULT_SEED),
            prime=_env_int("DETLAB_PRIME", PRIME_31),
            timeout_secs=_env_float("DETLAB_TIMEOUT_SECS", None),
            gb_step_cap=_env_int("DETLAB_GB_STEP_CAP", DEFAULT_STEP_CAP),
            cache_dir=os.environ.get("DETLAB_CACHE_DIR") or None,
        )
        kw.update(overrides)
        return cls(**kw)

    def budget(self, timeout_secs: float | None = None) -> Budget:
        t = self.timeout_secs if timeout_secs is None else timeout_secs
        return Budget(timeout_secs=t, step_cap=self.gb_step_cap)

    def rng(self, tag: str) -> random.Random:
        """Deterministic per-purpose generator derived from (seed, tag)."""
        h = hashlib.sha256(f"{self.seed}:{tag}".encode()).digest()
        return random.Random(int.from_bytes(h[:8], "big"))

    def to_dict(self) -> dict:
        return asdict(self)


DEFAULT_CONFIG = Config()
