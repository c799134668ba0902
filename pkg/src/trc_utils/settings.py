"""Default config for solving, extraction and verification."""

import os
from dataclasses import dataclass
from typing import Optional

SEED_ENV_VAR = "TRC_SEED"


@dataclass
class TrcConfig:
    max_clauses: int = 1_000_000
    # Seconds per instance
    time_limit: float = 300.0
    # Given-clause order: "weight" (lightest first, ties by literal order, then age) or "fifo"
    selection: str = "weight"
    # Proposition names from greatest to least. When set, resolution only
    # happens on maximal literals; names not listed are greater than all
    # listed names and compare by name among themselves.
    literal_precedence: Optional[tuple[str, ...]] = None
    lcm_cap: int = 1_000_000
    eval_period_cap: int = 100_000
    # "multi-final" or "layered"
    parikh_method: str = "multi-final"
    word_max_prefix: int = 6
    word_max_loop: int = 6
    verify_words: int = 1000
    seed: int = 7

    def __post_init__(self) -> None:
        if self.selection not in ("weight", "fifo"):
            raise ValueError(f"Unknown clause selection: {self.selection}")
        if self.parikh_method not in ("multi-final", "layered"):
            raise ValueError(f"Unknown Parikh method: {self.parikh_method}")
        if self.literal_precedence is not None:
            self.literal_precedence = tuple(self.literal_precedence)


def default_config(**overrides) -> TrcConfig:
    cfg = TrcConfig()
    for k, v in overrides.items():
        if not hasattr(cfg, k):
            raise AttributeError(f"Unknown config field: {k}")
        setattr(cfg, k, v)
    cfg.__post_init__()
    return cfg


def seed_from_env(default: Optional[int] = None) -> int:
    """Seed from ``TRC_SEED`` if set, else ``default`` (the config default if None)."""
    value = os.environ.get(SEED_ENV_VAR)
    if value is not None and value.strip():
        try:
            return int(value)
        except ValueError:
            raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {value!r}") from None
    return TrcConfig.seed if default is None else default
