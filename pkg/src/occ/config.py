"""Search bounds shared by every bounded certification and construction."""

from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class Config:
    horizon: int = 12
    window: int = 3
    cutoff: int = 6
    max_level: int = 10

    def __post_init__(self) -> None:
        if self.horizon < 1 or self.window < 1 or self.cutoff < 1 or self.max_level < 1:
            raise ValueError("horizon, window, cutoff and max_level must be ≥ 1")

    def to_json(self) -> dict:
        return asdict(self)


DEFAULT = Config()
