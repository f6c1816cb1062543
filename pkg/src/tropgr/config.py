"""Run configurations for the command line and the experiment scripts."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CliConfig:
    command: str
    action: str | None = None
    inputs: list[str] = field(default_factory=list)
    ij: str | None = None
    pq: str | None = None
    seed: int = 0
    count: int = 100
    polys: int = 20
    n: int | None = None
    poly: str | None = None
    lam: str | None = None
    json: bool = False


@dataclass
class SectionSweep:
    """Interior and boundary corpus for the section-property experiments."""

    seed: int = 0
    interior: int = 500
    sizes: tuple[int, ...] = (4, 5, 6, 7, 8)
    boundary_max_n: int = 5


@dataclass
class FiberSweep:
    seed: int = 0
    sizes: tuple[int, ...] = (4, 5, 6, 7)
    matrices_per_size: int = 50
    polys: int = 20


@dataclass
class GluingSweep:
    seed: int = 0
    points: int = 50
    alternatives: int = 3


@dataclass
class LimitSweep:
    seed: int = 0
    families: int = 20
    sizes: tuple[int, ...] = (4, 5, 6)
