"""Seeded random tables for baseline profile distributions.

Values are i.i.d. uniform on [0, 1) from numpy's default generator
(PCG64), so a given seed always reproduces the same table.  The default
binning for the 5000-item baseline mirrors the uneven GDP-style couples:
fine bins at the top, coarse at the bottom.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .binning import BinningScheme, NullMode, build_binned_map, build_scheme
from .profiles import ClassifierParams, profile_histogram
from .table import TimeTable

DEFAULT_BASELINE_COUPLES = ((20, 1), (100, 5), (1000, 25), (5000, 100))


@dataclass(frozen=True)
class GeneratorSpec:
    item_count: int = 5000
    time_points: int = 10
    seed: int = 0

    def __post_init__(self) -> None:
        if self.item_count < 1 or self.time_points < 2:
            raise ValueError("need item_count >= 1 and time_points >= 2")


def generate_random_table(spec: GeneratorSpec) -> TimeTable:
    """Dense table of uniform [0, 1) values; same seed, same table."""
    rng = np.random.default_rng(spec.seed)
    vals = rng.random((spec.item_count, spec.time_points))
    width = len(str(spec.item_count))
    items = tuple(f"item-{i:0{width}d}" for i in range(1, spec.item_count + 1))
    time_points = tuple(f"t{j:02d}" for j in range(1, spec.time_points + 1))
    return TimeTable(
        items=items,
        time_points=time_points,
        values=tuple(tuple(float(v) for v in row) for row in vals),
    )


def baseline_distribution(
    spec: GeneratorSpec,
    scheme: BinningScheme | None = None,
    params: ClassifierParams | None = None,
    null_mode: NullMode = NullMode.DROP_LAST_BIN,
) -> dict[str, int]:
    """Generate, bin and classify; returns the primary-label histogram."""
    if scheme is None:
        scheme = build_scheme(DEFAULT_BASELINE_COUPLES)
        if scheme.last_boundary < spec.item_count:
            raise ValueError(
                f"default scheme covers {scheme.last_boundary} items; "
                f"pass a scheme for item_count={spec.item_count}"
            )
    table = generate_random_table(spec)
    binned = build_binned_map(table, scheme, null_mode)
    return profile_histogram(binned, params)
