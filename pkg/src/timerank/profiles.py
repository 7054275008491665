"""Plateau detection and classification of level trajectories.

A level profile is an item's sequence of bin levels over time (with gaps
where the item is absent); a smaller level means a better rank.  Profiles
are matched against eight shape labels.  With ``delta`` the dominance gap
(``delta_spike``), ``eps`` the trend tolerance (``epsilon``), ``lam`` the
prominence threshold (``lambda_level``) and ``rho`` the majority fraction:

* SPIKE -- exactly one time point whose level is at least ``delta`` below
  every other present level.
* FLUTTERING -- two time points that both dominate (by ``delta``) every
  present point strictly between them, with at least one strictly worse
  point in between (a saddle).
* PROGRESSIVE_DECREASING -- no later level is more than ``eps`` below an
  earlier one, and the last present level is strictly worse than the
  first (prominence decays).
* PROGRESSIVE_INCREASING -- the mirror image (prominence grows).
* MULTISTAGNANT -- at least two plateaus.
* LATE_MONOSTAGNANT / EARLY_MONOSTAGNANT -- a plateau starting after /
  before the profile's midpoint.
* EMERGING -- at least a ``rho`` fraction of present levels at or above
  the prominence threshold (level <= ``lam``).

A plateau is a maximal run of >= 3 contiguous present levels whose
pairwise spread stays within ``equiv_tol``; an absent entry breaks the
run.  The labels are not mutually exclusive; ``primary_label`` picks the
first match in a fixed priority order for display.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Sequence

from .binning import BinnedMap, BinningScheme

Levels = Sequence[int | None]


class ShapeLabel(Enum):
    SPIKE = "SPIKE"
    FLUTTERING = "FLUTTERING"
    PROGRESSIVE_DECREASING = "PROGRESSIVE_DECREASING"
    PROGRESSIVE_INCREASING = "PROGRESSIVE_INCREASING"
    MULTISTAGNANT = "MULTISTAGNANT"
    LATE_MONOSTAGNANT = "LATE_MONOSTAGNANT"
    EARLY_MONOSTAGNANT = "EARLY_MONOSTAGNANT"
    EMERGING = "EMERGING"


#: Display priority for the primary label.
PRIORITY_ORDER: tuple[ShapeLabel, ...] = (
    ShapeLabel.SPIKE,
    ShapeLabel.FLUTTERING,
    ShapeLabel.PROGRESSIVE_INCREASING,
    ShapeLabel.PROGRESSIVE_DECREASING,
    ShapeLabel.MULTISTAGNANT,
    ShapeLabel.LATE_MONOSTAGNANT,
    ShapeLabel.EARLY_MONOSTAGNANT,
    ShapeLabel.EMERGING,
)

NONE_LABEL = "NONE"


@dataclass(frozen=True)
class LevelProfile:
    """One item's bin level per time point (``None`` = absent) plus stats."""

    item: str
    levels: tuple[int | None, ...]
    mean_level: float | None

    @classmethod
    def from_levels(cls, item: str, levels: Iterable[int | None]) -> "LevelProfile":
        levels = tuple(levels)
        present = [lv for lv in levels if lv is not None]
        mean = sum(present) / len(present) if present else None
        return cls(item=item, levels=levels, mean_level=mean)

    @property
    def present_count(self) -> int:
        return sum(1 for lv in self.levels if lv is not None)


@dataclass(frozen=True)
class Plateau:
    """Inclusive [start, end] run; ``level`` is the best (minimum) level in it."""

    start: int
    end: int
    level: int


@dataclass(frozen=True)
class ClassifierParams:
    """Thresholds for the shape rules.

    ``lambda_level=None`` means "derive from the scheme": the bin of rank
    20, clamped to the last bin (see :func:`default_lambda_level`).
    ``classify`` requires a concrete value; use :meth:`resolved`.
    """

    delta_spike: int = 2
    epsilon: int = 0
    lambda_level: int | None = None
    rho: float = 0.5
    equiv_tol: int = 1

    def __post_init__(self) -> None:
        if self.delta_spike < 1:
            raise ValueError(f"delta_spike must be a positive integer, got {self.delta_spike}")
        if self.epsilon < 0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if self.lambda_level is not None and self.lambda_level < 0:
            raise ValueError(f"lambda_level must be >= 0, got {self.lambda_level}")
        if not 0.0 < self.rho <= 1.0:
            raise ValueError(f"rho must be in (0, 1], got {self.rho}")
        if self.equiv_tol < 0:
            raise ValueError(f"equiv_tol must be >= 0, got {self.equiv_tol}")

    def resolved(self, scheme: BinningScheme) -> "ClassifierParams":
        if self.lambda_level is not None:
            return self
        return replace(self, lambda_level=default_lambda_level(scheme))


def default_lambda_level(scheme: BinningScheme) -> int:
    """Bin index of rank 20 (first boundary >= 20), clamped to the last bin."""
    i = bisect_left(scheme.boundaries, 20)
    return min(i, scheme.bin_count - 1)


@dataclass(frozen=True)
class ProfileLabels:
    matched: frozenset[ShapeLabel]
    primary: ShapeLabel | None


def item_profile(binned: BinnedMap, item: str) -> LevelProfile:
    """Extract one item's level sequence from a binned map."""
    return LevelProfile.from_levels(item, binned.levels_for_item(item))


def _as_levels(profile: LevelProfile | Levels) -> tuple[int | None, ...]:
    if isinstance(profile, LevelProfile):
        return profile.levels
    return tuple(profile)


def detect_plateaus(profile: LevelProfile | Levels, equiv_tol: int = 1) -> list[Plateau]:
    """Greedy left-to-right maximal runs; disjoint, each of length >= 3."""
    levels = _as_levels(profile)
    if equiv_tol < 0:
        raise ValueError(f"equiv_tol must be >= 0, got {equiv_tol}")
    plateaus: list[Plateau] = []
    n = len(levels)
    i = 0
    while i < n:
        if levels[i] is None:
            i += 1
            continue
        lo = hi = levels[i]
        j = i
        while j + 1 < n and levels[j + 1] is not None:
            nxt = levels[j + 1]
            if max(hi, nxt) - min(lo, nxt) > equiv_tol:
                break
            lo, hi = min(lo, nxt), max(hi, nxt)
            j += 1
        if j - i + 1 >= 3:
            plateaus.append(Plateau(start=i, end=j, level=lo))
            i = j + 1
        else:
            i += 1
    return plateaus


def _spike(levels_present: list[int], delta: int) -> bool:
    ordered = sorted(levels_present)
    return ordered[1] - ordered[0] >= delta


def _fluttering(present: list[tuple[int, int]], delta: int) -> bool:
    for a in range(len(present)):
        la = present[a][1]
        for b in range(a + 1, len(present)):
            lb = present[b][1]
            between = present[a + 1 : b]
            if not between:
                continue
            if all(lv - la >= delta and lv - lb >= delta for _, lv in between) and any(
                lv > la and lv > lb for _, lv in between
            ):
                return True
    return False


def _never_recovers(levels_present: list[int], eps: int) -> bool:
    """No later level is more than eps better (smaller) than an earlier one."""
    run_min = levels_present[-1]
    for lv in reversed(levels_present[:-1]):
        if run_min < lv - eps:
            return False
        run_min = min(run_min, lv)
    return True


def _never_degrades(levels_present: list[int], eps: int) -> bool:
    """No later level is more than eps worse (larger) than an earlier one."""
    run_max = levels_present[-1]
    for lv in reversed(levels_present[:-1]):
        if run_max > lv + eps:
            return False
        run_max = max(run_max, lv)
    return True


def classify(profile: LevelProfile, params: ClassifierParams) -> ProfileLabels:
    """Evaluate all eight shape rules on one profile.

    Requires at least two present levels and a concrete
    ``params.lambda_level`` (resolve against a scheme first).
    """
    if params.lambda_level is None:
        raise ValueError("lambda_level is unresolved; call params.resolved(scheme) first")
    levels = profile.levels
    present = [(t, lv) for t, lv in enumerate(levels) if lv is not None]
    if len(present) < 2:
        raise ValueError(
            f"item '{profile.item}': at least two present levels required, got {len(present)}"
        )
    lvs = [lv for _, lv in present]
    n = len(levels)
    half = n // 2

    matched: set[ShapeLabel] = set()
    if _spike(lvs, params.delta_spike):
        matched.add(ShapeLabel.SPIKE)
    if _fluttering(present, params.delta_spike):
        matched.add(ShapeLabel.FLUTTERING)
    if _never_recovers(lvs, params.epsilon) and lvs[-1] > lvs[0]:
        matched.add(ShapeLabel.PROGRESSIVE_DECREASING)
    if _never_degrades(lvs, params.epsilon) and lvs[-1] < lvs[0]:
        matched.add(ShapeLabel.PROGRESSIVE_INCREASING)

    plateaus = detect_plateaus(levels, params.equiv_tol)
    if len(plateaus) >= 2:
        matched.add(ShapeLabel.MULTISTAGNANT)
    if any(p.start > half for p in plateaus):
        matched.add(ShapeLabel.LATE_MONOSTAGNANT)
    if any(p.start < half for p in plateaus):
        matched.add(ShapeLabel.EARLY_MONOSTAGNANT)

    if sum(1 for lv in lvs if lv <= params.lambda_level) / len(lvs) >= params.rho:
        matched.add(ShapeLabel.EMERGING)

    return ProfileLabels(matched=frozenset(matched), primary=primary_label(matched))


def primary_label(matched: Iterable[ShapeLabel]) -> ShapeLabel | None:
    """First matched label in priority order, or None."""
    matched = set(matched)
    for label in PRIORITY_ORDER:
        if label in matched:
            return label
    return None


def profile_histogram(binned: BinnedMap, params: ClassifierParams | None = None) -> dict[str, int]:
    """Primary-label counts over all items; < 2 present levels counts as NONE."""
    params = (params or ClassifierParams()).resolved(binned.scheme)
    counts = {label.value: 0 for label in PRIORITY_ORDER}
    counts[NONE_LABEL] = 0
    for item in binned.items:
        profile = item_profile(binned, item)
        if profile.present_count < 2:
            counts[NONE_LABEL] += 1
            continue
        primary = classify(profile, params).primary
        counts[primary.value if primary else NONE_LABEL] += 1
    return counts


def write_histogram_csv(counts: dict[str, int]) -> str:
    """Two-column ``label,count`` text, labels in priority order then NONE."""
    lines = ["label,count"]
    for label in PRIORITY_ORDER:
        lines.append(f"{label.value},{counts.get(label.value, 0)}")
    lines.append(f"{NONE_LABEL},{counts.get(NONE_LABEL, 0)}")
    return "\n".join(lines) + "\n"
