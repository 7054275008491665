"""Symbolic discretization of series over value-range breakpoints.

Series are encoded one symbol per time point (no piecewise averaging)
against k value ranges cut by k-1 breakpoints.  Symbols are rank-style:
1 is the highest value range, k the lowest.  Two distances are provided:
the classic lower-bound distance (adjacent ranges contribute zero, the
gap between nearest breakpoints otherwise), which never exceeds the true
Euclidean distance between the raw series, and a plain Euclidean distance
on the symbols themselves as a diagnostic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class Breakpoints:
    """Strictly increasing cut values defining ``alphabet_size`` ranges."""

    betas: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.betas) < 1:
            raise ValueError("at least one breakpoint required (alphabet size >= 2)")
        if any(nxt <= cur for cur, nxt in zip(self.betas, self.betas[1:])):
            raise ValueError(f"breakpoints must be strictly increasing, got {self.betas}")

    @property
    def alphabet_size(self) -> int:
        return len(self.betas) + 1


@dataclass(frozen=True)
class SaxWord:
    """Symbol sequence over 1..k, rank-style (1 = highest value range)."""

    symbols: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.symbols)


def equal_frequency_breakpoints(values: Sequence[float], k: int) -> Breakpoints:
    """Quantile cuts at fractions 1/k .. (k-1)/k of the pooled values.

    Cuts interpolate linearly between order statistics.  Requires at
    least k distinct values, and enough spread that the cuts come out
    strictly increasing.
    """
    if k < 2:
        raise ValueError(f"alphabet size must be >= 2, got {k}")
    vals = np.asarray(list(values), dtype=float)
    if vals.size == 0 or not np.isfinite(vals).all():
        raise ValueError("values must be non-empty and finite")
    if len(np.unique(vals)) < k:
        raise ValueError(f"need at least {k} distinct values, got {len(np.unique(vals))}")
    cuts = np.quantile(vals, np.arange(1, k) / k, method="linear")
    if any(nxt <= cur for cur, nxt in zip(cuts, cuts[1:])):
        raise ValueError("values too concentrated: quantile cuts are not strictly increasing")
    return Breakpoints(betas=tuple(float(c) for c in cuts))


def equal_width_breakpoints(lo: float, hi: float, k: int) -> Breakpoints:
    """k-1 evenly spaced cuts strictly inside (lo, hi)."""
    if k < 2:
        raise ValueError(f"alphabet size must be >= 2, got {k}")
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
        raise ValueError(f"need finite lo < hi, got ({lo}, {hi})")
    cuts = np.linspace(lo, hi, k + 1)[1:-1]
    return Breakpoints(betas=tuple(float(c) for c in cuts))


def sax_encode(series: Sequence[float], bp: Breakpoints) -> SaxWord:
    """Encode a series; a value equal to a cut belongs to the range above it."""
    if len(series) == 0:
        raise ValueError("series must be non-empty")
    if not all(math.isfinite(v) for v in series):
        raise ValueError("series values must be finite")
    k = bp.alphabet_size
    betas = np.asarray(bp.betas)
    # count of cuts <= v gives the ascending range index; rank-style symbol mirrors it
    ranges = np.searchsorted(betas, np.asarray(series, dtype=float), side="right")
    return SaxWord(symbols=tuple(int(k - r) for r in ranges))


def _check_pair(a: SaxWord, b: SaxWord, k: int | None = None) -> None:
    if a.length != b.length:
        raise ValueError(f"word lengths differ: {a.length} vs {b.length}")
    if k is not None:
        for word in (a, b):
            if any(s < 1 or s > k for s in word.symbols):
                raise ValueError(f"symbol out of range 1..{k} in {word.symbols}")


def mindist(a: SaxWord, b: SaxWord, bp: Breakpoints) -> float:
    """Lower-bound distance between two words encoded with the same breakpoints.

    Symbols are converted to value-order indices v = k+1-s; adjacent or
    equal indices contribute zero, others the gap between the breakpoint
    below the higher range and the one above the lower range.  With one
    symbol per time point this never exceeds the Euclidean distance
    between the underlying series.
    """
    k = bp.alphabet_size
    _check_pair(a, b, k)
    total = 0.0
    for sa, sb in zip(a.symbols, b.symbols):
        va, vb = k + 1 - sa, k + 1 - sb
        if abs(va - vb) <= 1:
            continue
        hi, lo = max(va, vb), min(va, vb)
        gap = bp.betas[hi - 2] - bp.betas[lo - 1]
        total += gap * gap
    return math.sqrt(total)


def symbol_euclidean(a: SaxWord, b: SaxWord) -> float:
    """Euclidean distance on the rank-style symbols (diagnostic only)."""
    _check_pair(a, b)
    return math.sqrt(sum((sa - sb) ** 2 for sa, sb in zip(a.symbols, b.symbols)))


def format_word(word: SaxWord) -> str:
    return ",".join(str(s) for s in word.symbols)


def format_breakpoints(bp: Breakpoints) -> str:
    return ",".join(f"{b:.9g}" for b in bp.betas)
