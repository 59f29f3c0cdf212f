"""Greedy matching of finite point sets at a tolerance.

Spectra are finite sets of characters compared up to `value_tol`. Two sets
are equal when a greedy nearest-neighbour matching pairs every point on
both sides; whatever stays unmatched is reported back for diagnostics.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np


@dataclass
class MatchResult:
    """Outcome of `match_points`.

    Attributes:
        pairs: Matched index pairs ``(i, j)`` into the left and right inputs.
        unmatched_left: Indices of left points without a partner.
        unmatched_right: Indices of right points without a partner.
    """

    pairs: list[tuple[int, int]] = field(default_factory=list)
    unmatched_left: list[int] = field(default_factory=list)
    unmatched_right: list[int] = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return not self.unmatched_left and not self.unmatched_right


def distance(a: np.ndarray[Any, Any], b: np.ndarray[Any, Any]) -> float:
    """Largest absolute difference between two value vectors (inf on shape mismatch)."""
    if a.shape != b.shape:
        return float("inf")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def match_points(
    left: Sequence[np.ndarray[Any, Any]],
    right: Sequence[np.ndarray[Any, Any]],
    tol: float,
) -> MatchResult:
    """Pair each left point with its nearest free right point within `tol`.

    Left points are processed in order, so the result is deterministic for
    sorted inputs.
    """
    result = MatchResult()
    free = list(range(len(right)))
    for i, point in enumerate(left):
        best: int | None = None
        best_dist = tol
        for j in free:
            dist = distance(point, right[j])
            if dist <= best_dist:
                best, best_dist = j, dist
        if best is None:
            result.unmatched_left.append(i)
        else:
            free.remove(best)
            result.pairs.append((i, best))
    result.unmatched_right = free
    return result


def contains_point(
    points: Sequence[np.ndarray[Any, Any]], point: np.ndarray[Any, Any], tol: float
) -> int | None:
    """Index of the first point within `tol` of `point`, or None."""
    for j, candidate in enumerate(points):
        if distance(candidate, point) <= tol:
            return j
    return None


def nearest_point(
    points: Sequence[np.ndarray[Any, Any]], point: np.ndarray[Any, Any], tol: float
) -> int | None:
    """Index of the point closest to `point` if it lies within `tol`, else None."""
    best: int | None = None
    best_dist = tol
    for j, candidate in enumerate(points):
        dist = distance(candidate, point)
        if dist <= best_dist:
            best, best_dist = j, dist
    return best
