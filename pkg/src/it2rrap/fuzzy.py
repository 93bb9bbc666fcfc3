"""Interval type-2 triangular membership functions and their pointwise algebra.

An interval type-2 (IT2) membership function is described here by a footprint
of uncertainty bounded by two normal triangles that share an apex: an upper
membership function (UMF) and a lower membership function (LMF) nested inside
it.  Continuous triangles are held in :class:`It2Tri`; once sampled on a grid
they become :class:`SampledIt2`, on which the meet / join / negation algebra
operates pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "It2Tri",
    "SampledIt2",
    "eval_membership",
    "generate_it2_tmf",
    "discretize",
    "meet",
    "join",
    "negate",
]


# ---------------------------------------------------------------------------
# continuous representation
# ---------------------------------------------------------------------------

@dataclass
class It2Tri:
    """Triangular IT2 membership function with a shared apex.

    Attributes
    ----------
    umf_left, umf_right:
        Feet of the upper (outer) triangle.
    lmf_left, lmf_right:
        Feet of the lower (inner) triangle.
    peak:
        Apex abscissa; both triangles reach membership 1 there.

    The feet must satisfy ``umf_left <= lmf_left <= peak <= lmf_right <=
    umf_right`` so the lower triangle is nested inside the upper one.  A side
    of zero width is allowed and represents a jump: membership is 1 at the
    collapsed abscissa and 0 elsewhere on that side.
    """

    umf_left: float
    lmf_left: float
    peak: float
    lmf_right: float
    umf_right: float

    def __post_init__(self) -> None:
        order = (self.umf_left, self.lmf_left, self.peak,
                 self.lmf_right, self.umf_right)
        if not all(np.isfinite(order)):
            raise ValueError(f"triangle vertices must be finite, got {order}")
        if not (self.umf_left <= self.lmf_left <= self.peak
                <= self.lmf_right <= self.umf_right):
            raise ValueError(
                "triangle vertices must satisfy umf_left <= lmf_left <= peak"
                f" <= lmf_right <= umf_right, got {order}"
            )

    @property
    def is_crisp(self) -> bool:
        """True when the whole footprint collapses to a single abscissa."""
        return self.umf_left == self.peak == self.umf_right


def _tri_at(x: np.ndarray, left: float, peak: float, right: float) -> np.ndarray:
    """Membership of a normal triangle ``(left, peak, right)`` at ``x``.

    A side of zero width contributes membership only at the apex itself.
    """
    out = np.zeros_like(x, dtype=float)
    if left < peak:
        m = (x > left) & (x < peak)
        out[m] = (x[m] - left) / (peak - left)
    if peak < right:
        m = (x > peak) & (x < right)
        out[m] = (right - x[m]) / (right - peak)
    out[x == peak] = 1.0
    return out


def eval_membership(mf: It2Tri, x):
    """Evaluate ``mf`` at ``x``.

    Parameters
    ----------
    mf:
        Membership function to sample.
    x:
        Scalar or array of abscissae.

    Returns
    -------
    (lower, upper):
        Membership grades of the LMF and UMF at ``x``, with the shape of
        ``x``.  ``lower <= upper`` holds everywhere by construction.
    """
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    lo = _tri_at(arr, mf.lmf_left, mf.peak, mf.lmf_right)
    up = _tri_at(arr, mf.umf_left, mf.peak, mf.umf_right)
    if scalar:
        return float(lo[0]), float(up[0])
    return lo, up


def generate_it2_tmf(peak: float, left_end: float, right_end: float,
                     support: tuple[float, float], rng) -> It2Tri:
    """Randomise a triangular footprint of uncertainty around a crisp peak.

    The crisp value sits at the apex.  ``left_end`` and ``right_end`` anchor
    the nominal spread of the triangle; four independent uniform draws then
    pull the LMF feet inward (towards the peak) and push the UMF feet outward
    (towards the support ends), producing a nested pair of triangles.

    Parameters
    ----------
    peak:
        Crisp value to fuzzify.
    left_end, right_end:
        Nominal triangle feet, ``left_end <= peak <= right_end``.
    support:
        Pair ``(a, b)`` with ``a <= left_end`` and ``right_end <= b``; the UMF
        never leaves this interval.
    rng:
        Source of uniform draws in ``[0, 1)``; consumed as ``rng.random(4)``
        in the fixed order (lmf_left, umf_left, lmf_right, umf_right) so that
        equal seeds give equal footprints.
    """
    a, b = support
    if not a <= left_end:
        raise ValueError(f"left_end {left_end} lies below support start {a}")
    if not left_end <= peak:
        raise ValueError(f"peak {peak} lies below left_end {left_end}")
    if not peak <= right_end:
        raise ValueError(f"peak {peak} lies above right_end {right_end}")
    if not right_end <= b:
        raise ValueError(f"right_end {right_end} lies above support end {b}")
    u = np.asarray(rng.random(4), dtype=float)
    lmf_left = left_end + (peak - left_end) * u[0]
    umf_left = left_end - (left_end - a) * u[1]
    lmf_right = right_end - (right_end - peak) * u[2]
    umf_right = right_end + (b - right_end) * u[3]
    return It2Tri(umf_left, lmf_left, peak, lmf_right, umf_right)


# ---------------------------------------------------------------------------
# sampled representation
# ---------------------------------------------------------------------------

@dataclass
class SampledIt2:
    """IT2 membership function sampled on a shared abscissa grid.

    Attributes
    ----------
    grid:
        Strictly increasing abscissae, at least two points.
    lower, upper:
        LMF / UMF grades at each grid point, with
        ``0 <= lower <= upper <= 1`` pointwise.
    """

    grid: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self) -> None:
        self.grid = np.asarray(self.grid, dtype=float)
        self.lower = np.asarray(self.lower, dtype=float)
        self.upper = np.asarray(self.upper, dtype=float)
        if not (self.grid.ndim == self.lower.ndim == self.upper.ndim == 1):
            raise ValueError("grid, lower and upper must be one-dimensional")
        if not (self.grid.size == self.lower.size == self.upper.size):
            raise ValueError(
                f"size mismatch: grid {self.grid.size}, lower "
                f"{self.lower.size}, upper {self.upper.size}"
            )
        if self.grid.size < 2:
            raise ValueError("grid needs at least two points")
        if not np.all(np.diff(self.grid) > 0):
            raise ValueError("grid must be strictly increasing")
        if np.any(self.lower < 0) or np.any(self.upper > 1):
            raise ValueError("memberships must lie in [0, 1]")
        if np.any(self.lower > self.upper):
            raise ValueError("lower membership exceeds upper membership")

    @property
    def size(self) -> int:
        return self.grid.size


def discretize(mf: It2Tri, grid: np.ndarray) -> SampledIt2:
    """Sample ``mf`` at every point of ``grid``.

    ``grid`` must cover the footprint, ``grid[0] <= mf.umf_left`` and
    ``grid[-1] >= mf.umf_right``, so no membership mass falls outside it.
    """
    grid = np.asarray(grid, dtype=float)
    if grid[0] > mf.umf_left or grid[-1] < mf.umf_right:
        raise ValueError(
            f"grid [{grid[0]}, {grid[-1]}] does not cover the footprint "
            f"[{mf.umf_left}, {mf.umf_right}]"
        )
    lo, up = eval_membership(mf, grid)
    return SampledIt2(grid, lo, up)


def _check_same_grid(a: SampledIt2, b: SampledIt2) -> None:
    if not np.array_equal(a.grid, b.grid):
        raise ValueError("operands are sampled on different grids")


def meet(a: SampledIt2, b: SampledIt2) -> SampledIt2:
    """Pointwise minimum of two sampled IT2 sets (fuzzy intersection)."""
    _check_same_grid(a, b)
    return SampledIt2(a.grid,
                      np.minimum(a.lower, b.lower),
                      np.minimum(a.upper, b.upper))


def join(a: SampledIt2, b: SampledIt2) -> SampledIt2:
    """Pointwise maximum of two sampled IT2 sets (fuzzy union)."""
    _check_same_grid(a, b)
    return SampledIt2(a.grid,
                      np.maximum(a.lower, b.lower),
                      np.maximum(a.upper, b.upper))


def negate(a: SampledIt2) -> SampledIt2:
    """Standard complement; bound roles swap to keep lower <= upper."""
    return SampledIt2(a.grid, 1.0 - a.upper, 1.0 - a.lower)
