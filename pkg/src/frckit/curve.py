"""Exact piecewise-linear function algebra over frequency deviation.

A curve maps frequency deviation df (Hz, negative for under-frequency) to
corrective power (MW). Inside the breakpoint span the function interpolates
linearly; beyond the first/last breakpoint it extends as an affine line with
``left_slope`` / ``right_slope`` (MW/Hz). All values are immutable and every
operation is a pure function, so curves are safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import (
    EmptyCurve,
    NonFiniteValue,
    NonMonotoneBreakpoints,
    NotMonotone,
    TargetUnreachable,
)

# Minimum distinguishable breakpoint gap (Hz) and pointwise MW tolerance.
DF_GAP_MIN = 1e-12
MW_TOL = 1e-9


@dataclass(frozen=True)
class Breakpoint:
    df: float   # frequency deviation, Hz
    mw: float   # corrective power, MW


@dataclass(frozen=True)
class PwlCurve:
    breakpoints: tuple[Breakpoint, ...]
    left_slope: float = 0.0
    right_slope: float = 0.0
    # cached coordinate arrays for vectorized evaluation
    _dfs: np.ndarray = field(init=False, repr=False, compare=False)
    _mws: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.breakpoints:
            raise EmptyCurve("curve needs at least one breakpoint")
        dfs = np.array([b.df for b in self.breakpoints], dtype=float)
        mws = np.array([b.mw for b in self.breakpoints], dtype=float)
        if not (np.all(np.isfinite(dfs)) and np.all(np.isfinite(mws))):
            raise NonFiniteValue("breakpoint coordinates must be finite")
        if not (math.isfinite(self.left_slope) and math.isfinite(self.right_slope)):
            raise NonFiniteValue("extension slopes must be finite")
        if np.any(np.diff(dfs) < DF_GAP_MIN):
            raise NonMonotoneBreakpoints(
                f"breakpoint df values must increase by at least {DF_GAP_MIN} Hz"
            )
        object.__setattr__(self, "_dfs", dfs)
        object.__setattr__(self, "_mws", mws)

    # -- evaluation ---------------------------------------------------------

    def eval(self, df):
        """Evaluate at scalar or array df; exact at breakpoints."""
        arr = np.asarray(df, dtype=float)
        if not np.all(np.isfinite(arr)):
            raise NonFiniteValue("df must be finite")
        dfs, mws = self._dfs, self._mws
        out = np.interp(arr, dfs, mws)
        lo = arr < dfs[0]
        hi = arr > dfs[-1]
        if np.any(lo):
            out = np.where(lo, mws[0] + self.left_slope * (arr - dfs[0]), out)
        if np.any(hi):
            out = np.where(hi, mws[-1] + self.right_slope * (arr - dfs[-1]), out)
        return float(out) if np.ndim(df) == 0 else out

    __call__ = eval

    def slope_at(self, df: float) -> float:
        """Local slope (MW/Hz); at an exact breakpoint, the left segment's."""
        if not math.isfinite(df):
            raise NonFiniteValue("df must be finite")
        dfs, mws = self._dfs, self._mws
        if df <= dfs[0]:
            return self.left_slope
        if df > dfs[-1]:
            return self.right_slope
        i = int(np.searchsorted(dfs, df, side="left"))
        # df in (dfs[i-1], dfs[i]]; breakpoints take the left segment
        return (mws[i] - mws[i - 1]) / (dfs[i] - dfs[i - 1])

    @property
    def dfs(self) -> np.ndarray:
        return self._dfs

    @property
    def mws(self) -> np.ndarray:
        return self._mws

    def is_nonincreasing(self, value_tol: float = MW_TOL) -> bool:
        """Monotone non-increasing up to `value_tol` of rounding dust."""
        if self.left_slope > 0 or self.right_slope > 0:
            return False
        return bool(np.all(np.diff(self._mws) <= value_tol))

    # operator sugar over the module-level algebra
    def __add__(self, other: "PwlCurve") -> "PwlCurve":
        return add(self, other)

    def __sub__(self, other: "PwlCurve") -> "PwlCurve":
        return subtract(self, other)

    def __mul__(self, k: float) -> "PwlCurve":
        return scale(self, k)

    __rmul__ = __mul__


def make_curve(
    points: Iterable[tuple[float, float]],
    left_slope: float = 0.0,
    right_slope: float = 0.0,
) -> PwlCurve:
    """Build a curve from (df, mw) pairs (sorted by df before validation)."""
    pts = sorted(points, key=lambda p: p[0])
    if not pts:
        raise EmptyCurve("no breakpoints given")
    return PwlCurve(
        tuple(Breakpoint(float(d), float(m)) for d, m in pts),
        float(left_slope),
        float(right_slope),
    )


def zero_curve() -> PwlCurve:
    return make_curve([(0.0, 0.0)])


def _merge_dfs(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Sorted union, collapsing points closer than the minimum gap."""
    merged = np.union1d(a, b)
    if len(merged) < 2 or np.all(np.diff(merged) >= DF_GAP_MIN):
        return merged
    keep = np.empty(len(merged), dtype=bool)
    keep[0] = True
    last = merged[0]
    for i in range(1, len(merged)):
        if merged[i] - last >= DF_GAP_MIN:
            keep[i] = True
            last = merged[i]
        else:
            keep[i] = False
    return merged[keep]


def add(a: PwlCurve, b: PwlCurve) -> PwlCurve:
    """Pointwise sum; breakpoints are the union of the operands'."""
    dfs = _merge_dfs(a.dfs, b.dfs)
    mws = a.eval(dfs) + b.eval(dfs)
    return PwlCurve(
        tuple(Breakpoint(float(d), float(m)) for d, m in zip(dfs, mws)),
        a.left_slope + b.left_slope,
        a.right_slope + b.right_slope,
    )


def scale(curve: PwlCurve, k: float) -> PwlCurve:
    if not math.isfinite(k):
        raise NonFiniteValue("scale factor must be finite")
    return PwlCurve(
        tuple(Breakpoint(b.df, k * b.mw) for b in curve.breakpoints),
        k * curve.left_slope,
        k * curve.right_slope,
    )


def subtract(a: PwlCurve, b: PwlCurve) -> PwlCurve:
    return add(a, scale(b, -1.0))


def invert_monotone(curve: PwlCurve, target: float, direction: str = "under") -> float:
    """Solve eval(curve, df) == target for a monotone non-increasing curve.

    The preimage of a target on a non-increasing continuous curve is a closed
    interval; the returned df is the interval point nearest df=0 (the most
    conservative steady-state deviation). ``direction`` names the expected
    sign branch ("under" for generation-loss targets, "over" for surplus) and
    disambiguates degenerate flat-at-target cases around zero.
    """
    if not math.isfinite(target):
        raise NonFiniteValue("target must be finite")
    if direction not in ("under", "over"):
        raise ValueError(f"direction must be 'under' or 'over', got {direction!r}")
    if not curve.is_nonincreasing():
        raise NotMonotone("invert_monotone requires a non-increasing curve")

    dfs = curve.dfs
    # enforce exact non-increase (tolerated dust is below MW_TOL)
    mws = np.minimum.accumulate(curve.mws)

    sup = math.inf if curve.left_slope < 0 else float(mws[0])
    inf_ = -math.inf if curve.right_slope < 0 else float(mws[-1])
    if target > sup or target < inf_:
        raise TargetUnreachable(
            f"target {target} MW outside attainable range [{inf_}, {sup}] MW"
        )

    if target > mws[0]:
        # only the (strictly decreasing) left extension reaches this high
        return float(dfs[0] + (target - mws[0]) / curve.left_slope)
    if target < mws[-1]:
        return float(dfs[-1] + (target - mws[-1]) / curve.right_slope)

    # target attained inside the span: bracket the preimage interval
    i = int(np.searchsorted(-mws, -target, side="left"))  # first mws[i] <= target
    if i == 0:
        lo = -math.inf if (curve.left_slope == 0 and target == mws[0]) else float(dfs[0])
    else:
        lo = float(
            dfs[i - 1]
            + (target - mws[i - 1]) * (dfs[i] - dfs[i - 1]) / (mws[i] - mws[i - 1])
        )
    j = int(np.searchsorted(-mws, -target, side="right")) - 1  # last mws[j] >= target
    if j == len(mws) - 1:
        hi = math.inf if (curve.right_slope == 0 and target == mws[-1]) else float(dfs[-1])
    else:
        hi = float(
            dfs[j]
            + (target - mws[j]) * (dfs[j + 1] - dfs[j]) / (mws[j + 1] - mws[j])
        )
    return float(min(max(0.0, lo), hi))


def simplify(curve: PwlCurve, tol: float = 0.0) -> PwlCurve:
    """Drop interior breakpoints that the surrounding chords reproduce.

    Douglas-Peucker split on the vertical deviation, measured against the
    *original* breakpoint values, so the result is pointwise within tol of the
    input however many points go. End breakpoints (and the extensions) are
    never touched, and the operation is idempotent. With tol=0 only
    exactly-collinear interior points are removed.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    dfs, mws = curve.dfs, curve.mws
    n = len(dfs)
    if n <= 2:
        return curve

    keep = np.zeros(n, dtype=bool)
    keep[0] = keep[-1] = True
    stack = [(0, n - 1)]
    while stack:
        a, b = stack.pop()
        if b - a < 2:
            continue
        span = slice(a + 1, b)
        t = (dfs[span] - dfs[a]) / (dfs[b] - dfs[a])
        dev = np.abs(mws[span] - (mws[a] + (mws[b] - mws[a]) * t))
        k = int(np.argmax(dev))
        if dev[k] > tol:
            m = a + 1 + k
            keep[m] = True
            stack.append((a, m))
            stack.append((m, b))

    if keep.all():
        return curve
    idx = np.flatnonzero(keep)
    return PwlCurve(
        tuple(Breakpoint(float(dfs[i]), float(mws[i])) for i in idx),
        curve.left_slope,
        curve.right_slope,
    )


def curve_to_csv(curve: PwlCurve, f0: float, dense_step: float | None = None) -> str:
    """CSV with header delta_f_hz,freq_hz,response_mw.

    One row per breakpoint; with ``dense_step`` given, additional resampling
    rows on a uniform grid across the breakpoint span are merged in.
    """
    dfs = curve.dfs
    if dense_step is not None:
        if dense_step <= 0:
            raise ValueError("dense_step must be positive")
        grid = np.arange(dfs[0], dfs[-1] + dense_step / 2, dense_step)
        dfs = _merge_dfs(dfs, grid)
    vals = curve.eval(dfs)
    lines = ["delta_f_hz,freq_hz,response_mw"]
    for d, v in zip(dfs, vals):
        lines.append(f"{float(d)!r},{float(f0 + d)!r},{float(v)!r}")
    return "\n".join(lines) + "\n"
