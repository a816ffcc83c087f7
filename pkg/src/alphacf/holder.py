"""Exploratory Hoelder-exponent estimation from uniformly sampled data.

The local oscillation of a C^h function over a window of width s scales
like s^h; the estimator regresses log(max oscillation) on log(scale) over
dyadic window sizes.  This is diagnostic output, not a certified exponent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class InsufficientScales(ValueError):
    """Too few samples for at least four dyadic scales."""


@dataclass
class HolderEstimate:
    exponent: float
    scales_used: list[int]   # window sizes, in samples
    r2: float


def estimate_holder(values, min_scales: int = 4) -> HolderEstimate:
    """Oscillation-regression estimate of the Hoelder exponent.

    ``values`` are samples of a function on a uniform grid.  Windows of
    2, 4, 8, ... samples are tiled over the data; the max oscillation per
    scale feeds a least-squares log-log fit whose slope is the exponent.
    """
    v = np.asarray(values, dtype=float)
    n = v.size
    if n < 2 ** (min_scales + 4):
        raise InsufficientScales(
            f"need at least {2 ** (min_scales + 4)} samples, got {n}")
    scales = []
    oscs = []
    # windows below 8 samples resolve a cusp too coarsely and bias the
    # slope upward, so the smallest scales are skipped
    w = 8
    while w <= n // 4:
        m = n // w
        trimmed = v[:m * w].reshape(m, w)
        osc = float(np.max(trimmed.max(axis=1) - trimmed.min(axis=1)))
        if osc > 0:
            scales.append(w)
            oscs.append(osc)
        w *= 2
    if len(scales) < min_scales:
        raise InsufficientScales(
            f"only {len(scales)} usable scales, need {min_scales}")
    lx = np.log(np.asarray(scales, dtype=float))
    ly = np.log(np.asarray(oscs))
    slope, intercept = np.polyfit(lx, ly, 1)
    fit = slope * lx + intercept
    ss_res = float(np.sum((ly - fit) ** 2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return HolderEstimate(float(slope), scales, r2)
