"""Summary statistics shared by every aggregate report."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy import stats as sps


@dataclass(frozen=True)
class Summary:
    count: int
    mean: float
    std: float  # sample standard deviation (n-1 denominator)
    median: float
    ci95_halfwidth: float  # Student-t interval; nan when count == 1


def summarize(values: Sequence[float]) -> Summary:
    """Mean / sample std / median / 95% t-interval half-width.

    A single observation yields std and half-width of nan (flagged
    undefined) rather than a misleading 0.
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("summarize requires at least one value")
    mean = float(arr.mean())
    median = float(np.median(arr))
    if arr.size == 1:
        return Summary(count=1, mean=mean, std=math.nan, median=median, ci95_halfwidth=math.nan)
    std = float(arr.std(ddof=1))
    halfwidth = float(sps.t.ppf(0.975, arr.size - 1) * std / math.sqrt(arr.size))
    return Summary(count=int(arr.size), mean=mean, std=std, median=median, ci95_halfwidth=halfwidth)


def paired_t_pvalue(a: Sequence[float], b: Sequence[float]) -> float:
    """Two-sided paired t-test p-value (pairs matched by position)."""
    if len(a) != len(b):
        raise ValueError("paired t-test requires equal-length samples")
    return float(sps.ttest_rel(a, b).pvalue)
