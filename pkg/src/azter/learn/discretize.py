"""Supervised discretization: recursive entropy splits with the MDL stopping rule."""

from __future__ import annotations

import math
from typing import Hashable, Sequence

import numpy as np


def entropy(counts) -> float:
    """Shannon entropy in bits of a vector of class counts."""
    counts = np.asarray(counts, dtype=float)
    total = counts.sum()
    if total <= 0:
        return 0.0
    p = counts[counts > 0] / total
    return float(-(p * np.log2(p)).sum())


def mdl_accepts(total, left, right) -> bool:
    """MDL acceptance test for splitting class counts ``total`` into ``left``/``right``."""
    total, left, right = (np.asarray(c, dtype=float) for c in (total, left, right))
    n = total.sum()
    h, h1, h2 = entropy(total), entropy(left), entropy(right)
    gain = h - (left.sum() * h1 + right.sum() * h2) / n
    k, k1, k2 = (int((c > 0).sum()) for c in (total, left, right))
    delta = math.log2(3 ** k - 2) - (k * h - k1 * h1 - k2 * h2)
    return gain > (math.log2(n - 1) + delta) / n


def _split(values: np.ndarray, y: np.ndarray, n_classes: int, cuts: list[float]) -> None:
    n = len(values)
    if n < 2:
        return
    onehot = np.zeros((n, n_classes))
    onehot[np.arange(n), y] = 1.0
    prefix = np.cumsum(onehot, axis=0)
    total = prefix[-1]
    best, best_i = math.inf, -1
    for i in range(1, n):
        if values[i] == values[i - 1]:
            continue
        left = prefix[i - 1]
        right = total - left
        score = (i * entropy(left) + (n - i) * entropy(right)) / n
        if score < best:
            best, best_i = score, i
    if best_i < 0:
        return
    left, right = prefix[best_i - 1], total - prefix[best_i - 1]
    if not mdl_accepts(total, left, right):
        return
    cuts.append(float((values[best_i - 1] + values[best_i]) / 2.0))
    _split(values[:best_i], y[:best_i], n_classes, cuts)
    _split(values[best_i:], y[best_i:], n_classes, cuts)


def discretize_mdl(values: Sequence[float], labels: Sequence[Hashable]) -> list[float]:
    """Sorted cut points; an empty list means no split passed the MDL test.

    Candidate cuts sit halfway between consecutive distinct values.  Missing
    values must be removed by the caller.
    """
    if len(values) != len(labels):
        raise ValueError("values and labels differ in length")
    if len(values) < 2:
        return []
    codes = {lab: i for i, lab in enumerate(dict.fromkeys(labels))}
    v = np.asarray(values, dtype=float)
    order = np.argsort(v, kind="stable")
    y = np.array([codes[lab] for lab in labels], dtype=int)[order]
    cuts: list[float] = []
    _split(v[order], y, len(codes), cuts)
    return sorted(cuts)


def assign_bins(values: Sequence[float], cuts: Sequence[float]) -> np.ndarray:
    """Bin index per value: 0..len(cuts) by cut position, -1 for missing (NaN)."""
    v = np.asarray(values, dtype=float)
    bins = np.searchsorted(np.asarray(cuts, dtype=float), v, side="right")
    bins[np.isnan(v)] = -1
    return bins
