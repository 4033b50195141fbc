"""InfoGain ranking, top-k selection and cross-language feature intersection."""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

import numpy as np

from ..features.catalog import ABSOLUTE, CATALOG
from .dataset import LabeledDataset
from .discretize import assign_bins, discretize_mdl, entropy


def info_gain(bins: Sequence[Hashable], labels: Sequence[Hashable]) -> float:
    """H(class) - H(class | bin) in bits."""
    if len(bins) != len(labels):
        raise ValueError("bins and labels differ in length")
    n = len(labels)
    if n == 0:
        return 0.0
    classes = {c: i for i, c in enumerate(dict.fromkeys(labels))}
    groups: dict[Hashable, np.ndarray] = {}
    for b, lab in zip(bins, labels):
        counts = groups.setdefault(b, np.zeros(len(classes)))
        counts[classes[lab]] += 1
    total = sum(groups.values())
    conditional = sum(c.sum() / n * entropy(c) for c in groups.values())
    return max(0.0, float(entropy(total) - conditional))


def feature_gain(values: Sequence[float], labels: Sequence[Hashable]) -> float:
    v = np.asarray(values, dtype=float)
    present = ~np.isnan(v)
    lab = list(labels)
    cuts = discretize_mdl(v[present], [lab[i] for i in np.flatnonzero(present)])
    if not cuts:
        return 0.0
    return info_gain(assign_bins(v, cuts).tolist(), lab)


def info_gain_rank(ds: LabeledDataset) -> list[tuple[str, float]]:
    """(feature id, gain) by descending gain; equal gains keep dataset column order."""
    if len(set(ds.labels)) < 2:
        return [(f, 0.0) for f in ds.feature_ids]
    gains = [(f, feature_gain(ds.X[:, j], ds.labels)) for j, f in enumerate(ds.feature_ids)]
    order = sorted(range(len(gains)), key=lambda j: (-gains[j][1], j))
    return [gains[j] for j in order]


def select_top(ranked: Sequence[tuple[str, float]], k: int) -> list[str]:
    if k < 1:
        raise ValueError("k must be at least 1")
    return [f for f, _ in ranked[:k]]


def feature_intersection(catalogs: Sequence[Iterable[str]], mode: str = "all") -> list[str]:
    """Ids present in every catalog, in the first catalog's order.

    Unordered collections are ordered by the feature catalog.  In ``ratios``
    mode absolute-count ids are dropped first.
    """
    if len(catalogs) < 2:
        raise ValueError("intersection needs at least two catalogs")
    if mode not in ("all", "ratios"):
        raise ValueError(f"unknown mode {mode!r}")
    first = catalogs[0]
    if isinstance(first, (set, frozenset)):
        known = CATALOG.order(first)
        first = known + sorted(set(first) - set(known))
    first = list(first)
    if mode == "ratios":
        first = [f for f in first if not (f in CATALOG and CATALOG[f].score_kind == ABSOLUTE)]
    common = set(first).intersection(*(set(c) for c in catalogs[1:]))
    return [f for f in first if f in common]
