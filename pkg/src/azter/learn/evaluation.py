"""Stratified cross-validation, hold-out evaluation and their reports."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dataset import DatasetError, LabeledDataset
from .selection import info_gain_rank, select_top
from .smo import SmoParams, SvmModel, train_smo


@dataclass
class EvalReport:
    classes: list[str]
    confusion: np.ndarray  # rows: true class, columns: predicted class
    doc_ids: list[str] = field(default_factory=list)
    predictions: list[str] = field(default_factory=list)
    folds: list[list[int]] = field(default_factory=list)
    models: list[SvmModel] = field(default_factory=list)
    selected: list[list[str]] = field(default_factory=list)
    seed: int | None = None

    @property
    def total(self) -> int:
        return int(self.confusion.sum())

    @property
    def accuracy(self) -> float:
        """Percentage of correct predictions."""
        if self.total == 0:
            return 0.0
        return 100.0 * float(np.trace(self.confusion)) / self.total

    def precision(self) -> dict[str, float | None]:
        col = self.confusion.sum(axis=0)
        return {c: (self.confusion[i, i] / col[i] if col[i] else None) for i, c in enumerate(self.classes)}

    def recall(self) -> dict[str, float | None]:
        row = self.confusion.sum(axis=1)
        return {c: (self.confusion[i, i] / row[i] if row[i] else None) for i, c in enumerate(self.classes)}

    def f1(self) -> dict[str, float | None]:
        out = {}
        p, r = self.precision(), self.recall()
        for c in self.classes:
            if p[c] is None or r[c] is None or p[c] + r[c] == 0:
                out[c] = None
            else:
                out[c] = 2 * p[c] * r[c] / (p[c] + r[c])
        return out


def _confusion(classes, truth, predicted) -> np.ndarray:
    pos = {c: i for i, c in enumerate(classes)}
    m = np.zeros((len(classes), len(classes)), dtype=int)
    for t, p in zip(truth, predicted):
        m[pos[t], pos[p]] += 1
    return m


def stratified_folds(ds: LabeledDataset, k: int, seed: int = 0) -> list[list[int]]:
    """Row indices of each fold.

    Every class is shuffled with one seeded generator and dealt round-robin;
    the dealing position carries over from one class to the next so fold
    sizes also stay within one of each other.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    counts = ds.class_counts()
    small = [c for c, n in counts.items() if n < k]
    if small:
        raise DatasetError(f"class {small[0]!r} has {counts[small[0]]} rows, fewer than k={k}")
    rng = np.random.default_rng(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    at = 0
    labels = np.array(ds.labels, dtype=object)
    for c in ds.classes:
        idx = np.flatnonzero(labels == c)
        for i in rng.permutation(idx):
            folds[at].append(int(i))
            at = (at + 1) % k
    return [sorted(f) for f in folds]


def _fit(train: LabeledDataset, top_k, params, ranked=None):
    if top_k is not None:
        ids = select_top(ranked if ranked is not None else info_gain_rank(train), top_k)
        train = train.project(ids)
    return train_smo(train, params)


def _predict(model: SvmModel, test: LabeledDataset) -> list[str]:
    return model.predict_matrix(test.project(model.feature_ids).X)


def cross_validate(ds: LabeledDataset, k: int = 10, seed: int = 0, params: SmoParams = SmoParams(),
                   top_k: int | None = None, select_on_full: bool = False) -> EvalReport:
    """k-fold CV; imputation, scaling and (by default) selection see training folds only."""
    folds = stratified_folds(ds, k, seed)
    ranked = info_gain_rank(ds) if top_k is not None and select_on_full else None
    predictions: list[str | None] = [None] * len(ds)
    models, selected = [], []
    for held in folds:
        held_set = set(held)
        train = ds.subset([i for i in range(len(ds)) if i not in held_set])
        model = _fit(train, top_k, params, ranked)
        for i, label in zip(held, _predict(model, ds.subset(held))):
            predictions[i] = label
        models.append(model)
        selected.append(list(model.feature_ids))
    return EvalReport(list(ds.classes), _confusion(ds.classes, ds.labels, predictions),
                      list(ds.doc_ids), predictions, folds, models, selected, seed)


def holdout_split(ds: LabeledDataset, train_fraction: float = 0.8, seed: int = 0):
    """Per-class split; each class keeps ceil(n * fraction) training rows."""
    if not 0.0 < train_fraction <= 1.0:
        raise ValueError("train_fraction must lie in (0, 1]")
    rng = np.random.default_rng(seed)
    labels = np.array(ds.labels, dtype=object)
    train_idx, test_idx = [], []
    for c in ds.classes:
        idx = rng.permutation(np.flatnonzero(labels == c))
        if len(idx) == 0:
            continue
        # tolerance keeps exact products such as 200 * 0.8 from rounding up
        n_train = min(len(idx), max(1, math.ceil(len(idx) * train_fraction - 1e-9)))
        train_idx.extend(int(i) for i in idx[:n_train])
        test_idx.extend(int(i) for i in idx[n_train:])
    if not test_idx:
        raise DatasetError("hold-out split leaves the test set empty")
    return ds.subset(sorted(train_idx)), ds.subset(sorted(test_idx))


def evaluate_holdout(ds: LabeledDataset, train_fraction: float = 0.8, seed: int = 0,
                     params: SmoParams = SmoParams(), top_k: int | None = None) -> EvalReport:
    train, test = holdout_split(ds, train_fraction, seed)
    model = _fit(train, top_k, params)
    predicted = _predict(model, test)
    return EvalReport(list(ds.classes), _confusion(ds.classes, test.labels, predicted),
                      list(test.doc_ids), predicted, [], [model], [list(model.feature_ids)], seed)
