"""Labeled feature matrices and the CSV / label-file readers behind them."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np


class DatasetError(ValueError):
    pass


@dataclass
class LabeledDataset:
    """Rows of feature values (NaN = missing) with one class label each.

    ``classes`` keeps the order in which labels first appear unless given.
    """

    feature_ids: list[str]
    doc_ids: list[str]
    X: np.ndarray
    labels: list[str]
    classes: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=float).reshape(len(self.doc_ids), len(self.feature_ids))
        if len(self.labels) != len(self.doc_ids):
            raise DatasetError("labels and rows differ in length")
        if any(not str(lab) for lab in self.labels):
            raise DatasetError("class labels must be nonempty")
        if not self.classes:
            self.classes = list(dict.fromkeys(self.labels))
        elif set(self.labels) - set(self.classes):
            raise DatasetError(f"labels outside the class list: {sorted(set(self.labels) - set(self.classes))}")

    def __len__(self):
        return len(self.doc_ids)

    @property
    def rows(self):
        return [(d, [None if np.isnan(v) else float(v) for v in x], lab)
                for d, x, lab in zip(self.doc_ids, self.X, self.labels)]

    @property
    def y(self) -> np.ndarray:
        """Labels as indices into ``classes``."""
        pos = {c: i for i, c in enumerate(self.classes)}
        return np.array([pos[lab] for lab in self.labels], dtype=int)

    def subset(self, idx: Sequence[int]) -> "LabeledDataset":
        idx = list(idx)
        return LabeledDataset(list(self.feature_ids), [self.doc_ids[i] for i in idx],
                              self.X[idx], [self.labels[i] for i in idx], list(self.classes))

    def project(self, feature_ids: Sequence[str]) -> "LabeledDataset":
        pos = {f: i for i, f in enumerate(self.feature_ids)}
        missing = [f for f in feature_ids if f not in pos]
        if missing:
            raise DatasetError(f"dataset lacks features: {', '.join(missing[:5])}")
        cols = [pos[f] for f in feature_ids]
        return LabeledDataset(list(feature_ids), list(self.doc_ids), self.X[:, cols],
                              list(self.labels), list(self.classes))

    def class_counts(self) -> dict[str, int]:
        return {c: self.labels.count(c) for c in self.classes}


def read_features_csv(path: str | Path) -> tuple[list[str], list[str], np.ndarray]:
    """(feature ids, doc ids, matrix) from a feature CSV; empty cells become NaN."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DatasetError(f"{path}: empty feature file") from None
        if not header or header[0] != "doc_id":
            raise DatasetError(f"{path}: first column must be doc_id")
        ids = header[1:]
        docs, rows = [], []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise DatasetError(f"{path}: line {line_no} has {len(row)} cells, expected {len(header)}")
            try:
                rows.append([float(c) if c.strip() else np.nan for c in row[1:]])
            except ValueError as exc:
                raise DatasetError(f"{path}: line {line_no}: {exc}") from None
            docs.append(row[0])
    return ids, docs, np.array(rows, dtype=float).reshape(len(docs), len(ids))


def read_labels(path: str | Path) -> dict[str, str]:
    """doc_id -> label from a ``doc_id<TAB>label`` file or a class-per-directory tree.

    In a tree, every file below ``<root>/<label>/`` is labeled with its top
    directory.  It is keyed by ``parent/stem`` and, when no other file shares
    it, by the bare stem.
    """
    path = Path(path)
    out: dict[str, str] = {}
    if path.is_dir():
        by_stem: dict[str, set[str]] = {}
        for class_dir in sorted(p for p in path.iterdir() if p.is_dir()):
            for f in sorted(class_dir.rglob("*")):
                if f.is_file() and not f.name.startswith("."):
                    out[f"{f.parent.name}/{f.stem}"] = class_dir.name
                    by_stem.setdefault(f.stem, set()).add(class_dir.name)
        for stem, found in by_stem.items():
            if len(found) == 1:
                out.setdefault(stem, next(iter(found)))
        return out
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[1].strip():
                raise DatasetError(f"{path}: line {line_no}: expected doc_id<TAB>label")
            doc, label = parts[0].strip(), parts[1].strip()
            if line_no == 1 and (doc, label) == ("doc_id", "label"):
                continue
            out[doc] = label
    return out


def build_dataset(feature_ids, doc_ids, X, labels: dict[str, str], classes=None) -> LabeledDataset:
    unlabeled = [d for d in doc_ids if d not in labels]
    if unlabeled:
        raise DatasetError(f"no label for doc_id {unlabeled[0]!r}"
                           + (f" (and {len(unlabeled) - 1} more)" if len(unlabeled) > 1 else ""))
    return LabeledDataset(list(feature_ids), list(doc_ids), X, [labels[d] for d in doc_ids],
                          list(classes or []))


def load_dataset(features_csv, labels_path, classes=None) -> LabeledDataset:
    ids, docs, X = read_features_csv(features_csv)
    return build_dataset(ids, docs, X, read_labels(labels_path), classes)
