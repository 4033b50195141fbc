"""Linear SVM trained by sequential minimal optimization, one-vs-one multiclass.

Working pairs are chosen deterministically: alternate full passes and passes
over non-bound multipliers; the second multiplier is the first maximizer of
|E1 - E2|, falling back to scans from index 0.  The same data therefore always
yields the same model.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .dataset import LabeledDataset

FORMAT_VERSION = 1
_SNAP = 1e-8


class TrainingError(ValueError):
    pass


class ModelFormatError(ValueError):
    pass


@dataclass(frozen=True)
class SmoParams:
    C: float = 1.0
    tol: float = 1e-3
    eps: float = 1e-12
    max_passes: int = 10_000


@dataclass
class BinarySolution:
    alpha: np.ndarray
    w: np.ndarray
    b: float  # decision is w.x - b, the classic SMO sign convention
    passes: int
    converged: bool

    @property
    def bias(self) -> float:
        return -self.b


def smo_binary(X: np.ndarray, y: np.ndarray, params: SmoParams = SmoParams()) -> BinarySolution:
    """Solve the soft-margin dual for targets ``y`` in {+1, -1}."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(y)
    C, tol, eps = params.C, params.tol, params.eps
    K = X @ X.T
    alpha = np.zeros(n)
    b = 0.0
    errors = -y.copy()  # f(x_i) - y_i with every multiplier at zero

    def take_step(i1: int, i2: int) -> bool:
        nonlocal b
        if i1 == i2:
            return False
        a1_old, a2_old = alpha[i1], alpha[i2]
        y1, y2 = y[i1], y[i2]
        e1, e2 = errors[i1], errors[i2]
        s = y1 * y2
        if s < 0:
            lo, hi = max(0.0, a2_old - a1_old), min(C, C + a2_old - a1_old)
        else:
            lo, hi = max(0.0, a2_old + a1_old - C), min(C, a2_old + a1_old)
        if lo >= hi:
            return False
        k11, k12, k22 = K[i1, i1], K[i1, i2], K[i2, i2]
        eta = k11 + k22 - 2.0 * k12
        if eta > 0:
            a2 = min(hi, max(lo, a2_old + y2 * (e1 - e2) / eta))
        else:
            # objective along the constraint line, evaluated at both ends
            f1 = y1 * (e1 + b) - a1_old * k11 - s * a2_old * k12
            f2 = y2 * (e2 + b) - s * a1_old * k12 - a2_old * k22
            l1 = a1_old + s * (a2_old - lo)
            h1 = a1_old + s * (a2_old - hi)
            obj_lo = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k11 + 0.5 * lo * lo * k22 + s * lo * l1 * k12
            obj_hi = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k11 + 0.5 * hi * hi * k22 + s * hi * h1 * k12
            if obj_lo < obj_hi - eps:
                a2 = lo
            elif obj_lo > obj_hi + eps:
                a2 = hi
            else:
                a2 = a2_old
        if a2 - lo < _SNAP:
            a2 = lo
        elif hi - a2 < _SNAP:
            a2 = hi
        # lo and hi are sums of multipliers and may miss 0 or C by an ulp
        if a2 < _SNAP:
            a2 = 0.0
        elif a2 > C - _SNAP:
            a2 = C
        if abs(a2 - a2_old) < eps * (a2 + a2_old + eps):
            return False
        a1 = a1_old + s * (a2_old - a2)
        if a1 < _SNAP:
            a1 = 0.0
        elif a1 > C - _SNAP:
            a1 = C

        d1, d2 = y1 * (a1 - a1_old), y2 * (a2 - a2_old)
        b1 = e1 + d1 * k11 + d2 * k12 + b
        b2 = e2 + d1 * k12 + d2 * k22 + b
        if 0.0 < a1 < C:
            b_new = b1
        elif 0.0 < a2 < C:
            b_new = b2
        else:
            b_new = (b1 + b2) / 2.0
        errors[:] += d1 * K[:, i1] + d2 * K[:, i2] - (b_new - b)
        b = b_new
        alpha[i1], alpha[i2] = a1, a2
        return True

    def examine(i2: int) -> int:
        r2 = errors[i2] * y[i2]
        a2 = alpha[i2]
        if not ((r2 < -tol and a2 < C) or (r2 > tol and a2 > 0)):
            return 0
        non_bound = np.flatnonzero((alpha > 0) & (alpha < C))
        if len(non_bound) > 1:
            i1 = int(non_bound[np.argmax(np.abs(errors[non_bound] - errors[i2]))])
            if take_step(i1, i2):
                return 1
        for i1 in non_bound:
            if take_step(int(i1), i2):
                return 1
        for i1 in range(n):
            if take_step(i1, i2):
                return 1
        return 0

    examine_all = True
    changed = 0
    passes = 0
    while (changed > 0 or examine_all) and passes < params.max_passes:
        passes += 1
        if examine_all:
            changed = sum(examine(i) for i in range(n))
        else:
            changed = sum(examine(int(i)) for i in np.flatnonzero((alpha > 0) & (alpha < C)))
        if examine_all:
            examine_all = False
        elif changed == 0:
            examine_all = True
    converged = changed == 0 and not examine_all
    w = (alpha * y) @ X if n else np.zeros(X.shape[1])
    return BinarySolution(alpha, w, _threshold(K @ (alpha * y) - y, alpha, y, C, b), passes, converged)


def _threshold(g: np.ndarray, alpha: np.ndarray, y: np.ndarray, C: float, fallback: float) -> float:
    """Threshold consistent with the KKT conditions of the final multipliers.

    With g = w.x - y, a free multiplier pins b = g; a multiplier at a bound only
    bounds b from one side.  When no multiplier is free the running threshold
    can sit outside the feasible interval, so the interval midpoint is used.
    """
    free = (alpha > _SNAP) & (alpha < C - _SNAP)
    if free.any():
        return float(np.mean(g[free]))
    at_zero, at_c = alpha <= 0, alpha >= C
    lower = g[(at_zero & (y < 0)) | (at_c & (y > 0))]
    upper = g[(at_zero & (y > 0)) | (at_c & (y < 0))]
    if len(lower) and len(upper):
        return float((lower.max() + upper.min()) / 2.0)
    if len(lower):
        return float(lower.max())
    if len(upper):
        return float(upper.min())
    return fallback


@dataclass
class PairClassifier:
    first: str
    second: str
    w: np.ndarray
    bias: float

    def decide(self, x: np.ndarray) -> str:
        # a point on the hyperplane goes to the first class of the pair
        return self.first if float(self.w @ x) + self.bias >= 0.0 else self.second


@dataclass
class SvmModel:
    feature_ids: list[str]
    classes: list[str]
    mins: np.ndarray
    maxs: np.ndarray
    means: np.ndarray
    pairwise: list[PairClassifier]
    params: SmoParams = SmoParams()
    meta: dict[str, str] = field(default_factory=dict)

    def transform(self, X: np.ndarray) -> np.ndarray:
        """Impute missing values with training means, then min-max scale."""
        X = np.array(X, dtype=float, ndmin=2)
        X = np.where(np.isnan(X), self.means, X)
        span = self.maxs - self.mins
        safe = np.where(span > 0, span, 1.0)
        return np.where(span > 0, (X - self.mins) / safe, 0.0)

    def vote(self, x_scaled: np.ndarray) -> dict[str, int]:
        votes = {c: 0 for c in self.classes}
        for clf in self.pairwise:
            votes[clf.decide(x_scaled)] += 1
        return votes

    def matrix(self, vectors: Sequence[Mapping[str, float | None]]) -> np.ndarray:
        """Project feature vectors onto the model's ids; unknown ids are ignored."""
        out = np.full((len(vectors), len(self.feature_ids)), np.nan)
        for r, v in enumerate(vectors):
            for j, f in enumerate(self.feature_ids):
                value = v.get(f)
                if value is not None:
                    out[r, j] = float(value)
        return out

    def predict_matrix(self, X: np.ndarray) -> list[str]:
        return [_winner(self.vote(x), self.classes) for x in self.transform(X)]


def _winner(votes: dict[str, int], classes: Sequence[str]) -> str:
    best = max(votes.values())
    return next(c for c in classes if votes[c] == best)


def fit_scaling(X: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Column means (over non-missing values), minima and maxima after imputation."""
    X = np.asarray(X, dtype=float)
    present = ~np.isnan(X)
    counts = present.sum(axis=0)
    sums = np.where(present, X, 0.0).sum(axis=0)
    means = np.where(counts > 0, sums / np.maximum(counts, 1), 0.0)
    filled = np.where(present, X, means)
    if len(X):
        return means, filled.min(axis=0), filled.max(axis=0)
    return means, means.copy(), means.copy()


def train_smo(ds: LabeledDataset, params: SmoParams = SmoParams(), meta=None) -> SvmModel:
    counts = ds.class_counts()
    if len(ds.classes) < 2:
        raise TrainingError("training needs at least two classes")
    empty = [c for c, n in counts.items() if n == 0]
    if empty:
        raise TrainingError(f"class {empty[0]!r} has no training rows")
    means, mins, maxs = fit_scaling(ds.X)
    model = SvmModel(list(ds.feature_ids), list(ds.classes), mins, maxs, means, [], params,
                     dict(meta or {}))
    Z = model.transform(ds.X)
    labels = np.array(ds.labels, dtype=object)
    for first, second in itertools.combinations(ds.classes, 2):
        rows = np.flatnonzero((labels == first) | (labels == second))
        y = np.where(labels[rows] == first, 1.0, -1.0)
        sol = smo_binary(Z[rows], y, params)
        model.pairwise.append(PairClassifier(first, second, sol.w, sol.bias))
    return model


def predict(m: SvmModel, v: Mapping[str, float | None]) -> tuple[str, dict[str, int]]:
    """Predicted label and the one-vs-one vote counts; ties go to the earlier class."""
    x = m.transform(m.matrix([v]))[0]
    votes = m.vote(x)
    return _winner(votes, m.classes), votes


def _fmt(values) -> str:
    return " ".join(repr(float(x)) for x in values)


def save_model(m: SvmModel, path: str | Path) -> None:
    lines = [f"azter-svm {FORMAT_VERSION}",
             f"params {m.params.C!r} {m.params.tol!r} {m.params.eps!r}"]
    for k, v in sorted(m.meta.items()):
        lines.append(f"meta\t{k}\t{v}")
    lines.append(f"features {len(m.feature_ids)}")
    for f, lo, hi, mu in zip(m.feature_ids, m.mins, m.maxs, m.means):
        lines.append(f"{f}\t{float(lo)!r}\t{float(hi)!r}\t{float(mu)!r}")
    lines.append(f"classes {len(m.classes)}")
    lines.extend(m.classes)
    lines.append(f"pairs {len(m.pairwise)}")
    for clf in m.pairwise:
        i, j = m.classes.index(clf.first), m.classes.index(clf.second)
        lines.append(f"pair {i} {j} {float(clf.bias)!r}")
        lines.append(_fmt(clf.w))
    lines.append("end")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> SvmModel:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFormatError(f"{path}: cannot read ({exc.strerror})") from None
    lines = text.split("\n")
    pos = 0

    def take() -> str:
        nonlocal pos
        if pos >= len(lines):
            raise ModelFormatError(f"{path}: unexpected end of file")
        pos += 1
        return lines[pos - 1]

    def counted(keyword: str) -> int:
        head = take().split(" ")
        if len(head) != 2 or head[0] != keyword:
            raise ModelFormatError(f"{path}: line {pos}: expected '{keyword} <n>'")
        return int(head[1])

    try:
        magic = take().split(" ")
        if magic[0] != "azter-svm":
            raise ModelFormatError(f"{path}: not a model file")
        if len(magic) != 2 or magic[1] != str(FORMAT_VERSION):
            raise ModelFormatError(f"{path}: unsupported model version {' '.join(magic[1:])!r}")
        head = take().split(" ")
        if head[0] != "params" or len(head) != 4:
            raise ModelFormatError(f"{path}: line {pos}: expected params")
        params = SmoParams(float(head[1]), float(head[2]), float(head[3]))
        meta = {}
        while lines[pos].startswith("meta\t"):
            _, k, v = take().split("\t", 2)
            meta[k] = v
        ids, mins, maxs, means = [], [], [], []
        for _ in range(counted("features")):
            f, lo, hi, mu = take().split("\t")
            ids.append(f)
            mins.append(float(lo))
            maxs.append(float(hi))
            means.append(float(mu))
        classes = [take() for _ in range(counted("classes"))]
        pairwise = []
        for _ in range(counted("pairs")):
            tag, i, j, bias = take().split(" ")
            if tag != "pair":
                raise ModelFormatError(f"{path}: line {pos}: expected pair")
            w = np.array([float(x) for x in take().split(" ")]) if ids else np.zeros(0)
            if len(w) != len(ids):
                raise ModelFormatError(f"{path}: line {pos}: weight vector has {len(w)} values, expected {len(ids)}")
            pairwise.append(PairClassifier(classes[int(i)], classes[int(j)], w, float(bias)))
        if take() != "end":
            raise ModelFormatError(f"{path}: line {pos}: missing end marker")
    except (ValueError, IndexError) as exc:
        if isinstance(exc, ModelFormatError):
            raise
        raise ModelFormatError(f"{path}: line {pos}: corrupt model ({exc})") from None
    expected = math.comb(len(classes), 2)
    if len(pairwise) != expected:
        raise ModelFormatError(f"{path}: {len(pairwise)} pairwise classifiers, expected {expected}")
    return SvmModel(ids, classes, np.array(mins), np.array(maxs), np.array(means), pairwise, params, meta)
