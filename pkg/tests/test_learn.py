import itertools
import math
import random
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from azter.features import CATALOG
from azter.learn import (DatasetError, LabeledDataset, ModelFormatError, SmoParams, TrainingError,
                         assign_bins, cross_validate, discretize_mdl, evaluate_holdout, feature_intersection,
                         holdout_split, info_gain, info_gain_rank, load_dataset, load_model, predict,
                         read_labels, save_model, select_top, smo_binary, stratified_folds, train_smo)
from azter.learn.smo import PairClassifier, SvmModel

from docgen import separable_set


def make_ds(X, labels, ids=None):
    X = np.asarray(X, dtype=float)
    ids = ids or [f"f{j}" for j in range(X.shape[1])]
    return LabeledDataset(ids, [f"d{i}" for i in range(len(labels))], X, list(labels))


# ---------------------------------------------------------------- entropy oracles

def H(labels):
    n = len(labels)
    return -sum(c / n * math.log2(c / n) for c in Counter(labels).values())


def mutual_information(xs, ys):
    """Oracle: sum over the joint distribution of p(x,y) log p(x,y) / (p(x) p(y))."""
    n = len(xs)
    pxy, px, py = Counter(zip(xs, ys)), Counter(xs), Counter(ys)
    return sum(c / n * math.log2((c / n) / (px[x] / n * py[y] / n)) for (x, y), c in pxy.items())


def brute_mdl(values, labels):
    """Oracle: evaluate every candidate cut from scratch, recurse on the accepted best one."""
    pairs = sorted(zip(values, labels), key=lambda t: t[0])
    out = []

    def rec(seg):
        n = len(seg)
        ys = [y for _, y in seg]
        best = None
        for i in range(1, n):
            if seg[i][0] == seg[i - 1][0]:
                continue
            left, right = ys[:i], ys[i:]
            e = (len(left) * H(left) + len(right) * H(right)) / n
            if best is None or e < best[0] - 1e-15:
                best = (e, i)
        if best is None:
            return
        e, i = best
        left, right = ys[:i], ys[i:]
        gain = H(ys) - e
        k, k1, k2 = len(set(ys)), len(set(left)), len(set(right))
        delta = math.log2(3 ** k - 2) - (k * H(ys) - k1 * H(left) - k2 * H(right))
        if gain > (math.log2(n - 1) + delta) / n:
            out.append((seg[i - 1][0] + seg[i][0]) / 2)
            rec(seg[:i])
            rec(seg[i:])

    rec(pairs)
    return sorted(out)


# ---------------------------------------------------------------- discretization

def test_perfect_split_gets_one_cut():
    cuts = discretize_mdl([1, 1, 2, 2], list("AABB"))
    assert cuts == brute_mdl([1, 1, 2, 2], list("AABB"))
    assert len(cuts) == 1 and 1 < cuts[0] < 2


def test_constant_values_have_no_cuts():
    assert discretize_mdl([3.0] * 10, list("ABABABABAB")) == []


def test_independent_labels_have_no_cuts():
    rng = np.random.default_rng(11)
    values = rng.normal(size=60)
    labels = list(rng.permutation(["A"] * 30 + ["B"] * 30))
    assert discretize_mdl(values, labels) == brute_mdl(values, labels) == []


def test_large_separable_sample_splits():
    values = list(range(40))
    labels = ["A"] * 20 + ["B"] * 20
    assert discretize_mdl(values, labels) == [19.5]


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 6), st.sampled_from("ABC")), min_size=2, max_size=40))
def test_discretizer_matches_brute_force(rows):
    values, labels = zip(*rows)
    assert discretize_mdl(values, labels) == pytest.approx(brute_mdl(values, labels))


def test_assign_bins_with_missing():
    np.testing.assert_array_equal(assign_bins([0.5, 1.5, 2.5, np.nan], [1.0, 2.0]), [0, 1, 2, -1])


# ---------------------------------------------------------------- information gain

def test_info_gain_examples():
    assert info_gain([0, 0, 1, 1], ["+", "+", "-", "-"]) == pytest.approx(1.0)
    assert info_gain(["A", "A", "A", "B"], ["+", "+", "-", "-"]) == pytest.approx(
        1 - 0.75 * H(["x", "x", "y"]))
    assert info_gain(["A", "A", "A", "B"], ["+", "+", "-", "-"]) == pytest.approx(0.3113, abs=1e-4)
    assert info_gain([0, 0, 0, 0], [1, 2, 1, 2]) == 0.0


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.sampled_from("abc")), min_size=1, max_size=30))
def test_info_gain_matches_mutual_information(rows):
    bins, labels = zip(*rows)
    assert abs(info_gain(bins, labels) - mutual_information(bins, labels)) <= 1e-12


def test_rank_orders_by_gain_then_column():
    X = [[0, 5, 1], [0, 5, 1], [1, 5, 2], [1, 5, 2], [0, 5, 1], [1, 5, 2]]
    ds = make_ds(X, list("AABBAB"))
    ranked = info_gain_rank(ds)
    assert ranked[0][0] == "f0" and ranked[1][0] == "f2"
    assert ranked[0][1] == pytest.approx(1.0)
    assert ranked[2] == ("f1", 0.0)
    assert select_top(ranked, 1) == ["f0"]
    assert select_top(ranked, 10) == ["f0", "f2", "f1"]
    with pytest.raises(ValueError):
        select_top(ranked, 0)


def test_missing_values_get_their_own_bin():
    v = [0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, np.nan, np.nan]
    y = list("AAABBBBBBBBBCC")
    ds = make_ds(np.array(v).reshape(-1, 1), y)
    gain = info_gain_rank(ds)[0][1]
    assert gain == pytest.approx(mutual_information(["lo"] * 3 + ["hi"] * 9 + ["na"] * 2, y))


def test_single_class_gains_are_zero():
    ds = make_ds([[1, 2], [3, 4]], ["A", "A"])
    assert [g for _, g in info_gain_rank(ds)] == [0.0, 0.0]


def test_gain_bounds_on_random_datasets():
    rng = np.random.default_rng(5)
    for _ in range(30):
        k = int(rng.integers(2, 5))
        n = int(rng.integers(k, 40))
        labels = [str(c) for c in rng.integers(0, k, n)]
        ds = make_ds(rng.normal(size=(n, 4)), labels)
        for _, g in info_gain_rank(ds):
            assert 0.0 <= g <= math.log2(len(set(labels))) + 1e-12


# ---------------------------------------------------------------- SMO

def kkt_report(X, y, sol, C=1.0):
    f = X @ sol.w - sol.b
    margins = y * f
    worst = 0.0
    for a, m in zip(sol.alpha, margins):
        if a <= 0:
            worst = max(worst, 1 - m)
        elif a >= C:
            worst = max(worst, m - 1)
        else:
            worst = max(worst, abs(m - 1))
    return worst


def test_two_cluster_example():
    ds = make_ds([[0, 0], [0, 1], [5, 5], [5, 6]], list("AABB"))
    m = train_smo(ds)
    assert m.predict_matrix(ds.X) == ds.labels


def test_random_separable_sets_reach_full_training_accuracy():
    rng = np.random.default_rng(0)
    for _ in range(100):
        X, labels = separable_set(rng)
        m = train_smo(make_ds(X, labels))
        assert m.predict_matrix(X) == labels
        y_pair = np.where(np.array(labels) == m.classes[0], 1.0, -1.0)
        sol = smo_binary(m.transform(X), y_pair)
        assert np.all(sol.alpha >= 0) and np.all(sol.alpha <= 1.0)
        assert abs(float(sol.alpha @ y_pair)) <= 1e-9


def test_xor_kkt_and_accuracy():
    X = np.array([[0, 0], [1, 1], [0, 1], [1, 0]], dtype=float)
    y = np.array([1, 1, -1, -1], dtype=float)
    sol = smo_binary(X, y)
    assert sol.converged
    assert kkt_report(X, y, sol) <= 1e-3 + 1e-9
    acc = np.mean(np.where(X @ sol.w - sol.b >= 0, 1, -1) == y)
    assert acc <= 0.75
    m = train_smo(make_ds(X, ["a", "a", "b", "b"]))
    assert np.mean(np.array(m.predict_matrix(X)) == np.array(["a", "a", "b", "b"])) <= 0.75


def test_kkt_on_noisy_data():
    rng = np.random.default_rng(3)
    for _ in range(10):
        X = rng.uniform(size=(30, 3))
        y = np.where(rng.uniform(size=30) > 0.5, 1.0, -1.0)
        sol = smo_binary(X, y)
        assert sol.converged
        assert kkt_report(X, y, sol) <= 1e-3 + 1e-9
        assert np.all((sol.alpha >= 0) & (sol.alpha <= 1))
        assert abs(float(sol.alpha @ y)) <= 1e-9


def test_scaling_invariance():
    rng = np.random.default_rng(8)
    for _ in range(10):
        X = rng.normal(size=(30, 4))
        labels = [str(v) for v in rng.integers(0, 3, 30)]
        test = rng.normal(size=(10, 4))
        a = train_smo(make_ds(X, labels)).predict_matrix(test)
        b = train_smo(make_ds(X * 10.0, labels)).predict_matrix(test * 10.0)
        assert a == b


def test_training_preconditions():
    with pytest.raises(TrainingError):
        train_smo(make_ds([[1], [2]], ["a", "a"]))
    ds = LabeledDataset(["f"], ["x", "y"], [[1], [2]], ["a", "a"], ["a", "b"])
    with pytest.raises(TrainingError):
        train_smo(ds)


def test_impute_and_constant_columns():
    ds = make_ds([[1, 7, np.nan], [3, 7, 4.0], [5, 7, 8.0], [7, 7, np.nan]], list("aabb"))
    m = train_smo(ds)
    np.testing.assert_allclose(m.means, [4, 7, 6])
    Z = m.transform([[np.nan, 100, np.nan]])
    np.testing.assert_allclose(Z, [[0.5, 0.0, 0.5]])


def hand_model(w, bias, classes=("pos", "neg")):
    pairs = [PairClassifier(a, b, np.array(w, float), bias) for a, b in itertools.combinations(classes, 2)]
    n = len(w)
    return SvmModel([f"f{j}" for j in range(n)], list(classes), np.zeros(n), np.ones(n), np.zeros(n), pairs)


def test_prediction_sign_and_tie_rules():
    m = hand_model([1, 0], 0.0)
    assert predict(m, {"f0": 2, "f1": 0})[0] == "pos"
    assert predict(m, {"f0": -2, "f1": 0})[0] == "neg"
    # exactly on the hyperplane -> first class of the pair
    assert predict(m, {"f0": 0, "f1": 5})[0] == "pos"
    m3 = hand_model([0, 0], 0.0, ("a", "b", "c"))
    label, votes = predict(m3, {"f0": 1, "f1": 1})
    assert votes == {"a": 2, "b": 1, "c": 0} and label == "a"
    m3.pairwise = [PairClassifier("a", "b", np.zeros(2), -1.0), PairClassifier("a", "c", np.zeros(2), 1.0),
                   PairClassifier("b", "c", np.zeros(2), -1.0)]
    label, votes = predict(m3, {"f0": 0, "f1": 0})
    assert votes == {"a": 1, "b": 1, "c": 1} and label == "a"


def test_model_round_trip(tmp_path):
    rng = np.random.default_rng(1)
    X = rng.normal(size=(40, 3))
    labels = [str(v) for v in rng.integers(0, 3, 40)]
    m = train_smo(make_ds(X, labels), meta={"lang": "en", "mode": "all"})
    path = tmp_path / "model.txt"
    save_model(m, path)
    m2 = load_model(path)
    queries = rng.normal(size=(100, 3))
    assert m.predict_matrix(queries) == m2.predict_matrix(queries)
    assert m2.meta == {"lang": "en", "mode": "all"}
    assert m2.params == m.params
    v = {"f0": 1.0, "f1": None, "f2": 0.5, "extra": 99.0}
    assert predict(m, v) == predict(m2, v)


def test_truncated_or_wrong_version_model(tmp_path):
    m = train_smo(make_ds([[0, 0], [0, 1], [5, 5], [5, 6]], list("AABB")))
    path = tmp_path / "model.txt"
    save_model(m, path)
    text = path.read_text()
    for cut in (len(text) // 2, len(text) - 5, 10):
        path.write_text(text[:cut])
        with pytest.raises(ModelFormatError):
            load_model(path)
    path.write_text(text.replace("azter-svm 1", "azter-svm 99"))
    with pytest.raises(ModelFormatError, match="version"):
        load_model(path)
    with pytest.raises(ModelFormatError):
        load_model(tmp_path / "missing.txt")


# ---------------------------------------------------------------- folds and evaluation

def test_fold_examples():
    ds = make_ds(np.zeros((400, 1)), ["a"] * 200 + ["b"] * 200)
    folds = stratified_folds(ds, 10, 3)
    for f in folds:
        assert Counter(ds.labels[i] for i in f) == {"a": 20, "b": 20}
    ds = make_ds(np.zeros((8, 1)), ["a"] * 4 + ["b"] * 4)
    assert all(len(f) == 4 for f in stratified_folds(ds, 2, 0))
    assert stratified_folds(ds, 2, 5) == stratified_folds(ds, 2, 5)
    with pytest.raises(DatasetError):
        stratified_folds(make_ds(np.zeros((5, 1)), ["a"] * 3 + ["b"] * 2), 3, 0)


def test_fold_balance_on_random_configurations():
    rng = random.Random(17)
    for _ in range(100):
        k = rng.randint(2, 10)
        counts = [rng.randint(k, 4 * k + 7) for _ in range(rng.randint(2, 4))]
        labels = [str(c) for c, n in enumerate(counts) for _ in range(n)]
        ds = make_ds(np.zeros((len(labels), 1)), labels)
        folds = stratified_folds(ds, k, rng.randint(0, 1000))
        assert sorted(i for f in folds for i in f) == list(range(len(labels)))
        for c in ds.classes:
            per_fold = [sum(ds.labels[i] == c for i in f) for f in folds]
            assert max(per_fold) - min(per_fold) <= 1


def test_cross_validation_on_separable_data():
    rng = np.random.default_rng(2)
    X = np.vstack([rng.normal(0, 0.3, (30, 3)), rng.normal(5, 0.3, (30, 3))])
    ds = make_ds(X, ["a"] * 30 + ["b"] * 30)
    r = cross_validate(ds, 10, 4)
    assert r.accuracy == 100.0
    assert r.confusion.sum(axis=1).tolist() == [30, 30]
    assert r.accuracy == pytest.approx(100.0 * np.trace(r.confusion) / r.total)
    assert r.precision() == {"a": 1.0, "b": 1.0} and r.f1()["b"] == 1.0
    assert cross_validate(ds, 10, 4).predictions == r.predictions


def test_cross_validation_on_permuted_labels():
    rng = np.random.default_rng(12)
    X = rng.normal(size=(200, 5))
    labels = list(rng.permutation(["a"] * 100 + ["b"] * 100))
    r = cross_validate(make_ds(X, labels), 10, 1)
    assert 40.0 <= r.accuracy <= 60.0


def test_cv_statistics_come_from_training_folds_only():
    rng = np.random.default_rng(4)
    X = rng.normal(size=(40, 3))
    labels = ["a"] * 20 + ["b"] * 20
    ds = make_ds(X, labels)
    clean = cross_validate(ds, 5, 9)
    for fold_no, held in enumerate(clean.folds):
        poisoned = X.copy()
        poisoned[held] = 1e9
        poisoned[held[0], 0] = np.nan
        r = cross_validate(make_ds(poisoned, labels), 5, 9)
        assert r.folds == clean.folds
        a, b = clean.models[fold_no], r.models[fold_no]
        np.testing.assert_array_equal(a.mins, b.mins)
        np.testing.assert_array_equal(a.maxs, b.maxs)
        np.testing.assert_array_equal(a.means, b.means)


def test_cross_validation_with_selection():
    rng = np.random.default_rng(6)
    X = rng.normal(size=(40, 6))
    X[:20, 2] += 4
    ds = make_ds(X, ["a"] * 20 + ["b"] * 20)
    r = cross_validate(ds, 4, 0, top_k=2)
    assert all(len(s) == 2 and "f2" in s for s in r.selected)
    r = cross_validate(ds, 4, 0, top_k=1, select_on_full=True)
    assert all(s == ["f2"] for s in r.selected)


def test_holdout_counts():
    ds = make_ds(np.zeros((567, 1)), ["a"] * 189 + ["b"] * 189 + ["c"] * 189)
    train, test = holdout_split(ds, 0.8, 0)
    assert Counter(train.labels) == {"a": 152, "b": 152, "c": 152}
    assert Counter(test.labels) == {"a": 37, "b": 37, "c": 37}
    assert not set(train.doc_ids) & set(test.doc_ids)
    assert holdout_split(ds, 0.8, 0)[1].doc_ids == test.doc_ids
    ds = make_ds(np.zeros((400, 1)), ["a"] * 200 + ["b"] * 200)
    assert len(holdout_split(ds, 0.8, 0)[0]) == 320
    with pytest.raises(DatasetError):
        holdout_split(ds, 1.0, 0)


def test_holdout_evaluation():
    rng = np.random.default_rng(2)
    X = np.vstack([rng.normal(0, 0.3, (30, 2)), rng.normal(5, 0.3, (30, 2))])
    r = evaluate_holdout(make_ds(X, ["a"] * 30 + ["b"] * 30), 0.8, 1)
    assert r.total == 12 and r.accuracy == 100.0


# ---------------------------------------------------------------- intersection and datasets

def test_feature_intersection():
    a = ["num_words", "mtld", "flesch_reading_ease", "num_a1_words"]
    b = ["mtld", "num_words", "num_a1_words"]
    c = ["mtld", "num_words"]
    assert feature_intersection([a, b, c]) == ["num_words", "mtld"]
    assert feature_intersection([a, b, c], "ratios") == ["mtld"]
    assert feature_intersection([a, a]) == a
    assert feature_intersection([a, ["x"]]) == []
    assert feature_intersection([set(a), set(b)]) == CATALOG.order(set(a) & set(b))
    with pytest.raises(ValueError):
        feature_intersection([a])


def test_shipped_intersection_excludes_cefr_and_readability(profiles):
    shared = feature_intersection([profiles[l].available_features for l in ("en", "es", "eu")])
    dropped = set(CATALOG.ids) - set(shared)
    expected = {d.id for d in CATALOG if "cefr" in d.resource_deps or d.group == "readability"}
    assert dropped == expected


def test_dataset_readers(tmp_path):
    (tmp_path / "f.csv").write_text("doc_id,a,b\nx,1,\ny,2,3.5\n")
    (tmp_path / "l.tsv").write_text("doc_id\tlabel\nx\tsimple\ny\tcomplex\n")
    ds = load_dataset(tmp_path / "f.csv", tmp_path / "l.tsv")
    assert ds.feature_ids == ["a", "b"] and ds.classes == ["simple", "complex"]
    assert ds.rows[0] == ("x", [1.0, None], "simple")
    (tmp_path / "l2.tsv").write_text("x\tsimple\n")
    with pytest.raises(DatasetError, match="'y'"):
        load_dataset(tmp_path / "f.csv", tmp_path / "l2.tsv")
    (tmp_path / "bad.csv").write_text("doc_id,a\nx,1,2\n")
    with pytest.raises(DatasetError, match="line 2"):
        load_dataset(tmp_path / "bad.csv", tmp_path / "l.tsv")


def test_labels_from_class_directories(tmp_path):
    for label, names in {"easy": ["1", "2"], "hard": ["1", "3"]}.items():
        (tmp_path / label).mkdir()
        for n in names:
            (tmp_path / label / f"{n}.conllu").write_text("")
    labels = read_labels(tmp_path)
    assert labels["easy/1"] == "easy" and labels["hard/1"] == "hard"
    assert labels["2"] == "easy" and labels["3"] == "hard"
    assert "1" not in labels
