"""Acceptance gate: nine end-to-end criteria, one test each.

Each test states a concrete numeric contract and a runtime budget; the
terminal summary (see conftest) prints one PASS/FAIL line per criterion.
"""

import json
import time

import numpy as np
import pytest

from offlang.balance import BalancePlan, apply_plan
from offlang.cli import main
from offlang.corpus import Corpus, Tweet, WeakLabel, class_distribution
from offlang.emolex import emotion_counts
from offlang.features import fit_vocabulary, tfidf
from offlang.forest import ForestParams, grid_search, kfold, train_tree
from offlang.metrics import confusion, majority_baseline, scores
from offlang.rng import TAG_TREE, stream

from tree_oracle import oracle_tree


def test_criterion_1():
    """Evaluation fixture: accuracy 0.9238 and macro-F1 0.8118 from the
    binary confusion matrix [[278, 16], [9, 25]]."""
    t0 = time.perf_counter()
    gold = ["NOT"] * 294 + ["OFF"] * 34
    pred = (["NOT"] * 278 + ["OFF"] * 16) + (["NOT"] * 9 + ["OFF"] * 25)
    mat = confusion(gold, pred, ("NOT", "OFF"))
    assert mat.tolist() == [[278, 16], [9, 25]]
    sc = scores(mat, ("NOT", "OFF"))
    assert sc.accuracy == pytest.approx(0.9238, abs=1e-4)
    assert sc.macro_f1 == pytest.approx(0.8118, abs=1e-4)
    assert time.perf_counter() - t0 < 1.0


def test_criterion_2():
    """Majority baseline at 0.869 NOT prevalence scores macro-F1 0.465."""
    t0 = time.perf_counter()
    labels = ["NOT"] * 869 + ["OFF"] * 131
    baseline = majority_baseline(labels, ("NOT", "OFF"))
    assert baseline == "NOT"
    sc = scores(confusion(labels, [baseline] * len(labels), ("NOT", "OFF")),
                ("NOT", "OFF"))
    assert sc.macro_f1 == pytest.approx(0.465, abs=1e-3)
    assert time.perf_counter() - t0 < 1.0


def test_criterion_3():
    """Balancing: base {IND 2407, GRP 1074, OTH 395} plus pool additions
    {GRP 237, OTH 300} oversampled to target 3876 gives exactly 3,876 rows
    per class and 11,628 in total."""
    t0 = time.perf_counter()

    def tw(tid, label_c):
        return Tweet(id=tid, text=f"text {tid}", label_a="OFF", label_b="TIN",
                     label_c=label_c)

    base = Corpus(tweets=tuple(
        [tw(f"i{k}", "IND") for k in range(2407)]
        + [tw(f"g{k}", "GRP") for k in range(1074)]
        + [tw(f"o{k}", "OTH") for k in range(395)]))
    pool = Corpus(tweets=tuple(
        [tw(f"pg{k}", "GRP") for k in range(237)]
        + [tw(f"po{k}", "OTH") for k in range(300)]))
    weak = {t.id: WeakLabel(id=t.id, confidence=0.9, std=0.05) for t in pool}
    plan = BalancePlan(level="C", target_per_class=3876, seed=42,
                       additions={"GRP": 237, "OTH": 300})
    report = apply_plan(base, pool, weak, plan)
    assert report.after == {"IND": 3876, "GRP": 3876, "OTH": 3876}
    assert len(report.corpus) == 11628
    assert class_distribution(report.corpus, "C") == report.after
    assert time.perf_counter() - t0 < 5.0


def _tree_equals_oracle(tree, node, i=0):
    assert list(tree.counts[i]) == node["counts"]
    if "feature" not in node:
        assert tree.feature[i] == -1
        return i + 1
    assert tree.feature[i] == node["feature"]
    assert float(tree.threshold[i]) == node["threshold"]
    j = _tree_equals_oracle(tree, node["left"], i + 1)
    assert tree.left[i] == i + 1 and tree.right[i] == j
    return _tree_equals_oracle(tree, node["right"], j)


def test_criterion_4():
    """Tree trainer agrees with the brute-force exhaustive-split oracle at
    every node on 200 random datasets (<=16 samples, <=3 features)."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(20240915)
    params = ForestParams(n_trees=1, max_features="all")
    for trial in range(200):
        n = int(rng.integers(2, 17))
        d = int(rng.integers(1, 4))
        X = rng.integers(0, 5, size=(n, d)).astype(np.float64)
        y = rng.integers(0, 3, size=n)
        tree = train_tree(X, y, params, stream(0, TAG_TREE, trial), n_classes=3)
        expected = oracle_tree(X.tolist(), y.tolist(), 3)
        consumed = _tree_equals_oracle(tree, expected)
        assert consumed == len(tree.feature)
    assert time.perf_counter() - t0 < 30.0


def test_criterion_5():
    """TF-IDF matches hand arithmetic on the two-document fixture to 1e-9,
    and every transformed vector is unit length to 1e-9."""
    import math
    t0 = time.perf_counter()
    vocab = fit_vocabulary([["good", "dog"], ["dog"]], min_df=1)
    vec = dict(tfidf(["good", "dog"], vocab))
    w_good = math.log(3 / 2) + 1.0     # idf of a term in 1 of 2 docs
    norm = math.sqrt(w_good * w_good + 1.0)
    assert vec[0] == pytest.approx(w_good / norm, abs=1e-9)
    assert vec[1] == pytest.approx(1.0 / norm, abs=1e-9)

    rng = np.random.default_rng(5)
    words = [f"w{k}" for k in range(30)]
    docs = [[words[int(j)] for j in rng.integers(0, 30, size=rng.integers(1, 21))]
            for _ in range(1000)]
    vocab = fit_vocabulary(docs, min_df=1)
    for doc in docs:
        entries = tfidf(doc, vocab)
        length = math.sqrt(sum(w * w for _, w in entries))
        assert length == pytest.approx(1.0, abs=1e-9)
    assert time.perf_counter() - t0 < 5.0


def test_criterion_6(big_corpus_dir, capsys):
    """Training twice with the same config and seed, once with 1 thread and
    once with 8, produces byte-identical model files on a 3,000-row corpus."""
    t0 = time.perf_counter()
    conf = big_corpus_dir / "train.conf"
    model = big_corpus_dir / "model.bin"
    assert main(["train", str(conf), "--threads", "1"]) == 0
    first = model.read_bytes()
    first_meta = (big_corpus_dir / "model.bin.meta.json").read_bytes()
    first_manifest = (big_corpus_dir / "model.bin.manifest.json").read_bytes()
    assert main(["train", str(conf), "--threads", "8"]) == 0
    capsys.readouterr()
    assert model.read_bytes() == first
    assert (big_corpus_dir / "model.bin.meta.json").read_bytes() == first_meta
    assert (big_corpus_dir / "model.bin.manifest.json").read_bytes() == first_manifest
    assert time.perf_counter() - t0 < 120.0


def test_criterion_7():
    """Fold sizes within 1 overall and per class; a rigged grid selects the
    constructed winner."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(3)
    for sizes in ((7, 6, 4), (5, 5), (23, 11, 3)):
        y = np.concatenate([np.full(s, i) for i, s in enumerate(sizes)])
        y = rng.permutation(y)
        for k in (2, 3, 4):
            folds = kfold(len(y), k, y, seed=int(rng.integers(2 ** 32)))
            seen = []
            fold_sizes = []
            for train, test in folds:
                assert not set(train) & set(test)
                assert set(train) | set(test) == set(range(len(y)))
                seen.extend(test)
                fold_sizes.append(len(test))
            assert sorted(seen) == list(range(len(y)))
            assert max(fold_sizes) - min(fold_sizes) <= 1
            for value in np.unique(y):
                per_fold = [int((y[test] == value).sum()) for _, test in folds]
                assert max(per_fold) - min(per_fold) <= 1

    # Exclusive-or labels: a depth-1 stump cannot fit them, an unbounded
    # tree can, so the grid must pick the unbounded setting.
    X = np.array([[a, b] for a in (0.0, 1.0) for b in (0.0, 1.0)] * 10)
    y = ["OFF" if int(r[0]) != int(r[1]) else "NOT" for r in X]
    stump = ForestParams(n_trees=9, max_depth=1, max_features="all")
    full = ForestParams(n_trees=9, max_depth=None, max_features="all")
    result = grid_search([stump, full], X, y, k=4, seed=5)
    assert result.best is full
    assert time.perf_counter() - t0 < 60.0


def test_criterion_8():
    """Per-1000-posts emotion rates are exactly unchanged when every post is
    duplicated, and a hand-computed fixture matches exactly."""
    lexicon = {"hate": frozenset({"anger", "negative"}),
               "joyful": frozenset({"joy"})}

    def post(tid, text, label):
        return Tweet(id=tid, text=text, label_a=label, label_b=None,
                     label_c=None)

    base = (post("1", "hate hate everything", "OFF"),
            post("2", "so joyful today", "NOT"),
            post("3", "hate this", "OFF"),
            post("4", "plain words", "NOT"))
    doubled = base + tuple(
        Tweet(id=t.id + "d", text=t.text, label_a=t.label_a, label_b=t.label_b,
              label_c=t.label_c) for t in base)

    one = emotion_counts(Corpus(tweets=base), lexicon, basis="per_1000_posts")
    two = emotion_counts(Corpus(tweets=doubled), lexicon, basis="per_1000_posts")
    for p1, p2 in zip(one, two):
        assert p1.label == p2.label
        assert p1.normalized == p2.normalized   # exact, no tolerance

    by_label = {p.label: p for p in one}
    # OFF: 3 anger hits over 2 posts -> 1500 per 1000 posts, exactly.
    assert by_label["OFF"].normalized["anger"] == 3 / 2 * 1000.0
    assert by_label["OFF"].normalized["negative"] == 3 / 2 * 1000.0
    assert by_label["OFF"].normalized["joy"] == 0.0
    # NOT: 1 joy hit over 2 posts -> 500, exactly.
    assert by_label["NOT"].normalized["joy"] == 1 / 2 * 1000.0


def test_criterion_9(big_corpus_dir, capsys, tmp_path):
    """End-to-end 10-fold cross-validation with default forest parameters
    reaches mean macro-F1 >= 0.95 on a separable 3,000-row corpus."""
    conf = tmp_path / "cv.conf"
    conf.write_text(
        (big_corpus_dir / "train.conf").read_text(encoding="utf-8")
        + f"out.manifest={tmp_path / 'cv.manifest.json'}\n",
        encoding="utf-8")
    assert main(["cv", str(conf), "--k", "10"]) == 0
    capsys.readouterr()
    payload = json.loads((tmp_path / "cv.manifest.json").read_text(encoding="utf-8"))
    assert payload["cv"]["k"] == 10
    assert len(payload["cv"]["fold_macro_f1"]) == 10
    assert payload["cv"]["mean_macro_f1"] >= 0.95
