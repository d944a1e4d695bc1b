"""From-scratch random forest over Gini-impurity decision trees, plus
stratified k-fold cross-validation and grid search.

Split selection is exact: a vectorized float64 scan finds the near-minimal
weighted-Gini candidates, then every candidate within a small margin of the
float minimum is re-scored with exact integer/Fraction arithmetic.  The
winner is the exact minimum; ties break to the lowest feature index, then
the lowest threshold.  Candidate thresholds are float64 midpoints between
consecutive distinct sorted values (clamped down to the lower value when
rounding reaches the upper), the predicate is x <= threshold, children must
each hold min_samples_leaf rows, and zero-gain splits are taken; a node
becomes a leaf on purity, the depth limit, or no candidates.

Determinism: every random draw comes from a named stream derived from the
seed (rng.stream), one stream per tree and per CV fold, so results are
bit-identical regardless of thread count.  Trees are laid out in preorder
(node, left subtree, right subtree) and the per-node feature subset is
drawn exactly once, at the moment the node attempts to split (no draw when
the subset is every feature).
"""

import json
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import ModelTruncatedError, ModelVersionError, ValidationError
from .corpus import LEVELS
from .rng import MASK64, TAG_FOLD, TAG_SHUFFLE, TAG_TREE, stream

MAX_FEATURES_CHOICES = ("sqrt", "all")

_MAGIC = b"RFMF"
_VERSION = 1


def gini(counts) -> float:
    """Gini impurity 1 - sum((c/n)^2); an empty node has impurity 0."""
    counts = [int(c) for c in counts]
    n = sum(counts)
    if n == 0:
        return 0.0
    return 1.0 - sum((c / n) ** 2 for c in counts)


@dataclass(frozen=True)
class ForestParams:
    n_trees: int = 100
    max_depth: int | None = None
    min_samples_leaf: int = 1
    max_features: str | float = "sqrt"
    seed: int = 0
    bootstrap: bool = True

    def __post_init__(self):
        if self.n_trees < 1:
            raise ValidationError(f"n_trees must be >= 1, got {self.n_trees}")
        if self.max_depth is not None and self.max_depth < 1:
            raise ValidationError(f"max_depth must be >= 1 or None, got {self.max_depth}")
        if self.min_samples_leaf < 1:
            raise ValidationError(
                f"min_samples_leaf must be >= 1, got {self.min_samples_leaf}")
        mf = self.max_features
        if isinstance(mf, str):
            if mf not in MAX_FEATURES_CHOICES:
                raise ValidationError(
                    f"max_features must be one of {', '.join(MAX_FEATURES_CHOICES)} "
                    f"or a fraction in (0, 1], got {mf!r}")
        elif not (isinstance(mf, (int, float)) and 0.0 < float(mf) <= 1.0):
            raise ValidationError(f"max_features fraction must be in (0, 1], got {mf!r}")

    def to_jsonable(self) -> dict:
        return {"n_trees": self.n_trees, "max_depth": self.max_depth,
                "min_samples_leaf": self.min_samples_leaf,
                "max_features": self.max_features, "seed": self.seed,
                "bootstrap": self.bootstrap}


@dataclass
class Tree:
    """Flat preorder node arrays; feature == -1 marks a leaf."""
    feature: np.ndarray    # int32
    threshold: np.ndarray  # float64
    left: np.ndarray       # int32
    right: np.ndarray      # int32
    counts: np.ndarray     # (n_nodes, n_classes) int64


@dataclass
class ForestModel:
    classes: tuple[str, ...]
    params: ForestParams
    n_features: int
    trees: list[Tree]


def _n_subset_features(params: ForestParams, n_features: int) -> int:
    if params.max_features == "all":
        return n_features
    if params.max_features == "sqrt":
        return max(1, int(np.sqrt(n_features)))
    return max(1, int(float(params.max_features) * n_features))


def _exact_q(left_counts, total_counts, n_left, n_right) -> Fraction:
    """Exact split quality sum(c^2)/n summed over both sides.

    For a fixed node, minimizing weighted Gini is equivalent to maximizing
    this quantity, and it stays in integer arithmetic.
    """
    sl = sum(int(c) * int(c) for c in left_counts)
    sr = sum(int(t - c) * int(t - c) for t, c in zip(total_counts, left_counts))
    return Fraction(sl, n_left) + Fraction(sr, n_right)


def _best_split(X, y, idx, feat_ids, n_classes, min_leaf):
    """Exact-minimum weighted-Gini split over the given features.

    Returns (feature, threshold) or None.  Two passes: a float64 scan for
    the near-minimal score, then exact re-scoring of every candidate within
    the float margin.
    """
    n = len(idx)
    onehot_rows = np.eye(n_classes, dtype=np.int64)[y[idx]]
    total = onehot_rows.sum(axis=0)

    per_feature = []
    fmin = np.inf
    for f in feat_ids:
        x = X[idx, f]
        order = np.argsort(x, kind="stable")
        xs = x[order]
        if xs[0] == xs[-1]:
            continue
        cum = onehot_rows[order].cumsum(axis=0)
        pos = np.nonzero(xs[1:] > xs[:-1])[0] + 1
        pos = pos[(pos >= min_leaf) & (n - pos >= min_leaf)]
        if pos.size == 0:
            continue
        left_counts = cum[pos - 1]
        n_left = pos.astype(np.float64)
        n_right = n - n_left
        sl = np.square(left_counts).sum(axis=1).astype(np.float64)
        sr = np.square(total[np.newaxis, :] - left_counts).sum(axis=1).astype(np.float64)
        score = (n_left - sl / n_left) + (n_right - sr / n_right)  # n * weighted Gini
        per_feature.append((int(f), xs, pos, left_counts, score))
        fmin = min(fmin, float(score.min()))

    if not per_feature:
        return None

    margin = fmin + 1e-9 * max(1.0, float(n))
    best_q = None
    best = None
    for f, xs, pos, left_counts, score in per_feature:
        for j in np.nonzero(score <= margin)[0]:
            p = int(pos[j])
            lo = float(xs[p - 1])
            hi = float(xs[p])
            t = (lo + hi) / 2.0
            if t >= hi:
                t = lo
            q = _exact_q(left_counts[j], total, p, n - p)
            # Strict improvement keeps the lowest feature, lowest threshold.
            if best_q is None or q > best_q:
                best_q = q
                best = (f, t)
    return best


def train_tree(X, y, params: ForestParams, rng, n_classes: int | None = None) -> Tree:
    """Grow one tree on (X, y); y holds class codes 0..k-1.

    `rng` supplies the per-node feature subsets, consumed in preorder.
    Bootstrap resampling is the forest's job, not this function's.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if X.ndim != 2 or len(X) != len(y):
        raise ValidationError("X must be 2-D and row-aligned with y")
    if len(y) == 0:
        raise ValidationError("cannot train a tree on no rows")
    k = int(n_classes) if n_classes is not None else int(y.max()) + 1
    n_features = X.shape[1]
    m = _n_subset_features(params, n_features)

    feature: list[int] = []
    threshold: list[float] = []
    left: list[int] = []
    right: list[int] = []
    counts: list[np.ndarray] = []

    def new_node(idx) -> int:
        node = len(feature)
        feature.append(-1)
        threshold.append(0.0)
        left.append(-1)
        right.append(-1)
        counts.append(np.bincount(y[idx], minlength=k).astype(np.int64))
        return node

    # Nodes are allocated when popped and the right child is pushed first,
    # so indices and RNG draws both follow preorder.
    stack = [(np.arange(len(y), dtype=np.int64), 0, -1, False)]
    while stack:
        idx, depth, parent, is_right = stack.pop()
        node = new_node(idx)
        if parent >= 0:
            if is_right:
                right[parent] = node
            else:
                left[parent] = node
        n = len(idx)
        if n < 2 or int(counts[node].max()) == n:
            continue
        if params.max_depth is not None and depth >= params.max_depth:
            continue
        if m < n_features:
            feats = np.sort(rng.choice(n_features, size=m, replace=False))
        else:
            feats = np.arange(n_features)
        split = _best_split(X, y, idx, feats, k, params.min_samples_leaf)
        if split is None:
            continue
        f, t = split
        go_left = X[idx, f] <= t
        feature[node] = f
        threshold[node] = t
        stack.append((idx[~go_left], depth + 1, node, True))
        stack.append((idx[go_left], depth + 1, node, False))

    return Tree(
        feature=np.asarray(feature, dtype=np.int32),
        threshold=np.asarray(threshold, dtype=np.float64),
        left=np.asarray(left, dtype=np.int32),
        right=np.asarray(right, dtype=np.int32),
        counts=np.vstack(counts),
    )


# ---------------------------------------------------------------------------
# Forest


def _as_matrix(X) -> np.ndarray:
    if isinstance(X, np.ndarray):
        return np.asarray(X, dtype=np.float64)
    seq = list(X)
    if seq and hasattr(seq[0], "to_dense"):
        from .features import N_SURFACE, feature_matrix
        width = max(max((i for i, _ in fv.sparse), default=-1) for fv in seq) + 1
        return feature_matrix(seq, width)
    return np.asarray(seq, dtype=np.float64)


def _canonical_classes(labels) -> tuple[str, ...]:
    present = set(labels)
    for classes in LEVELS.values():
        if present <= set(classes):
            return classes
    return tuple(sorted(present))


def _encode_labels(y, classes) -> np.ndarray:
    index = {c: i for i, c in enumerate(classes)}
    try:
        return np.asarray([index[label] for label in y], dtype=np.int64)
    except KeyError as exc:
        raise ValidationError(f"label {exc.args[0]!r} not in class list {list(classes)}")


def train_forest(X, y, params: ForestParams, classes=None, threads: int = 1) -> ForestModel:
    """Train a bagged forest of params.n_trees trees.

    `y` holds class labels; `classes` fixes their order (default: the
    canonical level order when the labels all belong to one annotation
    level, else sorted).  Each tree draws its bootstrap sample and feature
    subsets from its own seed-derived stream, so any `threads` value yields
    the identical model.
    """
    X = _as_matrix(X)
    y = list(y)
    if len(X) != len(y):
        raise ValidationError("X and y differ in length")
    if not y:
        raise ValidationError("cannot train on an empty dataset")
    classes = tuple(classes) if classes is not None else _canonical_classes(y)
    codes = _encode_labels(y, classes)
    n = len(y)

    def build(i: int) -> Tree:
        tree_rng = stream(params.seed, TAG_TREE, i)
        if params.bootstrap:
            sample = tree_rng.integers(0, n, size=n)
        else:
            sample = np.arange(n, dtype=np.int64)
        return train_tree(X[sample], codes[sample], params, tree_rng,
                          n_classes=len(classes))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            trees = list(pool.map(build, range(params.n_trees)))
    else:
        trees = [build(i) for i in range(params.n_trees)]
    return ForestModel(classes=classes, params=params,
                       n_features=X.shape[1], trees=trees)


def _tree_proba(tree: Tree, X: np.ndarray) -> np.ndarray:
    node = np.zeros(len(X), dtype=np.int64)
    while True:
        feat = tree.feature[node]
        active = np.nonzero(feat >= 0)[0]
        if active.size == 0:
            break
        cur = node[active]
        go_left = X[active, feat[active]] <= tree.threshold[cur]
        node[active] = np.where(go_left, tree.left[cur], tree.right[cur])
    leaf_counts = tree.counts[node].astype(np.float64)
    return leaf_counts / leaf_counts.sum(axis=1, keepdims=True)


def predict_proba(model: ForestModel, X) -> np.ndarray:
    """Class-frequency estimates: mean of the leaf distributions over trees,
    accumulated in tree order (deterministic)."""
    X = _as_matrix(X)
    if X.ndim != 2 or X.shape[1] != model.n_features:
        raise ValidationError(
            f"expected {model.n_features} features, got {X.shape[1] if X.ndim == 2 else 'non-2D'}")
    acc = np.zeros((len(X), len(model.classes)), dtype=np.float64)
    for tree in model.trees:
        acc += _tree_proba(tree, X)
    return acc / len(model.trees)


def predict(model: ForestModel, X) -> list[str]:
    """Argmax of predict_proba; probability ties go to the lowest class index."""
    proba = predict_proba(model, X)
    return [model.classes[i] for i in np.argmax(proba, axis=1)]


# ---------------------------------------------------------------------------
# Cross-validation and grid search


def kfold(n: int, k: int, y=None, seed: int = 0, stratified: bool = True):
    """Deterministic k-fold split of range(n).

    Returns k (train_indices, test_indices) pairs of sorted int64 arrays.
    Fold sizes differ by at most one overall; with stratification the
    per-class fold counts also differ by at most one (extras rotate across
    folds so both guarantees hold at once).
    """
    if k < 2:
        raise ValidationError(f"k must be >= 2, got {k}")
    if k > n:
        raise ValidationError(f"k={k} exceeds the {n} available rows")
    rng = stream(seed, TAG_SHUFFLE)
    folds: list[list[int]] = [[] for _ in range(k)]
    if not stratified:
        perm = rng.permutation(n)
        sizes = [n // k + (1 if i < n % k else 0) for i in range(k)]
        start = 0
        for i, size in enumerate(sizes):
            folds[i] = list(perm[start:start + size])
            start += size
    else:
        if y is None:
            raise ValidationError("stratified k-fold needs labels")
        y = np.asarray(y)
        if len(y) != n:
            raise ValidationError("labels must align with n")
        offset = 0
        for value in np.unique(y):
            members = rng.permutation(np.nonzero(y == value)[0])
            base, extra = divmod(len(members), k)
            start = 0
            for j in range(k):
                fold = (offset + j) % k
                size = base + (1 if j < extra else 0)
                folds[fold].extend(members[start:start + size])
                start += size
            offset = (offset + extra) % k
    out = []
    everything = set(range(n))
    for fold in folds:
        test = np.asarray(sorted(fold), dtype=np.int64)
        train = np.asarray(sorted(everything - set(fold)), dtype=np.int64)
        out.append((train, test))
    return out


@dataclass(frozen=True)
class CVResult:
    fold_scores: tuple[float, ...]
    mean: float
    std: float  # population std (ddof=0)


def _fold_seed(seed: int, fold: int) -> int:
    ss = np.random.SeedSequence([int(seed) & MASK64, TAG_FOLD, fold])
    return int(ss.generate_state(1, np.uint64)[0])


def cross_validate(X, y, params: ForestParams, k: int = 10, seed: int = 0,
                   classes=None, threads: int = 1) -> CVResult:
    """Stratified k-fold macro-F1 for one parameter setting.

    Fold membership and per-fold training seeds derive from `seed` (the
    seed inside `params` is ignored here) so every grid point is scored on
    identical folds.
    """
    X = _as_matrix(X)
    y = list(y)
    classes = tuple(classes) if classes is not None else _canonical_classes(y)
    codes = _encode_labels(y, classes)
    from .metrics import confusion, scores as compute_scores
    fold_scores = []
    for i, (train_idx, test_idx) in enumerate(kfold(len(y), k, codes, seed)):
        fold_params = replace(params, seed=_fold_seed(seed, i))
        model = train_forest(X[train_idx], [y[j] for j in train_idx], fold_params,
                             classes=classes, threads=threads)
        pred = predict(model, X[test_idx])
        gold = [y[j] for j in test_idx]
        fold_scores.append(compute_scores(confusion(gold, pred, classes), classes).macro_f1)
    arr = np.asarray(fold_scores, dtype=np.float64)
    return CVResult(fold_scores=tuple(fold_scores),
                    mean=float(arr.mean()), std=float(arr.std(ddof=0)))


@dataclass(frozen=True)
class GridSearchResult:
    best: ForestParams
    results: tuple[tuple[ForestParams, CVResult], ...]


def grid_search(grid, X, y, k: int = 10, seed: int = 0, classes=None,
                threads: int = 1) -> GridSearchResult:
    """Cross-validate every grid point; the best mean macro-F1 wins and
    ties go to the earliest grid position."""
    grid = list(grid)
    if not grid:
        raise ValidationError("parameter grid is empty")
    results = []
    best = None
    best_mean = -1.0
    for params in grid:
        cv = cross_validate(X, y, params, k=k, seed=seed, classes=classes,
                            threads=threads)
        results.append((params, cv))
        if cv.mean > best_mean:
            best = params
            best_mean = cv.mean
    return GridSearchResult(best=best, results=tuple(results))


# ---------------------------------------------------------------------------
# Model serialization (little-endian throughout)


def save_model(model: ForestModel, dest) -> None:
    """Write the binary model format: magic, version, JSON header, then per
    tree a node count and five little-endian node arrays."""
    header = json.dumps({
        "classes": list(model.classes),
        "params": model.params.to_jsonable(),
        "n_features": model.n_features,
        "n_trees": len(model.trees),
    }, sort_keys=True).encode("utf-8")
    chunks = [_MAGIC, struct.pack("<II", _VERSION, len(header)), header]
    for tree in model.trees:
        chunks.append(struct.pack("<I", len(tree.feature)))
        chunks.append(tree.feature.astype("<i4").tobytes())
        chunks.append(tree.threshold.astype("<f8").tobytes())
        chunks.append(tree.left.astype("<i4").tobytes())
        chunks.append(tree.right.astype("<i4").tobytes())
        chunks.append(tree.counts.astype("<u4").tobytes())
    blob = b"".join(chunks)
    if hasattr(dest, "write"):
        dest.write(blob)
    else:
        Path(dest).write_bytes(blob)


def load_model(source) -> ForestModel:
    """Inverse of save_model.

    Raises ModelVersionError on a bad magic or unsupported version and
    ModelTruncatedError when the file ends before the declared payload.
    """
    if hasattr(source, "read"):
        blob = source.read()
    elif isinstance(source, bytes):
        blob = source
    else:
        blob = Path(source).read_bytes()

    view = memoryview(blob)
    pos = 0

    def take(nbytes: int, what: str) -> memoryview:
        nonlocal pos
        if pos + nbytes > len(view):
            raise ModelTruncatedError(
                f"model file truncated reading {what}: need {nbytes} bytes at "
                f"offset {pos}, file has {len(view)}")
        out = view[pos:pos + nbytes]
        pos += nbytes
        return out

    if len(view) < 4 or bytes(view[:4]) != _MAGIC:
        raise ModelVersionError("not a forest model file (bad magic)")
    pos = 4
    version, header_len = struct.unpack("<II", take(8, "version header"))
    if version != _VERSION:
        raise ModelVersionError(f"unsupported model format version {version}")
    try:
        header = json.loads(bytes(take(header_len, "JSON header")).decode("utf-8"))
        classes = tuple(header["classes"])
        params = ForestParams(**header["params"])
        n_features = int(header["n_features"])
        n_trees = int(header["n_trees"])
    except ModelTruncatedError:
        raise
    except Exception as exc:
        raise ModelVersionError(f"corrupt model header: {exc}") from None

    k = len(classes)
    trees = []
    for t in range(n_trees):
        (n_nodes,) = struct.unpack("<I", take(4, f"tree {t} node count"))
        feature = np.frombuffer(take(4 * n_nodes, f"tree {t} features"), dtype="<i4")
        thresh = np.frombuffer(take(8 * n_nodes, f"tree {t} thresholds"), dtype="<f8")
        left = np.frombuffer(take(4 * n_nodes, f"tree {t} left links"), dtype="<i4")
        right = np.frombuffer(take(4 * n_nodes, f"tree {t} right links"), dtype="<i4")
        counts = np.frombuffer(take(4 * n_nodes * k, f"tree {t} counts"), dtype="<u4")
        trees.append(Tree(
            feature=feature.astype(np.int32),
            threshold=thresh.astype(np.float64),
            left=left.astype(np.int32),
            right=right.astype(np.int32),
            counts=counts.reshape(n_nodes, k).astype(np.int64),
        ))
    if pos != len(view):
        raise ModelVersionError(
            f"{len(view) - pos} unexpected trailing bytes after model payload")
    return ForestModel(classes=classes, params=params, n_features=n_features,
                       trees=trees)
