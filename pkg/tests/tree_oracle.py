"""Brute-force decision-tree oracle used to cross-check the real trainer.

Everything here is deliberately independent of the package under test: no
numpy, no shared helpers, exact Fraction arithmetic throughout.  The oracle
enumerates every (feature, threshold) candidate at every node and picks the
split with the exactly-minimal weighted Gini impurity.

Shared split conventions (the trainer must match these bit for bit):

* candidate thresholds are float64 midpoints (a + b) / 2 of consecutive
  distinct sorted feature values, clamped down to a when rounding pushes the
  midpoint up to b;
* the split predicate is x <= threshold, left child first;
* both children must contain at least min_samples_leaf rows;
* zero-gain splits are taken; a node becomes a leaf only on purity, on the
  depth limit, or when no candidate exists;
* ties on impurity are broken by lowest feature index, then lowest threshold.
"""

from fractions import Fraction


def oracle_gini(counts):
    """Gini impurity 1 - sum((c/n)^2) as an exact Fraction; 0 for n == 0."""
    n = sum(counts)
    if n == 0:
        return Fraction(0)
    return 1 - sum(Fraction(c, n) ** 2 for c in counts)


def _class_counts(y, n_classes):
    counts = [0] * n_classes
    for label in y:
        counts[label] += 1
    return counts


def _candidate_thresholds(values):
    """Midpoints between consecutive distinct sorted values, clamped down."""
    distinct = sorted(set(float(v) for v in values))
    out = []
    for a, b in zip(distinct, distinct[1:]):
        t = (a + b) / 2.0
        if t >= b:
            t = a
        out.append(t)
    return out


def oracle_best_split(X, y, n_classes, min_samples_leaf):
    """Exhaustively score every candidate split with exact arithmetic.

    Returns (feature, threshold, weighted_gini) or None when no candidate
    satisfies the leaf-size constraint.  X is a sequence of rows.
    """
    n = len(y)
    n_features = len(X[0]) if n else 0
    best = None  # (weighted_gini, feature, threshold)
    for f in range(n_features):
        column = [float(row[f]) for row in X]
        for t in _candidate_thresholds(column):
            left_y = [y[i] for i in range(n) if column[i] <= t]
            right_y = [y[i] for i in range(n) if column[i] > t]
            if len(left_y) < min_samples_leaf or len(right_y) < min_samples_leaf:
                continue
            lc = _class_counts(left_y, n_classes)
            rc = _class_counts(right_y, n_classes)
            wg = (
                Fraction(len(left_y), n) * oracle_gini(lc)
                + Fraction(len(right_y), n) * oracle_gini(rc)
            )
            # Strict inequality keeps the earliest (feature, threshold) on ties.
            if best is None or wg < best[0]:
                best = (wg, f, t)
    if best is None:
        return None
    return best[1], best[2], best[0]


def oracle_tree(X, y, n_classes, min_samples_leaf=1, max_depth=None, depth=0):
    """Recursive exhaustive tree build.

    Returns nested dicts: internal nodes carry feature/threshold/left/right,
    every node carries its class counts.  Children are built left first so a
    preorder walk matches the trainer's node layout.
    """
    counts = _class_counts(y, n_classes)
    node = {"counts": counts}
    n = len(y)
    pure = any(c == n for c in counts)
    if n < 2 or pure or (max_depth is not None and depth >= max_depth):
        return node
    split = oracle_best_split(X, y, n_classes, min_samples_leaf)
    if split is None:
        return node
    feature, threshold, _ = split
    left_idx = [i for i in range(n) if float(X[i][feature]) <= threshold]
    right_idx = [i for i in range(n) if float(X[i][feature]) > threshold]
    node["feature"] = feature
    node["threshold"] = threshold
    node["left"] = oracle_tree(
        [X[i] for i in left_idx], [y[i] for i in left_idx],
        n_classes, min_samples_leaf, max_depth, depth + 1,
    )
    node["right"] = oracle_tree(
        [X[i] for i in right_idx], [y[i] for i in right_idx],
        n_classes, min_samples_leaf, max_depth, depth + 1,
    )
    return node


def oracle_node_count(node):
    if "feature" not in node:
        return 1
    return 1 + oracle_node_count(node["left"]) + oracle_node_count(node["right"])
