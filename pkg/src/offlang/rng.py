"""Deterministic random-stream derivation.

All randomness in the package flows through named streams derived from one
user-supplied seed.  A stream is identified by (seed, tag, *indices); the
derivation uses numpy's SeedSequence so streams are independent and the
result never depends on draw order across streams, thread count, or
scheduling.  Tags are small fixed integers, one per purpose.
"""

import numpy as np

MASK64 = (1 << 64) - 1

# Stream tags.  Never renumber: model reproducibility depends on them.
TAG_TREE = 1        # (TAG_TREE, tree_index): bootstrap + feature subsets
TAG_FOLD = 2        # (TAG_FOLD, fold_index): per-fold training inside CV
TAG_SHUFFLE = 3     # (TAG_SHUFFLE,): k-fold assignment shuffle
TAG_OVERSAMPLE = 4  # (TAG_OVERSAMPLE, class_index): oversampling draws


def stream(seed: int, *key: int) -> np.random.Generator:
    """Return the PCG64 generator for the (seed, *key) stream."""
    entropy = [int(seed) & MASK64, *(int(k) & MASK64 for k in key)]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))
