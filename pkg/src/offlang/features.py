"""Feature extraction: smoothed TF-IDF over a fitted vocabulary plus nine
dense surface statistics per tweet.

TF-IDF weighting for a term with document frequency df in a corpus of N
documents:

    weight = tf * (ln((1 + N) / (1 + df)) + 1)

and each document vector is L2-normalized.  Out-of-vocabulary terms are
ignored at transform time.  Vocabulary indices follow first occurrence
order over the fitting corpus after the min_df cut.

The dense block has exactly nine fields, in SURFACE_FIELDS order.  Word
statistics are computed over all-alphabetic tokens excluding the @user/url
placeholders; placeholder counts are taken from the raw text with letter
boundaries so e.g. CURL does not count as URL.
"""

import math
import re
import unicodedata
from dataclasses import dataclass, fields

import numpy as np

from .errors import ValidationError
from .textprep import TokenizedTweet, is_placeholder

SURFACE_FIELDS = (
    "url_count", "mention_count", "char_count", "punct_count", "word_count",
    "avg_word_len", "capital_pct", "abusive_count", "emoji_score",
)

N_SURFACE = len(SURFACE_FIELDS)

_URL_RE = re.compile(r"(?<![A-Za-z])URL(?![A-Za-z])")
_MENTION_RE = re.compile(r"@USER(?![A-Za-z])")


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[str, ...]
    df: tuple[int, ...]        # document frequency per term, aligned with terms
    n_docs: int

    def __post_init__(self):
        if len(self.terms) != len(self.df):
            raise ValidationError("terms and df must align")

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def index(self) -> dict[str, int]:
        cached = self.__dict__.get("_index")
        if cached is None:
            cached = {t: i for i, t in enumerate(self.terms)}
            object.__setattr__(self, "_index", cached)
        return cached

    def to_jsonable(self) -> dict:
        return {"terms": list(self.terms), "df": list(self.df), "n_docs": self.n_docs}

    @classmethod
    def from_jsonable(cls, data: dict) -> "Vocabulary":
        return cls(terms=tuple(data["terms"]), df=tuple(int(x) for x in data["df"]),
                   n_docs=int(data["n_docs"]))


def expand_ngrams(tokens, ngram_max: int = 1) -> list[str]:
    """Token list plus space-joined n-grams up to ngram_max (1 = unigrams)."""
    if ngram_max < 1:
        raise ValidationError(f"ngram_max must be >= 1, got {ngram_max}")
    terms = list(tokens)
    for n in range(2, ngram_max + 1):
        terms.extend(" ".join(tokens[i:i + n]) for i in range(len(tokens) - n + 1))
    return terms


def fit_vocabulary(docs, min_df: int = 2) -> Vocabulary:
    """Fit a vocabulary over token lists.

    Terms seen in fewer than min_df documents are dropped; surviving terms
    get indices in order of first occurrence.
    """
    if min_df < 1:
        raise ValidationError(f"min_df must be >= 1, got {min_df}")
    first_seen: dict[str, int] = {}
    df: dict[str, int] = {}
    order = 0
    n_docs = 0
    for doc in docs:
        n_docs += 1
        for term in set(doc):
            df[term] = df.get(term, 0) + 1
        for term in doc:
            if term not in first_seen:
                first_seen[term] = order
                order += 1
    kept = sorted((t for t, c in df.items() if c >= min_df), key=first_seen.__getitem__)
    return Vocabulary(terms=tuple(kept), df=tuple(df[t] for t in kept), n_docs=n_docs)


def tfidf(doc, vocab: Vocabulary) -> list[tuple[int, float]]:
    """Sparse L2-normalized TF-IDF vector as (index, weight), index-sorted.

    Unknown terms are skipped; a document with no in-vocabulary terms maps
    to the empty vector.
    """
    tf: dict[int, int] = {}
    index = vocab.index
    for term in doc:
        i = index.get(term)
        if i is not None:
            tf[i] = tf.get(i, 0) + 1
    if not tf:
        return []
    entries = []
    for i, count in sorted(tf.items()):
        idf = math.log((1 + vocab.n_docs) / (1 + vocab.df[i])) + 1.0
        entries.append((i, count * idf))
    norm = math.sqrt(sum(w * w for _, w in entries))
    return [(i, w / norm) for i, w in entries]


@dataclass(frozen=True)
class SurfaceFeatures:
    url_count: float
    mention_count: float
    char_count: float
    punct_count: float
    word_count: float
    avg_word_len: float
    capital_pct: float
    abusive_count: float
    emoji_score: float

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(float(getattr(self, f.name)) for f in fields(self))


def surface(raw_text: str, tokens, abusive_lexicon, emoji_score: float) -> SurfaceFeatures:
    """Nine dense per-tweet statistics.

    `tokens` should be the pre-filter token view (TokenizedTweet.base_tokens)
    so the result does not depend on stopword/stemming settings.
    """
    abusive = {w.lower() for w in abusive_lexicon}
    words = [t for t in tokens if t.isalpha() and not is_placeholder(t)]
    letters = [ch for ch in raw_text if ch.isalpha()]
    uppers = sum(1 for ch in letters if ch.isupper())
    return SurfaceFeatures(
        url_count=float(len(_URL_RE.findall(raw_text))),
        mention_count=float(len(_MENTION_RE.findall(raw_text))),
        char_count=float(len(raw_text)),
        punct_count=float(sum(1 for ch in raw_text
                              if unicodedata.category(ch).startswith("P"))),
        word_count=float(len(words)),
        avg_word_len=(sum(len(w) for w in words) / len(words)) if words else 0.0,
        capital_pct=(uppers / len(letters)) if letters else 0.0,
        abusive_count=float(sum(1 for t in tokens if t.lower() in abusive)),
        emoji_score=float(emoji_score),
    )


@dataclass(frozen=True)
class FeatureVector:
    """Sparse TF-IDF entries plus the dense 9-field surface block."""
    sparse: tuple[tuple[int, float], ...]
    dense: tuple[float, ...]

    def to_dense(self, vocab_size: int) -> np.ndarray:
        row = np.zeros(vocab_size + N_SURFACE, dtype=np.float64)
        for i, w in self.sparse:
            row[i] = w
        row[vocab_size:] = self.dense
        return row


def assemble(sparse, dense) -> FeatureVector:
    """Validate and combine the sparse and dense blocks into one vector."""
    dense = tuple(float(x) for x in dense)
    if len(dense) != N_SURFACE:
        raise ValidationError(
            f"dense block must have exactly {N_SURFACE} values, got {len(dense)}")
    prev = -1
    clean = []
    for i, w in sparse:
        i = int(i)
        w = float(w)
        if i <= prev:
            raise ValidationError("sparse indices must be strictly increasing")
        if i < 0 or not math.isfinite(w):
            raise ValidationError(f"invalid sparse entry ({i}, {w})")
        prev = i
        clean.append((i, w))
    if any(not math.isfinite(x) for x in dense):
        raise ValidationError("dense block contains a non-finite value")
    return FeatureVector(sparse=tuple(clean), dense=dense)


def featurize(tweet: TokenizedTweet, vocab: Vocabulary, abusive_lexicon,
              ngram_max: int = 1) -> FeatureVector:
    """TF-IDF + surface features for one preprocessed tweet."""
    terms = expand_ngrams(list(tweet.tokens), ngram_max)
    sf = surface(tweet.raw_text, tweet.base_tokens, abusive_lexicon, tweet.emoji_score)
    return assemble(tfidf(terms, vocab), sf.as_tuple())


def feature_matrix(vectors, vocab_size: int) -> np.ndarray:
    """Stack FeatureVectors into a dense (n, vocab_size + 9) float64 matrix."""
    mat = np.zeros((len(vectors), vocab_size + N_SURFACE), dtype=np.float64)
    for r, fv in enumerate(vectors):
        mat[r, :] = fv.to_dense(vocab_size)
    return mat
