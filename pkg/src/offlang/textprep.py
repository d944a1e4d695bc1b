"""Tweet preprocessing: hashtag splitting, elongation reduction, emoji
scoring, tokenization, punctuation/stopword filtering and stemming.

The pipeline order inside `preprocess` is fixed:

    hashtag split -> elongation reduction -> emoji extraction -> tokenize
    -> lowercase -> punctuation removal -> stopword removal -> stemming

with each step gated by its PrepConfig flag.  The placeholders `@USER` and
`URL` pass through every step untouched apart from lowercasing.

Conventions used throughout:

* punctuation means Unicode general category P*;
* with strip_punct off, tokenization degrades to plain whitespace splitting
  (so the all-flags-off config is the identity on whitespace-separated
  tokens); `tokenize()` called directly always applies the full tweet-aware
  rules (punctuation runs detached, emoji kept as single tokens);
* only all-alphabetic tokens are stemmed; stemmers emit lowercase output.
"""

import re
import unicodedata
from dataclasses import dataclass

from . import stemming
from .errors import ValidationError

PLACEHOLDERS = frozenset({"@USER", "URL", "@user", "url"})

EMOJI_MODES = ("remove_and_score", "keep")


def is_placeholder(token: str) -> bool:
    return token in PLACEHOLDERS


# ---------------------------------------------------------------------------
# Character classes


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


_EMOJI_BASE_RANGES = (
    (0x1F000, 0x1FAFF),  # emoticons, transport, supplemental, extended-A
    (0x2600, 0x27BF),    # misc symbols and dingbats
    (0x2B00, 0x2BFF),    # arrows and stars commonly rendered as emoji
)
_ZWJ = "‍"
_VARIATION_SELECTORS = frozenset({0xFE0E, 0xFE0F})
_EMOJI_MODIFIER_CODEPOINTS = frozenset(
    {0xFE0E, 0xFE0F, 0x200D, 0x20E3} | set(range(0x1F3FB, 0x1F400)))


def _is_emoji_base(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _EMOJI_BASE_RANGES)


def _is_regional(ch: str) -> bool:
    return 0x1F1E6 <= ord(ch) <= 0x1F1FF


def _is_emoji_modifier(ch: str) -> bool:
    return ord(ch) in _EMOJI_MODIFIER_CODEPOINTS


def _is_emoji_char(ch: str) -> bool:
    return _is_emoji_base(ch) or _is_emoji_modifier(ch)


def _consume_emoji_unit(text: str, i: int) -> tuple[str, bool]:
    """Consume one display unit starting at i: flag pair, base plus its
    modifiers plus any ZWJ-joined continuation, or a run of stray modifiers.

    Returns (consumed substring, unit contains a base character).
    """
    start = i
    n = len(text)
    if _is_regional(text[i]) and i + 1 < n and _is_regional(text[i + 1]):
        return text[start:i + 2], True
    if _is_emoji_base(text[i]):
        i += 1
        while i < n and _is_emoji_modifier(text[i]) and text[i] != _ZWJ:
            i += 1
        while i < n and text[i] == _ZWJ and i + 1 < n and _is_emoji_base(text[i + 1]):
            i += 2
            while i < n and _is_emoji_modifier(text[i]) and text[i] != _ZWJ:
                i += 1
        return text[start:i], True
    # Stray modifiers with no base: consume so they never leak into tokens.
    while i < n and _is_emoji_modifier(text[i]):
        i += 1
    return text[start:i], False


def emoji_spans(text: str) -> list[tuple[int, int, str, bool]]:
    """All emoji display units as (start, end, unit, has_base) spans."""
    spans = []
    i = 0
    while i < len(text):
        if _is_emoji_char(text[i]):
            unit, has_base = _consume_emoji_unit(text, i)
            spans.append((i, i + len(unit), unit, has_base))
            i += len(unit)
        else:
            i += 1
    return spans


# ---------------------------------------------------------------------------
# Individual operations


_ELONGATION = re.compile(r"(.)\1{2,}", re.DOTALL)


def reduce_elongation(text: str) -> str:
    """Cap runs of one repeated character at length 2 (Sooo -> Soo).

    Idempotent; applies to every character class.
    """
    return _ELONGATION.sub(r"\1\1", text)


def split_hashtag(tag: str) -> list[str]:
    """Split a camel-case hashtag body into words: #GoHome -> [Go, Home].

    The leading # (if present) is dropped.  All-caps runs stay together
    (#MAGA -> [MAGA]) and an upper run followed by a capitalized word splits
    before the last capital (USAToday -> USA, Today).
    """
    body = tag[1:] if tag.startswith("#") else tag
    if not body:
        return []
    parts = []
    start = 0
    for i in range(1, len(body)):
        prev, cur = body[i - 1], body[i]
        boundary = cur.isupper() and (
            prev.islower() or prev.isdigit()
            or (prev.isupper() and i + 1 < len(body) and body[i + 1].islower()))
        if boundary:
            parts.append(body[start:i])
            start = i
    parts.append(body[start:])
    return parts


def tokenize(text: str) -> list[str]:
    """Tweet-aware tokenization.

    Splits on whitespace, detaches leading/trailing punctuation runs as
    their own tokens, keeps @-mentions and #hashtags intact, keeps internal
    punctuation attached (don't stays one token) and emits every emoji
    display unit as a single token.
    """
    tokens: list[str] = []
    for chunk in text.split():
        i, j = 0, len(chunk)
        while i < j and _is_punct(chunk[i]) and not _is_emoji_char(chunk[i]):
            i += 1
        # Leave a mention/hashtag sigil attached to its word.
        if 0 < i <= j and chunk[i - 1] in "@#" and i < j and not _is_punct(chunk[i]):
            i -= 1
        while j > i and _is_punct(chunk[j - 1]) and not _is_emoji_char(chunk[j - 1]):
            j -= 1
        if i == j:  # pure punctuation chunk
            tokens.append(chunk)
            continue
        if i > 0:
            tokens.append(chunk[:i])
        core = chunk[i:j]
        pos = 0
        for s, e, unit, has_base in emoji_spans(core):
            if core[pos:s]:
                tokens.append(core[pos:s])
            if has_base:
                tokens.append(unit)
            pos = e
        if core[pos:]:
            tokens.append(core[pos:])
        if j < len(chunk):
            tokens.append(chunk[j:])
    return tokens


def remove_stopwords(tokens, stoplist) -> list[str]:
    """Drop tokens on the stoplist, case-insensitively; placeholders stay."""
    stops = {s.lower() for s in stoplist}
    return [t for t in tokens if is_placeholder(t) or t.lower() not in stops]


def extract_emoji_sentiment(text: str, lexicon) -> tuple[str, float]:
    """Remove every emoji unit from text, return the mean lexicon score.

    Longest lexicon entry starting at the position wins; an assembled unit
    missing from the lexicon contributes 0 but still counts in the mean's
    denominator.  Variation selectors are ignored for lookup as a fallback.
    Text without emoji scores 0.0.
    """
    lexicon = lexicon or {}
    by_length = sorted(lexicon, key=len, reverse=True)
    out = []
    scores = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if not _is_emoji_char(ch):
            out.append(ch)
            i += 1
            continue
        matched = next((k for k in by_length if k and text.startswith(k, i)), None)
        if matched is not None:
            scores.append(lexicon[matched])
            i += len(matched)
            continue
        unit, has_base = _consume_emoji_unit(text, i)
        if has_base:
            stripped = "".join(c for c in unit if ord(c) not in _VARIATION_SELECTORS)
            scores.append(lexicon.get(unit, lexicon.get(stripped, 0.0)))
        i += len(unit)
    score = sum(scores) / len(scores) if scores else 0.0
    return "".join(out), score


# ---------------------------------------------------------------------------
# Pipeline


@dataclass(frozen=True)
class PrepConfig:
    lowercase: bool = True
    strip_punct: bool = True
    remove_stopwords: bool = True
    stem: bool = True
    split_hashtags: bool = True
    reduce_elongation: bool = True
    emoji_mode: str = "remove_and_score"
    stem_language: str = "english"

    def __post_init__(self):
        if self.emoji_mode not in EMOJI_MODES:
            raise ValidationError(
                f"emoji_mode must be one of {', '.join(EMOJI_MODES)}, "
                f"got {self.emoji_mode!r}")


@dataclass(frozen=True)
class TokenizedTweet:
    """Preprocessing output.

    `tokens` is the final pipeline output; `base_tokens` is the
    tweet-tokenized, lowercased token list before punctuation, stopword and
    stemming filters, kept so downstream feature code sees a view that is
    insensitive to those config flags.
    """
    tokens: tuple[str, ...]
    emoji_score: float
    raw_text: str
    base_tokens: tuple[str, ...] = ()


def _expand_hashtags(text: str) -> str:
    chunks = []
    for chunk in text.split():
        if chunk.startswith("#") and len(chunk) > 1:
            chunks.extend(split_hashtag(chunk))
        else:
            chunks.append(chunk)
    return " ".join(chunks)


def _strip_punct_from(token: str) -> str:
    return "".join(ch for ch in token if not _is_punct(ch))


def preprocess(text: str, cfg: PrepConfig = PrepConfig(),
               stoplist=frozenset(), emoji_lexicon=None) -> TokenizedTweet:
    """Run the full preprocessing pipeline on one tweet."""
    work = text
    if cfg.split_hashtags:
        work = _expand_hashtags(work)
    if cfg.reduce_elongation:
        work = reduce_elongation(work)
    emoji_score = 0.0
    if cfg.emoji_mode == "remove_and_score":
        work, emoji_score = extract_emoji_sentiment(work, emoji_lexicon)

    base_tokens = tuple(t.lower() for t in tokenize(work))
    tokens = tokenize(work) if cfg.strip_punct else work.split()
    if cfg.lowercase:
        tokens = [t.lower() for t in tokens]
    if cfg.strip_punct:
        stripped = (t if is_placeholder(t) else _strip_punct_from(t) for t in tokens)
        tokens = [t for t in stripped if t]
    if cfg.remove_stopwords:
        tokens = remove_stopwords(tokens, stoplist)
    if cfg.stem:
        tokens = [t if is_placeholder(t) or not t.isalpha()
                  else stemming.stem(t, cfg.stem_language) for t in tokens]
    return TokenizedTweet(tokens=tuple(tokens), emoji_score=emoji_score,
                          raw_text=text, base_tokens=base_tokens)
