"""Command-line interface.

Subcommands: validate, stats, balance, train, cv, gridsearch, predict,
evaluate, emostats.  Experiment commands read a flat key=value config with
a mandatory seed and write a deterministic manifest next to their primary
output; rerunning a command on the same inputs reproduces every output
byte for byte.  Output is plain text with no ANSI colors (NO_COLOR needs
no special handling) and no timestamps.

Exit codes: 0 success, 1 missing files / IO trouble, 2 malformed input or
contract violations (argparse usage errors also exit 2).
"""

import argparse
import json
import sys
from pathlib import Path

from . import __version__, manifest
from .balance import BalancePlan, apply_plan
from .config import ExperimentConfig
from .corpus import (HEADER_LABELED, HEADER_TEXT_ONLY, classes_for,
                     class_distribution, LEVELS, load_corpus, load_weak_labels,
                     serialize_corpus)
from .emolex import BASES, emotion_counts, emotion_report, load_emotion_lexicon
from .errors import OfflangError, ParseError, ValidationError
from .features import (Vocabulary, expand_ngrams, feature_matrix, featurize,
                       fit_vocabulary)
from .forest import (ForestParams, MAX_FEATURES_CHOICES, cross_validate,
                     grid_search, load_model, predict as forest_predict,
                     save_model, train_forest)
from .metrics import confusion, render_confusion, scores
from .stemming import supported_languages
from .textprep import PrepConfig, preprocess


# ---------------------------------------------------------------------------
# Shared helpers


def _require_file(path) -> Path:
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"no such file: {p}")
    return p


def _sniff_schema(path) -> str:
    with open(path, encoding="utf-8") as fh:
        first = fh.readline().rstrip("\n").rstrip("\r")
    if first == HEADER_LABELED:
        return "olid_labeled"
    if first == HEADER_TEXT_ONLY:
        return "text_only"
    raise ParseError(f"unrecognized corpus header {first!r}", 1)


def _load_corpus_file(path, schema: str | None = None, language: str = "und",
                      split: str = "unspecified"):
    p = _require_file(path)
    schema = schema or _sniff_schema(p)
    return load_corpus(p, schema=schema, language=language, split=split), schema


def _read_wordlist(path) -> list[str]:
    words = []
    for line in _require_file(path).read_text(encoding="utf-8").split("\n"):
        word = line.strip()
        if word and not word.startswith("#"):
            words.append(word)
    return words


def _read_emoji_lexicon(path) -> dict[str, float]:
    """CSV rows `emoji,score`; the emoji is the literal character(s)."""
    lex: dict[str, float] = {}
    lines = _require_file(path).read_text(encoding="utf-8").split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for lineno, raw in enumerate(lines, start=1):
        row = raw.rstrip("\r")
        if not row or row.startswith("#"):
            continue
        emoji, sep, score_text = row.partition(",")
        if not sep or not emoji:
            raise ParseError(f"expected emoji,score, got {row!r}", lineno)
        try:
            score = float(score_text)
        except ValueError:
            raise ParseError(f"score must be a number, got {score_text!r}", lineno)
        if emoji in lex:
            raise ParseError(f"duplicate emoji entry {emoji!r}", lineno)
        lex[emoji] = score
    return lex


def _prep_from_config(cfg: ExperimentConfig) -> PrepConfig:
    language = cfg.get("corpus.language", "english")
    stem_enabled = cfg.get_bool("prep.stem", True)
    stem_language = cfg.get("prep.stem_language")
    if stem_language is None:
        if language in supported_languages():
            stem_language = language
        elif stem_enabled:
            raise ValidationError(
                f"no stemmer for corpus.language={language!r}; set "
                f"prep.stem_language to one of {', '.join(supported_languages())} "
                f"or prep.stem=false")
        else:
            stem_language = "identity"
    return PrepConfig(
        lowercase=cfg.get_bool("prep.lowercase", True),
        strip_punct=cfg.get_bool("prep.strip_punct", True),
        remove_stopwords=cfg.get_bool("prep.remove_stopwords", True),
        stem=stem_enabled,
        split_hashtags=cfg.get_bool("prep.split_hashtags", True),
        reduce_elongation=cfg.get_bool("prep.reduce_elongation", True),
        emoji_mode=cfg.get("prep.emoji_mode", "remove_and_score"),
        stem_language=stem_language,
    )


def _lexicons_from_config(cfg: ExperimentConfig):
    stop_path = cfg.get("lexicon.stopwords")
    if stop_path:
        stoplist = _read_wordlist(stop_path)
    elif cfg.get_bool("prep.remove_stopwords", True):
        # Stopword removal is on by default and needs its word list.
        raise FileNotFoundError(
            "stopword removal is enabled but lexicon.stopwords is not set")
    else:
        stoplist = []
    abusive = _read_wordlist(cfg.get("lexicon.abusive")) \
        if cfg.get("lexicon.abusive") else []
    emoji = _read_emoji_lexicon(cfg.get("lexicon.emoji")) \
        if cfg.get("lexicon.emoji") else {}
    return stoplist, abusive, emoji


def _forest_params_from(cfg: ExperimentConfig, seed: int) -> ForestParams:
    raw_depth = cfg.get("forest.max_depth")
    max_depth = None if raw_depth in (None, "", "none") else cfg.get_int("forest.max_depth")
    raw_mf = cfg.get("forest.max_features", "sqrt")
    max_features = raw_mf if raw_mf in MAX_FEATURES_CHOICES else _parse_fraction(raw_mf)
    return ForestParams(
        n_trees=cfg.get_int("forest.n_trees", 100),
        max_depth=max_depth,
        min_samples_leaf=cfg.get_int("forest.min_samples_leaf", 1),
        max_features=max_features,
        seed=seed,
        bootstrap=cfg.get_bool("forest.bootstrap", True),
    )


def _parse_fraction(raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ValidationError(
            f"max_features must be {', '.join(MAX_FEATURES_CHOICES)} or a fraction, "
            f"got {raw!r}")


_TRAIN_KEYS = {
    "seed", "corpus.train", "corpus.schema", "corpus.language", "train.level",
    "lexicon.stopwords", "lexicon.abusive", "lexicon.emoji",
    "features.min_df", "features.ngram_max", "out.model", "out.manifest",
}
_TRAIN_PREFIXES = ("prep.", "forest.", "external.")


def _featurize_config(cfg: ExperimentConfig, corpus_key: str, level: str):
    """Load + preprocess + vectorize the training corpus named by corpus_key."""
    corpus_path = _require_file(cfg.require(corpus_key))
    schema = cfg.get("corpus.schema")
    corpus, schema = _load_corpus_file(corpus_path, schema,
                                       language=cfg.get("corpus.language", "english"),
                                       split="train")
    rows = corpus.labeled_at(level)
    if len(rows) == 0:
        raise ValidationError(f"no rows labeled at level {level} in {corpus_path}")
    prep = _prep_from_config(cfg)
    stoplist, abusive, emoji = _lexicons_from_config(cfg)
    min_df = cfg.get_int("features.min_df", 2)
    ngram_max = cfg.get_int("features.ngram_max", 1)

    prepped = [preprocess(t.text, prep, stoplist=stoplist, emoji_lexicon=emoji)
               for t in rows]
    vocab = fit_vocabulary((expand_ngrams(list(tt.tokens), ngram_max)
                            for tt in prepped), min_df=min_df)
    vectors = [featurize(tt, vocab, abusive, ngram_max) for tt in prepped]
    X = feature_matrix(vectors, len(vocab))
    y = [t.label_at(level) for t in rows]
    meta = {
        "level": level,
        "classes": list(classes_for(level)),
        "prep": {
            "lowercase": prep.lowercase, "strip_punct": prep.strip_punct,
            "remove_stopwords": prep.remove_stopwords, "stem": prep.stem,
            "split_hashtags": prep.split_hashtags,
            "reduce_elongation": prep.reduce_elongation,
            "emoji_mode": prep.emoji_mode, "stem_language": prep.stem_language,
        },
        "features": {"min_df": min_df, "ngram_max": ngram_max},
        "lexicons": {"stopwords": stoplist, "abusive": abusive, "emoji": emoji},
        "vocabulary": vocab.to_jsonable(),
    }
    return corpus_path, rows, X, y, meta


def _config_inputs(cfg: ExperimentConfig, corpus_path) -> dict:
    inputs = {"config": cfg.path, "corpus": corpus_path}
    for role, key in (("stopwords", "lexicon.stopwords"),
                      ("abusive", "lexicon.abusive"),
                      ("emoji", "lexicon.emoji")):
        if cfg.get(key):
            inputs[role] = cfg.get(key)
    return inputs


# ---------------------------------------------------------------------------
# Commands


def cmd_validate(args) -> int:
    corpus, schema = _load_corpus_file(args.corpus, args.schema)
    print(f"ok: {len(corpus)} rows ({schema})")
    if schema == "olid_labeled":
        for level in LEVELS:
            dist = class_distribution(corpus, level)
            labeled = sum(dist.values())
            cells = "  ".join(f"{c}={dist[c]}" for c in classes_for(level))
            print(f"level {level}: {cells}  unlabeled={len(corpus) - labeled}")
    return 0


def cmd_stats(args) -> int:
    corpus, _ = _load_corpus_file(args.corpus, None)
    dist = class_distribution(corpus, args.level)
    for c in classes_for(args.level):
        print(f"{c}\t{dist[c]}")
    print(f"unlabeled\t{len(corpus) - sum(dist.values())}")
    return 0


def cmd_balance(args) -> int:
    cfg = ExperimentConfig.from_file(_require_file(args.config))
    cfg.assert_known(
        {"seed", "corpus.base", "corpus.pool", "corpus.weak_labels",
         "corpus.language", "balance.level", "balance.target_per_class",
         "out.corpus"},
        ("balance.add.", "external."))
    seed = cfg.seed()
    level = cfg.get("balance.level", "C")
    base, _ = _load_corpus_file(cfg.require("corpus.base"), "olid_labeled",
                                split="train")
    pool, _ = _load_corpus_file(cfg.require("corpus.pool"), "olid_labeled",
                                split="pool")
    weak = load_weak_labels(_require_file(cfg.require("corpus.weak_labels")))
    additions = {}
    for key, value in cfg.values.items():
        if key.startswith("balance.add."):
            additions[key.removeprefix("balance.add.")] = cfg.get_int(key)
    plan = BalancePlan(level=level,
                       target_per_class=cfg.get_int("balance.target_per_class", 1),
                       seed=seed, additions=additions)
    report = apply_plan(base, pool, weak, plan)

    out_corpus = Path(cfg.require("out.corpus"))
    out_corpus.write_bytes(serialize_corpus(report.corpus, "olid_labeled"))
    payload = manifest.build(
        "balance", cfg.values, seed,
        inputs={"config": cfg.path, "base": cfg.require("corpus.base"),
                "pool": cfg.require("corpus.pool"),
                "weak_labels": cfg.require("corpus.weak_labels")},
        outputs={"corpus": out_corpus},
        extra={"balance": {
            "level": level, "target_per_class": plan.target_per_class,
            "before": report.before, "after_selection": report.after_selection,
            "after": report.after,
            "selected": [{"id": i, "label": l, "confidence": c, "std": s}
                         for i, l, c, s in report.selected],
            "duplicate_of": report.duplicate_of,
        }})
    manifest_path = Path(str(out_corpus) + ".manifest.json")
    manifest.write(manifest_path, payload)

    for c in classes_for(level):
        print(f"{c}: {report.before[c]} -> {report.after_selection[c]} -> {report.after[c]}")
    print(f"total rows: {len(report.corpus)}")
    print(f"wrote {out_corpus} and {manifest_path}")
    return 0


def cmd_train(args) -> int:
    cfg = ExperimentConfig.from_file(_require_file(args.config))
    cfg.assert_known(_TRAIN_KEYS, _TRAIN_PREFIXES)
    seed = cfg.seed()
    level = cfg.get("train.level", "A")
    classes = classes_for(level)
    corpus_path, rows, X, y, meta = _featurize_config(cfg, "corpus.train", level)
    params = _forest_params_from(cfg, seed)
    model = train_forest(X, y, params, classes=classes, threads=args.threads)

    train_scores = scores(confusion(y, forest_predict(model, X), classes), classes)
    out_model = Path(cfg.require("out.model"))
    save_model(model, out_model)
    meta_path = Path(str(out_model) + ".meta.json")
    meta_path.write_text(manifest.canonical_json(meta), encoding="utf-8")

    payload = manifest.build(
        "train", cfg.values, seed,
        inputs=_config_inputs(cfg, corpus_path),
        outputs={"model": out_model, "meta": meta_path},
        extra={"training": {
            "rows": len(rows), "level": level,
            "vocabulary_size": len(meta["vocabulary"]["terms"]),
            "params": params.to_jsonable(),
            "training_accuracy": train_scores.accuracy,
            "training_macro_f1": train_scores.macro_f1,
        }})
    manifest_path = Path(str(out_model) + ".manifest.json")
    manifest.write(manifest_path, payload)

    print(f"trained on {len(rows)} rows at level {level}; "
          f"vocabulary {len(meta['vocabulary']['terms'])} terms")
    print(f"training accuracy {train_scores.accuracy:.4f}  "
          f"macro-F1 {train_scores.macro_f1:.4f}")
    print(f"wrote {out_model}, {meta_path} and {manifest_path}")
    return 0


def cmd_cv(args) -> int:
    cfg = ExperimentConfig.from_file(_require_file(args.config))
    cfg.assert_known(_TRAIN_KEYS, _TRAIN_PREFIXES)
    seed = cfg.seed()
    level = cfg.get("train.level", "A")
    classes = classes_for(level)
    corpus_path, rows, X, y, meta = _featurize_config(cfg, "corpus.train", level)
    params = _forest_params_from(cfg, seed)
    result = cross_validate(X, y, params, k=args.k, seed=seed, classes=classes,
                            threads=args.threads)

    print(f"{args.k}-fold cross-validation on {len(rows)} rows (level {level})")
    print("fold  macro_f1")
    for i, score in enumerate(result.fold_scores, start=1):
        print(f"{i:>4}  {score:.4f}")
    print(f"mean {result.mean:.4f}  std {result.std:.4f}")

    out_manifest = cfg.get("out.manifest")
    if out_manifest:
        payload = manifest.build(
            "cv", cfg.values, seed, inputs=_config_inputs(cfg, corpus_path),
            extra={"cv": {"k": args.k, "rows": len(rows), "level": level,
                          "params": params.to_jsonable(),
                          "fold_macro_f1": list(result.fold_scores),
                          "mean_macro_f1": result.mean,
                          "std_macro_f1": result.std}})
        manifest.write(out_manifest, payload)
        print(f"wrote {out_manifest}")
    return 0


# Built-in grid used when the config names no grid.* axes at all.
_DEFAULT_GRID = {"n_trees": "100,300", "max_depth": "none,16",
                 "min_samples_leaf": "1,3"}


def _grid_from_config(cfg: ExperimentConfig, seed: int) -> list[ForestParams]:
    base = _forest_params_from(cfg, seed)
    defaults = {} if any(k.startswith("grid.") for k in cfg.values) else _DEFAULT_GRID

    def axis(name, parse, fallback):
        raw = cfg.get(f"grid.{name}", defaults.get(name))
        if raw is None:
            return [fallback]
        return [parse(v.strip()) for v in raw.split(",") if v.strip() != ""]

    n_trees = axis("n_trees", int, base.n_trees)
    depths = axis("max_depth", lambda v: None if v == "none" else int(v), base.max_depth)
    leaves = axis("min_samples_leaf", int, base.min_samples_leaf)
    feats = axis("max_features",
                 lambda v: v if v in MAX_FEATURES_CHOICES else _parse_fraction(v),
                 base.max_features)
    return [ForestParams(n_trees=nt, max_depth=md, min_samples_leaf=msl,
                         max_features=mf, seed=seed, bootstrap=base.bootstrap)
            for nt in n_trees for md in depths for msl in leaves for mf in feats]


def cmd_gridsearch(args) -> int:
    cfg = ExperimentConfig.from_file(_require_file(args.config))
    cfg.assert_known(_TRAIN_KEYS | {"out.best"}, _TRAIN_PREFIXES + ("grid.",))
    seed = cfg.seed()
    level = cfg.get("train.level", "A")
    classes = classes_for(level)
    corpus_path, rows, X, y, meta = _featurize_config(cfg, "corpus.train", level)
    grid = _grid_from_config(cfg, seed)
    result = grid_search(grid, X, y, k=args.k, seed=seed, classes=classes,
                         threads=args.threads)

    print(f"grid search over {len(grid)} settings, {args.k}-fold CV, "
          f"{len(rows)} rows (level {level})")
    print("rank  n_trees  max_depth  min_leaf  max_features  mean_f1     std")
    ranked = sorted(result.results, key=lambda pair: -pair[1].mean)
    for rank, (params, cv) in enumerate(ranked, start=1):
        star = " *" if params == result.best else ""
        print(f"{rank:>4}  {params.n_trees:>7}  {str(params.max_depth):>9}  "
              f"{params.min_samples_leaf:>8}  {str(params.max_features):>12}  "
              f"{cv.mean:.4f}  {cv.std:.4f}{star}")

    out_best = Path(cfg.get("out.best") or str(cfg.path) + ".best.conf")
    best = result.best
    best_lines = [
        f"forest.n_trees={best.n_trees}",
        f"forest.max_depth={'none' if best.max_depth is None else best.max_depth}",
        f"forest.min_samples_leaf={best.min_samples_leaf}",
        f"forest.max_features={best.max_features}",
        f"forest.bootstrap={'true' if best.bootstrap else 'false'}",
    ]
    out_best.write_text("\n".join(best_lines) + "\n", encoding="utf-8")
    payload = manifest.build(
        "gridsearch", cfg.values, seed, inputs=_config_inputs(cfg, corpus_path),
        outputs={"best": out_best},
        extra={"gridsearch": {
            "k": args.k, "rows": len(rows), "level": level,
            "results": [{"params": p.to_jsonable(),
                         "fold_macro_f1": list(cv.fold_scores),
                         "mean_macro_f1": cv.mean, "std_macro_f1": cv.std}
                        for p, cv in result.results],
            "best": best.to_jsonable(),
        }})
    manifest_path = Path(str(out_best) + ".manifest.json")
    manifest.write(manifest_path, payload)
    print(f"wrote {out_best} and {manifest_path}")
    return 0


def _load_model_bundle(model_path):
    model = load_model(_require_file(model_path))
    meta_path = Path(str(model_path) + ".meta.json")
    if not meta_path.is_file():
        raise FileNotFoundError(
            f"model sidecar missing: {meta_path} (produced by `offlang train` "
            f"next to the model file)")
    meta = json.loads(meta_path.read_text(encoding="utf-8"))
    return model, meta


def cmd_predict(args) -> int:
    model, meta = _load_model_bundle(args.model)
    corpus, _ = _load_corpus_file(args.corpus, None)
    prep = PrepConfig(**meta["prep"])
    vocab = Vocabulary.from_jsonable(meta["vocabulary"])
    stoplist = meta["lexicons"]["stopwords"]
    abusive = meta["lexicons"]["abusive"]
    emoji = meta["lexicons"]["emoji"]
    ngram_max = int(meta["features"]["ngram_max"])

    vectors = []
    for t in corpus:
        tt = preprocess(t.text, prep, stoplist=stoplist, emoji_lexicon=emoji)
        vectors.append(featurize(tt, vocab, abusive, ngram_max))
    labels = forest_predict(model, feature_matrix(vectors, len(vocab)))

    lines = [f"{t.id}\t{label}" for t, label in zip(corpus, labels)]
    body = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(body, encoding="utf-8")
        print(f"wrote {len(lines)} predictions to {args.out}")
    else:
        sys.stdout.write(body)
    if args.manifest:
        outputs = {"predictions": args.out} if args.out else None
        payload = manifest.build("predict", None, None,
                                 inputs={"model": args.model, "corpus": args.corpus},
                                 outputs=outputs)
        manifest.write(args.manifest, payload)
    return 0


def _load_predictions(path) -> dict[str, str]:
    lines = _require_file(path).read_text(encoding="utf-8").split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    preds: dict[str, str] = {}
    dupes = []
    for lineno, raw in enumerate(lines, start=1):
        fields = raw.rstrip("\r").split("\t")
        if len(fields) != 2:
            raise ParseError(f"expected id<TAB>label, got {raw!r}", lineno)
        if fields[0] in preds:
            dupes.append(fields[0])
        preds[fields[0]] = fields[1]
    if dupes:
        raise ValidationError("duplicate ids in predictions", dupes)
    return preds


def cmd_evaluate(args) -> int:
    gold_corpus, schema = _load_corpus_file(args.gold, None)
    if schema != "olid_labeled":
        raise ValidationError("gold corpus must use the labeled schema")
    if gold_corpus.split == "pool":
        raise ValidationError("the pool split is never evaluated")
    level = args.level
    rows = gold_corpus.labeled_at(level)
    if len(rows) == 0:
        raise ValidationError(f"no rows labeled at level {level} in {args.gold}")
    preds = _load_predictions(args.predictions)

    all_ids = set(gold_corpus.ids())
    unknown = [pid for pid in preds if pid not in all_ids]
    if unknown:
        raise ValidationError("prediction ids not present in the gold corpus", unknown)
    missing = [t.id for t in rows if t.id not in preds]
    if missing:
        raise ValidationError("gold rows without a prediction", missing)

    classes = classes_for(level)
    gold = [t.label_at(level) for t in rows]
    pred = [preds[t.id] for t in rows]
    mat = confusion(gold, pred, classes)
    sc = scores(mat, classes)

    print(render_confusion(mat, classes))
    print()
    print("class  precision  recall  f1      support")
    for c in classes:
        cs = sc.per_class[c]
        print(f"{c:<5}  {cs.precision:>9.4f}  {cs.recall:>6.4f}  {cs.f1:.4f}  {cs.support:>7}")
    print()
    print(f"accuracy {sc.accuracy:.4f}")
    print(f"macro-F1 {sc.macro_f1:.4f}")
    if args.manifest:
        payload = manifest.build(
            "evaluate", None, None,
            inputs={"gold": args.gold, "predictions": args.predictions},
            extra={"evaluate": {
                "level": level, "rows": len(rows),
                "accuracy": sc.accuracy, "macro_f1": sc.macro_f1,
                "confusion": mat.tolist(), "classes": list(classes),
            }})
        manifest.write(args.manifest, payload)
    return 0


def cmd_emostats(args) -> int:
    corpus, schema = _load_corpus_file(args.corpus, None)
    if schema != "olid_labeled":
        raise ValidationError("emotion profiling needs the labeled schema")
    lexicon = load_emotion_lexicon(str(_require_file(args.lexicon)))
    profiles = emotion_counts(corpus, lexicon, level="A", basis=args.basis)
    report = emotion_report(profiles)
    if args.out:
        Path(args.out).write_text(report + "\n", encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        print(report)
    if args.manifest:
        payload = manifest.build(
            "emostats", None, None,
            inputs={"corpus": args.corpus, "lexicon": args.lexicon},
            extra={"emostats": {
                "basis": args.basis,
                "profiles": [{"label": p.label, "posts": p.n_posts,
                              "tokens": p.n_tokens, "raw": p.raw,
                              "normalized": p.normalized}
                             for p in profiles]}})
        manifest.write(args.manifest, payload)
    return 0


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="offlang",
        description="Offensive-language classification experiments: corpus "
                    "tools, random-forest training and evaluation, corpus "
                    "balancing and emotion-lexicon profiling.")
    parser.add_argument("--version", action="version", version=f"offlang {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a corpus file and report label counts")
    p.add_argument("corpus")
    p.add_argument("--schema", choices=("olid_labeled", "text_only"), default=None,
                   help="header schema (default: sniffed from the header row)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("stats", help="class distribution at one label level")
    p.add_argument("corpus")
    p.add_argument("--level", choices=tuple(LEVELS), required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("balance", help="select confident pool rows and oversample")
    p.add_argument("config")
    p.set_defaults(func=cmd_balance)

    p = sub.add_parser("train", help="train a random forest from a config")
    p.add_argument("config")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("cv", help="stratified k-fold cross-validation")
    p.add_argument("config")
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_cv)

    p = sub.add_parser("gridsearch", help="cross-validate a parameter grid")
    p.add_argument("config")
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_gridsearch)

    p = sub.add_parser("predict", help="label a corpus with a trained model")
    p.add_argument("model")
    p.add_argument("corpus")
    p.add_argument("--out", default=None, help="write predictions here instead of stdout")
    p.add_argument("--manifest", default=None, help="also write a run manifest")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="score a predictions file against gold labels")
    p.add_argument("gold")
    p.add_argument("predictions")
    p.add_argument("--level", choices=tuple(LEVELS), default="A")
    p.add_argument("--manifest", default=None, help="also write a run manifest")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("emostats", help="emotion-lexicon profile per level-A class")
    p.add_argument("corpus")
    p.add_argument("lexicon")
    p.add_argument("--basis", choices=BASES, default="per_1000_posts")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--manifest", default=None, help="also write a run manifest")
    p.set_defaults(func=cmd_emostats)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 2
    if getattr(args, "k", 2) < 2:
        print("error: --k must be >= 2", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except OfflangError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
