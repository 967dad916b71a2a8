"""Command-line pipeline: featurize, train, evaluate, score, compare.

Exit codes: 0 success, 2 usage error, 3 data error, 4 internal error.
Every command logs its fully resolved configuration so runs can be
reproduced exactly; outputs are byte-identical for identical
(inputs, seed) regardless of ``--jobs``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import analytics, model as model_mod
from .config import AnalysisConfig, load_config
from .corpus import (
    DatasetError,
    Snippet,
    SnippetDecodeError,
    load_labeled_dataset,
    load_snippet_file,
    preprocess,
)
from .dictionary import DictionaryError, load_dictionary
from .model import ModelError
from .profiles import load_profiles, register_profiles
from .vectorizer import featurize_corpus, write_feature_matrix

log = logging.getLogger("codereadability")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_INTERNAL = 4

_DATA_ERRORS = (DatasetError, SnippetDecodeError, ModelError, DictionaryError, ValueError, OSError)


def _resolve_config(args) -> AnalysisConfig:
    cfg = load_config(getattr(args, "config", None))
    overrides = {}
    if getattr(args, "lambda_l2", None) is not None:
        overrides["lambda_l2"] = args.lambda_l2
    if overrides:
        cfg = AnalysisConfig(**{**cfg.to_dict(), **overrides})
    if cfg.profiles_path:
        register_profiles(load_profiles(cfg.profiles_path))
    log.info("resolved config: %s", json.dumps(cfg.to_dict(), sort_keys=True))
    return cfg


def _load_corpus(in_path: str, language: str) -> tuple[list[Snippet], list[int] | None, list[str]]:
    """Snippets from either a directory of files or a labeled manifest CSV.

    Returns (snippets, labels_or_None, per_file_errors). Directory reads
    collect per-file diagnostics instead of stopping at the first failure.
    """
    path = Path(in_path)
    if path.is_dir():
        snippets: list[Snippet] = []
        errors: list[str] = []
        for file in sorted(p for p in path.rglob("*") if p.is_file()):
            rel = str(file.relative_to(path))
            try:
                snippets.append(preprocess(load_snippet_file(file, language, rel)))
            except (SnippetDecodeError, OSError) as exc:
                errors.append(f"{rel}: {exc}")
        return snippets, None, errors
    dataset = load_labeled_dataset(path)
    return dataset.snippets, dataset.labels, []


def cmd_featurize(args) -> int:
    cfg = _resolve_config(args)
    snippets, _, errors = _load_corpus(args.in_path, args.lang)
    for msg in errors:
        log.error("unreadable input: %s", msg)
    if errors and not args.keep_going:
        return EXIT_DATA
    if not snippets:
        log.warning("no snippets found in %s; writing header-only matrix", args.in_path)
    d = load_dictionary(cfg.dictionary_path)
    matrix = featurize_corpus(snippets, d, cfg, jobs=args.jobs)
    write_feature_matrix(args.out, [s.id for s in snippets], matrix)
    log.info("wrote %d rows to %s", len(snippets), args.out)
    return EXIT_DATA if errors else EXIT_OK


def _featurized_dataset(args, cfg: AnalysisConfig):
    dataset = load_labeled_dataset(args.data)
    d = load_dictionary(cfg.dictionary_path)
    X = featurize_corpus(dataset.snippets, d, cfg)
    y = np.array(dataset.labels)
    return dataset, X, y


def cmd_train(args) -> int:
    cfg = _resolve_config(args)
    dataset, X, y = _featurized_dataset(args, cfg)
    trained = model_mod.train_model(
        X, y, family=args.family, lambda_l2=cfg.lambda_l2,
        k_max=args.kmax, inner_cv=cfg.inner_cv, seed=args.seed,
        provenance=f"data={args.data} family={args.family} seed={args.seed}",
    )
    model_mod.save_model(trained, args.out)
    log.info("trained on %d snippets; %d features selected; model at %s",
             len(dataset), len(trained.selected), args.out)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    cfg = _resolve_config(args)
    _, X, y = _featurized_dataset(args, cfg)
    report = model_mod.evaluate(
        X, y, family=args.family, k=args.folds, seed=args.seed,
        lambda_l2=cfg.lambda_l2, k_max=args.kmax, inner_cv=cfg.inner_cv,
    )
    report.config = cfg.to_dict()
    print(model_mod.render_evaluation_table([report]))
    if args.out:
        Path(args.out).write_text(json.dumps(report.to_dict(), indent=2) + "\n",
                                  encoding="utf-8")
        log.info("report written to %s", args.out)
    return EXIT_OK


def cmd_score(args) -> int:
    cfg = _resolve_config(args)
    trained = model_mod.load_model(args.model)
    snippets, _, errors = _load_corpus(args.in_path, args.lang)
    for msg in errors:
        log.error("unreadable input: %s", msg)
    if errors and not args.keep_going:
        return EXIT_DATA
    d = load_dictionary(cfg.dictionary_path)
    table = analytics.score_corpus(trained, snippets, d=d, config=cfg,
                                   label=args.in_path, jobs=args.jobs)
    analytics.write_score_table(table, args.out)
    log.info("scored %d snippets to %s", len(table), args.out)
    return EXIT_DATA if errors else EXIT_OK


def cmd_compare(args) -> int:
    _resolve_config(args)
    table_a = analytics.read_score_table(args.a)
    table_b = analytics.read_score_table(args.b)
    report = analytics.paired_compare(table_a, table_b, join_key=args.join)
    rendered = analytics.render_report(report, format=args.format)
    if args.out:
        Path(args.out).write_text(rendered + "\n", encoding="utf-8")
        log.info("comparison written to %s", args.out)
    else:
        print(rendered)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codereadability",
        description="Measure code readability: 61 lexical/structural/visual "
                    "features, classifier training and evaluation, corpus "
                    "scoring, and paired statistical comparison.",
    )
    parser.add_argument("--config", help="INI config file", default=None)
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="increase log verbosity (repeatable)")
    sub = parser.add_subparsers(dest="command", required=True)

    feat = sub.add_parser("featurize", help="compute the 61-column feature matrix")
    feat.add_argument("--in", dest="in_path", required=True,
                      help="snippet directory or manifest CSV")
    feat.add_argument("--lang", default="python",
                      help="language for directory inputs (python|java|cuda|generic)")
    feat.add_argument("--out", required=True, help="output matrix CSV")
    feat.add_argument("--keep-going", action="store_true",
                      help="skip unreadable files but still exit nonzero")
    feat.add_argument("--jobs", type=int, default=1, help="parallel featurization degree")
    feat.set_defaults(func=cmd_featurize)

    def add_train_eval_flags(p):
        p.add_argument("--data", required=True, help="labeled manifest CSV")
        p.add_argument("--family", default="all",
                       choices=["tf", "bwf", "pf", "df", "all"],
                       help="feature family to use")
        p.add_argument("--folds", type=int, default=10, help="cross-validation folds")
        p.add_argument("--seed", type=int, default=42, help="RNG seed")
        p.add_argument("--lambda", dest="lambda_l2", type=float, default=None,
                       help="L2 regularization strength")
        p.add_argument("--kmax", type=int, default=None,
                       help="max selected features (default: family size)")
        p.add_argument("--out", help="output path")

    train = sub.add_parser("train", help="fit a model on the full labeled dataset")
    add_train_eval_flags(train)
    train.set_defaults(func=cmd_train)

    evaluate = sub.add_parser("evaluate", help="cross-validated accuracy/AUC report")
    add_train_eval_flags(evaluate)
    evaluate.set_defaults(func=cmd_evaluate)

    score = sub.add_parser("score", help="score a corpus with a trained model")
    score.add_argument("--model", required=True, help="model JSON file")
    score.add_argument("--in", dest="in_path", required=True,
                       help="snippet directory or manifest CSV")
    score.add_argument("--lang", default="python", help="language for directory inputs")
    score.add_argument("--out", required=True, help="output score-table CSV")
    score.add_argument("--keep-going", action="store_true",
                       help="skip unreadable files but still exit nonzero")
    score.add_argument("--jobs", type=int, default=1, help="parallel scoring degree")
    score.set_defaults(func=cmd_score)

    compare = sub.add_parser("compare", help="paired comparison of two score tables")
    compare.add_argument("--a", required=True, help="score table CSV (side A)")
    compare.add_argument("--b", required=True, help="score table CSV (side B)")
    compare.add_argument("--join", default="id", help="join key (id)")
    compare.add_argument("--format", default="table", choices=["table", "json", "csv"])
    compare.add_argument("--out", help="write the report here instead of stdout")
    compare.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s",
                        stream=sys.stderr)
    try:
        return args.func(args)
    except _DATA_ERRORS as exc:
        log.error("%s", exc)
        return EXIT_DATA
    except Exception:  # pragma: no cover - safety net
        log.exception("internal error")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
