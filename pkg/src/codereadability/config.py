"""Runtime configuration shared across the pipeline.

INI layout mirrors the dotted key names used throughout the docs::

    [dictionary]
    path = /opt/wordnet/dict

    [tf.dbscan]
    eps = 0.5
    min_samples = 2

    [bwf]
    tab_width = 4

    [model]
    lambda_l2 = 1.0
    inner_cv = 5
"""

from __future__ import annotations

import configparser
from dataclasses import asdict, dataclass
from pathlib import Path


@dataclass(frozen=True)
class AnalysisConfig:
    dictionary_path: str | None = None
    dbscan_eps: float = 0.5
    dbscan_min_samples: int = 2
    tab_width: int = 4
    lambda_l2: float = 1.0
    inner_cv: int = 5
    profiles_path: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def load_config(path: str | Path | None) -> AnalysisConfig:
    if path is None:
        return AnalysisConfig()
    parser = configparser.ConfigParser()
    with open(path, encoding="utf-8") as fh:
        parser.read_file(fh)
    kwargs = {}
    if parser.has_option("dictionary", "path"):
        kwargs["dictionary_path"] = parser.get("dictionary", "path")
    if parser.has_option("tf.dbscan", "eps"):
        kwargs["dbscan_eps"] = parser.getfloat("tf.dbscan", "eps")
    if parser.has_option("tf.dbscan", "min_samples"):
        kwargs["dbscan_min_samples"] = parser.getint("tf.dbscan", "min_samples")
    if parser.has_option("bwf", "tab_width"):
        kwargs["tab_width"] = parser.getint("bwf", "tab_width")
    if parser.has_option("model", "lambda_l2"):
        kwargs["lambda_l2"] = parser.getfloat("model", "lambda_l2")
    if parser.has_option("model", "inner_cv"):
        kwargs["inner_cv"] = parser.getint("model", "inner_cv")
    if parser.has_option("lexical", "profiles"):
        kwargs["profiles_path"] = parser.get("lexical", "profiles")
    return AnalysisConfig(**kwargs)
