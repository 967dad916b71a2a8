"""Readability classifier: scaling, L2 logistic regression, greedy forward
feature selection, stratified cross-validation, and model persistence.

The training objective is mean logistic loss plus ``lambda_l2/2 * ||w||^2``
(intercept unpenalized), minimized by damped Newton iteration to a
1e-8 gradient-norm tolerance. Everything is deterministic under a seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.special import expit
from scipy.stats import rankdata

from .vectorizer import N_FEATURES, SCHEMA_VERSION, FeatureVector, family_indices


class ModelError(ValueError):
    """Persistence or schema-compatibility failure."""


# --------------------------------------------------------------------------
# Scaling
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ScalerParams:
    mu: np.ndarray
    sigma: np.ndarray


def fit_scaler(X: np.ndarray) -> ScalerParams:
    """Column-wise z-score parameters (population std); constant columns
    get sigma=1 so they scale to exactly zero."""
    X = np.asarray(X, dtype=np.float64)
    if X.size == 0:
        raise ValueError("cannot fit scaler on an empty matrix")
    mu = X.mean(axis=0)
    sigma = X.std(axis=0)
    sigma = np.where(sigma > 0.0, sigma, 1.0)
    return ScalerParams(mu=mu, sigma=sigma)


def transform(scaler: ScalerParams, X: np.ndarray) -> np.ndarray:
    return (np.asarray(X, dtype=np.float64) - scaler.mu) / scaler.sigma


# --------------------------------------------------------------------------
# L2 logistic regression (damped Newton)
# --------------------------------------------------------------------------

def logloss_and_grad(params: np.ndarray, X: np.ndarray, y: np.ndarray,
                     lambda_l2: float) -> tuple[float, np.ndarray]:
    """Objective and gradient; ``params`` is weights with the intercept last."""
    w, b = params[:-1], params[-1]
    z = X @ w + b
    # mean log-loss via logaddexp for numerical stability
    loss = float(np.mean(np.logaddexp(0.0, z) - y * z)) + 0.5 * lambda_l2 * float(w @ w)
    p = expit(z)
    resid = (p - y) / len(y)
    grad = np.concatenate([X.T @ resid + lambda_l2 * w, [resid.sum()]])
    return loss, grad


def train_logreg(Xn: np.ndarray, y: np.ndarray, lambda_l2: float = 1.0,
                 tol: float = 1e-8, max_iter: int = 10000) -> tuple[np.ndarray, float]:
    """Fit (w, b) on already-scaled features. Requires both classes."""
    Xn = np.asarray(Xn, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    classes = np.unique(y)
    if len(classes) < 2:
        raise ValueError("training labels contain a single class")

    n, d = Xn.shape
    params = np.zeros(d + 1)
    Xa = np.hstack([Xn, np.ones((n, 1))])
    reg_diag = np.append(np.full(d, lambda_l2), 0.0)

    loss, grad = logloss_and_grad(params, Xn, y, lambda_l2)
    for _ in range(max_iter):
        if np.max(np.abs(grad)) <= tol:
            break
        p = expit(Xa @ params)
        weights = np.maximum(p * (1.0 - p), 1e-12)
        hessian = (Xa.T * weights) @ Xa / n + np.diag(reg_diag)
        try:
            step = np.linalg.solve(hessian, grad)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(hessian, grad, rcond=None)[0]
        # damped update: halve until the objective stops increasing
        scale = 1.0
        for _ in range(60):
            candidate = params - scale * step
            new_loss, new_grad = logloss_and_grad(candidate, Xn, y, lambda_l2)
            if new_loss <= loss + 1e-15:
                break
            scale *= 0.5
        params, loss, grad = candidate, new_loss, new_grad
    return params[:-1], float(params[-1])


# --------------------------------------------------------------------------
# Metrics
# --------------------------------------------------------------------------

def auc(scores, labels) -> float:
    """Rank-based AUC: P(score_pos > score_neg) + 0.5 P(equal)."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    pos = labels == 1
    n_pos = int(pos.sum())
    n_neg = len(labels) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("AUC requires both classes")
    ranks = rankdata(scores)
    return float((ranks[pos].sum() - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg))


def accuracy(scores, labels, threshold: float = 0.5) -> float:
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    return float(np.mean((scores >= threshold).astype(int) == labels))


# --------------------------------------------------------------------------
# Cross-validation and feature selection
# --------------------------------------------------------------------------

def stratified_folds(labels, k: int, seed: int) -> np.ndarray:
    """Fold id per sample; per-class counts across folds differ by <= 1."""
    labels = np.asarray(labels)
    if k < 2:
        raise ValueError("stratified CV needs k >= 2")
    assignment = np.empty(len(labels), dtype=np.int64)
    rng = np.random.default_rng(seed)
    for cls in np.unique(labels):
        idx = np.flatnonzero(labels == cls)
        if len(idx) < k:
            raise ValueError(f"class {cls!r} has {len(idx)} members, fewer than k={k}")
        rng.shuffle(idx)
        for fold in range(k):
            assignment[idx[fold::k]] = fold
    return assignment


def _cv_auc(Xn: np.ndarray, y: np.ndarray, cols: list[int], folds: np.ndarray,
            k: int, lambda_l2: float) -> float:
    """Mean held-out AUC of logistic regression on a column subset."""
    total = 0.0
    sub = Xn[:, cols]
    for fold in range(k):
        test = folds == fold
        w, b = train_logreg(sub[~test], y[~test], lambda_l2)
        total += auc(sub[test] @ w + b, y[test])
    return total / k


def sfs_path(Xn: np.ndarray, y: np.ndarray, k_max: int, inner_cv: int = 5,
             seed: int = 0, lambda_l2: float = 1.0,
             candidates: list[int] | None = None) -> tuple[list[int], list[float]]:
    """Greedy forward selection from the empty set; full path.

    At every step the feature maximizing inner-CV AUC joins the set (ties
    go to the lower column index). Returns the selection order and the
    criterion value at each prefix size.
    """
    Xn = np.asarray(Xn, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    pool = sorted(candidates) if candidates is not None else list(range(Xn.shape[1]))
    if k_max > len(pool):
        k_max = len(pool)
    # the inner split cannot have more folds than the smallest class
    smallest = min(int((y == cls).sum()) for cls in np.unique(y))
    inner_cv = max(2, min(inner_cv, smallest))
    folds = stratified_folds(y, inner_cv, seed)

    selected: list[int] = []
    score_path: list[float] = []
    remaining = list(pool)
    while len(selected) < k_max:
        best_feature = None
        best_score = -np.inf
        for feature in remaining:  # ascending order makes ties deterministic
            score = _cv_auc(Xn, y, selected + [feature], folds, inner_cv, lambda_l2)
            if score > best_score:
                best_score = score
                best_feature = feature
        selected.append(best_feature)
        remaining.remove(best_feature)
        score_path.append(best_score)
    return selected, score_path


def sfs(Xn: np.ndarray, y: np.ndarray, k_max: int, inner_cv: int = 5,
        seed: int = 0, lambda_l2: float = 1.0,
        candidates: list[int] | None = None) -> list[int]:
    """Forward selection truncated at the prefix whose criterion peaked
    (ties go to the smaller size)."""
    selected, score_path = sfs_path(Xn, y, k_max, inner_cv, seed, lambda_l2, candidates)
    if not selected:
        return []
    best_size = int(np.argmax(score_path)) + 1  # argmax takes the first peak
    return selected[:best_size]


# --------------------------------------------------------------------------
# Model object
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ReadabilityModel:
    scaler: ScalerParams
    selected: tuple[int, ...]      # schema column indices, in selection order
    weights: np.ndarray            # one weight per selected column
    intercept: float
    lambda_l2: float
    schema_version: str = SCHEMA_VERSION
    training_provenance: str = ""


def predict(model: ReadabilityModel, x: FeatureVector | np.ndarray) -> tuple[float, float]:
    """(probability, linear_score) for one feature vector.

    The linear score is the weighted sum of scaled selected features,
    without the intercept; the probability adds the intercept and applies
    the sigmoid.
    """
    if isinstance(x, FeatureVector):
        if x.schema_version != model.schema_version:
            raise ModelError(
                f"schema mismatch: vector {x.schema_version!r} vs model {model.schema_version!r}"
            )
        values = x.values
    else:
        values = np.asarray(x, dtype=np.float64)
    scaled = (values - model.scaler.mu) / model.scaler.sigma
    picked = scaled[list(model.selected)]
    linear = float(picked @ model.weights)
    probability = float(expit(linear + model.intercept))
    return probability, linear


def train_model(X: np.ndarray, y, family: str = "all", lambda_l2: float = 1.0,
                k_max: int | None = None, inner_cv: int = 5, seed: int = 0,
                provenance: str = "") -> ReadabilityModel:
    """Scaler + SFS + final logistic regression on the full training set."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    candidates = family_indices(family)
    if k_max is None:
        k_max = len(candidates)
    scaler = fit_scaler(X)
    Xn = transform(scaler, X)
    selected = sfs(Xn, y, k_max, inner_cv=inner_cv, seed=seed,
                   lambda_l2=lambda_l2, candidates=candidates)
    w, b = train_logreg(Xn[:, selected], y, lambda_l2)
    return ReadabilityModel(
        scaler=scaler, selected=tuple(selected), weights=w, intercept=b,
        lambda_l2=lambda_l2, training_provenance=provenance,
    )


# --------------------------------------------------------------------------
# Evaluation
# --------------------------------------------------------------------------

@dataclass
class EvaluationReport:
    family: str
    k: int
    seed: int
    lambda_l2: float
    accuracy: float
    auc: float
    n_selected: float                 # mean selected-feature count per fold
    fold_accuracy: list[float] = field(default_factory=list)
    fold_auc: list[float] = field(default_factory=list)
    fold_selected: list[list[int]] = field(default_factory=list)
    fold_assignment: list[int] = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "k": self.k,
            "seed": self.seed,
            "lambda_l2": self.lambda_l2,
            "accuracy": self.accuracy,
            "auc": self.auc,
            "n_selected": self.n_selected,
            "fold_accuracy": self.fold_accuracy,
            "fold_auc": self.fold_auc,
            "fold_selected": self.fold_selected,
            "fold_assignment": self.fold_assignment,
            "config": self.config,
        }


def evaluate(X: np.ndarray, y, family: str = "all", k: int = 10, seed: int = 42,
             lambda_l2: float = 1.0, k_max: int | None = None,
             inner_cv: int = 5) -> EvaluationReport:
    """Cross-validated accuracy/AUC with per-fold scaling and selection."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    candidates = family_indices(family)
    if k_max is None:
        k_max = len(candidates)
    folds = stratified_folds(y, k, seed)

    report = EvaluationReport(family=family, k=k, seed=seed, lambda_l2=lambda_l2,
                              accuracy=0.0, auc=0.0, n_selected=0.0,
                              fold_assignment=folds.tolist())
    for fold in range(k):
        test = folds == fold
        scaler = fit_scaler(X[~test])
        Xn_train = transform(scaler, X[~test])
        Xn_test = transform(scaler, X[test])
        selected = sfs(Xn_train, y[~test], k_max, inner_cv=inner_cv,
                       seed=seed + 1000 * (fold + 1), lambda_l2=lambda_l2,
                       candidates=candidates)
        w, b = train_logreg(Xn_train[:, selected], y[~test], lambda_l2)
        probs = expit(Xn_test[:, selected] @ w + b)
        report.fold_accuracy.append(accuracy(probs, y[test]))
        report.fold_auc.append(auc(probs, y[test]))
        report.fold_selected.append(list(selected))

    report.accuracy = float(np.mean(report.fold_accuracy))
    report.auc = float(np.mean(report.fold_auc))
    report.n_selected = float(np.mean([len(s) for s in report.fold_selected]))
    return report


def render_evaluation_table(reports: list[EvaluationReport]) -> str:
    """Aligned text table: family, selected features, accuracy, AUC."""
    lines = [f"{'Feature Family':<16}{'Features':>10}{'Accuracy':>12}{'AUC':>10}"]
    for r in reports:
        lines.append(
            f"{r.family:<16}{r.n_selected:>10.1f}{100 * r.accuracy:>11.1f}%{100 * r.auc:>9.1f}%"
        )
    return "\n".join(lines)


# --------------------------------------------------------------------------
# Persistence
# --------------------------------------------------------------------------

def save_model(model: ReadabilityModel, path: str | Path) -> None:
    doc = {
        "schema_version": model.schema_version,
        "mu": model.scaler.mu.tolist(),
        "sigma": model.scaler.sigma.tolist(),
        "selected": list(model.selected),
        "weights": model.weights.tolist(),
        "intercept": model.intercept,
        "lambda_l2": model.lambda_l2,
        "provenance": model.training_provenance,
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> ReadabilityModel:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ModelError(f"cannot read model file {path}: {exc}") from exc

    required = {"schema_version", "mu", "sigma", "selected", "weights",
                "intercept", "lambda_l2", "provenance"}
    missing = required - doc.keys()
    if missing:
        raise ModelError(f"model file {path} is missing fields: {sorted(missing)}")
    if doc["schema_version"] != SCHEMA_VERSION:
        raise ModelError(
            f"schema version mismatch: file has {doc['schema_version']!r}, "
            f"this build expects {SCHEMA_VERSION!r}"
        )
    mu = np.asarray(doc["mu"], dtype=np.float64)
    sigma = np.asarray(doc["sigma"], dtype=np.float64)
    if mu.shape != (N_FEATURES,) or sigma.shape != (N_FEATURES,):
        raise ModelError(
            f"scaler length {mu.shape[0]}/{sigma.shape[0]} does not match "
            f"the {N_FEATURES}-feature schema"
        )
    selected = tuple(int(i) for i in doc["selected"])
    weights = np.asarray(doc["weights"], dtype=np.float64)
    if len(weights) != len(selected):
        raise ModelError(f"{len(weights)} weights for {len(selected)} selected features")
    if any(i < 0 or i >= N_FEATURES for i in selected):
        raise ModelError("selected feature index out of schema range")
    return ReadabilityModel(
        scaler=ScalerParams(mu=mu, sigma=sigma),
        selected=selected,
        weights=weights,
        intercept=float(doc["intercept"]),
        lambda_l2=float(doc["lambda_l2"]),
        schema_version=doc["schema_version"],
        training_provenance=doc["provenance"],
    )
