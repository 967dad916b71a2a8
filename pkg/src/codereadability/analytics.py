"""Corpus scoring and paired corpus comparison.

The comparison is a two-sided Wilcoxon signed-rank test on matched score
pairs: zero differences are dropped, tied absolute differences get average
ranks, the p-value comes from the exact sign-assignment distribution for
up to 25 nonzero pairs and from the tie-corrected normal approximation
beyond that. The effect size is |Z|/sqrt(N) over all submitted pairs.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np
from scipy.stats import norm, rankdata

from .config import AnalysisConfig
from .corpus import Snippet
from .dictionary import DictionaryProvider, load_dictionary
from .model import ReadabilityModel, predict
from .profiles import LanguageProfile
from .vectorizer import featurize

EXACT_TEST_MAX_PAIRS = 25


@dataclass(frozen=True)
class ScoreTable:
    ids: tuple[str, ...]
    linear_scores: tuple[float, ...]
    probabilities: tuple[float, ...]
    model_ref: str = ""
    corpus_label: str = ""

    def __len__(self) -> int:
        return len(self.ids)


def score_corpus(model: ReadabilityModel, snippets: list[Snippet],
                 p: LanguageProfile | None = None,
                 d: DictionaryProvider | None = None,
                 config: AnalysisConfig | None = None,
                 label: str = "", jobs: int = 1) -> ScoreTable:
    """Score snippets in input order; fan-out never changes the output."""
    if config is None:
        config = AnalysisConfig()
    if d is None:
        d = load_dictionary(config.dictionary_path)

    def one(snippet: Snippet) -> tuple[float, float]:
        vec = featurize(snippet, p, d, config)
        return predict(model, vec)

    if jobs > 1 and len(snippets) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(one, snippets))
    else:
        results = [one(s) for s in snippets]

    return ScoreTable(
        ids=tuple(s.id for s in snippets),
        linear_scores=tuple(linear for _, linear in results),
        probabilities=tuple(prob for prob, _ in results),
        corpus_label=label,
    )


def write_score_table(table: ScoreTable, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "linear_score", "probability"])
        for sid, score, prob in zip(table.ids, table.linear_scores, table.probabilities):
            writer.writerow([sid, f"{score:.12g}", f"{prob:.12g}"])


def read_score_table(path: str | Path, label: str = "") -> ScoreTable:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["id", "linear_score", "probability"]:
            raise ValueError(f"unexpected score table header in {path}: {header}")
        ids, scores, probs = [], [], []
        for row in reader:
            ids.append(row[0])
            scores.append(float(row[1]))
            probs.append(float(row[2]))
    return ScoreTable(tuple(ids), tuple(scores), tuple(probs),
                      corpus_label=label or Path(path).stem)


# --------------------------------------------------------------------------
# Wilcoxon signed-rank test
# --------------------------------------------------------------------------

def _exact_two_sided_p(w_plus: float, ranks: np.ndarray) -> float:
    """Exact p over all 2^n sign assignments, via the rank-sum distribution.

    Average ranks can be half-integers, so everything is doubled to stay
    integral; counts are exact int64 (safe for n <= 62).
    """
    doubled = np.rint(2.0 * ranks).astype(np.int64)
    total = int(doubled.sum())
    counts = np.zeros(total + 1, dtype=np.int64)
    counts[0] = 1
    for r in doubled:
        shifted = np.zeros_like(counts)
        shifted[r:] = counts[:-r] if r > 0 else counts
        counts = counts + shifted
    w2 = int(round(2.0 * w_plus))
    lo = min(w2, total - w2)
    # the distribution is symmetric, so both tails have equal mass
    tail = int(counts[: lo + 1].sum())
    return min(1.0, 2.0 * tail / float(2 ** len(ranks)))


@dataclass(frozen=True)
class WilcoxonResult:
    w: float            # min(W+, W-)
    w_plus: float
    n_nonzero: int
    p_value: float
    z: float            # tie-corrected normal deviate of W+
    method: str         # "exact", "normal", or "degenerate"


def wilcoxon_signed_rank(differences, exact_max: int = EXACT_TEST_MAX_PAIRS) -> WilcoxonResult:
    """Two-sided test on paired differences; zeros dropped."""
    diffs = np.asarray(differences, dtype=np.float64)
    nonzero = diffs[diffs != 0.0]
    n = len(nonzero)
    if n == 0:
        return WilcoxonResult(w=0.0, w_plus=0.0, n_nonzero=0, p_value=1.0,
                              z=0.0, method="degenerate")

    ranks = rankdata(np.abs(nonzero))
    w_plus = float(ranks[nonzero > 0].sum())
    w_minus = float(ranks[nonzero < 0].sum())
    w = min(w_plus, w_minus)

    mean = n * (n + 1) / 4.0
    variance = n * (n + 1) * (2 * n + 1) / 24.0
    _, tie_counts = np.unique(np.abs(nonzero), return_counts=True)
    variance -= float(np.sum(tie_counts**3 - tie_counts)) / 48.0
    z = (w_plus - mean) / np.sqrt(variance)

    if n <= exact_max:
        p = _exact_two_sided_p(w_plus, ranks)
        method = "exact"
    else:
        p = float(2.0 * norm.sf(abs(z)))
        method = "normal"
    return WilcoxonResult(w=w, w_plus=w_plus, n_nonzero=n, p_value=p,
                          z=float(z), method=method)


# --------------------------------------------------------------------------
# Paired comparison
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ComparisonReport:
    label_a: str
    label_b: str
    n_pairs: int
    n_nonzero: int
    avg_a: float
    avg_b: float
    win_rate_a: float
    wilcoxon_w: float
    w_over_wmax: float
    p_value: float
    effect_size_r: float
    degenerate: bool
    method: str

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, doc: dict) -> "ComparisonReport":
        return cls(**doc)


def paired_compare(a: ScoreTable, b: ScoreTable, join_key: str = "id") -> ComparisonReport:
    """Compare two score tables over their shared snippet ids."""
    if join_key != "id":
        raise ValueError(f"unsupported join key {join_key!r}; score tables join on id")
    if len(set(a.ids)) != len(a.ids):
        raise ValueError("duplicate ids in table a")
    index_b = {sid: i for i, sid in enumerate(b.ids)}
    if len(index_b) != len(b.ids):
        raise ValueError("duplicate ids in table b")
    missing_in_b = [sid for sid in a.ids if sid not in index_b]
    missing_in_a = [sid for sid in index_b if sid not in set(a.ids)]
    if missing_in_b or missing_in_a:
        raise ValueError(
            "score tables do not align one-to-one; "
            f"only in a: {missing_in_b[:10]}, only in b: {missing_in_a[:10]}"
        )

    scores_a = np.asarray(a.linear_scores)
    scores_b = np.asarray([b.linear_scores[index_b[sid]] for sid in a.ids])
    n = len(scores_a)
    diffs = scores_a - scores_b
    result = wilcoxon_signed_rank(diffs)

    w_max = result.n_nonzero * (result.n_nonzero + 1) / 2.0
    return ComparisonReport(
        label_a=a.corpus_label,
        label_b=b.corpus_label,
        n_pairs=n,
        n_nonzero=result.n_nonzero,
        avg_a=float(scores_a.mean()) if n else 0.0,
        avg_b=float(scores_b.mean()) if n else 0.0,
        win_rate_a=float(np.mean(diffs > 0)) if n else 0.0,
        wilcoxon_w=result.w,
        w_over_wmax=result.w / w_max if w_max > 0 else 0.0,
        p_value=result.p_value,
        effect_size_r=abs(result.z) / np.sqrt(n) if n else 0.0,
        degenerate=result.method == "degenerate",
        method=result.method,
    )


# --------------------------------------------------------------------------
# Rendering
# --------------------------------------------------------------------------

_TABLE_COLUMNS = ("Corpus A", "Corpus B", "Avg A", "Avg B", "Win Rate (%)",
                  "W/Wmax", "p-value", "r")


def _report_row(r: ComparisonReport) -> list[str]:
    p_text = f"{r.p_value:.3g}" if r.p_value >= 0.001 else "<0.001"
    return [
        r.label_a or "A",
        r.label_b or "B",
        f"{r.avg_a:.4f}",
        f"{r.avg_b:.4f}",
        f"{100.0 * r.win_rate_a:.2f}",
        f"{r.w_over_wmax:.3f}",
        p_text,
        f"{r.effect_size_r:.3f}",
    ]


def render_report(reports, format: str = "table") -> str:
    """Render one or more comparison reports as table, json, or csv."""
    if isinstance(reports, ComparisonReport):
        reports = [reports]
    if format == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2)
    if format == "csv":
        import io
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(_TABLE_COLUMNS)
        for r in reports:
            writer.writerow(_report_row(r))
        return buf.getvalue()
    if format == "table":
        rows = [list(_TABLE_COLUMNS)] + [_report_row(r) for r in reports]
        widths = [max(len(row[i]) for row in rows) for i in range(len(_TABLE_COLUMNS))]
        lines = [
            "  ".join(cell.rjust(widths[i]) for i, cell in enumerate(row))
            for row in rows
        ]
        for r in reports:
            if r.degenerate:
                lines.append(f"note: {r.label_a or 'A'} vs {r.label_b or 'B'}: "
                             "no nonzero pairs; test degenerate")
        return "\n".join(lines)
    raise ValueError(f"unknown report format {format!r}")


def parse_report_json(text: str) -> list[ComparisonReport]:
    return [ComparisonReport.from_dict(doc) for doc in json.loads(text)]
