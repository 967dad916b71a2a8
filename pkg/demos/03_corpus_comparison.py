#!/usr/bin/env python3
# Paired corpus comparison: score two id-matched corpora with one model,
# then test whether corpus A reads better than corpus B.
#
# The statistics are the ones the comparison report always carries:
# per-corpus averages, strict win rate, Wilcoxon signed-rank W/Wmax and
# p-value (exact for up to 25 nonzero pairs, tie-corrected normal beyond),
# and the effect size r = |Z|/sqrt(N).

import numpy as np

from codereadability import (
    featurize_corpus,
    load_dictionary,
    load_snippet,
    paired_compare,
    preprocess,
    render_report,
    score_corpus,
    train_model,
)

rng = np.random.default_rng(21)
dictionary = load_dictionary()


def tidy(i):
    text = (
        f"# Scale the measurement and keep two decimals.\n"
        f"def scale_measurement_{i}(measurement, factor):\n"
        f"    scaled = measurement * factor\n"
        f"    return round(scaled, 2)\n"
    )
    return preprocess(load_snippet(text, "python", f"task{i}"))


def tangled(i):
    text = (
        f"def s{i}(m,f):\n"
        f"    return round(m*f if f else m*{i % 9}.0,2) if m is not None else (f or 0)*0\n"
    )
    return preprocess(load_snippet(text, "python", f"task{i}"))


# Train a quick model on a labeled mix, exactly as in demo 02.
train_snips = [tidy(i) for i in range(20)] + [tangled(i + 100) for i in range(20)]
train_y = np.array([1] * 20 + [0] * 20)
X = featurize_corpus(train_snips, d=dictionary)
model = train_model(X, train_y, family="all", lambda_l2=1.0, k_max=3, inner_cv=3, seed=3)

# Two corpora answering the same 40 tasks: ids match pair-for-pair.
corpus_a = [tidy(i) for i in range(40)]
corpus_b = [tangled(i) for i in range(40)]

table_a = score_corpus(model, corpus_a, d=dictionary, label="tidy")
table_b = score_corpus(model, corpus_b, d=dictionary, label="tangled")

report = paired_compare(table_a, table_b)
print(render_report(report, format="table"))
print()
print("as JSON:")
print(render_report(report, format="json"))

# Comparing a corpus against itself is degenerate by construction: every
# difference is zero, and the report says so instead of inventing a p-value.
self_report = paired_compare(table_a, table_a)
print()
print(render_report(self_report, format="table"))
