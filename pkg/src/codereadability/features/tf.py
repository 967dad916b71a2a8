"""Textual features: naming quality, comment-code consistency, comment
prose readability, block coherence, and concept counting.

All sixteen values land in [0, 1] except CR (a Flesch score) and the two
NMI/NM groups (depth sums and sense means). Missing evidence defaults to
zero so the feature block stays fixed-width.
"""

from __future__ import annotations

import re
from dataclasses import astuple, dataclass

import numpy as np

from ..dictionary import DictionaryProvider, count_syllables
from ..lexical import LexicalProfile, TextBlock

_WORD_RE = re.compile(r"[A-Za-z]+(?:'[A-Za-z]+)*")
_SENTENCE_RE = re.compile(r"[.!?]+")


@dataclass(frozen=True)
class TfFeatures:
    cic: float
    cic_syn: float
    itid_min: float
    itid_avg: float
    itid_max: float
    nmi_min: float
    nmi_avg: float
    nmi_max: float
    cr: float
    nm_avg: float
    nm_max: float
    tc_min: float
    tc_avg: float
    tc_max: float
    noc: float
    noc_norm: float

    def as_tuple(self) -> tuple[float, ...]:
        return astuple(self)


def jaccard(a: frozenset | set, b: frozenset | set) -> float:
    union = len(a | b)
    if union == 0:
        return 0.0
    return len(a & b) / union


def cic(profile: LexicalProfile, dictionary: DictionaryProvider) -> tuple[float, float]:
    """Comment-identifier consistency, plain and synonym-expanded."""
    tc, ti = profile.terms_comment, profile.terms_identifier
    plain = jaccard(tc, ti)
    expanded = jaccard(dictionary.expand_synonyms(tc), dictionary.expand_synonyms(ti))
    return plain, expanded


def identifier_semantics(profile: LexicalProfile, dictionary: DictionaryProvider) -> tuple[float, ...]:
    """Per-line identifier-term stats: dictionary-membership fraction,
    summed hypernym depth, mean sense count.

    Returns (itid min/avg/max, nmi min/avg/max, nm avg/max); all zeros when
    no line carries an identifier.
    """
    itid_vals: list[float] = []
    nmi_vals: list[float] = []
    nm_vals: list[float] = []
    for stats, terms in zip(profile.per_line, profile.line_identifier_terms):
        if stats.identifiers == 0:
            continue
        entries = [dictionary.lookup(t) for t in terms]
        denom = max(1, len(terms))
        itid_vals.append(sum(1 for e in entries if e.in_dictionary) / denom)
        nmi_vals.append(float(sum(e.max_depth for e in entries)))
        nm_vals.append(sum(e.senses for e in entries) / denom)
    if not itid_vals:
        return (0.0,) * 8
    return (
        min(itid_vals), sum(itid_vals) / len(itid_vals), max(itid_vals),
        min(nmi_vals), sum(nmi_vals) / len(nmi_vals), max(nmi_vals),
        sum(nm_vals) / len(nm_vals), max(nm_vals),
    )


def comment_readability(profile: LexicalProfile) -> float:
    """Flesch reading ease over all comment text concatenated."""
    text = " ".join(c.text for c in profile.comments)
    words = _WORD_RE.findall(text)
    n_words = len(words)
    if n_words == 0:
        return 0.0
    # a wordy comment with no terminal punctuation still reads as one sentence
    n_sentences = max(1, len(_SENTENCE_RE.findall(text)))
    n_syllables = sum(count_syllables(w) for w in words)
    return 206.835 - 1.015 * (n_words / n_sentences) - 84.6 * (n_syllables / n_words)


def text_coherence(blocks: list[TextBlock]) -> tuple[float, float, float]:
    """Min/avg/max pairwise Jaccard between block token sets."""
    if len(blocks) < 2:
        return 0.0, 0.0, 0.0
    values = [
        jaccard(blocks[i].tokens, blocks[j].tokens)
        for i in range(len(blocks))
        for j in range(i + 1, len(blocks))
    ]
    return min(values), sum(values) / len(values), max(values)


def token_overlap_distance(a: frozenset | set, b: frozenset | set) -> float:
    if not a and not b:
        return 0.0  # identical (empty) token sets are at distance zero
    return 1.0 - jaccard(a, b)


def pairwise_overlap_distances(token_sets: list[frozenset]) -> np.ndarray:
    """Full matrix of token-overlap distances, via a binary incidence
    matrix so large snippets stay fast."""
    vocab = {tok: j for j, tok in enumerate(sorted(set().union(*token_sets)))}
    incidence = np.zeros((len(token_sets), len(vocab)), dtype=np.float64)
    for i, toks in enumerate(token_sets):
        for tok in toks:
            incidence[i, vocab[tok]] = 1.0
    intersection = incidence @ incidence.T
    sizes = incidence.sum(axis=1)
    union = sizes[:, None] + sizes[None, :] - intersection
    with np.errstate(invalid="ignore"):
        dist = 1.0 - intersection / union
    return np.where(union > 0, dist, 0.0)  # two empty sets sit at distance 0


def _dbscan_cluster_count(adjacency: np.ndarray, min_samples: int) -> int:
    """Number of non-noise density clusters given the eps-neighborhood
    adjacency matrix. Neighborhoods include the point itself."""
    n = len(adjacency)
    neighborhoods = [np.flatnonzero(row) for row in adjacency]
    is_core = [len(nb) >= min_samples for nb in neighborhoods]
    labels = [-1] * n
    clusters = 0
    for seed in range(n):
        if labels[seed] != -1 or not is_core[seed]:
            continue
        labels[seed] = clusters
        frontier = [seed]
        while frontier:
            point = frontier.pop()
            for neighbor in neighborhoods[point]:
                if labels[neighbor] == -1:
                    labels[neighbor] = clusters
                    if is_core[neighbor]:
                        frontier.append(neighbor)
        clusters += 1
    return clusters


def concept_count(profile: LexicalProfile, eps: float = 0.5, min_samples: int = 2) -> tuple[float, float]:
    """Cluster valid lines by token-set overlap; count non-noise clusters."""
    token_sets = [
        frozenset(toks)
        for stats, toks in zip(profile.per_line, profile.line_tokens)
        if not stats.is_blank and not stats.is_comment_only and toks
    ]
    m_val = len(token_sets)
    if m_val == 0:
        return 0.0, 0.0
    dist = pairwise_overlap_distances(token_sets)
    noc = _dbscan_cluster_count(dist <= eps, min_samples)
    return float(noc), noc / m_val


def compute_tf(profile: LexicalProfile, blocks: list[TextBlock],
               dictionary: DictionaryProvider,
               dbscan_eps: float = 0.5, dbscan_min_samples: int = 2) -> TfFeatures:
    cic_val, cic_syn_val = cic(profile, dictionary)
    sem = identifier_semantics(profile, dictionary)
    tc_min, tc_avg, tc_max = text_coherence(blocks)
    noc, noc_norm = concept_count(profile, dbscan_eps, dbscan_min_samples)
    return TfFeatures(
        cic=cic_val,
        cic_syn=cic_syn_val,
        itid_min=sem[0], itid_avg=sem[1], itid_max=sem[2],
        nmi_min=sem[3], nmi_avg=sem[4], nmi_max=sem[5],
        cr=comment_readability(profile),
        nm_avg=sem[6], nm_max=sem[7],
        tc_min=tc_min, tc_avg=tc_avg, tc_max=tc_max,
        noc=noc, noc_norm=noc_norm,
    )
