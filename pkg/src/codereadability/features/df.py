"""Visual and geometric features, treating the snippet as a block of
character cells: content densities, bounding-box occupancy, line-length
regularity, operator/bracket column alignment, and identifier-text
properties.

These are display-oriented textual proxies; no rendering is involved.
"""

from __future__ import annotations

import re
from dataclasses import astuple, dataclass

from ..dictionary import DictionaryProvider
from ..lexical import LexicalProfile, split_identifier

# printable ASCII range, the divisor for character-set "visual complexity"
_CHARSET_NORM = 95

_WORD_RE = re.compile(r"[A-Za-z]+(?:'[A-Za-z]+)*")


@dataclass(frozen=True)
class DfFeatures:
    vkd: float
    vsd: float
    vcd: float
    vc: float
    saa: float
    sra: float
    sr: float
    sd: float
    align_op: float
    align_br: float
    align_cons: float
    text_english: float
    text_comment: float
    text_vocab: float
    text_id_len: float

    def as_tuple(self) -> tuple[float, ...]:
        return astuple(self)


def _mean(values) -> float:
    values = list(values)
    return sum(values) / len(values) if values else 0.0


def _pop_std(values) -> float:
    values = list(values)
    if len(values) <= 1:
        return 0.0
    mu = _mean(values)
    return (sum((v - mu) ** 2 for v in values) / len(values)) ** 0.5


def visual_densities(profile: LexicalProfile) -> tuple[float, float, float, float]:
    denom = max(1, profile.total_chars)
    return (
        profile.keyword_chars / denom,
        profile.string_chars / denom,
        profile.comment_chars / denom,
        len(profile.char_vocab) / _CHARSET_NORM,
    )


def spatial(profile: LexicalProfile) -> tuple[float, float, float, float]:
    lengths = [stats.length for stats in profile.per_line]
    w_max = max(lengths, default=0)
    saa = float(profile.total_chars)
    sra = profile.total_chars / max(1, profile.m * w_max)
    sd = profile.m_ne / max(1, profile.m)
    sr = 1.0 - _pop_std(lengths) / max(1.0, _mean(lengths))
    return saa, sra, sr, sd


def alignment(profile: LexicalProfile) -> tuple[float, float, float]:
    """Column regularity of assignment operators and opening brackets;
    one or zero occurrences count as perfectly aligned."""
    align_op = 1.0 / (1.0 + _pop_std(profile.assign_columns))
    align_br = 1.0 / (1.0 + _pop_std(profile.bracket_columns))
    return align_op, align_br, (align_op + align_br) / 2.0


def text_features(profile: LexicalProfile, dictionary: DictionaryProvider) -> tuple[float, float, float, float]:
    user = profile.identifiers_user
    n_user = len(user)

    def is_english_ident(ident: str) -> bool:
        terms = split_identifier(ident)
        return bool(terms) and all(dictionary.is_english(t) for t in terms)

    english = sum(1 for ident in user if is_english_ident(ident))
    comment_text = " ".join(c.text for c in profile.comments)
    w_com = len(_WORD_RE.findall(comment_text))
    w_code = sum(
        1 for ident in profile.identifiers
        for term in split_identifier(ident)
        if not term.isdigit()
    )
    return (
        english / max(1, n_user),
        w_com / max(1, w_com + w_code),
        float(len(set(user))),
        sum(len(t) for t in user) / max(1, n_user),
    )


def compute_df(profile: LexicalProfile, dictionary: DictionaryProvider) -> DfFeatures:
    vkd, vsd, vcd, vc = visual_densities(profile)
    saa, sra, sr, sd = spatial(profile)
    align_op, align_br, align_cons = alignment(profile)
    text_english, text_comment, text_vocab, text_id_len = text_features(profile, dictionary)
    return DfFeatures(
        vkd=vkd, vsd=vsd, vcd=vcd, vc=vc,
        saa=saa, sra=sra, sr=sr, sd=sd,
        align_op=align_op, align_br=align_br, align_cons=align_cons,
        text_english=text_english, text_comment=text_comment,
        text_vocab=text_vocab, text_id_len=text_id_len,
    )
