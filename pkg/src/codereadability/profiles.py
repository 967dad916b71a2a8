"""Per-language lexical profiles.

A profile tells the scanner what counts as a keyword, a comment, a string
delimiter, and which operator symbols fall into each counted category.
Built-in profiles cover python, java, and cuda; ``generic`` falls back to
the python profile so unknown languages behave deterministically. Extra
languages can be loaded from an INI file without code changes.
"""

from __future__ import annotations

import configparser
import keyword
from dataclasses import dataclass
from pathlib import Path

IDENTIFIER_PATTERN = r"[A-Za-z_][A-Za-z0-9_]*"


@dataclass(frozen=True)
class LanguageProfile:
    name: str
    keyword_set: frozenset[str]
    line_comment_markers: tuple[str, ...]
    block_comment_delims: tuple[tuple[str, str], ...]
    string_delims: tuple[str, ...]
    # identifier lexeme: letter/underscore then letters/digits/underscores
    identifier_pattern: str = IDENTIFIER_PATTERN
    builtin_names: frozenset[str] = frozenset()
    branch_keywords: frozenset[str] = frozenset()
    loop_keywords: frozenset[str] = frozenset()
    assignment_ops: tuple[str, ...] = ()
    arithmetic_ops: tuple[str, ...] = ()
    comparison_ops: tuple[str, ...] = ()
    punctuation: tuple[str, ...] = ()
    # triple-quoted strings in statement position are treated as comments
    docstring_delims: tuple[str, ...] = ()

    def all_operator_symbols(self) -> tuple[str, ...]:
        """Every symbol token, longest first so the scanner munches maximally."""
        symbols = set(self.assignment_ops) | set(self.arithmetic_ops) | set(self.comparison_ops) | set(self.punctuation)
        return tuple(sorted(symbols, key=len, reverse=True))


_COMPARISONS = ("==", "!=", "<=", ">=", "<", ">")

_PY_BUILTINS = frozenset("""
    abs all any ascii bin bool bytearray bytes callable chr classmethod compile
    complex delattr dict dir divmod enumerate eval exec filter float format
    frozenset getattr globals hasattr hash help hex id input int isinstance
    issubclass iter len list locals map max min next object oct open ord pow
    print property range repr reversed round set setattr slice sorted
    staticmethod str sum super tuple type vars zip self cls
""".split())

PYTHON_PROFILE = LanguageProfile(
    name="python",
    keyword_set=frozenset(keyword.kwlist),
    line_comment_markers=("#",),
    block_comment_delims=(),
    string_delims=("'", '"'),
    builtin_names=_PY_BUILTINS,
    branch_keywords=frozenset({"if", "elif"}),
    loop_keywords=frozenset({"for", "while"}),
    assignment_ops=("=", "+=", "-=", "*=", "/=", "//=", "%=", "**=", "&=", "|=", "^=", ">>=", "<<=", ":="),
    arithmetic_ops=("+", "-", "*", "/", "%", "**", "//"),
    comparison_ops=_COMPARISONS,
    punctuation=("(", ")", "[", "]", "{", "}", ",", ":", ".", ";", "@", "->", "&", "|", "^", "~", "<<", ">>"),
    docstring_delims=('"""', "'''"),
)

_JAVA_KEYWORDS = frozenset("""
    abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while true false null var
""".split())

_JAVA_BUILTINS = frozenset("""
    String System Object Integer Double Boolean Float Long Short Byte Character
    Math List Map Set ArrayList HashMap HashSet LinkedList Iterator Exception
    RuntimeException StringBuilder StringBuffer Thread Runnable Override
    Comparable Collections Arrays Optional Stream out in err println print
""".split())

JAVA_PROFILE = LanguageProfile(
    name="java",
    keyword_set=_JAVA_KEYWORDS,
    line_comment_markers=("//",),
    block_comment_delims=(("/*", "*/"),),
    string_delims=('"', "'"),
    builtin_names=_JAVA_BUILTINS,
    branch_keywords=frozenset({"if", "case", "switch"}),
    loop_keywords=frozenset({"for", "while", "do"}),
    assignment_ops=("=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", ">>=", "<<=", ">>>="),
    arithmetic_ops=("+", "-", "*", "/", "%", "++", "--"),
    comparison_ops=_COMPARISONS,
    punctuation=("(", ")", "[", "]", "{", "}", ",", ":", ".", ";", "@", "&&", "||", "!", "?", "&", "|", "^", "~", "<<", ">>", ">>>", "::", "->"),
)

_CUDA_KEYWORDS = _JAVA_KEYWORDS - frozenset({"instanceof", "strictfp", "synchronized", "transient", "implements", "extends", "package", "import", "var"}) | frozenset("""
    auto constexpr decltype delete explicit extern friend inline mutable
    namespace nullptr operator register reinterpret_cast signed sizeof
    static_cast struct template typedef typeid typename union unsigned using
    virtual wchar_t __global__ __device__ __host__ __shared__ __constant__
    __restrict__ __syncthreads
""".split())

CUDA_PROFILE = LanguageProfile(
    name="cuda",
    keyword_set=_CUDA_KEYWORDS,
    line_comment_markers=("//",),
    block_comment_delims=(("/*", "*/"),),
    string_delims=('"', "'"),
    builtin_names=frozenset({"threadIdx", "blockIdx", "blockDim", "gridDim", "warpSize", "printf", "malloc", "free", "cudaMalloc", "cudaMemcpy", "cudaFree"}),
    branch_keywords=frozenset({"if", "case", "switch"}),
    loop_keywords=frozenset({"for", "while", "do"}),
    assignment_ops=JAVA_PROFILE.assignment_ops,
    arithmetic_ops=JAVA_PROFILE.arithmetic_ops,
    comparison_ops=_COMPARISONS,
    punctuation=JAVA_PROFILE.punctuation,
)

_BUILTIN_PROFILES = {
    "python": PYTHON_PROFILE,
    "java": JAVA_PROFILE,
    "cuda": CUDA_PROFILE,
    # deterministic fallback for unknown languages
    "generic": PYTHON_PROFILE,
}


_registered_profiles: dict[str, LanguageProfile] = {}


def get_profile(language: str) -> LanguageProfile:
    if language in _registered_profiles:
        return _registered_profiles[language]
    try:
        return _BUILTIN_PROFILES[language]
    except KeyError:
        raise ValueError(f"no profile for language {language!r}") from None


def register_profiles(profiles: dict[str, LanguageProfile]) -> None:
    """Install profiles into the lookup table; a profile named after a
    built-in language (e.g. ``generic``) overrides it."""
    _registered_profiles.update(profiles)


def _split_list(raw: str) -> tuple[str, ...]:
    return tuple(tok for tok in raw.split() if tok)


def _split_pairs(raw: str) -> tuple[tuple[str, str], ...]:
    toks = raw.split()
    if len(toks) % 2:
        raise ValueError(f"block comment delimiters must come in open/close pairs: {raw!r}")
    return tuple((toks[i], toks[i + 1]) for i in range(0, len(toks), 2))


def load_profiles(path: str | Path) -> dict[str, LanguageProfile]:
    """Load language profiles from an INI file, one section per language.

    Keys hold whitespace-separated token lists, e.g.::

        [mylang]
        keywords = if else while fn let
        line_comments = #
        block_comments = /* */
        strings = " '
    """
    parser = configparser.ConfigParser()
    with open(path, encoding="utf-8") as fh:
        parser.read_file(fh)
    profiles: dict[str, LanguageProfile] = {}
    for section in parser.sections():
        sec = parser[section]
        base = PYTHON_PROFILE
        profiles[section] = LanguageProfile(
            name=section,
            keyword_set=frozenset(_split_list(sec.get("keywords", ""))),
            line_comment_markers=_split_list(sec.get("line_comments", "")),
            block_comment_delims=_split_pairs(sec.get("block_comments", "")),
            string_delims=_split_list(sec.get("strings", '"')),
            builtin_names=frozenset(_split_list(sec.get("builtins", ""))),
            branch_keywords=frozenset(_split_list(sec.get("branch_keywords", "if"))),
            loop_keywords=frozenset(_split_list(sec.get("loop_keywords", "for while"))),
            assignment_ops=_split_list(sec.get("assignment_ops", " ".join(base.assignment_ops))),
            arithmetic_ops=_split_list(sec.get("arithmetic_ops", " ".join(base.arithmetic_ops))),
            comparison_ops=_split_list(sec.get("comparison_ops", " ".join(base.comparison_ops))),
            punctuation=_split_list(sec.get("punctuation", " ".join(base.punctuation))),
            docstring_delims=_split_list(sec.get("docstring_delims", "")),
        )
    return profiles
