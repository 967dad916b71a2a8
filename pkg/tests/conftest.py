from pathlib import Path

import pytest

from codereadability.corpus import load_snippet, preprocess
from codereadability.dictionary import DictionaryProvider

WORDNET_MINI = Path(__file__).parent / "data" / "wordnet_mini"


@pytest.fixture(scope="session")
def bundled_dict() -> DictionaryProvider:
    return DictionaryProvider.bundled()


@pytest.fixture(scope="session")
def wordnet_dict() -> DictionaryProvider:
    return DictionaryProvider.from_wordnet(WORDNET_MINI)


def snip(text: str, language: str = "python", id: str = "s"):
    """Preprocessed snippet from inline source text."""
    return preprocess(load_snippet(text, language, id))
