import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import CORE_WORDS, GEO_WORDS, TINY_WORDS, build_grammar, build_lexicon


@pytest.fixture(scope="session")
def core_lexicon():
    return build_lexicon(CORE_WORDS)


@pytest.fixture(scope="session")
def core_grammar():
    return build_grammar(CORE_WORDS)


@pytest.fixture(scope="session")
def tiny_grammar():
    return build_grammar(TINY_WORDS, max_number=2)


@pytest.fixture(scope="session")
def geo_grammar():
    return build_grammar(GEO_WORDS)
