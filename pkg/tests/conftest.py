import os

import hypothesis
import pytest

from semigroupoids import corpus

hypothesis.settings.register_profile(
    "ci", deadline=None, max_examples=40, derandomize=True
)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture(scope="session")
def structures():
    return corpus.structure_corpus()


@pytest.fixture(scope="session")
def small_structures():
    return list(corpus.enumerate_inverse_semigroupoids(3))


@pytest.fixture(scope="session")
def actions():
    return corpus.action_corpus()
