import pytest
from hypothesis import settings

from kummer_mw.family import validate_params

settings.register_profile("fixed", derandomize=True, deadline=None, max_examples=100)
settings.load_profile("fixed")


@pytest.fixture(scope="session")
def p726():
    return validate_params(7, 2, 6)


@pytest.fixture(scope="session")
def p1325():
    return validate_params(13, 2, 5)


@pytest.fixture(scope="session")
def p766():
    return validate_params(7, 6, 6, relaxed=True)
