from functools import lru_cache

import pytest

from tautilt.explorer import explore
from tautilt.silting import SiltContext
from tautilt.spec import bundled_algebra

FINITE_EXAMPLES = ("a2-path", "a3-rel", "preproj-a2", "one-simple")


@lru_cache(maxsize=None)
def context(name: str) -> SiltContext:
    return SiltContext(bundled_algebra(name))


@lru_cache(maxsize=None)
def graph(name: str, start: str = "A"):
    return explore(context(name), start=start)


@pytest.fixture
def a2():
    return bundled_algebra("a2-path")


@pytest.fixture
def a3():
    return bundled_algebra("a3-rel")
