import os

import pytest

from reidemeister.corpus import standard_corpus
from reidemeister.groups import from_permutation_generators


@pytest.fixture(autouse=True, scope="session")
def _isolated_cache(tmp_path_factory):
    # never touch the user's cache directory from the tests
    old = os.environ.get("TBL_CACHE_DIR")
    os.environ["TBL_CACHE_DIR"] = str(tmp_path_factory.mktemp("cache"))
    yield
    if old is None:
        del os.environ["TBL_CACHE_DIR"]
    else:
        os.environ["TBL_CACHE_DIR"] = old


@pytest.fixture(scope="session")
def corpus():
    return standard_corpus()


@pytest.fixture(scope="session")
def S3():
    return from_permutation_generators(3, [[2, 1, 3], [2, 3, 1]], name="S3")


@pytest.fixture(scope="session")
def Z5():
    return from_permutation_generators(5, [[2, 3, 4, 5, 1]], name="Z5")

