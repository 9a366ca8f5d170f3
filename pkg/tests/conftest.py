import pytest

from khovlab.lattice import build_mn


@pytest.fixture(scope="session")
def mn():
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = build_mn(n)
        return cache[n]

    return get
