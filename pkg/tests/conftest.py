from __future__ import annotations

import pytest

from factorcrit import generate_nonisomorphic

_CATALOGS: dict[int, list] = {}


@pytest.fixture(scope="session")
def catalog():
    """Memoized access to the full catalog of an order (lists of Graph)."""

    def get(n: int) -> list:
        if n not in _CATALOGS:
            _CATALOGS[n] = list(generate_nonisomorphic(n))
        return _CATALOGS[n]

    return get
