from __future__ import annotations

import pytest

from cayleyham.catalog import S3
from cayleyham.families import g5_example, theorem13_family
from cayleyham.groups import build_group


@pytest.fixture(scope="session")
def g5():
    """Z12 ⋉ Z5 with a = h^2 z, b = h^3 z."""
    G, (a, b) = g5_example().build()
    return G, a, b


@pytest.fixture(scope="session")
def fam7():
    """(Z2 x Z3) ⋉ Z7 with a = abar z, b = bbar z."""
    G, (a, b) = theorem13_family(7, 1).build()
    return G, a, b


@pytest.fixture(scope="session")
def s3():
    G = build_group(S3)
    return G, G.index((1, 0, 2)), G.index((1, 2, 0))
