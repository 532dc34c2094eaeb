import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from latmod import build_lattice, chain, n5, product


@pytest.fixture(scope="session")
def pentagon():
    return n5()


@pytest.fixture(scope="session")
def square():
    return product(chain(1), chain(1))


@pytest.fixture(scope="session")
def grid21():
    return product(chain(2), chain(1))


@pytest.fixture(scope="session")
def corpus(pentagon, square, grid21):
    """The lattices most tests sweep over."""
    return {
        "n5": pentagon,
        "square": square,
        "grid2x1": grid21,
        "chain1": chain(1),
        "chain2": chain(2),
        "chain3": chain(3),
    }


def lattice_as_sets(lat):
    """(n, leq pairs, cover pairs, meets, joins) for the naive oracles."""
    n = lat.n
    leq = {(i, j) for i in range(n) for j in range(n) if lat.le(i, j)}
    covers = {(c.source, c.target) for c in lat.covers}
    meets = [[lat.meet(i, j) for j in range(n)] for i in range(n)]
    joins = [[lat.join(i, j) for j in range(n)] for i in range(n)]
    return n, leq, covers, meets, joins
