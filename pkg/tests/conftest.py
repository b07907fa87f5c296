import pytest

from clusteralg.exchange import ExchangeMatrix
from clusteralg.unfolding import Covering, read_quiver

C2_COVER_TEXT = """\
quiver 3
vertices 1 2a 2b
frozen
arrows
1 2a 1
1 2b 1
group
(2a 2b)
"""


@pytest.fixture
def a2():
    return ExchangeMatrix.from_rows([[0, 1], [-1, 0]])


@pytest.fixture
def a3():
    return ExchangeMatrix.from_rows([[0, 1, 0], [-1, 0, 1], [0, -1, 0]])


@pytest.fixture
def c2():
    return ExchangeMatrix.from_rows([[0, 1], [-2, 0]])


@pytest.fixture
def sss3():
    # acyclic, sign-skew-symmetric, not skew-symmetrizable
    return ExchangeMatrix.from_rows([[0, 1, 2], [-2, 0, 3], [-1, -1, 0]])


@pytest.fixture
def c2_cover():
    quiver, action = read_quiver(C2_COVER_TEXT)
    return Covering.build(quiver, action)
