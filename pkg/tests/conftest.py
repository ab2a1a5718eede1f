import pytest

from refchoice import IraModel, LinearOrder, Universe
from refchoice.rationals import Rat

# bitmask shorthands for the (x, y, z) universe
X, Y, Z = 1, 2, 4
XY, XZ, YZ, XYZ = 3, 5, 6, 7


@pytest.fixture
def xyz():
    return Universe(("x", "y", "z"))


@pytest.fixture
def pref_xyz():
    return LinearOrder((0, 1, 2))  # x > y > z


@pytest.fixture
def ira_half(xyz, pref_xyz):
    """Independent attention with every inclusion rate 1/2."""
    gamma = {(r, x): Rat(1, 2) for r in range(3) for x in range(3) if x != r}
    return IraModel(xyz, pref_xyz, gamma)
