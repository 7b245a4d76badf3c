import os

os.environ.setdefault("GTQD_CROSS_CHECK", "1")

import pytest

from gtqd import fusion
from gtqd.groups import subgroup_from
from gtqd.polyhedral import build

# every local fusion computation in the test run is repeated through the general path
fusion.CROSS_CHECK = True

_BUILT = {}


def built(spec: str):
    if spec not in _BUILT:
        _BUILT[spec] = build(spec)
    return _BUILT[spec]


def su2_center(B):
    return subgroup_from(B.group, [B.involution])


@pytest.fixture
def get_built():
    return built
