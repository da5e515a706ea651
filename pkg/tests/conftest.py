import pytest

from pliable import Instance

# Five clients over four messages; order 1,2,3,4 gives effective degrees 3,2,0,0
# and order 2,4,1,3 gives 3,1,1,0.
FIVE_CLIENT = [{1, 2}, {1, 3}, {2, 3}, {1, 3, 4}, {2, 4}]


@pytest.fixture
def five_client():
    return Instance.from_sets(4, FIVE_CLIENT)
