import pickle

import pytest

from swapbribe import COST_MAX, FORBIDDEN, add_costs, is_forbidden
from swapbribe.costs import Forbidden, check_cost, sub_costs


def test_forbidden_is_a_singleton():
    assert Forbidden() is FORBIDDEN
    assert pickle.loads(pickle.dumps(FORBIDDEN)) is FORBIDDEN


def test_forbidden_compares_above_every_integer():
    assert FORBIDDEN > 10**18
    assert not FORBIDDEN < 0
    assert 3 < FORBIDDEN
    assert min(5, FORBIDDEN) == 5
    assert sorted([FORBIDDEN, 2, 0]) == [0, 2, FORBIDDEN]
    assert FORBIDDEN <= FORBIDDEN and FORBIDDEN >= 0


def test_forbidden_absorbs_addition():
    assert add_costs(1, FORBIDDEN, 2) is FORBIDDEN
    assert FORBIDDEN + 7 is FORBIDDEN
    assert 7 + FORBIDDEN is FORBIDDEN
    assert add_costs() == 0


def test_checked_addition_overflows_loudly():
    assert add_costs(COST_MAX - 1, 1) == COST_MAX
    with pytest.raises(OverflowError):
        add_costs(COST_MAX, 1)
    with pytest.raises(OverflowError):
        check_cost(COST_MAX + 1)


def test_cost_validation():
    with pytest.raises(ValueError):
        check_cost(-1)
    with pytest.raises(ValueError):
        check_cost(1.5)
    with pytest.raises(ValueError):
        check_cost(True)
    assert check_cost(0) == 0
    assert is_forbidden(check_cost(FORBIDDEN))


def test_sub_costs_for_telescoping():
    assert sub_costs(5, 2) == 3
    assert sub_costs(FORBIDDEN, 2) is FORBIDDEN
    with pytest.raises(ValueError):
        sub_costs(2, 5)
    with pytest.raises(ValueError):
        sub_costs(2, FORBIDDEN)
