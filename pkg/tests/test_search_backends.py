"""The compiled search extension and its pure-Python fallback must agree
exactly: same costs, same choices, same capacity behavior."""

import random
from array import array

import pytest

from swapbribe import CapacityError
from swapbribe import _pysearch
from swapbribe.search import backend_name

try:
    from swapbribe import _speedups
except ImportError:
    _speedups = None

MODES = [(_pysearch.MODE_SCORES, "scores"), (_pysearch.MODE_MAXIMIN, "maximin"),
         (_pysearch.MODE_COPELAND, "copeland")]


def random_problem(rng, mode):
    n = rng.randint(0, 4)
    m = rng.randint(1, 4)
    eff_len = m if mode == _pysearch.MODE_SCORES else m * m
    costs, offsets, effects = [], [0], []
    for _ in range(n):
        for _ in range(rng.randint(1, 5)):
            costs.append(rng.randint(0, 6))
            effects.extend(rng.randint(0, 3) for _ in range(eff_len))
        offsets.append(len(costs))
    budget = rng.randint(0, 12)
    p = rng.randrange(m)
    num, den = rng.choice([(0, 1), (1, 2), (1, 1)])
    return costs, offsets, effects, eff_len, m, budget, p, num, den


def run_pure(args, node_cap=10**6):
    costs, offsets, effects, eff_len, m, budget, p, num, den = args
    mode = run_pure.mode
    return _pysearch.search_best(costs, offsets, effects, eff_len, m, budget,
                                 p, mode, num, den, node_cap)


def run_compiled(args, node_cap=10**6):
    costs, offsets, effects, eff_len, m, budget, p, num, den = args
    mode = run_compiled.mode
    result = _speedups.search_best(array("q", costs), array("q", offsets),
                                   array("q", effects), eff_len, m, budget,
                                   p, mode, num, den, node_cap)
    if result is None:
        return None
    cost, choices = result
    return cost, [int(c) for c in choices]


@pytest.mark.skipif(_speedups is None, reason="extension not built")
@pytest.mark.parametrize("mode,label", MODES)
def test_backends_agree_on_random_problems(mode, label):
    rng = random.Random(hash(label) % 1000)
    run_pure.mode = run_compiled.mode = mode
    for trial in range(300):
        args = random_problem(rng, mode)
        assert run_pure(args) == run_compiled(args)


@pytest.mark.skipif(_speedups is None, reason="extension not built")
def test_backends_agree_on_node_cap():
    rng = random.Random(0)
    run_pure.mode = run_compiled.mode = _pysearch.MODE_SCORES
    for trial in range(50):
        args = random_problem(rng, _pysearch.MODE_SCORES)
        cap = rng.randint(1, 10)
        pure_capped = compiled_capped = False
        try:
            pure = run_pure(args, node_cap=cap)
        except CapacityError:
            pure_capped = True
        try:
            compiled = run_compiled(args, node_cap=cap)
        except CapacityError:
            compiled_capped = True
        assert pure_capped == compiled_capped
        if not pure_capped:
            assert pure == compiled


def test_pure_search_respects_budget_and_order():
    # voter one: two winning options, the later one strictly cheaper
    costs = [2, 1, 0]
    offsets = [0, 2, 3]
    effects = [1, 0, 1, 0, 5, 5]
    got = _pysearch.search_best(costs, offsets, effects, 2, 2, 10, 0,
                                _pysearch.MODE_SCORES, 0, 1, 10**6)
    assert got == (1, [1, 0])  # picks the cheaper option for voter one
    equal = _pysearch.search_best([2, 2, 0], offsets, effects, 2, 2, 10, 0,
                                  _pysearch.MODE_SCORES, 0, 1, 10**6)
    assert equal == (2, [0, 0])  # cost ties break to the earlier option
    tight = _pysearch.search_best(costs, offsets, effects, 2, 2, 0, 0,
                                  _pysearch.MODE_SCORES, 0, 1, 10**6)
    assert tight is None


def test_backend_name_reports_something():
    assert backend_name() in ("compiled", "pure-python")
