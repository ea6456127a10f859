import random

import pytest

import oracles
from swapbribe import (
    BriberyInstance,
    CandidateSet,
    CapacityError,
    Election,
    PartialPreference,
    PossibleWinnerInstance,
    Preference,
    Rule,
    SwapPriceFn,
    ValidationError,
    exact_oracle,
    reduce_possible_winner,
    solve_fixed_candidates,
    transform_cost,
    verify_solution,
)


def test_fixed_candidates_zero_cost_when_p_wins():
    e = Election(CandidateSet(["p", "a"]), [Preference([0, 1])])
    inst = BriberyInstance(e, Rule.plurality(), 0, 0,
                           swap_prices=(SwapPriceFn.uniform(2, 5),))
    sol = solve_fixed_candidates(inst)
    assert sol.total_cost == 0 and sol.swaps.swaps == ()


def test_fixed_candidates_single_useful_swap():
    e = Election(CandidateSet(["a", "p"]), [Preference([0, 1])])
    inst = BriberyInstance(e, Rule.plurality(), 1, 3,
                           swap_prices=(SwapPriceFn([[0, 3], [0, 0]]),))
    sol = solve_fixed_candidates(inst)
    assert sol.total_cost == 3
    tight = BriberyInstance(e, Rule.plurality(), 1, 2,
                            swap_prices=(SwapPriceFn([[0, 3], [0, 0]]),))
    assert solve_fixed_candidates(tight) is None


def test_fixed_candidates_capacity_guard():
    m = 5
    e = Election(CandidateSet([f"c{i}" for i in range(m)]),
                 [Preference(range(m))])
    inst = BriberyInstance(e, Rule.borda(), 0, 0,
                           swap_prices=(SwapPriceFn.uniform(m, 1),))
    with pytest.raises(CapacityError):
        solve_fixed_candidates(inst)
    assert solve_fixed_candidates(inst, max_candidates=5) is not None


def test_exact_oracle_budget_zero_cases():
    e = Election(CandidateSet(["p", "a"]),
                 [Preference([0, 1]), Preference([1, 0]), Preference([1, 0])])
    prices = tuple(SwapPriceFn.uniform(2, 1) for _ in range(3))
    losing = BriberyInstance(e, Rule.plurality(), 0, 0, swap_prices=prices)
    assert exact_oracle(losing) is None
    winning = BriberyInstance(e, Rule.plurality(), 1, 0, swap_prices=prices)
    assert exact_oracle(winning).total_cost == 0


def test_exact_oracle_matches_naive_product_search():
    rng = random.Random(101)
    for trial in range(120):
        m = rng.randint(2, 3)
        n = rng.randint(1, 3)
        spav = rng.random() < 0.2
        inst = oracles.random_swap_instance(rng, m, n, spav=spav)
        expected = oracles.brute_best_swap_cost(inst, transform_cost)
        got = exact_oracle(inst)
        if expected is None:
            assert got is None
        else:
            assert got is not None and got.total_cost == expected


def test_exact_oracle_agrees_with_fixed_candidates():
    rng = random.Random(202)
    for trial in range(200):
        m = 3
        n = rng.randint(1, 3)
        inst = oracles.random_swap_instance(rng, m, n)
        a = exact_oracle(inst)
        b = solve_fixed_candidates(inst)
        if a is None:
            assert b is None
        else:
            assert b is not None and a.total_cost == b.total_cost


def test_budget_monotonicity():
    rng = random.Random(303)
    for trial in range(40):
        inst = oracles.random_swap_instance(rng, 3, 2)
        sol = exact_oracle(inst)
        if sol is None:
            continue
        richer = BriberyInstance(inst.election, inst.rule, inst.preferred,
                                 inst.budget + 5, swap_prices=inst.swap_prices)
        again = exact_oracle(richer)
        assert again is not None and again.total_cost == sol.total_cost


def test_solutions_replay_cleanly():
    rng = random.Random(404)
    for trial in range(40):
        inst = oracles.random_swap_instance(rng, 3, 3)
        sol = exact_oracle(inst)
        if sol is not None:
            verify_solution(inst, sol)
            assert inst.preferred in sol.resulting_winners
            assert sol.total_cost <= inst.budget


def test_oracle_cost_decomposes_per_voter():
    rng = random.Random(505)
    for trial in range(30):
        inst = oracles.random_swap_instance(rng, 3, 3, forbidden_prob=0.0)
        sol = exact_oracle(inst)
        if sol is None:
            continue
        per_voter = [0] * inst.election.n
        election = inst.election
        rankings = [list(v.ranking) for v in election.rankings()]
        for voter, upper, lower in sol.swaps.swaps:
            per_voter[voter] += inst.swap_prices[voter].price(upper, lower)
            r = rankings[voter]
            i = r.index(upper)
            r[i], r[i + 1] = r[i + 1], r[i]
        assert sum(per_voter) == sol.total_cost
        for voter, final in enumerate(rankings):
            src = election.rankings()[voter]
            assert per_voter[voter] == transform_cost(
                src, Preference(final), inst.swap_prices[voter])


def partial_of(m, pairs):
    return PartialPreference.from_pairs(m, pairs)


def test_partial_preference_rejects_cycles():
    with pytest.raises(ValidationError):
        partial_of(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(ValidationError):
        partial_of(3, [(0, 0)])


def test_reduce_pw_fully_specified_votes():
    cset = CandidateSet(["a", "b", "p"])
    full = partial_of(3, [(0, 1), (1, 2), (0, 2)])
    pw = PossibleWinnerInstance(cset, (full,), Rule.borda(), 2)
    inst = reduce_possible_winner(pw)
    assert inst.budget == 0
    table = inst.swap_prices[0].table
    assert all(table[i][j] == 1 for i in range(3) for j in range(3) if i != j)
    assert exact_oracle(inst) is None  # p loses the only completion
    winner_pw = PossibleWinnerInstance(cset, (full,), Rule.borda(), 0)
    assert exact_oracle(reduce_possible_winner(winner_pw)) is not None


def test_reduce_pw_unspecified_votes_are_free():
    cset = CandidateSet(["a", "b", "p"])
    empty = partial_of(3, [])
    pw = PossibleWinnerInstance(cset, (empty, empty), Rule.borda(), 2)
    inst = reduce_possible_winner(pw)
    table = inst.swap_prices[0].table
    assert all(table[i][j] == 0 for i in range(3) for j in range(3) if i != j)
    assert exact_oracle(inst).total_cost == 0


def random_partial(rng, m):
    if rng.random() < 0.25:
        return PartialPreference.from_pairs(m, [])
    hidden = oracles.random_preference(rng, m)
    pairs = [(a, b) for i, a in enumerate(hidden.ranking)
             for b in hidden.ranking[i + 1 :] if rng.random() < 0.5]
    return PartialPreference.from_pairs(m, pairs)


def test_reduce_pw_matches_completion_enumeration():
    rng = random.Random(606)
    for trial in range(60):
        m = rng.randint(2, 4)
        n = rng.randint(1, 3)
        cset = CandidateSet([f"c{i}" for i in range(m)])
        rule = Rule.borda() if rng.random() < 0.5 \
            else Rule.k_approval(rng.randint(1, m - 1))
        pw = PossibleWinnerInstance(
            cset, tuple(random_partial(rng, m) for _ in range(n)), rule,
            rng.randrange(m))
        inst = reduce_possible_winner(pw)
        assert (exact_oracle(inst) is not None) == oracles.brute_possible_winner(pw)


def test_completions_respect_partial_orders():
    partial = partial_of(4, [(3, 1), (1, 0)])
    completion = partial.completion()
    assert partial.consistent_with(completion)
    assert completion.prefers(3, 0)
