"""Building per-voter option sets for the exhaustive solvers.

Options abstract what a bribed voter can end up contributing: each option
carries its cheapest price, an additive effect vector (rule scores or a
flattened pairwise matrix), and a payload from which the concrete bribery
is rebuilt.  Two target votes with identical effect vectors are
interchangeable for winner determination, so only the cheaper one is kept;
this dedup is what makes the exhaustive oracles usable at the sizes the
cross-checks need.
"""

from __future__ import annotations

from itertools import permutations

from .bribery import BriberyInstance
from .costs import FORBIDDEN, add_costs, is_forbidden
from .elections import Preference, Rule, SPAVVote, positional_points
from .errors import CapacityError
from .search import MODE_COPELAND, MODE_MAXIMIN, MODE_SCORES, OptionSet
from .swaps import SwapPriceFn, apply_shift, transform_cost

DEFAULT_MAX_ORDERS = 5040  # enumerate full per-voter target orders up to 7!


def rule_mode(rule: Rule, m: int) -> tuple[int, int, int, int]:
    """(mode, effect length, copeland num, copeland den) for the search."""
    if rule.kind == "maximin":
        return MODE_MAXIMIN, m * m, 0, 1
    if rule.kind == "copeland":
        return (MODE_COPELAND, m * m, rule.alpha.numerator,
                rule.alpha.denominator)
    return MODE_SCORES, m, 0, 1


def vote_effect(rule: Rule, m: int, ranking: tuple[int, ...],
                threshold: int | None = None) -> tuple[int, ...]:
    """Additive contribution of a single ballot to the effect vector."""
    if rule.kind in ("maximin", "copeland"):
        flat = [0] * (m * m)
        for pos, a in enumerate(ranking):
            for b in ranking[pos + 1 :]:
                flat[a * m + b] = 1
        return tuple(flat)
    if rule.kind == "spav":
        effect = [0] * m
        for c in ranking[:threshold]:
            effect[c] = 1
        return tuple(effect)
    points = positional_points(rule, m)
    effect = [0] * m
    for pos, c in enumerate(ranking):
        effect[c] = points[pos]
    return tuple(effect)


def swap_option_sets(instance: BriberyInstance, *,
                     max_orders: int = DEFAULT_MAX_ORDERS) -> list[OptionSet]:
    """Per-voter reachable-target options for a swap-price instance.

    Small candidate sets enumerate all target orders outright and dedupe by
    effect.  Larger ones are handled only for the approval family, whose
    effects depend on the top-k set alone (see `approval_subset_options`).
    """
    rule, m = instance.rule, instance.m
    if _factorial(m) <= max_orders:
        return _enumerated_swap_options(instance)
    if rule.approval_count(m) is not None:
        return approval_subset_options(instance)
    raise CapacityError(
        f"cannot enumerate target orders for m={m} under rule {rule}"
    )


def _factorial(m: int) -> int:
    out = 1
    for i in range(2, m + 1):
        out *= i
    return out


def _enumerated_swap_options(instance: BriberyInstance) -> list[OptionSet]:
    rule, m, budget = instance.rule, instance.m, instance.budget
    option_sets = []
    for vote, prices in zip(instance.election.votes, instance.swap_prices):
        threshold = vote.threshold if isinstance(vote, SPAVVote) else None
        source = vote.pref if isinstance(vote, SPAVVote) else vote
        options = OptionSet.new()
        seen: dict[tuple[int, ...], int] = {}
        for target in permutations(range(m)):
            pref = Preference(target)
            cost = transform_cost(source, pref, prices)
            if is_forbidden(cost) or cost > budget:
                continue
            effect = vote_effect(rule, m, target, threshold)
            slot = seen.get(effect)
            if slot is None:
                seen[effect] = len(options.costs)
                options.add(cost, effect, pref)
            elif cost < options.costs[slot]:
                options.costs[slot] = cost
                options.payloads[slot] = pref
        option_sets.append(options)
    return option_sets


def install_cost(ranking: tuple[int, ...], prices: SwapPriceFn,
                 members: frozenset[int], cap=FORBIDDEN):
    """Cheapest price for moving `members` into the top positions of a vote.

    Equals the price-sum over pairs (outsider above member, member); the
    optimal target keeps both groups in their current relative order.  Stops
    early once the running sum exceeds `cap`.
    """
    total = 0
    outsiders_above = []
    for c in ranking:
        if c in members:
            for outsider in outsiders_above:
                price = prices.price(outsider, c)
                if is_forbidden(price):
                    return FORBIDDEN
                total = add_costs(total, price)
                if total > cap:
                    return FORBIDDEN
        else:
            outsiders_above.append(c)
    return total


def install_target(ranking: tuple[int, ...], members: frozenset[int]) -> Preference:
    """The order realizing `install_cost`: members first, orders preserved."""
    top = [c for c in ranking if c in members]
    rest = [c for c in ranking if c not in members]
    return Preference(top + rest)


def approval_subset_options(instance: BriberyInstance, *,
                            node_cap: int = 2_000_000) -> list[OptionSet]:
    """Per-voter options keyed by the target top-k set (approval family).

    Only subsets installable within the budget matter, so instead of walking
    all C(m, k) subsets this scans the ranking top-down, choosing or
    skipping each candidate; a chosen candidate pays its price under every
    outsider already above it, which never decreases, so branches are cut
    exactly when the running cost exceeds the budget.
    """
    rule, m, budget = instance.rule, instance.m, instance.budget
    k = rule.approval_count(m)
    option_sets = []
    for vote, prices in zip(instance.election.votes, instance.swap_prices):
        source = vote.pref if isinstance(vote, SPAVVote) else vote
        ranking = source.ranking
        options = OptionSet.new()
        chosen: list[int] = []
        outsiders: list[int] = []
        nodes = 0

        def walk(pos: int, cost: int) -> None:
            nonlocal nodes
            nodes += 1
            if nodes > node_cap:
                raise CapacityError(
                    "top-set enumeration exceeded its node cap"
                )
            if len(chosen) == k:
                members = frozenset(chosen)
                effect = tuple(1 if c in members else 0 for c in range(m))
                options.add(cost, effect, install_target(ranking, members))
                return
            if m - pos < k - len(chosen):
                return
            c = ranking[pos]
            added = 0
            feasible = True
            for outsider in outsiders:
                price = prices.price(outsider, c)
                if is_forbidden(price):
                    feasible = False
                    break
                added = add_costs(added, price)
                if cost + added > budget:
                    feasible = False
                    break
            if feasible:
                chosen.append(c)
                walk(pos + 1, cost + added)
                chosen.pop()
            outsiders.append(c)
            walk(pos + 1, cost)
            outsiders.pop()

        walk(0, 0)
        options.sort_by(lambda pref: pref.ranking)
        option_sets.append(options)
    return option_sets


def shift_option_sets(instance: BriberyInstance) -> list[OptionSet]:
    """Per-voter shift amounts with their prices and shifted-ballot effects."""
    rule, m, budget, p = (instance.rule, instance.m, instance.budget,
                          instance.preferred)
    option_sets = []
    for vote, fn in zip(instance.election.votes, instance.shift_prices):
        threshold = vote.threshold if isinstance(vote, SPAVVote) else None
        source = vote.pref if isinstance(vote, SPAVVote) else vote
        options = OptionSet.new()
        for k in range(fn.headroom + 1):
            cost = fn.price(k)
            if is_forbidden(cost) or cost > budget:
                continue
            shifted = apply_shift(source, p, k)
            options.add(cost, vote_effect(rule, m, shifted.ranking, threshold), k)
        option_sets.append(options)
    return option_sets


def mixed_option_sets(instance: BriberyInstance, *,
                      max_orders: int = DEFAULT_MAX_ORDERS) -> list[OptionSet]:
    """Per-voter (target order, threshold delta) options for SP-AV bribery."""
    rule, m, budget = instance.rule, instance.m, instance.budget
    option_sets = []
    for vote, prices, sigma in zip(instance.election.votes,
                                   instance.swap_prices,
                                   instance.threshold_prices):
        targets: list[tuple[Preference, int]] = []
        if _factorial(m) <= max_orders:
            for target in permutations(range(m)):
                pref = Preference(target)
                cost = transform_cost(vote.pref, pref, prices)
                if not is_forbidden(cost) and cost <= budget:
                    targets.append((pref, cost))
        elif _no_finite_swaps(prices):
            targets.append((vote.pref, 0))
        else:
            raise CapacityError(
                f"cannot enumerate SP-AV target orders for m={m}"
            )
        options = OptionSet.new()
        seen: dict[tuple[int, ...], int] = {}
        for pref, swap_cost in targets:
            for new_threshold in range(1, m):
                sigma_cost = sigma.price(new_threshold - vote.threshold)
                if is_forbidden(sigma_cost):
                    continue
                cost = add_costs(swap_cost, sigma_cost)
                if cost > budget:
                    continue
                effect = vote_effect(rule, m, pref.ranking, new_threshold)
                payload = (pref, new_threshold - vote.threshold)
                slot = seen.get(effect)
                if slot is None:
                    seen[effect] = len(options.costs)
                    options.add(cost, effect, payload)
                elif cost < options.costs[slot]:
                    options.costs[slot] = cost
                    options.payloads[slot] = payload
        options.sort_by(lambda payload: (payload[0].ranking, payload[1]))
        option_sets.append(options)
    return option_sets


def _no_finite_swaps(prices: SwapPriceFn) -> bool:
    m = prices.m
    return all(is_forbidden(prices.table[i][j])
               for i in range(m) for j in range(m) if i != j)
