"""Rule-specific bribery solvers.

Polynomial algorithms for the cases that admit them (plurality/veto swap
bribery, k-approval shift bribery, k-approval swap bribery with few
voters), the Borda shift-bribery dynamic program and its 2-approximation,
plus exhaustive reference solvers for shift and SP-AV mixed bribery.
"""

from __future__ import annotations

from itertools import combinations

from .bribery import (
    SHIFT,
    SWAP,
    BriberyInstance,
    BriberySolution,
    verify_solution,
)
from .costs import FORBIDDEN, Cost, add_costs, is_forbidden, sub_costs
from .elections import Preference, SPAVVote, scores, winners
from .errors import CapacityError, ParameterError
from .flows import flow_with_lower_bounds
from .options import (
    install_cost,
    install_target,
    mixed_option_sets,
    rule_mode,
    shift_option_sets,
)
from .search import DEFAULT_NODE_CAP, minimize
from .swaps import (
    ShiftPriceFn,
    SwapSequence,
    apply_shift,
    transform_sequence,
)

DEFAULT_MAX_VOTERS = 3


def _require(instance: BriberyInstance, variant: str, kinds: tuple[str, ...]):
    if instance.rule.kind not in kinds:
        raise ParameterError(
            f"solver supports rules {kinds}, got {instance.rule.kind}"
        )
    if instance.variant != variant:
        raise ParameterError(
            f"solver needs a {variant}-price instance, got {instance.variant}"
        )


def solve_plurality_veto_swap(instance: BriberyInstance
                              ) -> BriberySolution | None:
    """Optimal swap bribery under plurality or veto.

    Per vote, the cheapest way to hand the point (plurality) or the veto to
    a chosen candidate is to walk that candidate to the top (bottom) by
    adjacent swaps.  For every guessed final count of the preferred
    candidate, a min-cost flow assigns each vote a final top (bottom)
    candidate subject to the count caps (floors, for veto); the cheapest
    guess within budget wins.
    """
    _require(instance, SWAP, ("plurality", "veto"))
    election, p, budget = instance.election, instance.preferred, instance.budget
    m, n = election.m, election.n
    plurality = instance.rule.kind == "plurality"
    repl: list[list[Cost]] = []
    for vote, prices in zip(election.rankings(), instance.swap_prices):
        row: list[Cost] = []
        for c in range(m):
            if plurality:
                cost = add_costs(*(prices.price(above, c)
                                   for above in vote.above(c)))
            else:
                pos = vote.position(c)
                cost = add_costs(*(prices.price(c, below)
                                   for below in vote.ranking[pos + 1 :]))
            row.append(cost)
        repl.append(row)

    best = None
    for guess in range(n + 1):
        result = _assignment_flow(repl, p, guess, n, plurality)
        if result is None:
            continue
        total, assigned = result
        if total > budget:
            continue
        if best is None or total < best[0]:
            best = (total, assigned)
    if best is None:
        return None
    total, assigned = best
    swaps = []
    swap_total: Cost = 0
    final_votes = []
    for voter, (vote, c) in enumerate(zip(election.rankings(), assigned)):
        rest = [x for x in vote.ranking if x != c]
        target = Preference([c] + rest if plurality else rest + [c])
        seq = transform_sequence(vote, target, instance.swap_prices[voter],
                                 voter)
        swaps.extend(seq.swaps)
        swap_total = add_costs(swap_total, seq.total_cost)
        final_votes.append(target)
    outcome = winners(election.replace_votes(final_votes), instance.rule)
    solution = BriberySolution.of_swaps(
        SwapSequence(swaps, swap_total), total, outcome)
    return verify_solution(instance, solution)


def _assignment_flow(repl, p, guess, n, plurality):
    """Assign each voter a candidate; p's column is pinned to `guess` units
    and the others are capped (plurality) or floored (veto) at `guess`."""
    m = len(repl[0]) if repl else 0
    s, t = 0, 1
    voter_node = lambda i: 2 + i
    cand_node = lambda c: 2 + n + c
    edges = []
    voter_edges = {}
    for i in range(n):
        edges.append((s, voter_node(i), 1, 1, 0))
        for c in range(m):
            if not is_forbidden(repl[i][c]):
                voter_edges[i, c] = len(edges)
                edges.append((voter_node(i), cand_node(c), 0, 1, repl[i][c]))
    for c in range(m):
        if c == p:
            edges.append((cand_node(c), t, guess, guess, 0))
        elif plurality:
            edges.append((cand_node(c), t, 0, guess, 0))
        else:
            edges.append((cand_node(c), t, guess, n, 0))
    result = flow_with_lower_bounds(2 + n + m, edges, s, t, n)
    if result is None:
        return None
    total, flows = result
    assigned = []
    for i in range(n):
        chosen = [c for c in range(m)
                  if (i, c) in voter_edges and flows[voter_edges[i, c]]]
        assigned.append(chosen[0])
    return total, assigned


def solve_kapproval_shift(instance: BriberyInstance) -> BriberySolution | None:
    """Optimal shift bribery under the approval family.

    A voter matters only if the preferred candidate sits below the approval
    line; the single useful action is paying to lift it exactly onto the
    line, which demotes the candidate previously on it.  For every guessed
    final score of the preferred candidate, a min-cost flow picks the
    cheapest option set meeting each candidate's score cap.
    """
    _require(instance, SHIFT, ("kapproval", "plurality", "veto"))
    election, p, budget = instance.election, instance.preferred, instance.budget
    m, n = election.m, election.n
    k = instance.rule.approval_count(m)
    current = scores(election, instance.rule)
    options = []  # (voter, cost, displaced candidate, shift)
    for voter, (vote, fn) in enumerate(zip(election.rankings(),
                                           instance.shift_prices)):
        pos = vote.position(p)
        if pos < k:
            continue
        shift = pos - (k - 1)
        cost = fn.price(shift)
        if is_forbidden(cost) or cost > budget:
            continue
        options.append((voter, cost, vote.ranking[k - 1], shift))

    best = None
    for gained in range(len(options) + 1):
        target_score = current[p] + gained
        result = _shift_selection_flow(options, current, p, m, target_score,
                                       gained)
        if result is None:
            continue
        total, selected = result
        if total > budget:
            continue
        if best is None or total < best[0]:
            best = (total, selected)
    if best is None:
        return None
    total, selected = best
    shifts = [0] * n
    for voter, _, _, shift in selected:
        shifts[voter] = shift
    shifted = election.replace_votes(
        [apply_shift(v, p, s) for v, s in zip(election.rankings(), shifts)])
    outcome = winners(shifted, instance.rule)
    solution = BriberySolution.of_shifts(shifts, total, outcome)
    return verify_solution(instance, solution)


def _shift_selection_flow(options, current, p, m, target_score, count):
    """Pick exactly `count` of the lift-to-the-line options so that every
    candidate's demotions cover its overshoot past `target_score`."""
    demands = {}
    for c in range(m):
        if c != p and current[c] > target_score:
            demands[c] = current[c] - target_score
    displaced = {c for _, _, c, _ in options}
    for c in demands:
        if c not in displaced:
            return None
    cands = sorted(displaced)
    s, t = 0, 1
    opt_node = lambda i: 2 + i
    cand_node = {c: 2 + len(options) + i for i, c in enumerate(cands)}
    edges = []
    for i, (_, cost, c, _) in enumerate(options):
        edges.append((s, opt_node(i), 0, 1, cost))
        edges.append((opt_node(i), cand_node[c], 0, 1, 0))
    group = {c: sum(1 for _, _, d, _ in options if d == c) for c in cands}
    for c in cands:
        edges.append((cand_node[c], t, demands.get(c, 0), group[c], 0))
    result = flow_with_lower_bounds(2 + len(options) + len(cands), edges,
                                    s, t, count)
    if result is None:
        return None
    total, flows = result
    selected = [opt for i, opt in enumerate(options) if flows[2 * i]]
    return total, selected


def solve_kapproval_fixed_voters(instance: BriberyInstance, *,
                                 max_voters: int = DEFAULT_MAX_VOTERS
                                 ) -> BriberySolution | None:
    """Optimal k-approval swap bribery for a handful of voters.

    Enumerates, per voter, every k-subset as the final approved set; the
    cheapest installation keeps the subset's current relative order and
    walks its members up by adjacent swaps.  All subset combinations are
    scored outright, which is polynomial only because n is capped.
    """
    _require(instance, SWAP, ("kapproval", "plurality", "veto"))
    election, p, budget = instance.election, instance.preferred, instance.budget
    m, n = election.m, election.n
    if n > max_voters:
        raise CapacityError(f"fixed-voters enumeration capped at n <= {max_voters}")
    k = instance.rule.approval_count(m)
    per_voter = []
    for vote, prices in zip(election.rankings(), instance.swap_prices):
        opts = []
        for subset in combinations(range(m), k):
            members = frozenset(subset)
            cost = install_cost(vote.ranking, prices, members, cap=budget)
            if not is_forbidden(cost):
                opts.append((cost, members, install_target(vote.ranking,
                                                           members)))
        if not opts:
            return None
        per_voter.append(opts)

    best = None

    def walk(voter, cost_so_far, counts, picks):
        nonlocal best
        if best is not None and cost_so_far >= best[0]:
            return
        if voter == n:
            if all(counts[p] >= counts[c] for c in range(m)):
                best = (cost_so_far, picks[:])
            return
        for cost, members, target in per_voter[voter]:
            total = cost_so_far + cost
            if total > budget:
                continue
            for c in members:
                counts[c] += 1
            picks.append(target)
            walk(voter + 1, total, counts, picks)
            picks.pop()
            for c in members:
                counts[c] -= 1

    walk(0, 0, [0] * m, [])
    if best is None:
        return None
    total, targets = best
    swaps = []
    swap_total: Cost = 0
    for voter, (vote, target) in enumerate(zip(election.rankings(), targets)):
        seq = transform_sequence(vote, target, instance.swap_prices[voter],
                                 voter)
        swaps.extend(seq.swaps)
        swap_total = add_costs(swap_total, seq.total_cost)
    outcome = winners(election.replace_votes(targets), instance.rule)
    solution = BriberySolution.of_swaps(SwapSequence(swaps, swap_total),
                                        total, outcome)
    return verify_solution(instance, solution)


def _shift_tables(instance: BriberyInstance) -> list[ShiftPriceFn]:
    return list(instance.shift_prices)


def _suffix_shift_dp(tables: list[ShiftPriceFn], k_max: int):
    """g[i][r] = cheapest way for voters i.. to shift a total of exactly r."""
    n = len(tables)
    g = [[FORBIDDEN] * (k_max + 1) for _ in range(n + 1)]
    g[n][0] = 0
    for i in range(n - 1, -1, -1):
        table = tables[i]
        for r in range(k_max + 1):
            best: Cost = FORBIDDEN
            for k in range(min(r, table.headroom) + 1):
                price = table.price(k)
                if is_forbidden(price) or is_forbidden(g[i + 1][r - k]):
                    continue
                candidate = add_costs(price, g[i + 1][r - k])
                if candidate < best:
                    best = candidate
            g[i][r] = best
    return g


def _reconstruct_shifts(tables: list[ShiftPriceFn], g, total_shift: int
                        ) -> list[int]:
    """Lexicographically smallest shift vector achieving g[0][total_shift]."""
    shifts = []
    r = total_shift
    for i, table in enumerate(tables):
        for k in range(min(r, table.headroom) + 1):
            price = table.price(k)
            if is_forbidden(price) or is_forbidden(g[i + 1][r - k]):
                continue
            if add_costs(price, g[i + 1][r - k]) == g[i][r]:
                shifts.append(k)
                r -= k
                break
    return shifts


def borda_shift_dp(instance: BriberyInstance, k_total: int):
    """Cheapest Borda shift bribery moving p up by exactly `k_total`.

    Returns (cost, per-voter shifts) or None when the headroom is too
    small.  Voters may be skipped (shift 0), which the recurrence includes
    explicitly.  The budget is not consulted here; this is a building
    block for the 2-approximation.
    """
    _require(instance, SHIFT, ("borda",))
    if k_total < 0:
        raise ParameterError("total shift must be nonnegative")
    tables = _shift_tables(instance)
    g = _suffix_shift_dp(tables, k_total)
    if is_forbidden(g[0][k_total]):
        return None
    return g[0][k_total], _reconstruct_shifts(tables, g, k_total)


def borda_shift_2approx(instance: BriberyInstance) -> BriberySolution | None:
    """Winning Borda shift bribery of cost at most twice the optimum.

    Guesses the optimal solution's total shift k and its overlap j with the
    cheapest k-shift: executes the cheapest k-shift, then the cheapest
    (k - j)-shift of the remaining headroom, and keeps the cheapest
    combination that wins within budget.  When an optimum of cost c fits in
    half the budget, some guess yields a winning bribery of cost <= 2c.
    Returns None when no guess wins within budget, which does not prove
    infeasibility.
    """
    _require(instance, SHIFT, ("borda",))
    election, p, budget = instance.election, instance.preferred, instance.budget
    tables = _shift_tables(instance)
    totals = [t.max_affordable_shift() for t in tables]
    k_max = sum(totals)
    g = _suffix_shift_dp(tables, k_max)
    best: tuple[int, list[int]] | None = None
    for k in range(k_max + 1):
        first_cost = g[0][k]
        if is_forbidden(first_cost) or first_cost > budget:
            continue
        first = _reconstruct_shifts(tables, g, k)
        residual_tables = []
        for table, done in zip(tables, first):
            base = table.price(done)
            entries = []
            for extra in range(table.headroom - done + 1):
                price = table.price(done + extra)
                entries.append(FORBIDDEN if is_forbidden(price)
                               else sub_costs(price, base))
            residual_tables.append(ShiftPriceFn(entries))
        g2 = _suffix_shift_dp(residual_tables, k)
        for j in range(k + 1):
            second_cost = g2[0][k - j]
            if is_forbidden(second_cost):
                continue
            total = add_costs(first_cost, second_cost)
            if total > budget or (best is not None and total >= best[0]):
                continue
            second = _reconstruct_shifts(residual_tables, g2, k - j)
            combined = [a + b for a, b in zip(first, second)]
            shifted = election.replace_votes(
                [apply_shift(v, p, s)
                 for v, s in zip(election.rankings(), combined)])
            if p in winners(shifted, instance.rule):
                best = (total, combined)
    if best is None:
        return None
    total, combined = best
    shifted = election.replace_votes(
        [apply_shift(v, p, s) for v, s in zip(election.rankings(), combined)])
    solution = BriberySolution.of_shifts(combined, total,
                                         winners(shifted, instance.rule))
    return verify_solution(instance, solution)


def solve_shift_exact(instance: BriberyInstance, *,
                      node_cap: int = DEFAULT_NODE_CAP
                      ) -> BriberySolution | None:
    """Globally optimal shift bribery by enumerating shift vectors.

    Exhaustive over the product of per-voter headrooms (budget-pruned),
    for any of the seven rules; the reference the polynomial shift solvers
    and the approximation are measured against.
    """
    if instance.variant != SHIFT:
        raise ParameterError("solver needs a shift-price instance")
    election, p = instance.election, instance.preferred
    option_sets = shift_option_sets(instance)
    mode, eff_len, num, den = rule_mode(instance.rule, instance.m)
    found = minimize(option_sets, eff_len, instance.m, instance.budget, p,
                     mode, num, den, node_cap)
    if found is None:
        return None
    total, choices = found
    shifts = [s.payloads[c] for s, c in zip(option_sets, choices)]
    shifted = election.replace_votes(
        [apply_shift(v, p, s) for v, s in zip(election.rankings(), shifts)])
    solution = BriberySolution.of_shifts(shifts, total,
                                         winners(shifted, instance.rule))
    return verify_solution(instance, solution)


def solve_spav_mixed_exact(instance: BriberyInstance, *,
                           node_cap: int = DEFAULT_NODE_CAP,
                           max_orders: int = 5040
                           ) -> BriberySolution | None:
    """Globally optimal SP-AV mixed bribery (swaps plus threshold changes).

    Exhaustive over per-voter (target order, threshold delta) options with
    additive swap and threshold prices; threshold moves outside the SP-AV
    bounds are simply unavailable rather than errors.
    """
    if instance.rule.kind != "spav":
        raise ParameterError("mixed bribery is defined for SP-AV only")
    if instance.variant != "mixed":
        raise ParameterError("solver needs swap plus threshold prices")
    election = instance.election
    option_sets = mixed_option_sets(instance, max_orders=max_orders)
    mode, eff_len, num, den = rule_mode(instance.rule, instance.m)
    found = minimize(option_sets, eff_len, instance.m, instance.budget,
                     instance.preferred, mode, num, den, node_cap)
    if found is None:
        return None
    total, choices = found
    swaps = []
    swap_total: Cost = 0
    deltas = []
    final_votes = []
    for voter, (vote, opts, choice) in enumerate(zip(election.votes,
                                                     option_sets, choices)):
        target, delta = opts.payloads[choice]
        seq = transform_sequence(vote.pref, target,
                                 instance.swap_prices[voter], voter)
        swaps.extend(seq.swaps)
        swap_total = add_costs(swap_total, seq.total_cost)
        deltas.append(delta)
        final_votes.append(SPAVVote(target, vote.threshold + delta))
    outcome = winners(election.replace_votes(final_votes), instance.rule)
    solution = BriberySolution.of_mixed(
        SwapSequence(swaps, swap_total), deltas, total, outcome)
    return verify_solution(instance, solution)
