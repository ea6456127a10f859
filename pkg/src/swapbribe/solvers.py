"""Rule-agnostic machinery: the flow-based profile transform, the
fixed-candidate-count exact solver, the brute-force reference oracle, and
the reduction from possible-winner questions to zero-budget swap bribery.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations
from typing import Iterable, Sequence

from .bribery import (
    MIXED,
    SHIFT,
    SWAP,
    BriberyInstance,
    BriberySolution,
    verify_solution,
)
from .costs import FORBIDDEN, Cost, add_costs, is_forbidden
from .elections import (
    CandidateSet,
    Election,
    Preference,
    Rule,
    SPAVVote,
    winners,
)
from .errors import CapacityError, InfeasibleError, ValidationError
from .flows import MinCostFlow
from .options import rule_mode, swap_option_sets
from .search import DEFAULT_NODE_CAP, minimize
from .swaps import (
    SwapPriceFn,
    SwapSequence,
    UnitSwap,
    transform_cost,
    transform_sequence,
)

DEFAULT_MAX_CANDIDATES = 4


def min_cost_matching(cost_rows: Sequence[Sequence[Cost]],
                      multiplicities: Sequence[int]):
    """Assign each row to a column slot, respecting column multiplicities.

    `cost_rows[i][j]` prices giving row i to column j (FORBIDDEN = no edge).
    Returns (total cost, per-row column index) or None when no full
    assignment exists.  Solved as a min-cost flow on the bipartite network.
    """
    n = len(cost_rows)
    cols = len(multiplicities)
    net = MinCostFlow(2 + n + cols)
    s, t = 0, 1
    voter_node = lambda i: 2 + i
    col_node = lambda j: 2 + n + j
    edge_ids: dict[tuple[int, int], int] = {}
    for i in range(n):
        net.add_edge(s, voter_node(i), 1, 0)
        for j in range(cols):
            cost = cost_rows[i][j]
            if not is_forbidden(cost):
                edge_ids[i, j] = net.add_edge(voter_node(i), col_node(j), 1, cost)
    for j, mult in enumerate(multiplicities):
        net.add_edge(col_node(j), t, mult, 0)
    flow, total = net.min_cost_flow(s, t)
    if flow != n:
        return None
    assignment = []
    for i in range(n):
        chosen = [j for j in range(cols)
                  if (i, j) in edge_ids and net.edge_flow(edge_ids[i, j])]
        assignment.append(chosen[0])
    return total, assignment


def list_to_multiset_cost(votes: Sequence[Preference],
                          prices: Sequence[SwapPriceFn],
                          target: Iterable[Preference]):
    """Cheapest swap bribery turning the vote list into the target multiset.

    Returns (cost, assignment) where assignment[i] is the target vote chosen
    for voter i.  Raises InfeasibleError when no assignment avoids FORBIDDEN
    transforms.
    """
    target = list(target)
    if len(target) != len(votes):
        raise ValidationError("target multiset must have one vote per voter")
    distinct: list[Preference] = []
    multiplicities: list[int] = []
    for pref in sorted(target, key=lambda v: v.ranking):
        if distinct and distinct[-1].ranking == pref.ranking:
            multiplicities[-1] += 1
        else:
            distinct.append(pref)
            multiplicities.append(1)
    cost_rows = [[transform_cost(vote, tgt, fn) for tgt in distinct]
                 for vote, fn in zip(votes, prices)]
    result = min_cost_matching(cost_rows, multiplicities)
    if result is None:
        raise InfeasibleError("no voter assignment reaches the target multiset")
    total, column_of = result
    return total, [distinct[j] for j in column_of]


def _target_objects(instance: BriberyInstance):
    """All per-voter reachable vote objects and a cost callback, for the
    fixed-candidate-count enumeration.  Objects are (ranking, threshold)
    pairs; threshold is None for non-SP-AV elections."""
    election = instance.election
    m = election.m
    orders = [Preference(p) for p in permutations(range(m))]
    if election.is_spav:
        if instance.threshold_prices is not None:
            thresholds = list(range(1, m))
        else:
            thresholds = sorted({v.threshold for v in election.votes})
        objects = [(o, t) for o in orders for t in thresholds]
    else:
        objects = [(o, None) for o in orders]

    variant = instance.variant

    def cost_to(voter: int, obj) -> Cost:
        target, threshold = obj
        vote = election.votes[voter]
        source = vote.pref if isinstance(vote, SPAVVote) else vote
        if variant == SHIFT:
            if threshold is not None and threshold != vote.threshold:
                return FORBIDDEN
            pos = source.position(instance.preferred)
            for k in range(pos + 1):
                if apply_shift_ranking(source.ranking, instance.preferred, k) \
                        == target.ranking:
                    return instance.shift_prices[voter].price(k)
            return FORBIDDEN
        swap_cost = transform_cost(source, target, instance.swap_prices[voter])
        if variant == SWAP:
            if threshold is not None and threshold != vote.threshold:
                return FORBIDDEN
            return swap_cost
        sigma = instance.threshold_prices[voter]
        return add_costs(swap_cost, sigma.price(threshold - vote.threshold))

    return objects, cost_to


def apply_shift_ranking(ranking: tuple[int, ...], p: int, k: int) -> tuple[int, ...]:
    pos = ranking.index(p)
    out = list(ranking)
    del out[pos]
    out.insert(pos - k, p)
    return tuple(out)


def solve_fixed_candidates(instance: BriberyInstance, *,
                           max_candidates: int = DEFAULT_MAX_CANDIDATES
                           ) -> BriberySolution | None:
    """Optimal bribery by enumerating all target vote multisets.

    Polynomial for any anonymous rule once the candidate count is a
    constant, but the multiset count explodes with m, hence the hard cap.
    Ties break toward the lexicographically smallest target profile.
    """
    election, rule = instance.election, instance.rule
    m, n = election.m, election.n
    if m > max_candidates:
        raise CapacityError(
            f"fixed-candidates enumeration capped at m <= {max_candidates}"
        )
    rule.validate_for(m)
    objects, cost_to = _target_objects(instance)
    best: tuple[int, list, list] | None = None
    for multiset in combinations_with_replacement(range(len(objects)), n):
        profile = []
        for idx in multiset:
            order, threshold = objects[idx]
            profile.append(order if threshold is None
                           else SPAVVote(order, threshold))
        candidate_election = election.replace_votes(profile)
        if instance.preferred not in winners(candidate_election, rule):
            continue
        distinct = sorted(set(multiset))
        multiplicities = [sum(1 for x in multiset if x == d) for d in distinct]
        cost_rows = [[cost_to(i, objects[d]) for d in distinct]
                     for i in range(n)]
        result = min_cost_matching(cost_rows, multiplicities)
        if result is None:
            continue
        total, column_of = result
        if total > instance.budget:
            continue
        if best is None or total < best[0]:
            best = (total, [objects[distinct[j]] for j in column_of], profile)
    if best is None:
        return None
    return _solution_from_targets(instance, best[0], best[1])


def _solution_from_targets(instance: BriberyInstance, total: int,
                           targets: Sequence[tuple[Preference, int | None]]
                           ) -> BriberySolution:
    """Build and verify a solution that moves each voter to its target."""
    election = instance.election
    variant = instance.variant
    if variant == SHIFT:
        shifts = []
        for vote, (target, _) in zip(election.rankings(), targets):
            pos = vote.position(instance.preferred)
            shift = next(k for k in range(pos + 1)
                         if apply_shift_ranking(vote.ranking,
                                                instance.preferred, k)
                         == target.ranking)
            shifts.append(shift)
        shifted = election.replace_votes(
            [Preference(apply_shift_ranking(v.ranking, instance.preferred, k))
             for v, k in zip(election.rankings(), shifts)])
        outcome = winners(shifted, instance.rule)
        return verify_solution(instance, BriberySolution.of_shifts(
            shifts, total, outcome))
    swaps: list[UnitSwap] = []
    swap_total: Cost = 0
    for voter, (vote, (target, _)) in enumerate(zip(election.votes, targets)):
        source = vote.pref if isinstance(vote, SPAVVote) else vote
        seq = transform_sequence(source, target,
                                 instance.swap_prices[voter], voter)
        swaps.extend(seq.swaps)
        swap_total = add_costs(swap_total, seq.total_cost)
    final_votes = []
    deltas = []
    for vote, (target, threshold) in zip(election.votes, targets):
        if isinstance(vote, SPAVVote):
            new_threshold = vote.threshold if threshold is None else threshold
            deltas.append(new_threshold - vote.threshold)
            final_votes.append(SPAVVote(target, new_threshold))
        else:
            final_votes.append(target)
    outcome = winners(election.replace_votes(final_votes), instance.rule)
    seq = SwapSequence(swaps, swap_total)
    if variant == MIXED:
        solution = BriberySolution.of_mixed(seq, deltas, total, outcome)
    else:
        solution = BriberySolution.of_swaps(seq, total, outcome)
    return verify_solution(instance, solution)


def exact_oracle(instance: BriberyInstance, *,
                 node_cap: int = DEFAULT_NODE_CAP,
                 max_orders: int = 5040) -> BriberySolution | None:
    """Globally optimal bribery by exhaustive per-voter target enumeration.

    The reference point every polynomial solver is checked against.  Swap
    instances enumerate each voter's reachable orders (deduplicated by their
    rule effect); shift and SP-AV instances delegate to the matching
    exhaustive solver.  Raises CapacityError rather than truncating.
    """
    from . import rules

    variant = instance.variant
    if variant == SHIFT:
        return rules.solve_shift_exact(instance, node_cap=node_cap)
    if variant == MIXED:
        return rules.solve_spav_mixed_exact(instance, node_cap=node_cap,
                                            max_orders=max_orders)
    option_sets = swap_option_sets(instance, max_orders=max_orders)
    mode, eff_len, num, den = rule_mode(instance.rule, instance.m)
    found = minimize(option_sets, eff_len, instance.m, instance.budget,
                     instance.preferred, mode, num, den, node_cap)
    if found is None:
        return None
    total, choices = found
    targets = [(s.payloads[c], None) for s, c in zip(option_sets, choices)]
    return _solution_from_targets(instance, total, targets)


@dataclass(frozen=True)
class PartialPreference:
    """A transitively closed strict partial order over the candidates."""

    m: int
    pairs: frozenset[tuple[int, int]]

    @classmethod
    def from_pairs(cls, m: int, pairs: Iterable[tuple[int, int]]
                   ) -> "PartialPreference":
        relation = {(a, b) for a, b in pairs}
        for a, b in relation:
            if not (0 <= a < m and 0 <= b < m):
                raise ValidationError(f"pair ({a}, {b}) out of range")
            if a == b:
                raise ValidationError(f"pair ({a}, {a}) is reflexive")
        closed = set(relation)
        changed = True
        while changed:
            changed = False
            for a, b in list(closed):
                for c, d in list(closed):
                    if b == c and (a, d) not in closed:
                        closed.add((a, d))
                        changed = True
        for a, b in closed:
            if a == b or (b, a) in closed:
                raise ValidationError(
                    "relation is cyclic; not a strict partial order"
                )
        return cls(m, frozenset(closed))

    def comparable(self, a: int, b: int) -> bool:
        return (a, b) in self.pairs or (b, a) in self.pairs

    def completion(self) -> Preference:
        """Deterministic linear extension (smallest index first)."""
        indegree = [0] * self.m
        for _, b in self.pairs:
            indegree[b] += 1
        heap = [c for c in range(self.m) if indegree[c] == 0]
        heapq.heapify(heap)
        out = []
        successors = [[] for _ in range(self.m)]
        for a, b in self.pairs:
            successors[a].append(b)
        while heap:
            c = heapq.heappop(heap)
            out.append(c)
            for d in successors[c]:
                indegree[d] -= 1
                if indegree[d] == 0:
                    heapq.heappush(heap, d)
        return Preference(out)

    def consistent_with(self, pref: Preference) -> bool:
        return all(pref.prefers(a, b) for a, b in self.pairs)


@dataclass(frozen=True)
class PossibleWinnerInstance:
    candidates: CandidateSet
    votes: tuple[PartialPreference, ...]
    rule: Rule
    preferred: int


def reduce_possible_winner(pw: PossibleWinnerInstance) -> BriberyInstance:
    """Rewrite a possible-winner question as zero-budget swap bribery.

    Each partial vote is completed by topological sorting; swapping a pair
    the partial order constrains costs 1, every unconstrained pair is free.
    The output is feasible at cost 0 exactly when some completion of the
    votes makes the preferred candidate a winner.
    """
    m = pw.candidates.m
    votes = []
    prices = []
    for partial in pw.votes:
        if partial.m != m:
            raise ValidationError("partial vote over a different candidate set")
        votes.append(partial.completion())
        table = [[0] * m for _ in range(m)]
        for a in range(m):
            for b in range(m):
                if a != b and partial.comparable(a, b):
                    table[a][b] = 1
        prices.append(SwapPriceFn(table))
    election = Election(pw.candidates, votes)
    return BriberyInstance(election, pw.rule, pw.preferred, 0,
                           swap_prices=tuple(prices))
