"""Bribery problem instances, solutions, and the shared replay harness.

A `BriberyInstance` comes in one of three pricing variants:

* ``swap``  - one swap-price table per voter,
* ``shift`` - one shift-price table per voter (moves of the preferred
  candidate only),
* ``mixed`` - swap-price tables plus SP-AV approval-threshold prices.

Every solver routes its result through `verify_solution`, which replays the
solution on the instance and checks the recorded cost, budget, and winner
set, so a returned solution is always a replayable certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .costs import Cost, add_costs, is_forbidden
from .elections import Election, Rule, SPAVVote, winners
from .errors import ReplayError, ValidationError
from .swaps import (
    ShiftPriceFn,
    SwapPriceFn,
    SwapSequence,
    ThresholdPriceFn,
    apply_shift,
    apply_swap_sequence,
    swap_sequence_cost,
)

SWAP = "swap"
SHIFT = "shift"
MIXED = "mixed"


@dataclass(frozen=True, slots=True)
class BriberyInstance:
    election: Election
    rule: Rule
    preferred: int
    budget: int
    swap_prices: tuple[SwapPriceFn, ...] | None = None
    shift_prices: tuple[ShiftPriceFn, ...] | None = None
    threshold_prices: tuple[ThresholdPriceFn, ...] | None = None

    def __post_init__(self):
        self._validate()

    def _validate(self):
        election = self.election
        self.rule.validate_for(election.m)
        if not 0 <= self.preferred < election.m:
            raise ValidationError(f"preferred index {self.preferred} out of range")
        if is_forbidden(self.budget) or not isinstance(self.budget, int) \
                or self.budget < 0:
            raise ValidationError("budget must be a finite nonnegative integer")
        n = election.n
        shapes = []
        if self.swap_prices is not None:
            shapes.append("swap")
            if len(self.swap_prices) != n:
                raise ValidationError("need one swap price table per voter")
            for fn in self.swap_prices:
                if fn.m != election.m:
                    raise ValidationError("swap price table size mismatch")
        if self.shift_prices is not None:
            shapes.append("shift")
            if len(self.shift_prices) != n:
                raise ValidationError("need one shift price table per voter")
            for fn, vote in zip(self.shift_prices, election.rankings()):
                if fn.headroom != vote.position(self.preferred):
                    raise ValidationError(
                        "shift price table does not match the preferred "
                        "candidate's position"
                    )
        if self.threshold_prices is not None:
            shapes.append("threshold")
            if len(self.threshold_prices) != n:
                raise ValidationError("need one threshold price table per voter")
            if not election.is_spav and election.n:
                raise ValidationError("threshold prices need SP-AV ballots")
        if shapes not in (["swap"], ["shift"], ["swap", "threshold"]):
            raise ValidationError(
                f"unsupported price combination {shapes or ['none']}"
            )

    @property
    def variant(self) -> str:
        if self.shift_prices is not None:
            return SHIFT
        if self.threshold_prices is not None:
            return MIXED
        return SWAP

    @property
    def m(self) -> int:
        return self.election.m

    @property
    def n(self) -> int:
        return self.election.n


@dataclass(frozen=True, slots=True)
class BriberySolution:
    """A bribery certificate: actions, their total price, and the outcome."""

    swaps: SwapSequence
    shifts: tuple[int, ...] | None
    threshold_deltas: tuple[int, ...] | None
    total_cost: int
    resulting_winners: frozenset[int]

    @classmethod
    def of_swaps(cls, swaps: SwapSequence, cost: int,
                 winner_set: Iterable[int]) -> "BriberySolution":
        return cls(swaps, None, None, cost, frozenset(winner_set))

    @classmethod
    def of_shifts(cls, shifts: Sequence[int], cost: int,
                  winner_set: Iterable[int]) -> "BriberySolution":
        return cls(SwapSequence.empty(), tuple(shifts), None, cost,
                   frozenset(winner_set))

    @classmethod
    def of_mixed(cls, swaps: SwapSequence, deltas: Sequence[int], cost: int,
                 winner_set: Iterable[int]) -> "BriberySolution":
        return cls(swaps, None, tuple(deltas), cost, frozenset(winner_set))


def apply_solution(instance: BriberyInstance, solution: BriberySolution
                   ) -> tuple[Election, Cost]:
    """Replay a solution; returns the resulting election and recomputed cost."""
    election = instance.election
    total: Cost = 0
    if solution.shifts is not None:
        if len(solution.shifts) != election.n:
            raise ReplayError("shift vector length mismatch")
        if instance.shift_prices is None:
            raise ReplayError("shift solution for a non-shift instance")
        new_votes = []
        for vote, fn, k in zip(election.rankings(), instance.shift_prices,
                               solution.shifts):
            total = add_costs(total, fn.price(k))
            new_votes.append(apply_shift(vote, instance.preferred, k))
        election = election.replace_votes(new_votes)
    if solution.swaps.swaps:
        if instance.swap_prices is None:
            raise ReplayError("swap solution for a non-swap instance")
        total = add_costs(total,
                          swap_sequence_cost(election, solution.swaps,
                                             instance.swap_prices))
        election = apply_swap_sequence(election, solution.swaps)
    if solution.threshold_deltas is not None:
        if instance.threshold_prices is None:
            raise ReplayError("threshold deltas for a non-mixed instance")
        if len(solution.threshold_deltas) != election.n:
            raise ReplayError("threshold delta vector length mismatch")
        new_votes = []
        for vote, fn, delta in zip(election.votes, instance.threshold_prices,
                                   solution.threshold_deltas):
            if not isinstance(vote, SPAVVote):
                raise ReplayError("threshold delta on a non-SP-AV ballot")
            total = add_costs(total, fn.price(delta))
            new_votes.append(SPAVVote(vote.pref, vote.threshold + delta))
        election = election.replace_votes(new_votes)
    if is_forbidden(total):
        raise ReplayError("solution uses a FORBIDDEN action")
    return election, total


def verify_solution(instance: BriberyInstance, solution: BriberySolution
                    ) -> BriberySolution:
    """Raise ReplayError unless the solution replays to its recorded outcome."""
    election, cost = apply_solution(instance, solution)
    if cost != solution.total_cost:
        raise ReplayError(
            f"recomputed cost {cost} != recorded {solution.total_cost}"
        )
    if cost > instance.budget:
        raise ReplayError(f"cost {cost} exceeds budget {instance.budget}")
    outcome = winners(election, instance.rule)
    if outcome != set(solution.resulting_winners):
        raise ReplayError(
            f"replayed winners {sorted(outcome)} != recorded "
            f"{sorted(solution.resulting_winners)}"
        )
    if instance.preferred not in outcome:
        raise ReplayError("preferred candidate does not win after replay")
    return solution
