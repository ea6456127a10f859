"""Priced swaps of adjacent candidates, shifts of the preferred candidate,
and the conversion from shift prices to swap prices.

A unit swap exchanges two candidates that are adjacent in one voter's
ranking.  Transforming a vote into another costs exactly the price-sum of
the inverted pairs, which is what `transform_cost` computes; the realizing
swap sequence is emitted by `transform_sequence` via repeated left-to-right
scans for adjacent inverted pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .costs import FORBIDDEN, Cost, add_costs, check_cost, is_forbidden, sub_costs
from .elections import Election, Preference, SPAVVote
from .errors import AdmissibilityError, InfeasibleError, ValidationError


class SwapPriceFn:
    """Per-voter m-by-m table of swap prices.

    Entry (i, j) prices the adjacent swap from ``... i > j ...`` to
    ``... j > i ...``; (i, j) and (j, i) are independent and the diagonal is
    unused.
    """

    __slots__ = ("table",)

    def __init__(self, table: Iterable[Iterable[Cost]]):
        rows = [list(row) for row in table]
        m = len(rows)
        for i, row in enumerate(rows):
            if len(row) != m:
                raise ValidationError("swap price table must be square")
            for entry in row:
                check_cost(entry, what="swap price")
            row[i] = 0  # diagonal is unused; normalize for equality
        self.table = tuple(tuple(row) for row in rows)

    @classmethod
    def uniform(cls, m: int, price: Cost) -> "SwapPriceFn":
        return cls([[price] * m for _ in range(m)])

    @classmethod
    def forbidden(cls, m: int) -> "SwapPriceFn":
        return cls.uniform(m, FORBIDDEN)

    @classmethod
    def from_entries(cls, m: int, entries: dict[tuple[int, int], Cost],
                     default: Cost = FORBIDDEN) -> "SwapPriceFn":
        table = [[default] * m for _ in range(m)]
        for (i, j), price in entries.items():
            table[i][j] = price
        return cls(table)

    @property
    def m(self) -> int:
        return len(self.table)

    def price(self, upper: int, lower: int) -> Cost:
        return self.table[upper][lower]

    def __eq__(self, other) -> bool:
        return isinstance(other, SwapPriceFn) and self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)


class ShiftPriceFn:
    """Prices for moving the preferred candidate up in one vote.

    ``rho[i]`` is the price of moving up exactly i positions; rho[0] = 0,
    the table is nondecreasing, and shifts past the number of candidates
    ranked above the preferred candidate are FORBIDDEN.
    """

    __slots__ = ("rho",)

    def __init__(self, rho: Iterable[Cost]):
        table = tuple(rho)
        if not table or table[0] != 0:
            raise ValidationError("shift prices must start with rho(0) = 0")
        for entry in table:
            check_cost(entry, what="shift price")
        for a, b in zip(table, table[1:]):
            if is_forbidden(a) and not is_forbidden(b):
                raise ValidationError("shift prices must stay FORBIDDEN once hit")
            if not is_forbidden(a) and not is_forbidden(b) and b < a:
                raise ValidationError("shift prices must be nondecreasing")
        self.rho = table

    @property
    def headroom(self) -> int:
        """Largest shift the table covers (finite or not)."""
        return len(self.rho) - 1

    def max_affordable_shift(self) -> int:
        """Largest shift with a finite price."""
        k = 0
        for i, entry in enumerate(self.rho):
            if not is_forbidden(entry):
                k = i
        return k

    def price(self, k: int) -> Cost:
        if k < 0:
            raise ValidationError(f"shift amount must be nonnegative, got {k}")
        if k >= len(self.rho):
            return FORBIDDEN
        return self.rho[k]

    def __eq__(self, other) -> bool:
        return isinstance(other, ShiftPriceFn) and self.rho == other.rho

    def __hash__(self) -> int:
        return hash(self.rho)


class ThresholdPriceFn:
    """SP-AV prices for changing a voter's approval count by a signed delta."""

    __slots__ = ("deltas",)

    def __init__(self, deltas: dict[int, Cost]):
        entries = dict(deltas)
        entries.setdefault(0, 0)
        if entries[0] != 0:
            raise ValidationError("threshold price of delta 0 must be 0")
        for delta, price in entries.items():
            if not isinstance(delta, int) or isinstance(delta, bool):
                raise ValidationError(f"threshold delta must be an integer, got {delta!r}")
            check_cost(price, what="threshold price")
        self.deltas = dict(sorted(entries.items()))

    @classmethod
    def absolute(cls, lo: int, hi: int) -> "ThresholdPriceFn":
        """sigma(k) = |k| on lo..hi, FORBIDDEN elsewhere."""
        return cls({d: abs(d) for d in range(lo, hi + 1)})

    @classmethod
    def frozen(cls) -> "ThresholdPriceFn":
        """Only delta 0 is allowed."""
        return cls({0: 0})

    def price(self, delta: int) -> Cost:
        return self.deltas.get(delta, FORBIDDEN)

    def __eq__(self, other) -> bool:
        return isinstance(other, ThresholdPriceFn) and self.deltas == other.deltas

    def __hash__(self) -> int:
        return hash(tuple(self.deltas.items()))


class UnitSwap(NamedTuple):
    voter: int
    upper: int
    lower: int


@dataclass(frozen=True, slots=True)
class SwapSequence:
    """Ordered unit swaps plus their total price."""

    swaps: tuple[UnitSwap, ...]
    total_cost: Cost

    def __init__(self, swaps: Iterable[UnitSwap], total_cost: Cost):
        object.__setattr__(self, "swaps", tuple(swaps))
        object.__setattr__(self, "total_cost", check_cost(total_cost))

    @classmethod
    def empty(cls) -> "SwapSequence":
        return cls((), 0)

    def __len__(self) -> int:
        return len(self.swaps)


def inversion_set(v1: Preference, v2: Preference) -> set[tuple[int, int]]:
    """Ordered pairs ranked (a, b) by v1 but (b, a) by v2."""
    if sorted(v1.ranking) != sorted(v2.ranking):
        raise ValidationError("votes range over different candidate sets")
    pos2 = {c: i for i, c in enumerate(v2.ranking)}
    inverted = set()
    ranking = v1.ranking
    for i, a in enumerate(ranking):
        for b in ranking[i + 1 :]:
            if pos2[a] > pos2[b]:
                inverted.add((a, b))
    return inverted


def transform_cost(v1: Preference, v2: Preference, prices: SwapPriceFn) -> Cost:
    """Price of the cheapest swap sequence converting v1 into v2.

    Equals the price-sum over the inversion set; FORBIDDEN if any inverted
    pair is unswappable.
    """
    return add_costs(*(prices.price(a, b) for a, b in inversion_set(v1, v2)))


def transform_sequence(v1: Preference, v2: Preference, prices: SwapPriceFn,
                       voter: int = 0) -> SwapSequence:
    """A cheapest admissible swap sequence converting v1 into v2.

    Swaps each inverted pair exactly once, always taking the leftmost
    adjacent inverted pair, so the output is deterministic.
    """
    pos2 = {c: i for i, c in enumerate(v2.ranking)}
    current = list(v1.ranking)
    swaps = []
    total: Cost = 0
    done = False
    while not done:
        done = True
        for i in range(len(current) - 1):
            a, b = current[i], current[i + 1]
            if pos2[a] > pos2[b]:
                price = prices.price(a, b)
                if is_forbidden(price):
                    raise InfeasibleError(
                        f"pair ({a}, {b}) must be swapped but is FORBIDDEN"
                    )
                total = add_costs(total, price)
                swaps.append(UnitSwap(voter, a, b))
                current[i], current[i + 1] = b, a
                done = False
                break
    return SwapSequence(swaps, total)


def apply_swap_sequence(election: Election, seq: SwapSequence) -> Election:
    """Execute unit swaps in order, checking admissibility at every step."""
    rankings = [list(v.ranking) for v in election.votes]
    for step, (voter, upper, lower) in enumerate(seq.swaps):
        if not 0 <= voter < len(rankings):
            raise AdmissibilityError(f"step {step}: voter {voter} out of range")
        ranking = rankings[voter]
        try:
            i = ranking.index(upper)
        except ValueError:
            raise AdmissibilityError(
                f"step {step}: candidate {upper} not in vote"
            ) from None
        if i + 1 >= len(ranking) or ranking[i + 1] != lower:
            raise AdmissibilityError(
                f"step {step}: swap ({upper}, {lower}) is not adjacent in voter "
                f"{voter}'s current ranking"
            )
        ranking[i], ranking[i + 1] = lower, upper
    new_votes = []
    for vote, ranking in zip(election.votes, rankings):
        if isinstance(vote, SPAVVote):
            new_votes.append(SPAVVote(Preference(ranking), vote.threshold))
        else:
            new_votes.append(Preference(ranking))
    return election.replace_votes(new_votes)


def swap_sequence_cost(election: Election, seq: SwapSequence,
                       prices: Sequence[SwapPriceFn]) -> Cost:
    """Price of executing the sequence on the election, step by step."""
    total: Cost = 0
    for voter, upper, lower in seq.swaps:
        total = add_costs(total, prices[voter].price(upper, lower))
    return total


def apply_shift(v: Preference, p: int, k: int) -> Preference:
    """Move candidate p up exactly k positions, leaving other orders intact."""
    pos = v.position(p)
    if not 0 <= k <= pos:
        raise ValidationError(
            f"shift of {k} exceeds candidate {p}'s position {pos}"
        )
    ranking = list(v.ranking)
    del ranking[pos]
    ranking.insert(pos - k, p)
    return Preference(ranking)


def shift_to_swap_prices(v: Preference, p: int, rho: ShiftPriceFn) -> SwapPriceFn:
    """Swap prices under which moving p up i positions costs exactly rho(i).

    The candidates above p get telescoped prices for being passed by p;
    every other swap, including moving p back down, is FORBIDDEN.
    """
    above = v.above(p)
    if rho.headroom != len(above):
        raise ValidationError(
            f"shift table covers {rho.headroom} shifts but {len(above)} "
            "candidates are ranked above the preferred candidate"
        )
    m = v.m
    table = [[FORBIDDEN] * m for _ in range(m)]
    for steps, c in enumerate(reversed(above), start=1):
        cur, prev = rho.price(steps), rho.price(steps - 1)
        table[c][p] = FORBIDDEN if is_forbidden(cur) else sub_costs(cur, prev)
    return SwapPriceFn(table)
