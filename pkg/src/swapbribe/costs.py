"""Bribery prices: nonnegative 64-bit integers plus a FORBIDDEN sentinel.

FORBIDDEN marks actions the briber may never buy.  It absorbs addition and
compares greater than every integer, so minima and sorted orders treat it as
an unreachable price rather than a magic large number.
"""

from __future__ import annotations

from typing import Union

COST_MAX = 2**63 - 1


class Forbidden:
    """Singleton price of a disallowed action."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "FORBIDDEN"

    def __reduce__(self):
        return (Forbidden, ())

    # Comparisons against ints: FORBIDDEN sorts above every finite cost.
    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    def __radd__(self, other):
        return self


FORBIDDEN = Forbidden()

Cost = Union[int, Forbidden]


def is_forbidden(cost: Cost) -> bool:
    return cost is FORBIDDEN


def check_cost(cost: Cost, *, what: str = "cost") -> Cost:
    """Validate a single price: FORBIDDEN, or an integer in [0, COST_MAX]."""
    if cost is FORBIDDEN:
        return cost
    if isinstance(cost, bool) or not isinstance(cost, int):
        raise ValueError(f"{what} must be an integer or FORBIDDEN, got {cost!r}")
    if cost < 0:
        raise ValueError(f"{what} must be nonnegative, got {cost}")
    if cost > COST_MAX:
        raise OverflowError(f"{what} {cost} exceeds the 64-bit cost range")
    return cost


def add_costs(*costs: Cost) -> Cost:
    """FORBIDDEN-absorbing sum with an explicit 64-bit overflow check."""
    total = 0
    for c in costs:
        if c is FORBIDDEN:
            return FORBIDDEN
        total += c
        if total > COST_MAX:
            raise OverflowError("cost sum exceeds the 64-bit cost range")
    return total


def sub_costs(a: Cost, b: Cost) -> Cost:
    """Difference a - b used for telescoping price tables.

    FORBIDDEN - anything is FORBIDDEN.  Subtracting FORBIDDEN from a finite
    cost is undefined and raises.
    """
    if a is FORBIDDEN:
        return FORBIDDEN
    if b is FORBIDDEN:
        raise ValueError("cannot subtract FORBIDDEN from a finite cost")
    if b > a:
        raise ValueError(f"cost difference would be negative ({a} - {b})")
    return a - b
