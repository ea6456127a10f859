"""Backend selection for the option-combination search.

At import time the compiled `_speedups` extension is preferred; the pure
Python `_pysearch` module is the fallback.  Set SWAPBRIBE_FORCE_PURE=1 to
force the fallback (used by the benchmark and the equivalence tests).
"""

from __future__ import annotations

import os
from array import array
from dataclasses import dataclass
from typing import Sequence

from . import _pysearch
from .costs import COST_MAX

DEFAULT_NODE_CAP = 10_000_000

MODE_SCORES = _pysearch.MODE_SCORES
MODE_MAXIMIN = _pysearch.MODE_MAXIMIN
MODE_COPELAND = _pysearch.MODE_COPELAND

try:  # pragma: no cover - exercised only when the extension is built
    from . import _speedups
except ImportError:  # pragma: no cover
    _speedups = None

if os.environ.get("SWAPBRIBE_FORCE_PURE"):
    _speedups = None


def backend_name() -> str:
    return "compiled" if _speedups is not None else "pure-python"


@dataclass
class OptionSet:
    """Priced alternatives one voter offers the briber.

    `effects[i]` is the additive contribution of option i to the profile
    effect vector (rule scores, or a flattened pairwise matrix);
    `payloads[i]` is solver-specific data used to rebuild the bribery.
    """

    costs: list[int]
    effects: list[tuple[int, ...]]
    payloads: list[object]

    def add(self, cost: int, effect: tuple[int, ...], payload: object) -> None:
        self.costs.append(cost)
        self.effects.append(effect)
        self.payloads.append(payload)

    @classmethod
    def new(cls) -> "OptionSet":
        return cls([], [], [])

    def sort_by(self, key) -> None:
        """Reorder options; search ties break toward earlier entries."""
        order = sorted(range(len(self.costs)),
                       key=lambda i: key(self.payloads[i]))
        self.costs = [self.costs[i] for i in order]
        self.effects = [self.effects[i] for i in order]
        self.payloads = [self.payloads[i] for i in order]


def minimize(option_sets: Sequence[OptionSet], eff_len: int, m: int,
             budget: int, p: int, mode: int, cop_num: int = 0,
             cop_den: int = 1, node_cap: int = DEFAULT_NODE_CAP,
             force_pure: bool = False):
    """Cheapest winning option combination within the budget.

    Returns (cost, per-voter option indices) or None.  Raises CapacityError
    through the backend when the walk exceeds `node_cap` explored nodes.
    """
    if budget > COST_MAX:
        raise OverflowError("budget exceeds the 64-bit cost range")
    max_cost = max((c for s in option_sets for c in s.costs), default=0)
    if max_cost and len(option_sets) * max_cost > COST_MAX:
        raise OverflowError("worst-case cost sum exceeds the 64-bit cost range")

    flat_costs: list[int] = []
    offsets = [0]
    flat_effects: list[int] = []
    for s in option_sets:
        flat_costs.extend(s.costs)
        offsets.append(len(flat_costs))
        for effect in s.effects:
            flat_effects.extend(effect)

    if _speedups is not None and not force_pure:
        result = _speedups.search_best(
            array("q", flat_costs), array("q", offsets), array("q", flat_effects),
            eff_len, m, budget, p, mode, cop_num, cop_den, node_cap)
    else:
        result = _pysearch.search_best(
            flat_costs, offsets, flat_effects, eff_len, m, budget, p, mode,
            cop_num, cop_den, node_cap)
    if result is None:
        return None
    cost, choices = result
    return cost, [int(c) for c in choices]
