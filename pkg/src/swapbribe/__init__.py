"""Swap and shift bribery in ranked elections: exact and approximate
solvers under seven voting rules, plus generators that materialize
NP-hardness reductions as labeled test instances."""

from .bribery import (
    BriberyInstance,
    BriberySolution,
    apply_solution,
    verify_solution,
)
from .costs import COST_MAX, FORBIDDEN, Cost, add_costs, is_forbidden
from .elections import (
    CandidateSet,
    Election,
    Preference,
    Rule,
    SPAVVote,
    pairwise_wins,
    score,
    scores,
    winners,
)
from .errors import (
    AdmissibilityError,
    CapacityError,
    InfeasibleError,
    ParameterError,
    ParseError,
    ReplayError,
    SwapBribeError,
    ValidationError,
)
from .reductions import (
    BBInstance,
    ReductionInstance,
    X3CInstance,
    bb_check,
    gen_bb_kapproval,
    gen_x3c_3approval,
    gen_x3c_borda_shift,
    gen_x3c_maximin_shift,
    gen_x3c_spav_mixed,
    random_bb,
    random_x3c,
    x3c_check,
)
from .rules import (
    borda_shift_2approx,
    borda_shift_dp,
    solve_kapproval_fixed_voters,
    solve_kapproval_shift,
    solve_plurality_veto_swap,
    solve_shift_exact,
    solve_spav_mixed_exact,
)
from .search import backend_name
from .serialize import (
    parse_instance,
    parse_pw,
    parse_solution,
    parse_source,
    serialize_instance,
    serialize_pw,
    serialize_solution,
    write_solution,
)
from .solvers import (
    PartialPreference,
    PossibleWinnerInstance,
    exact_oracle,
    list_to_multiset_cost,
    reduce_possible_winner,
    solve_fixed_candidates,
)
from .swaps import (
    ShiftPriceFn,
    SwapPriceFn,
    SwapSequence,
    ThresholdPriceFn,
    UnitSwap,
    apply_shift,
    apply_swap_sequence,
    inversion_set,
    shift_to_swap_prices,
    transform_cost,
    transform_sequence,
)

__version__ = "0.1.0"
