"""Labeled bribery instances materialized from NP-hard source problems.

Five constructions turn exact-cover-by-3-sets (X3C) or balanced-biclique
(BB) inputs into bribery instances whose feasibility at a specific budget
matches the source's yes/no answer.  They exist for round-trip testing:
solve the generated instance with an exact solver and compare against the
label computed by exhaustive search on the source.

Every generator asserts the score profile its construction promises, so a
defective instance fails loudly at generation time.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .bribery import BriberyInstance
from .costs import FORBIDDEN
from .elections import CandidateSet, Election, Preference, Rule, SPAVVote, \
    pairwise_wins, scores, winners
from .errors import CapacityError, ValidationError
from .swaps import ShiftPriceFn, SwapPriceFn, ThresholdPriceFn


@dataclass(frozen=True)
class X3CInstance:
    """Exact cover by 3-sets: pick k of the 3-sets to partition the ground set."""

    k: int
    ground: tuple[str, ...]
    sets: tuple[tuple[int, int, int], ...]

    @classmethod
    def of(cls, k: int, ground: Iterable[str],
           sets: Iterable[Iterable[int]]) -> "X3CInstance":
        ground = tuple(ground)
        if k < 1:
            raise ValidationError("x3c needs k >= 1")
        if len(ground) != 3 * k or len(set(ground)) != len(ground):
            raise ValidationError(f"ground set must hold 3k = {3 * k} distinct labels")
        norm = []
        for s in sets:
            members = tuple(sorted(s))
            if len(members) != 3 or len(set(members)) != 3:
                raise ValidationError(f"set {s} is not a 3-set")
            for b in members:
                if not 0 <= b < len(ground):
                    raise ValidationError(f"set member {b} outside the ground set")
            norm.append(members)
        return cls(k, ground, tuple(norm))

    @property
    def num_sets(self) -> int:
        return len(self.sets)


@dataclass(frozen=True)
class BBInstance:
    """Balanced biclique: does a k-by-k complete bipartite subgraph exist?"""

    n: int
    k: int
    edges: frozenset[tuple[int, int]]

    @classmethod
    def of(cls, n: int, k: int,
           edges: Iterable[tuple[int, int]]) -> "BBInstance":
        if not 1 <= k <= n:
            raise ValidationError("bb needs 1 <= k <= n")
        edges = frozenset((u, w) for u, w in edges)
        for u, w in edges:
            if not (0 <= u < n and 0 <= w < n):
                raise ValidationError(f"edge ({u}, {w}) out of range")
        return cls(n, k, edges)


@dataclass(frozen=True)
class ReductionInstance:
    """A generated bribery instance plus its source and feasibility label."""

    kind: str
    source: X3CInstance | BBInstance
    instance: BriberyInstance
    budget: int
    expected_feasible: bool | None


def x3c_check(x3c: X3CInstance, *, max_combinations: int = 2_000_000) -> bool:
    """Exhaustively decide the X3C instance (used to label reductions)."""
    m, k = x3c.num_sets, x3c.k
    total = 1
    for i in range(k):
        total = total * (m - i) // (i + 1)
        if total > max_combinations:
            raise CapacityError("too many subfamilies to enumerate")
    universe = frozenset(range(len(x3c.ground)))
    for picks in combinations(x3c.sets, k):
        covered = set()
        for s in picks:
            covered.update(s)
        if covered == universe:
            return True
    return False


def bb_check(bb: BBInstance) -> bool:
    """Exhaustively decide the balanced-biclique instance."""
    for us in combinations(range(bb.n), bb.k):
        for ws in combinations(range(bb.n), bb.k):
            if all((u, w) in bb.edges for u in us for w in ws):
                return True
    return False


def _label(x3c: X3CInstance) -> bool | None:
    try:
        return x3c_check(x3c)
    except CapacityError:
        return None


def gen_x3c_3approval(x3c: X3CInstance, k_approval: int = 3) -> ReductionInstance:
    """Swap bribery under k-approval (k >= 3) encoding an X3C instance.

    One voter per 3-set ranks its members on top, shadowed by three dummies;
    demoting the whole set costs exactly 1.  Padding votes (unswappable)
    raise every ground candidate to one point above the preferred candidate,
    so a win needs k-of-them demotions forming an exact cover.  Budget k.
    """
    if x3c.k < 2:
        raise ValidationError("construction assumes k >= 2")
    if k_approval < 3:
        raise ValidationError("construction covers k-approval for k >= 3")
    k, ground, sets = x3c.k, x3c.ground, x3c.sets
    m_sets = len(sets)
    prefix_len = k_approval - 3

    degree = [0] * len(ground)
    for s in sets:
        for b in s:
            degree[b] += 1
    top_score = max(degree, default=0)

    # One padding vote per missing point; each uses two fresh dummies.
    padding_targets = []
    for b, deg in enumerate(degree):
        padding_targets.extend([("b", b)] * (top_score + 1 - deg))
    padding_targets.extend([("p", None)] * top_score)

    num_votes = m_sets + len(padding_targets)
    num_dummies = 3 * m_sets + 2 * len(padding_targets) + prefix_len * num_votes
    names = ["p"] + list(ground) + [f"d{i + 1}" for i in range(num_dummies)]
    cset = CandidateSet(names)
    p = 0
    b_index = lambda b: 1 + b
    dummy_base = 1 + len(ground)

    next_dummy = 0

    def take_dummies(count: int) -> list[int]:
        nonlocal next_dummy
        out = [dummy_base + next_dummy + i for i in range(count)]
        next_dummy += count
        return out

    votes = []
    prices = []
    all_candidates = list(range(cset.m))
    for j, members in enumerate(sets):
        b1, b2, b3 = (b_index(b) for b in members)
        shadows = take_dummies(3)
        prefix = take_dummies(prefix_len)
        head = prefix + [b1, b2, b3] + shadows
        rest = [c for c in all_candidates if c not in head and c != p]
        votes.append(Preference(head + rest + [p]))
        table = [[2] * cset.m for _ in range(cset.m)]
        for b in (b1, b2, b3):
            for d in shadows:
                table[b][d] = 0
        table[b3][shadows[0]] = 1
        for c in prefix:
            for other in all_candidates:
                table[c][other] = FORBIDDEN
                table[other][c] = FORBIDDEN
        prices.append(SwapPriceFn(table))
    for target_kind, b in padding_targets:
        target = p if target_kind == "p" else b_index(b)
        fillers = take_dummies(2)
        prefix = take_dummies(prefix_len)
        head = prefix + [target] + fillers
        rest = [c for c in all_candidates if c not in head and c != p]
        ranking = head + rest + ([] if target == p else [p])
        votes.append(Preference(ranking))
        prices.append(SwapPriceFn.forbidden(cset.m))

    election = Election(cset, votes)
    rule = Rule.k_approval(k_approval)
    instance = BriberyInstance(election, rule, p, k, swap_prices=tuple(prices))

    profile = scores(election, rule)
    assert profile[p] == top_score, "preferred candidate must sit one point back"
    for b in range(len(ground)):
        assert profile[b_index(b)] == top_score + 1, "ground scores must be uniform"
    for d in range(dummy_base, cset.m):
        assert profile[d] <= 1, "dummies may hold at most one point"
    return ReductionInstance("x3c-3approval", x3c, instance, k, _label(x3c))


def gen_x3c_borda_shift(x3c: X3CInstance) -> ReductionInstance:
    """Borda shift bribery encoding an X3C instance.

    Set voters rank their members just above the preferred candidate at
    shift prices (1, 1, 1); mirrored and tail voters freeze the score gap at
    3k + 1 with prohibitive prices.  Budget k: only a cover's worth of
    full three-position lifts closes the gap against every ground candidate.
    """
    k, ground, sets = x3c.k, x3c.ground, x3c.sets
    names = list(ground) + ["p"]
    cset = CandidateSet(names)
    p = len(ground)
    all_b = list(range(len(ground)))

    votes = []
    shift_tables = []
    for members in sets:
        inside = [b for b in members]
        outside = [b for b in all_b if b not in members]
        ranking = inside + [p] + outside
        votes.append(Preference(ranking))
        shift_tables.append(ShiftPriceFn((0, 1, 1, 1)))
    for members in sets:
        inside = [b for b in members]
        outside = [b for b in all_b if b not in members]
        ranking = list(reversed(inside + [p] + outside))
        votes.append(Preference(ranking))
        shift_tables.append(_prohibitive_shift(ranking.index(p), k + 1))
    tail1 = all_b + [p]
    tail2 = list(reversed(all_b)) + [p]
    for ranking in (tail1, tail2):
        votes.append(Preference(ranking))
        shift_tables.append(_prohibitive_shift(ranking.index(p), k + 1))

    election = Election(cset, votes)
    rule = Rule.borda()
    instance = BriberyInstance(election, rule, p, k,
                               shift_prices=tuple(shift_tables))

    profile = scores(election, rule)
    base = profile[p]
    assert base == len(sets) * 3 * k, "mirrored voters must balance the scores"
    for b in all_b:
        assert profile[b] == base + 3 * k + 1, "ground candidates lead by 3k+1"
    return ReductionInstance("x3c-borda-shift", x3c, instance, k, _label(x3c))


def _prohibitive_shift(headroom: int, price) -> ShiftPriceFn:
    """All-same-price shift table; `price` may be FORBIDDEN."""
    return ShiftPriceFn((0,) + (price,) * headroom)


def gen_bb_kapproval(bb: BBInstance) -> ReductionInstance:
    """Single-voter (n+1)-approval swap bribery encoding balanced biclique.

    The voter ranks the left side, the right side, then the preferred
    candidate.  Reordering within a side is free, crossing a side boundary
    is free exactly on graph edges (budget-breaking otherwise), and the
    preferred candidate pays 1 to pass each right-side candidate.  Budget
    n - k.
    """
    n, k = bb.n, bb.k
    names = [f"u{i + 1}" for i in range(n)] + [f"w{i + 1}" for i in range(n)] + ["p"]
    cset = CandidateSet(names)
    u = lambda i: i
    w = lambda i: n + i
    p = 2 * n

    table = [[FORBIDDEN] * cset.m for _ in range(cset.m)]
    for i in range(n):
        for j in range(n):
            if i != j:
                table[u(i)][u(j)] = 0
                table[w(i)][w(j)] = 0
    for i in range(n):
        table[w(i)][p] = 1
        table[u(i)][p] = 0
        for j in range(n):
            table[u(i)][w(j)] = 0 if (i, j) in bb.edges else n - k + 1
    ranking = [u(i) for i in range(n)] + [w(i) for i in range(n)] + [p]

    election = Election(cset, [Preference(ranking)])
    instance = BriberyInstance(election, Rule.k_approval(n + 1), p, n - k,
                               swap_prices=(SwapPriceFn(table),))
    return ReductionInstance("bb-kapproval", bb, instance, n - k, bb_check(bb))


def gen_x3c_maximin_shift(x3c: X3CInstance) -> ReductionInstance:
    """Maximin shift bribery encoding an X3C instance.

    Set voters and their mirrors wash out to a constant pairwise count;
    four padding groups (sized k, k-1, 1, and 2k with the large-value
    parameter pinned to k) stagger the head-to-head counts so that winning
    demands raising the count against the runner-up by k and against every
    ground candidate by one: exactly a cover of full lifts.  Budget k.
    """
    k, ground, sets = x3c.k, x3c.ground, x3c.sets
    big = k  # the construction's free size parameter; k keeps things tiny
    names = ["p", "t", "c"] + list(ground)
    cset = CandidateSet(names)
    p, t, c = 0, 1, 2
    all_b = [3 + i for i in range(len(ground))]

    votes = []
    shift_tables = []
    for members in sets:
        inside = [3 + b for b in members]
        outside = [b for b in all_b if b not in inside]
        ranking = [t] + inside + [p] + outside + [c]
        votes.append(Preference(ranking))
        shift_tables.append(ShiftPriceFn((0, 1, 1, 1, 1)))
    for members in sets:
        inside = [3 + b for b in members]
        outside = [b for b in all_b if b not in inside]
        ranking = list(reversed([t] + inside + [p] + outside + [c]))
        votes.append(Preference(ranking))
        shift_tables.append(_prohibitive_shift(ranking.index(p), FORBIDDEN))
    padding = ([[p, c, t] + all_b] * big
               + [[t, p, c] + all_b] * (k - 1)
               + [[t] + all_b + [p, c]]
               + [[c, t] + all_b + [p]] * (big + k))
    for ranking in padding:
        votes.append(Preference(ranking))
        shift_tables.append(_prohibitive_shift(ranking.index(p), FORBIDDEN))

    election = Election(cset, votes)
    rule = Rule.maximin()
    instance = BriberyInstance(election, rule, p, k,
                               shift_prices=tuple(shift_tables))

    _assert_maximin_profile(election, rule, x3c, big)
    return ReductionInstance("x3c-maximin-shift", x3c, instance, k, _label(x3c))


def _assert_maximin_profile(election: Election, rule: Rule, x3c: X3CInstance,
                            big: int) -> None:
    k = x3c.k
    m_sets = len(x3c.sets)
    table = pairwise_wins(election)
    p, t, c = 0, 1, 2
    all_b = [3 + i for i in range(len(x3c.ground))]
    expect = {
        (p, t): big, (p, c): big + k,
        (t, p): big + 2 * k, (t, c): k,
        (c, p): big + k, (c, t): 2 * big + k,
    }
    for (a, b), value in expect.items():
        assert table[a][b] - m_sets == value, f"pairwise ({a}, {b}) off"
    for b in all_b:
        assert table[p][b] - m_sets == big + k - 1
        assert table[t][b] - m_sets == 2 * big + 2 * k
        assert table[c][b] - m_sets == 2 * big + 2 * k - 1
        assert table[b][p] - m_sets == big + k + 1
        assert table[b][t] - m_sets == 0
        assert table[b][c] - m_sets == 1
        for b2 in all_b:
            if b2 != b:
                assert table[b][b2] - m_sets <= 2 * big + 2 * k
    profile = scores(election, rule)
    assert profile[p] == m_sets + big
    assert profile[t] == m_sets + k
    assert profile[c] == m_sets + k + big
    for b in all_b:
        assert profile[b] <= m_sets
    assert winners(election, rule) == {c}, "runner-up must start as the winner"


def gen_x3c_spav_mixed(x3c: X3CInstance) -> ReductionInstance:
    """SP-AV mixed bribery (threshold changes only) encoding an X3C instance.

    Set voters approve a throwaway top candidate; widening voter i's
    approval down to the preferred candidate also approves the whole set
    s_i.  Padding voters pin the target score.  All swaps are forbidden
    and threshold prices are linear, discounted by one for set voters so
    that each useful widening costs exactly 3; budget 3k.
    """
    k, ground, sets = x3c.k, x3c.ground, x3c.sets
    m_sets = len(sets)
    names = list(ground) + [f"t{i + 1}" for i in range(m_sets)] + ["p", "e"]
    cset = CandidateSet(names)
    all_b = list(range(len(ground)))
    t_index = lambda i: len(ground) + i
    p = len(ground) + m_sets
    e = p + 1
    m = cset.m

    votes = []
    sigmas = []
    for i, members in enumerate(sets):
        inside = list(members)
        outside = [b for b in all_b if b not in members]
        others = [t_index(j) for j in range(m_sets) if j != i]
        ranking = [t_index(i)] + inside + [p] + outside + others + [e]
        votes.append(SPAVVote(Preference(ranking), 1))
        sigmas.append(ThresholdPriceFn(
            {d: max(abs(d) - 1, 0) for d in range(1 - 1, m - 1 - 1 + 1)}))
    tails = ([([e] + all_b + [t_index(i) for i in range(m_sets)] + [p], 1)]
             * (k + 1)
             + [([p] + all_b + [t_index(i) for i in range(m_sets)] + [e], 1)]
             + [(all_b + [t_index(i) for i in range(m_sets)] + [e, p], 3 * k)]
             * k)
    for ranking, threshold in tails:
        votes.append(SPAVVote(Preference(ranking), threshold))
        sigmas.append(ThresholdPriceFn(
            {d: abs(d) for d in range(1 - threshold, m - 1 - threshold + 1)}))

    election = Election(cset, votes)
    rule = Rule.spav()
    swap_prices = tuple(SwapPriceFn.forbidden(m) for _ in votes)
    instance = BriberyInstance(election, rule, p, 3 * k,
                               swap_prices=swap_prices,
                               threshold_prices=tuple(sigmas))

    profile = scores(election, rule)
    assert profile[p] == 1 and profile[e] == k + 1
    for b in all_b:
        assert profile[b] == k
    for i in range(m_sets):
        assert profile[t_index(i)] == 1
    return ReductionInstance("x3c-spav", x3c, instance, 3 * k, _label(x3c))


def random_x3c(k: int, num_sets: int, rng: random.Random) -> X3CInstance:
    """Uniform random 3-set family over a 3k-element ground set."""
    ground = [f"b{i + 1}" for i in range(3 * k)]
    sets = [tuple(sorted(rng.sample(range(3 * k), 3))) for _ in range(num_sets)]
    return X3CInstance.of(k, ground, sets)


def random_bb(n: int, k: int, rng: random.Random,
              edge_probability: float = 0.5) -> BBInstance:
    edges = [(u, w) for u in range(n) for w in range(n)
             if rng.random() < edge_probability]
    return BBInstance.of(n, k, edges)


GENERATORS = {
    "x3c-3approval": gen_x3c_3approval,
    "x3c-borda-shift": gen_x3c_borda_shift,
    "bb-kapproval": gen_bb_kapproval,
    "x3c-maximin-shift": gen_x3c_maximin_shift,
    "x3c-spav": gen_x3c_spav_mixed,
}
