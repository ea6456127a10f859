"""Candidates, ranked votes, voting rules, and winner determination.

Seven rules are supported: plurality, k-approval, veto, Borda,
Copeland^alpha, maximin, and SP-AV (a ranking plus an approval threshold).
All scoring is exact: integers everywhere except Copeland^alpha, whose
scores are Fractions of the tie weight alpha.

Everything here is an immutable value and every operation is a pure
function, so concurrent use needs no synchronization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from .errors import ParameterError, ValidationError


@dataclass(frozen=True, slots=True)
class CandidateSet:
    """Ordered roster of distinct candidate names; index 0..m-1 internally."""

    names: tuple[str, ...]

    def __init__(self, names: Iterable[str]):
        object.__setattr__(self, "names", tuple(names))
        if not self.names:
            raise ValidationError("candidate set must be nonempty")
        for name in self.names:
            if not name or any(ch.isspace() for ch in name):
                raise ValidationError(f"bad candidate name {name!r}")
        if len(set(self.names)) != len(self.names):
            raise ValidationError("candidate names must be distinct")

    @property
    def m(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValidationError(f"unknown candidate {name!r}") from None

    def name(self, candidate: int) -> str:
        return self.names[candidate]


@dataclass(frozen=True, slots=True)
class Preference:
    """A strict linear order over all candidates, most-preferred first."""

    ranking: tuple[int, ...]

    def __init__(self, ranking: Iterable[int]):
        object.__setattr__(self, "ranking", tuple(ranking))

    def validate(self, m: int) -> None:
        if sorted(self.ranking) != list(range(m)):
            raise ValidationError(
                f"vote {self.ranking} is not a permutation of 0..{m - 1}"
            )

    @property
    def m(self) -> int:
        return len(self.ranking)

    def position(self, candidate: int) -> int:
        """0-based position; 0 is the most-preferred candidate."""
        return self.ranking.index(candidate)

    def above(self, candidate: int) -> tuple[int, ...]:
        """Candidates ranked strictly above, topmost first."""
        return self.ranking[: self.position(candidate)]

    def prefers(self, a: int, b: int) -> bool:
        return self.ranking.index(a) < self.ranking.index(b)


@dataclass(frozen=True, slots=True)
class SPAVVote:
    """An SP-AV ballot: a ranking plus the number of top candidates approved."""

    pref: Preference
    threshold: int

    def validate(self, m: int) -> None:
        self.pref.validate(m)
        if not 1 <= self.threshold <= m - 1:
            raise ValidationError(
                f"approval threshold {self.threshold} outside 1..{m - 1}"
            )

    @property
    def ranking(self) -> tuple[int, ...]:
        return self.pref.ranking

    def approves(self, candidate: int) -> bool:
        return self.pref.position(candidate) < self.threshold


Vote = Union[Preference, SPAVVote]


@dataclass(frozen=True, slots=True)
class Election:
    """A candidate roster plus a list of votes over it."""

    candidates: CandidateSet
    votes: tuple[Vote, ...]

    def __init__(self, candidates: CandidateSet, votes: Iterable[Vote]):
        object.__setattr__(self, "candidates", candidates)
        object.__setattr__(self, "votes", tuple(votes))
        kinds = {type(v) for v in self.votes}
        if len(kinds) > 1:
            raise ValidationError("cannot mix plain and SP-AV votes")
        for vote in self.votes:
            vote.validate(candidates.m)

    @property
    def m(self) -> int:
        return self.candidates.m

    @property
    def n(self) -> int:
        return len(self.votes)

    @property
    def is_spav(self) -> bool:
        return bool(self.votes) and isinstance(self.votes[0], SPAVVote)

    def rankings(self) -> list[Preference]:
        return [v.pref if isinstance(v, SPAVVote) else v for v in self.votes]

    def replace_votes(self, votes: Iterable[Vote]) -> "Election":
        return Election(self.candidates, votes)


@dataclass(frozen=True, slots=True)
class Rule:
    """One of the seven supported voting rules.

    Use the classmethod constructors; `kind` is one of "plurality",
    "kapproval", "veto", "borda", "copeland", "maximin", "spav".
    """

    kind: str
    k: int | None = None
    alpha: Fraction | None = field(default=None)

    @classmethod
    def plurality(cls) -> "Rule":
        return cls("plurality")

    @classmethod
    def k_approval(cls, k: int) -> "Rule":
        if k < 1:
            raise ParameterError(f"k-approval needs k >= 1, got {k}")
        return cls("kapproval", k=k)

    @classmethod
    def veto(cls) -> "Rule":
        return cls("veto")

    @classmethod
    def borda(cls) -> "Rule":
        return cls("borda")

    @classmethod
    def copeland(cls, num: int, den: int = 1) -> "Rule":
        alpha = Fraction(num, den)
        if not 0 <= alpha <= 1:
            raise ParameterError(f"Copeland alpha must lie in [0, 1], got {alpha}")
        return cls("copeland", alpha=alpha)

    @classmethod
    def maximin(cls) -> "Rule":
        return cls("maximin")

    @classmethod
    def spav(cls) -> "Rule":
        return cls("spav")

    def validate_for(self, m: int) -> None:
        if self.kind == "kapproval" and not 1 <= self.k <= m - 1:
            raise ParameterError(f"k-approval needs 1 <= k <= {m - 1}, got {self.k}")
        if self.kind in ("plurality", "veto", "spav") and m < 2:
            raise ParameterError(f"{self.kind} needs at least 2 candidates")

    def approval_count(self, m: int) -> int | None:
        """Number of approved top positions for the approval family, else None."""
        if self.kind == "plurality":
            return 1
        if self.kind == "veto":
            return m - 1
        if self.kind == "kapproval":
            return self.k
        return None

    def __str__(self) -> str:
        if self.kind == "kapproval":
            return f"kapproval {self.k}"
        if self.kind == "copeland":
            return f"copeland {self.alpha.numerator}/{self.alpha.denominator}"
        return self.kind


def positional_points(rule: Rule, m: int) -> list[int] | None:
    """Per-position points for positional rules; None for pairwise/SP-AV."""
    k = rule.approval_count(m)
    if k is not None:
        return [1 if pos < k else 0 for pos in range(m)]
    if rule.kind == "borda":
        return [m - 1 - pos for pos in range(m)]
    return None


def pairwise_wins(election: Election) -> list[list[int]]:
    """Matrix whose (i, j) entry counts the voters preferring i to j."""
    m = election.m
    table = [[0] * m for _ in range(m)]
    for pref in election.rankings():
        ranking = pref.ranking
        for pos, a in enumerate(ranking):
            for b in ranking[pos + 1 :]:
                table[a][b] += 1
    return table


def scores(election: Election, rule: Rule) -> list[int | Fraction]:
    """Exact scores of every candidate under the rule."""
    m = election.m
    rule.validate_for(m)
    points = positional_points(rule, m)
    if points is not None:
        if election.is_spav:
            raise ParameterError(f"{rule.kind} cannot score SP-AV ballots")
        totals = [0] * m
        for vote in election.votes:
            for pos, c in enumerate(vote.ranking):
                totals[c] += points[pos]
        return totals
    if rule.kind == "spav":
        if election.votes and not election.is_spav:
            raise ParameterError("SP-AV scoring needs ballots with thresholds")
        totals = [0] * m
        for vote in election.votes:
            for c in vote.ranking[: vote.threshold]:
                totals[c] += 1
        return totals
    table = pairwise_wins(election)
    if rule.kind == "maximin":
        if m == 1:
            return [0]
        return [min(table[i][j] for j in range(m) if j != i) for i in range(m)]
    if rule.kind == "copeland":
        result: list[int | Fraction] = []
        for i in range(m):
            wins = sum(1 for j in range(m) if j != i and table[i][j] > table[j][i])
            ties = sum(1 for j in range(m) if j != i and table[i][j] == table[j][i])
            result.append(wins + rule.alpha * ties)
        return result
    raise ParameterError(f"unknown rule {rule.kind!r}")


def score(election: Election, rule: Rule, candidate: int) -> int | Fraction:
    if not 0 <= candidate < election.m:
        raise ParameterError(f"candidate index {candidate} out of range")
    return scores(election, rule)[candidate]


def winners(election: Election, rule: Rule) -> set[int]:
    """All candidates attaining the maximum score (nonunique-winner model)."""
    values = scores(election, rule)
    best = max(values)
    return {i for i, v in enumerate(values) if v == best}
